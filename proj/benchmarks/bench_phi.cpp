#include <random>

#include <benchmark/benchmark.h>

#include "mfc/forward.hpp"
#include "mfc/optimizer.hpp"
#include "mfc/presets.hpp"

using namespace mfc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_dissipative(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
  A.diagonal().array() -= 25.0;
  return A;
}

void BM_phi_dense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MatrixXd A = random_dissipative(n, 1);
  const VectorXd v = VectorXd::Random(n), w = VectorXd::Random(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(phi1_combined_dense(0.5, A, v, w).y);
}
BENCHMARK(BM_phi_dense)->Arg(50)->Arg(100)->Arg(200);

void BM_phi_krylov(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MatrixXd A = random_dissipative(n, 1);
  const LinOp op(A);
  const VectorXd v = VectorXd::Random(n), w = VectorXd::Random(n);
  PhiOptions opts;
  for (auto _ : state)
    benchmark::DoNotOptimize(phi1_combined_krylov(0.5, op, v, w, opts).y);
}
BENCHMARK(BM_phi_krylov)->Arg(50)->Arg(200)->Arg(1000);

void BM_forward_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid1D g = build_grid(-1.0, 1.0, n);
  ModelSpec model = make_preset(PresetName::sznajd, g);
  model.T = 1.0;
  const VectorXd w = trapezoid_weights(g);
  const MatrixXd P = interaction_matrix(g, w, model.p);
  const ForwardProblem fwd(model, g, P);
  const TimeGrid tg = build_time_grid(model.T, 100);
  const TrajectoryField u(tg.m + 1, g.n);
  const VectorXd rho0 = discretize(g, model.rho0);
  for (auto _ : state) benchmark::DoNotOptimize(fwd.solve(tg, u, rho0));
}
BENCHMARK(BM_forward_solve)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
