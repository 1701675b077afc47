// Acceptance suite: each numbered check prints one PASS/FAIL line.
// Usage: acceptance [criterion ...]; no arguments runs all of them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mfc/csv.hpp"
#include "mfc/particles.hpp"
#include "mfc/study.hpp"

using namespace mfc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

bool within_factor2(double got, double target) {
  return got >= 0.5 * target && got <= 2.0 * target;
}

bool slope_ok(double s) { return s >= 0.85 && s <= 1.15; }

struct CheckResult {
  bool pass = true;
  std::ostringstream detail;
};

void require(CheckResult& r, bool cond, const std::string& what) {
  if (!cond) {
    r.pass = false;
    r.detail << (r.detail.str().empty() ? "" : "; ") << what;
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

CheckResult order_study(PresetName preset, double T, double lambda,
                        double rho_first, double rho_last, double psi_first,
                        double psi_last) {
  CheckResult r;
  const Grid1D g = build_grid(-1.0, 1.0, 200);
  ModelSpec model = make_preset(preset, g);
  model.T = T;
  const std::vector<int> m_list = {300, 400, 500, 600, 700};
  // fixed step: the descent trajectory must depend on the mesh only through
  // the discretization error, which a backtracking search would not
  DescentConfig cfg;
  cfg.fixed_lambda = lambda;
  // a generous reference multiplier keeps the self-reference bias out of
  // the fitted order (at 4x, exact first order would fit as ~1.2)
  const ConvergenceReport rep =
      convergence_study(model, g, m_list, cfg, PhiOptions{}, 16);
  require(r, slope_ok(rep.slope_rho),
          "rho slope " + num(rep.slope_rho) + " outside [0.85,1.15]");
  require(r, slope_ok(rep.slope_psi),
          "psi slope " + num(rep.slope_psi) + " outside [0.85,1.15]");
  require(r, within_factor2(rep.rows.front().err_rho_at_T, rho_first),
          "rho err at m=300 is " + num(rep.rows.front().err_rho_at_T));
  require(r, within_factor2(rep.rows.back().err_rho_at_T, rho_last),
          "rho err at m=700 is " + num(rep.rows.back().err_rho_at_T));
  require(r, within_factor2(rep.rows.front().err_psi_at_0, psi_first),
          "psi err at m=300 is " + num(rep.rows.front().err_psi_at_0));
  require(r, within_factor2(rep.rows.back().err_psi_at_0, psi_last),
          "psi err at m=700 is " + num(rep.rows.back().err_psi_at_0));
  return r;
}

// 1: temporal order of accuracy, opinion model
CheckResult criterion_1() {
  return order_study(PresetName::sznajd, 4.0, 1.0, 8.6955e-3, 3.6445e-3,
                     3.1846e-3, 1.3283e-3);
}

// 2: temporal order of accuracy, crowd model
CheckResult criterion_2() {
  return order_study(PresetName::crowd_exit, 2.0, 0.1, 3.119e-3, 1.260e-3,
                     6.781e-3, 2.741e-3);
}

OptimizationResult run_preset(PresetName name, int n, int m,
                              double* wall_s = nullptr) {
  const Grid1D g = build_grid(-1.0, 1.0, n);
  const ModelSpec model = make_preset(name, g);
  const TimeGrid tg = build_time_grid(model.T, m);
  const auto t0 = std::chrono::steady_clock::now();
  OptimizationResult res =
      optimize(model, g, tg, DescentConfig{}, TrajectoryField(tg.m + 1, g.n));
  if (wall_s)
    *wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  return res;
}

// 3: opinion model end to end, cost and runtime targets
CheckResult criterion_3() {
  CheckResult r;
  double wall = 0.0;
  const OptimizationResult res = run_preset(PresetName::sznajd, 1000, 200, &wall);
  const double J = res.J_trace.back();
  require(r, std::abs(J - 0.4680) <= 0.05 * 0.4680,
          "final J " + num(J) + " not within 5% of 0.4680");
  require(r, res.iterations <= 50,
          "took " + std::to_string(res.iterations) + " iterations");
  require(r, wall <= 550.0, "wall time " + num(wall) + " s exceeds 550 s");
  return r;
}

// 4: bounded-confidence model end to end
CheckResult criterion_4() {
  CheckResult r;
  const OptimizationResult res = run_preset(PresetName::hegselmann_krause, 1000, 100);
  const double J = res.J_trace.back();
  require(r, std::abs(J - 0.2677) <= 0.05 * 0.2677,
          "final J " + num(J) + " not within 5% of 0.2677");
  require(r, res.iterations <= 50,
          "took " + std::to_string(res.iterations) + " iterations");
  return r;
}

// 5: mass transfer end to end, cost and two-bump structure
CheckResult criterion_5() {
  CheckResult r;
  const int n = 1000;
  const Grid1D g = build_grid(-1.0, 1.0, n);
  const OptimizationResult res = run_preset(PresetName::mass_transfer, n, 200);
  const double J = res.J_trace.back();
  require(r, std::abs(J - 0.1606) <= 0.10 * 0.1606,
          "final J " + num(J) + " not within 10% of 0.1606");

  // windowed maxima: small ripples riding on a bump must not count, so a
  // peak has to dominate a +-0.1 neighborhood
  const VectorXd rho_T = res.rho.slice(res.rho.slices() - 1);
  const double floor = 0.05 * rho_T.maxCoeff();
  const int hw = static_cast<int>(std::lround(0.1 / g.h));
  std::vector<double> peaks;
  for (int i = 1; i + 1 < n; ++i) {
    if (rho_T(i) <= rho_T(i - 1) || rho_T(i) <= rho_T(i + 1) ||
        rho_T(i) <= floor)
      continue;
    bool dominant = true;
    for (int j = std::max(0, i - hw); j <= std::min(n - 1, i + hw); ++j)
      if (rho_T(j) > rho_T(i)) dominant = false;
    if (dominant) peaks.push_back(g.nodes(i));
  }
  require(r, peaks.size() == 2,
          "found " + std::to_string(peaks.size()) + " local maxima");
  if (peaks.size() == 2) {
    require(r, std::abs(peaks[0] + 0.3) <= 0.05,
            "left peak at " + num(peaks[0]));
    require(r, std::abs(peaks[1] - 0.5) <= 0.05,
            "right peak at " + num(peaks[1]));
  }
  return r;
}

// 6: crowd evacuation end to end, mass decay and monotone descent
CheckResult criterion_6() {
  CheckResult r;
  const int n = 1000;
  const Grid1D g = build_grid(-1.0, 1.0, n);
  const ModelSpec model = make_preset(PresetName::crowd_exit, g);
  const TimeGrid tg = build_time_grid(model.T, 250);
  const OptimizationResult res =
      optimize(model, g, tg, DescentConfig{}, TrajectoryField(tg.m + 1, g.n));

  const VectorXd w = trapezoid_weights(g);
  double prev = w.dot(res.rho.slice(0));
  const double mass0 = prev;
  bool monotone = true;
  for (int k = 1; k <= tg.m; ++k) {
    const double mk = w.dot(res.rho.slice(k));
    if (mk > prev + 1e-12) monotone = false;
    prev = mk;
  }
  require(r, monotone, "mass is not monotonically decreasing");
  require(r, prev < 0.2 * mass0,
          "final mass fraction " + num(prev / mass0) + " not below 0.2");
  bool descending = true;
  for (size_t i = 1; i < res.J_trace.size(); ++i)
    if (res.J_trace[i] > res.J_trace[i - 1] + 1e-12) descending = false;
  require(r, descending, "J trace is not non-increasing");
  return r;
}

// 7: Krylov vs dense combined phi action on random dissipative operators
CheckResult criterion_7() {
  CheckResult r;
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> utau(0.1, 2.0);
  const std::vector<int> sizes = {50, 100, 200};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = sizes[trial % 3];
    MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
    A.diagonal().array() -= 25.0;
    VectorXd v(n), w(n);
    for (int i = 0; i < n; ++i) {
      v(i) = gauss(rng);
      w(i) = gauss(rng);
    }
    const double tau = utau(rng);

    PhiOptions opts;
    opts.krylov_tol = 1e-10;
    const VectorXd dense = phi1_combined_dense(tau, A, v, w).y;
    const VectorXd kry = phi1_combined_krylov(tau, LinOp(A), v, w, opts).y;
    worst = std::max(worst, (dense - kry).lpNorm<Eigen::Infinity>());
  }
  require(r, worst <= 1e-9,
          "worst disagreement " + num(worst) + " exceeds 1e-9");
  return r;
}

// 8: one-step exactness on constant-coefficient linear inhomogeneous systems
CheckResult criterion_8() {
  CheckResult r;
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = 20;
  for (double tau : {0.05, 0.7, 1.0, 2.5}) {
    MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
    A.diagonal().array() -= 4.0;
    VectorXd b(n), y0(n);
    for (int i = 0; i < n; ++i) {
      b(i) = gauss(rng);
      y0(i) = gauss(rng);
    }
    SemilinearSystem sys{[&](double) { return LinOp(A); },
                         [&](double, const VectorXd&) { return b; }};
    const VectorXd got = exp_euler_step(sys, 0.0, tau, y0);
    const MatrixXd E = expm_dense(tau * A);
    const VectorXd exact =
        E * y0 + A.partialPivLu().solve((E - MatrixXd::Identity(n, n)) * b);
    const double rel = (got - exact).lpNorm<Eigen::Infinity>() /
                       exact.lpNorm<Eigen::Infinity>();
    require(r, rel <= 1e-12,
            "tau " + num(tau) + ": relative error " + num(rel));
  }
  return r;
}

// 9: mass conservation for every zero-flux model. The advective drift in
// the trapezoid mass is O(h^2), so the check runs on a fine grid.
CheckResult criterion_9() {
  CheckResult r;
  const Grid1D g = build_grid(-1.0, 1.0, 800);
  const VectorXd w = trapezoid_weights(g);
  for (auto name : {PresetName::sznajd, PresetName::hegselmann_krause,
                    PresetName::mass_transfer}) {
    const ModelSpec model = make_preset(name, g);
    const MatrixXd P = interaction_matrix(g, w, model.p);
    const ForwardProblem fwd(model, g, P);
    const TimeGrid tg = build_time_grid(model.T, 200);
    const TrajectoryField rho =
        fwd.solve(tg, TrajectoryField(tg.m + 1, g.n), discretize(g, model.rho0));
    const double mass0 = w.dot(rho.slice(0));
    double worst = 0.0;
    for (int k = 1; k <= tg.m; ++k)
      worst = std::max(worst, std::abs(w.dot(rho.slice(k)) - mass0) / mass0);
    require(r, worst <= 1e-3,
            preset_to_string(name) + ": mass drift " + num(worst));
  }
  return r;
}

// 10: finite-difference check of the adjoint gradient at u = 0
CheckResult criterion_10() {
  CheckResult r;
  struct Job {
    PresetName name;
    int m;
  };
  for (const Job job : {Job{PresetName::sznajd, 200},
                        Job{PresetName::hegselmann_krause, 100},
                        Job{PresetName::crowd_exit, 150},
                        Job{PresetName::mass_transfer, 150}}) {
    const Grid1D g = build_grid(-1.0, 1.0, 200);
    const ModelSpec model = make_preset(job.name, g);
    const VectorXd w = trapezoid_weights(g);
    const MatrixXd P = interaction_matrix(g, w, model.p);
    const MatrixXd Q = adjoint_interaction_matrix(g, w, model.p);
    const ForwardProblem fwd(model, g, P);
    const AdjointProblem bwd(model, g, P, Q);
    const TimeGrid tg = build_time_grid(model.T, job.m);
    const VectorXd rho0 = discretize(g, model.rho0);

    const TrajectoryField u0(tg.m + 1, g.n);
    const TrajectoryField rho = fwd.solve(tg, u0, rho0);
    const TrajectoryField psi = bwd.solve(tg, rho, u0);
    const TrajectoryField G = gradient_direction(model, g, rho, psi, u0);
    // G is the gradient in the density-weighted metric: dJ[d] = <G,d>_rho
    double gg = 0.0;
    for (int k = 0; k <= tg.m; ++k) {
      const double wt = (k == 0 || k == tg.m) ? 0.5 * tg.tau() : tg.tau();
      gg += wt * w.dot((rho.slice(k).array() * G.slice(k).array().square())
                           .matrix());
    }

    const double eps = 1e-4 / std::max(1.0, G.values.cwiseAbs().maxCoeff());
    auto J_of = [&](double step) {
      TrajectoryField u(tg.m + 1, g.n);
      u.values = step * G.values;
      return evaluate_cost(model, g, w, tg, fwd.solve(tg, u, rho0), u);
    };
    const double dd = (J_of(-eps) - J_of(eps)) / (2.0 * eps);
    require(r, dd < 0.0, preset_to_string(job.name) + ": derivative " +
                             num(dd) + " not negative");
    require(r, std::abs(dd + gg) <= 0.2 * gg,
            preset_to_string(job.name) + ": derivative " + num(dd) +
                " vs -<G,G> " + num(-gg));
  }
  return r;
}

// 11: Monte Carlo particles vs the uncontrolled density equation
CheckResult criterion_11() {
  CheckResult r;
  const Grid1D g = build_grid(-1.0, 1.0, 101);
  ModelSpec model = make_preset(PresetName::sznajd, g);
  model.T = 1.0;
  const int steps = 200;
  const VectorXd hist = simulate_particles(model, g, 100000, steps, 1234);

  const VectorXd w = trapezoid_weights(g);
  const MatrixXd P = interaction_matrix(g, w, model.p);
  const ForwardProblem fwd(model, g, P);
  const TimeGrid tg = build_time_grid(model.T, steps);
  const VectorXd rho_T =
      fwd.solve(tg, TrajectoryField(tg.m + 1, g.n), discretize(g, model.rho0))
          .slice(tg.m);
  const double l1 = w.dot((hist - rho_T).cwiseAbs());
  require(r, l1 <= 0.05, "L1 distance " + num(l1) + " exceeds 0.05");
  return r;
}

using CheckFn = CheckResult (*)();
constexpr CheckFn kChecks[] = {
    criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9,  criterion_10,
    criterion_11};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  if (wanted.empty())
    for (int i = 1; i <= 11; ++i) wanted.push_back(i);

  bool all_pass = true;
  for (int id : wanted) {
    if (id < 1 || id > 11) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    CheckResult res;
    try {
      res = kChecks[id - 1]();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail << "exception: " << e.what();
    }
    if (res.pass) {
      std::printf("criterion %d: PASS\n", id);
    } else {
      std::printf("criterion %d: FAIL (%s)\n", id, res.detail.str().c_str());
      all_pass = false;
    }
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
