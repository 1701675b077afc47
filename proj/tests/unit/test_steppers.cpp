#include <cmath>
#include <random>

#include "doctest.h"
#include "mfc/steppers.hpp"

using namespace mfc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("time grid is uniform") {
  const TimeGrid tg = build_time_grid(2.0, 4);
  CHECK(tg.t(0) == 0.0);
  CHECK(tg.t(4) == 2.0);
  CHECK(tg.tau() == doctest::Approx(0.5));
  CHECK_THROWS_AS(build_time_grid(-1.0, 4), std::invalid_argument);
}

TEST_CASE("exponential Euler is exact for y' = -y + 1") {
  SemilinearSystem sys{
      [](double) { return LinOp(MatrixXd::Constant(1, 1, -1.0)); },
      [](double, const VectorXd&) { return VectorXd::Constant(1, 1.0); }};
  const VectorXd y1 = exp_euler_step(sys, 0.0, 1.0, VectorXd::Zero(1));
  CHECK(y1(0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("identity flow when A = 0 and g = 0") {
  SemilinearSystem sys{
      [](double) { return LinOp(MatrixXd::Zero(3, 3)); },
      [](double, const VectorXd&) { return VectorXd::Zero(3); }};
  VectorXd y0(3);
  y0 << 1.0, -2.0, 0.5;
  CHECK((exp_euler_step(sys, 0.0, 0.8, y0) - y0).lpNorm<Eigen::Infinity>() <= 1e-15);
}

TEST_CASE("one step solves linear inhomogeneous systems exactly") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = 12;
  MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
  A.diagonal().array() -= 3.0;
  VectorXd b(n), y0(n);
  for (int i = 0; i < n; ++i) {
    b(i) = gauss(rng);
    y0(i) = gauss(rng);
  }

  SemilinearSystem sys{[&](double) { return LinOp(A); },
                       [&](double, const VectorXd&) { return b; }};
  const double tau = 1.7;
  const VectorXd got = exp_euler_step(sys, 0.0, tau, y0);

  // independent route: y(tau) = e^{tau A} y0 + A^{-1}(e^{tau A} - I) b
  const MatrixXd E = expm_dense(tau * A);
  const VectorXd exact =
      E * y0 + A.partialPivLu().solve((E - MatrixXd::Identity(n, n)) * b);
  CHECK((got - exact).lpNorm<Eigen::Infinity>() <=
        1e-12 * exact.lpNorm<Eigen::Infinity>());
}

TEST_CASE("magnus step freezes the linear part at the anchor") {
  // y' = (-1 - t) y, anchor 0: one step of 0.1 gives e^{-0.1}
  SemilinearSystem sys{
      [](double t) { return LinOp(MatrixXd::Constant(1, 1, -1.0 - t)); },
      [](double, const VectorXd&) { return VectorXd::Zero(1); }};
  const VectorXd y1 = exp_euler_magnus_step(sys, 0.0, 0.1, VectorXd::Ones(1));
  CHECK(y1(0) == doctest::Approx(std::exp(-0.1)).epsilon(1e-13));
}

TEST_CASE("pure source system accumulates tau g") {
  SemilinearSystem sys{
      [](double) { return LinOp(MatrixXd::Zero(2, 2)); },
      [](double, const VectorXd&) { return VectorXd::Ones(2); }};
  const VectorXd y1 = exp_euler_magnus_step(sys, 0.0, 0.25, VectorXd::Zero(2));
  CHECK(y1(0) == doctest::Approx(0.25));
}

TEST_CASE("first order convergence on a manufactured semilinear system") {
  // y' = -2y + cos(t) y^2 with y(0) = 0.5; reference by fine stepping
  auto solve_with = [](int m) {
    SemilinearSystem sys{
        [](double) { return LinOp(MatrixXd::Constant(1, 1, -2.0)); },
        [](double t, const VectorXd& y) {
          return VectorXd::Constant(1, std::cos(t) * y(0) * y(0));
        }};
    const TimeGrid tg = build_time_grid(1.0, m);
    VectorXd y = VectorXd::Constant(1, 0.5);
    for (int k = 0; k < m; ++k) y = exp_euler_step(sys, tg.t(k), tg.tau(), y);
    return y(0);
  };
  const double ref = solve_with(51200);
  std::vector<double> errs;
  std::vector<int> ms = {100, 200, 400, 800};
  for (int m : ms) errs.push_back(std::abs(solve_with(m) - ref));
  for (size_t i = 1; i < errs.size(); ++i) {
    const double slope = std::log2(errs[i - 1] / errs[i]);
    CHECK(slope > 0.85);
    CHECK(slope < 1.15);
  }
}

TEST_CASE("A-stability surrogate: one huge step of the heat operator") {
  const int n = 500;
  Eigen::SparseMatrix<double> A(n, n);
  std::vector<Eigen::Triplet<double>> trip;
  const double h = 1.0 / (n + 1);
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, -2.0 / (h * h));
    if (i > 0) trip.emplace_back(i, i - 1, 1.0 / (h * h));
    if (i + 1 < n) trip.emplace_back(i, i + 1, 1.0 / (h * h));
  }
  A.setFromTriplets(trip.begin(), trip.end());
  SemilinearSystem sys{[&](double) { return LinOp(A); },
                       [&](double, const VectorXd&) { return VectorXd::Zero(n); }};
  VectorXd y0 = VectorXd::Random(n);
  const VectorXd yT = exp_euler_step(sys, 0.0, 5.0, y0);
  CHECK(yT.norm() <= y0.norm());
}
