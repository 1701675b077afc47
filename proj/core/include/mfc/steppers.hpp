#pragma once

#include <functional>

#include "mfc/matfun.hpp"

namespace mfc {

/// Uniform time mesh t_k = k*T/m, k = 0..m.
struct TimeGrid {
  double T = 0.0;
  int m = 0;
  Eigen::VectorXd t;

  double tau() const { return T / m; }
};

TimeGrid build_time_grid(double T, int m);

/// y'(t) = A(t) y + g(t, y). Constant-coefficient systems ignore t in
/// linear().
struct SemilinearSystem {
  std::function<LinOp(double)> linear;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> nonlinear;
};

/// One exponential Euler step for a constant linear part:
///   y_{k+1} = e^{tau A} y_k + tau phi1(tau A) g(t_k, y_k).
/// Exact on constant-coefficient linear inhomogeneous systems.
Eigen::VectorXd exp_euler_step(const SemilinearSystem& sys, double t_k,
                               double tau, const Eigen::VectorXd& y,
                               const PhiOptions& opts = {});

/// Same formula with the time-dependent linear part frozen at t_anchor
/// (t_k for forward marching; t_{k+1} for a time-reversed backward system).
Eigen::VectorXd exp_euler_magnus_step(const SemilinearSystem& sys,
                                      double t_anchor, double tau,
                                      const Eigen::VectorXd& y,
                                      const PhiOptions& opts = {});

}  // namespace mfc
