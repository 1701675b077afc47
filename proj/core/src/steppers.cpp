#include "mfc/steppers.hpp"

#include <stdexcept>

namespace mfc {

TimeGrid build_time_grid(double T, int m) {
  if (!(T > 0) || m < 1)
    throw std::invalid_argument("build_time_grid: requires T > 0, m >= 1");
  TimeGrid tg;
  tg.T = T;
  tg.m = m;
  tg.t = Eigen::VectorXd::LinSpaced(m + 1, 0.0, T);
  return tg;
}

Eigen::VectorXd exp_euler_magnus_step(const SemilinearSystem& sys,
                                      double t_anchor, double tau,
                                      const Eigen::VectorXd& y,
                                      const PhiOptions& opts) {
  if (!(tau > 0)) throw std::invalid_argument("exp_euler step: tau <= 0");
  const LinOp A = sys.linear(t_anchor);
  const Eigen::VectorXd g = sys.nonlinear(t_anchor, y);
  return phi1_combined(tau, A, y, g, opts).y;
}

Eigen::VectorXd exp_euler_step(const SemilinearSystem& sys, double t_k,
                               double tau, const Eigen::VectorXd& y,
                               const PhiOptions& opts) {
  return exp_euler_magnus_step(sys, t_k, tau, y, opts);
}

}  // namespace mfc
