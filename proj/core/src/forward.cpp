#include "mfc/forward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mfc {

ForwardProblem::ForwardProblem(const ModelSpec& model, const Grid1D& g,
                               Eigen::MatrixXd P)
    : model_(&model), g_(g), P_(std::move(P)) {
  d1_ = first_derivative_matrix(g_);
  SpMat d2 = second_derivative_matrix(g_);
  apply_robin_rows(d2, g_, 0.0, 0.0);
  const double half_sigma2 = 0.5 * model.sigma * model.sigma;
  a_const_ = half_sigma2 * d2;
  // constant boundary-flux remainder of the ghost elimination
  const double two_over_h = 2.0 / g_.h;
  a_const_.coeffRef(0, 0) += two_over_h * model.beta_a;
  a_const_.coeffRef(g_.n - 1, g_.n - 1) -= two_over_h * model.beta_b;
  a_const_.makeCompressed();
}

Eigen::VectorXd ForwardProblem::selective(double t,
                                          const Eigen::VectorXd& rho) const {
  Eigen::VectorXd s(g_.n);
  for (int i = 0; i < g_.n; ++i) s(i) = model_->s(t, g_.nodes(i), rho(i));
  return s;
}

LinOp ForwardProblem::linear_operator(double t,
                                      const Eigen::VectorXd& u_t) const {
  if (!model_->selective_density_independent) return LinOp(SpMat(a_const_));

  // selective terms with s = s(t,x): -(D1 s) u - s (D1 u) on the diagonal
  // and -s u D1, plus their boundary ghost remainders
  const Eigen::VectorXd s = selective(t, Eigen::VectorXd::Zero(g_.n));
  const Eigen::VectorXd su = s.cwiseProduct(u_t);
  Eigen::VectorXd diag = -(d1_ * s).cwiseProduct(u_t) - s.cwiseProduct(d1_ * u_t);
  const double two_over_h = 2.0 / g_.h;
  diag(0) -= two_over_h * su(0);
  diag(g_.n - 1) += two_over_h * su(g_.n - 1);

  const SpMat* a_const = &a_const_;
  const SpMat* d1 = &d1_;
  return LinOp(g_.n, [a_const, d1, diag = std::move(diag),
                      su = std::move(su)](const Eigen::VectorXd& z) {
    return Eigen::VectorXd(*a_const * z + diag.cwiseProduct(z) -
                           su.cwiseProduct(*d1 * z));
  });
}

LinOp ForwardProblem::frozen_operator(double t, const Eigen::VectorXd& rho_t,
                                      const Eigen::VectorXd& u_t) const {
  const Eigen::VectorXd s = selective(t, rho_t);
  Eigen::VectorXd c = P_ * rho_t + s.cwiseProduct(u_t);
  Eigen::VectorXd diag = -(d1_ * c);
  const double two_over_h = 2.0 / g_.h;
  diag(0) -= two_over_h * c(0);
  diag(g_.n - 1) += two_over_h * c(g_.n - 1);

  const SpMat* a_const = &a_const_;
  const SpMat* d1 = &d1_;
  return LinOp(g_.n, [a_const, d1, diag = std::move(diag),
                      c = std::move(c)](const Eigen::VectorXd& z) {
    return Eigen::VectorXd(*a_const * z + diag.cwiseProduct(z) -
                           c.cwiseProduct(*d1 * z));
  });
}

Eigen::VectorXd ForwardProblem::nonlinear_rhs(double t,
                                              const Eigen::VectorXd& rho,
                                              const Eigen::VectorXd& u_t) const {
  const int n = g_.n;
  const Eigen::VectorXd Prho = P_ * rho;
  const Eigen::VectorXd d1rho = d1_ * rho;
  Eigen::VectorXd out = -(d1_ * Prho).cwiseProduct(rho) - Prho.cwiseProduct(d1rho);

  const double two_over_h = 2.0 / g_.h;
  double drift_a = Prho(0);
  double drift_b = Prho(n - 1);

  if (!model_->selective_density_independent) {
    const Eigen::VectorXd s = selective(t, rho);
    const Eigen::VectorXd su = s.cwiseProduct(u_t);
    out -= (d1_ * s).cwiseProduct(u_t).cwiseProduct(rho);
    out -= s.cwiseProduct(d1_ * u_t).cwiseProduct(rho);
    out -= su.cwiseProduct(d1rho);
    drift_a += su(0);
    drift_b += su(n - 1);
  }
  // state-dependent boundary flux remainders from the ghost elimination
  out(0) -= two_over_h * drift_a * rho(0);
  out(n - 1) += two_over_h * drift_b * rho(n - 1);

  if (!out.allFinite()) {
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(out(i)))
        throw std::runtime_error("forward drift not finite at node " +
                                 std::to_string(i));
  }
  return out;
}

TrajectoryField ForwardProblem::solve(const TimeGrid& tg,
                                      const TrajectoryField& u,
                                      const Eigen::VectorXd& rho0,
                                      const PhiOptions& opts) const {
  const int n = g_.n;
  if (u.slices() != tg.m + 1 || u.nodes() != n)
    throw std::invalid_argument("solve_forward: control mesh mismatch");

  TrajectoryField rho(tg.m + 1, n);
  rho.set_slice(0, rho0);

  const bool magnus = model_->selective_density_independent;
  const double tau = tg.tau();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);

  Eigen::VectorXd y = rho0;
  for (int k = 0; k < tg.m; ++k) {
    const double tk = tg.t(k);
    const Eigen::VectorXd u_k = u.slice(k);
    try {
      if (magnus) {
        const Eigen::VectorXd gk = nonlinear_rhs(tk, y, u_k);
        SemilinearSystem sys{
            [&](double t) { return linear_operator(t, u_k); },
            [&](double, const Eigen::VectorXd&) { return gk; }};
        y = exp_euler_magnus_step(sys, tk, tau, y, opts);
      } else {
        // full drift frozen at (t_k, rho_k): unconditionally stable, the
        // state-dependent remainder vanishes up to the discrete product rule
        y = phi1_combined(tau, frozen_operator(tk, y, u_k), y, zero, opts).y;
      }
    } catch (const std::exception& ex) {
      throw std::runtime_error("solve_forward failed at step " +
                               std::to_string(k) + ": " + ex.what());
    }
    if (!y.allFinite())
      throw std::runtime_error("solve_forward: non-finite state at step " +
                               std::to_string(k + 1));
    rho.set_slice(k + 1, y);
  }
  return rho;
}

}  // namespace mfc
