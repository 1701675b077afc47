#include "mfc/adjoint.hpp"

#include <stdexcept>
#include <string>

namespace mfc {

AdjointProblem::AdjointProblem(const ModelSpec& model, const Grid1D& g,
                               Eigen::MatrixXd P, Eigen::MatrixXd Q)
    : model_(&model), g_(g), P_(std::move(P)), Q_(std::move(Q)) {
  d1_ = first_derivative_matrix(g_);
  SpMat d2 = second_derivative_matrix(g_);
  // sigma^2/2 psi'(a) = -beta_a psi(a)  =>  psi'(a) = c_a psi(a)
  const double half_sigma2 = 0.5 * model.sigma * model.sigma;
  apply_robin_rows(d2, g_, -model.beta_a / half_sigma2,
                   -model.beta_b / half_sigma2);
  diff_robin_ = half_sigma2 * d2;
}

LinOp AdjointProblem::linear_operator(double t, const Eigen::VectorXd& rho_t,
                                      const Eigen::VectorXd& u_t) const {
  const int n = g_.n;
  Eigen::VectorXd coef = P_ * rho_t;
  for (int i = 0; i < n; ++i) {
    const double x = g_.nodes(i);
    const double r = rho_t(i);
    coef(i) += (model_->s(t, x, r) + r * model_->s_rho(t, x, r)) * u_t(i);
  }
  const SpMat* diff = &diff_robin_;
  const SpMat* d1 = &d1_;
  const Eigen::MatrixXd* Q = &Q_;
  return LinOp(n, [diff, d1, Q, coef = std::move(coef),
                   rho = rho_t](const Eigen::VectorXd& z) {
    const Eigen::VectorXd d1z = *d1 * z;
    return Eigen::VectorXd(*diff * z + coef.cwiseProduct(d1z) +
                           *Q * rho.cwiseProduct(d1z));
  });
}

Eigen::VectorXd AdjointProblem::source(double t, const Eigen::VectorXd& rho_t,
                                       const Eigen::VectorXd& u_t) const {
  const int n = g_.n;
  Eigen::VectorXd gb(n);
  for (int i = 0; i < n; ++i) {
    gb(i) = 0.5 * (model_->e_rho(t, g_.nodes(i), rho_t(i)) +
                   model_->gamma * u_t(i) * u_t(i));
  }
  if (!gb.allFinite())
    throw std::runtime_error("adjoint source not finite");
  return gb;
}

Eigen::VectorXd AdjointProblem::terminal_condition(const ModelSpec& model,
                                                   const Grid1D& g,
                                                   const Eigen::VectorXd& rho_T) {
  Eigen::VectorXd psi_T(g.n);
  for (int i = 0; i < g.n; ++i)
    psi_T(i) = 0.5 * model.c_rho(g.nodes(i), rho_T(i));
  return psi_T;
}

TrajectoryField AdjointProblem::solve(const TimeGrid& tg,
                                      const TrajectoryField& rho_traj,
                                      const TrajectoryField& u,
                                      const PhiOptions& opts) const {
  const int n = g_.n;
  if (rho_traj.slices() != tg.m + 1 || u.slices() != tg.m + 1)
    throw std::invalid_argument("solve_backward: mesh mismatch");

  TrajectoryField psi(tg.m + 1, n);
  Eigen::VectorXd y = terminal_condition(*model_, g_, rho_traj.slice(tg.m));
  psi.set_slice(tg.m, y);
  const double tau = tg.tau();

  for (int k = tg.m - 1; k >= 0; --k) {
    const double t_next = tg.t(k + 1);
    const Eigen::VectorXd rho_next = rho_traj.slice(k + 1);
    const Eigen::VectorXd u_next = u.slice(k + 1);
    try {
      SemilinearSystem sys{
          [&](double t) { return linear_operator(t, rho_next, u_next); },
          [&](double t, const Eigen::VectorXd&) {
            return source(t, rho_next, u_next);
          }};
      y = exp_euler_magnus_step(sys, t_next, tau, y, opts);
    } catch (const std::exception& ex) {
      throw std::runtime_error("solve_backward failed at step " +
                               std::to_string(k) + ": " + ex.what());
    }
    if (!y.allFinite())
      throw std::runtime_error("solve_backward: non-finite state at step " +
                               std::to_string(k));
    psi.set_slice(k, y);
  }
  return psi;
}

}  // namespace mfc
