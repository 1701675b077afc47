#pragma once

#include "mfc/model.hpp"

namespace mfc {

/// Backward adjoint equation: -psi' = A_B(t) psi + g_B(t), psi(T) = psi_T,
/// marched by exponential Euler-Magnus with the operator frozen at t_{k+1}.
class AdjointProblem {
 public:
  AdjointProblem(const ModelSpec& model, const Grid1D& g, Eigen::MatrixXd P,
                 Eigen::MatrixXd Q);

  /// A_B(t) psi = sigma^2/2 D2 psi + (P rho).(D1 psi)
  ///            + (s + rho s_rho) u . (D1 psi) + Q (rho . (D1 psi)),
  /// with Robin rows sigma^2/2 psi' = -beta psi folded into the diffusion.
  LinOp linear_operator(double t, const Eigen::VectorXd& rho_t,
                        const Eigen::VectorXd& u_t) const;

  /// g_B(t) = 1/2 e_rho(t,x,rho) + gamma/2 u^2.
  Eigen::VectorXd source(double t, const Eigen::VectorXd& rho_t,
                         const Eigen::VectorXd& u_t) const;

  /// psi_T = 1/2 c_rho(x, rho_T); identically zero for a null terminal cost.
  static Eigen::VectorXd terminal_condition(const ModelSpec& model,
                                            const Grid1D& g,
                                            const Eigen::VectorXd& rho_T);

  /// Marches psi_T back to t = 0; returns all m+1 slices.
  TrajectoryField solve(const TimeGrid& tg, const TrajectoryField& rho_traj,
                        const TrajectoryField& u,
                        const PhiOptions& opts = {}) const;

 private:
  const ModelSpec* model_;
  Grid1D g_;
  Eigen::MatrixXd P_;
  Eigen::MatrixXd Q_;
  SpMat d1_;
  SpMat diff_robin_;  // sigma^2/2 D2 with the adjoint Robin rows
};

}  // namespace mfc
