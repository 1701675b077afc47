#pragma once

#include "mfc/model.hpp"

namespace mfc {

/// Semidiscrete forward density equation with flux boundary conditions.
///
/// The linear part is the diffusion with homogeneous-Neumann ghost rows plus
/// the constant boundary-flux entries; for a density-independent selective
/// function the selective advection joins a time-dependent linear part. All
/// state-dependent boundary flux remainders live in the nonlinear remainder.
class ForwardProblem {
 public:
  ForwardProblem(const ModelSpec& model, const Grid1D& g, Eigen::MatrixXd P);

  /// Constant part sigma^2/2 D2 (Neumann rows) + boundary flux entries.
  const SpMat& constant_linear() const { return a_const_; }

  /// Linear operator frozen at time t (density-independent selective path).
  LinOp linear_operator(double t, const Eigen::VectorXd& u_t) const;

  /// Full operator with the drift coefficient P rho + s(rho) u frozen at the
  /// given state; used when the selective function depends on the density,
  /// where an explicit advective remainder would impose a CFL limit.
  LinOp frozen_operator(double t, const Eigen::VectorXd& rho_t,
                        const Eigen::VectorXd& u_t) const;

  /// Nonlinear remainder g_F(t, rho) for the control slice u_t.
  /// Throws std::runtime_error on non-finite drift, naming the node.
  Eigen::VectorXd nonlinear_rhs(double t, const Eigen::VectorXd& rho,
                                const Eigen::VectorXd& u_t) const;

  /// Marches rho0 over the full time grid; returns all m+1 slices.
  TrajectoryField solve(const TimeGrid& tg, const TrajectoryField& u,
                        const Eigen::VectorXd& rho0,
                        const PhiOptions& opts = {}) const;

  const Grid1D& grid() const { return g_; }
  const SpMat& d1() const { return d1_; }

 private:
  Eigen::VectorXd selective(double t, const Eigen::VectorXd& rho) const;

  const ModelSpec* model_;
  Grid1D g_;
  Eigen::MatrixXd P_;
  SpMat d1_;
  SpMat a_const_;
};

}  // namespace mfc
