#pragma once

#include <optional>
#include <vector>

#include "mfc/adjoint.hpp"
#include "mfc/forward.hpp"

namespace mfc {

struct DescentConfig {
  double tol = 2e-3;            // stop when |J^{l+1} - J^l| < tol
  int max_iters = 200;
  double lambda0 = 1.0;
  double backtrack = 0.5;
  double min_lambda = 1e-8;
  std::optional<double> fixed_lambda;  // overrides the line search
  double armijo_c = 1e-4;
};

struct OptimizationResult {
  TrajectoryField u;
  TrajectoryField rho;
  TrajectoryField psi;
  std::vector<double> J_trace;  // J(u^l) per iteration
  int iterations = 0;
  bool converged = false;
};

/// Evaluates a pointwise function f(x) on the grid nodes.
Eigen::VectorXd discretize(const Grid1D& g,
                           const std::function<double(double)>& f);

/// J = 1/2 int_0^T int (e + gamma u^2 rho) dx dt + 1/2 int c(T,x,rho_T) dx,
/// trapezoidal in both space and time.
double evaluate_cost(const ModelSpec& model, const Grid1D& g,
                     const Eigen::VectorXd& w, const TimeGrid& tg,
                     const TrajectoryField& rho_traj, const TrajectoryField& u);

/// G(t,x) = gamma u + s(t,x,rho) (D1 psi), slice by slice.
TrajectoryField gradient_direction(const ModelSpec& model, const Grid1D& g,
                                   const TrajectoryField& rho,
                                   const TrajectoryField& psi,
                                   const TrajectoryField& u);

/// Space-time trapezoid inner product of two trajectory fields.
double field_inner(const Eigen::VectorXd& w, const TimeGrid& tg,
                   const TrajectoryField& f, const TrajectoryField& h);

/// Reduced-gradient loop: forward solve, backward solve, control update
/// with Armijo backtracking on J (or a fixed step), until J stabilizes.
OptimizationResult optimize(const ModelSpec& model, const Grid1D& g,
                            const TimeGrid& tg, const DescentConfig& cfg,
                            const TrajectoryField& u0,
                            const PhiOptions& opts = {});

}  // namespace mfc
