#pragma once

#include <functional>

#include "mfc/grid.hpp"

namespace mfc {

/// Pairwise interaction weight p(x,y).
using Kernel = std::function<double(double, double)>;

/// Quadrature discretization of the forward interaction drift:
///   (P rho)_i = sum_j w_j p(x_i,x_j) (x_j - x_i) rho_j
/// approximating the integral of p(x_i,y)(y - x_i) rho(y).
/// Throws std::runtime_error if the kernel evaluates to NaN/Inf,
/// reporting the offending node pair.
Eigen::MatrixXd interaction_matrix(const Grid1D& g, const Eigen::VectorXd& w,
                                   const Kernel& p);

/// Adjoint-side counterpart, applied by the backward solver to
/// z = rho .* (D1 psi):
///   (Q z)_i = sum_j w_j p(x_j,x_i) (x_i - x_j) z_j.
/// Kernel arguments are transposed relative to interaction_matrix and the
/// displacement sign is flipped; for symmetric kernels Q = -P entrywise.
Eigen::MatrixXd adjoint_interaction_matrix(const Grid1D& g,
                                           const Eigen::VectorXd& w,
                                           const Kernel& p);

}  // namespace mfc
