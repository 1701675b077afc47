#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace mfc {

using SpMat = Eigen::SparseMatrix<double>;

/// Uniform node-based mesh on [a,b] with n nodes, spacing h = (b-a)/(n-1).
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  int n = 0;
  double h = 0.0;
  Eigen::VectorXd nodes;
};

/// Throws std::invalid_argument unless b > a and n >= 3.
Grid1D build_grid(double a, double b, int n);

/// Trapezoidal quadrature weights: h/2 at the endpoints, h in the interior.
Eigen::VectorXd trapezoid_weights(const Grid1D& g);

/// Second-order first derivative: centered in the interior, one-sided
/// three-point stencils at the boundary rows. Exact on quadratics.
SpMat first_derivative_matrix(const Grid1D& g);

/// Standard three-point Laplacian on the interior rows. Boundary rows are
/// left zero; close them with apply_robin_rows.
SpMat second_derivative_matrix(const Grid1D& g);

/// Closes the boundary rows of a second_derivative_matrix for Robin
/// conditions y'(a) = ca*y(a), y'(b) = cb*y(b) by eliminating the ghost
/// values y_0 = y_2 - 2h*ca*y_1 and y_{n+1} = y_{n-1} + 2h*cb*y_n.
void apply_robin_rows(SpMat& d2, const Grid1D& g, double ca, double cb);

}  // namespace mfc
