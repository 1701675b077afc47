#include "mfc/nonlocal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mfc {

namespace {

Eigen::MatrixXd assemble(const Grid1D& g, const Eigen::VectorXd& w,
                         const Kernel& p, bool adjoint) {
  const int n = g.n;
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    const double xi = g.nodes(i);
    for (int j = 0; j < n; ++j) {
      const double xj = g.nodes(j);
      const double pij = adjoint ? p(xj, xi) : p(xi, xj);
      if (!std::isfinite(pij)) {
        throw std::runtime_error("interaction kernel not finite at nodes (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 ")");
      }
      const double disp = adjoint ? (xi - xj) : (xj - xi);
      M(i, j) = w(j) * pij * disp;
    }
  }
  return M;
}

}  // namespace

Eigen::MatrixXd interaction_matrix(const Grid1D& g, const Eigen::VectorXd& w,
                                   const Kernel& p) {
  return assemble(g, w, p, false);
}

Eigen::MatrixXd adjoint_interaction_matrix(const Grid1D& g,
                                           const Eigen::VectorXd& w,
                                           const Kernel& p) {
  return assemble(g, w, p, true);
}

}  // namespace mfc
