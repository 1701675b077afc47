#include "mfc/grid.hpp"

#include <stdexcept>
#include <vector>

namespace mfc {

Grid1D build_grid(double a, double b, int n) {
  if (!(b > a)) throw std::invalid_argument("build_grid: requires b > a");
  if (n < 3) throw std::invalid_argument("build_grid: requires n >= 3");
  Grid1D g;
  g.a = a;
  g.b = b;
  g.n = n;
  g.h = (b - a) / (n - 1);
  g.nodes = Eigen::VectorXd::LinSpaced(n, a, b);
  return g;
}

Eigen::VectorXd trapezoid_weights(const Grid1D& g) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(g.n, g.h);
  w(0) = 0.5 * g.h;
  w(g.n - 1) = 0.5 * g.h;
  return w;
}

SpMat first_derivative_matrix(const Grid1D& g) {
  const int n = g.n;
  const double h = g.h;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * n + 2);
  // one-sided second-order stencils at the ends
  trip.emplace_back(0, 0, -1.5 / h);
  trip.emplace_back(0, 1, 2.0 / h);
  trip.emplace_back(0, 2, -0.5 / h);
  for (int i = 1; i < n - 1; ++i) {
    trip.emplace_back(i, i - 1, -0.5 / h);
    trip.emplace_back(i, i + 1, 0.5 / h);
  }
  trip.emplace_back(n - 1, n - 3, 0.5 / h);
  trip.emplace_back(n - 1, n - 2, -2.0 / h);
  trip.emplace_back(n - 1, n - 1, 1.5 / h);
  SpMat d1(n, n);
  d1.setFromTriplets(trip.begin(), trip.end());
  return d1;
}

SpMat second_derivative_matrix(const Grid1D& g) {
  const int n = g.n;
  const double h2 = g.h * g.h;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * n);
  for (int i = 1; i < n - 1; ++i) {
    trip.emplace_back(i, i - 1, 1.0 / h2);
    trip.emplace_back(i, i, -2.0 / h2);
    trip.emplace_back(i, i + 1, 1.0 / h2);
  }
  SpMat d2(n, n);
  d2.setFromTriplets(trip.begin(), trip.end());
  return d2;
}

void apply_robin_rows(SpMat& d2, const Grid1D& g, double ca, double cb) {
  const int n = g.n;
  const double h = g.h;
  const double h2 = h * h;
  d2.coeffRef(0, 0) = (-2.0 - 2.0 * h * ca) / h2;
  d2.coeffRef(0, 1) = 2.0 / h2;
  d2.coeffRef(n - 1, n - 2) = 2.0 / h2;
  d2.coeffRef(n - 1, n - 1) = (-2.0 + 2.0 * h * cb) / h2;
  d2.makeCompressed();
}

}  // namespace mfc
