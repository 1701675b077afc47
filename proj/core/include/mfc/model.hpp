#pragma once

#include <functional>

#include "mfc/grid.hpp"
#include "mfc/nonlocal.hpp"
#include "mfc/steppers.hpp"

namespace mfc {

/// Problem data: interaction kernel, selective function, costs, diffusion,
/// control penalization, boundary fluxes, horizon, and initial density.
/// All densities of (t,x,rho) are pointwise scalar callables.
struct ModelSpec {
  double a = -1.0;
  double b = 1.0;

  Kernel p;
  std::function<double(double, double, double)> s;      // s(t,x,rho)
  std::function<double(double, double, double)> s_rho;  // D_rho s
  std::function<double(double, double, double)> e;      // running cost
  std::function<double(double, double, double)> e_rho;  // D_rho e
  std::function<double(double, double)> c;              // terminal cost c(x, rho_T)
  std::function<double(double, double)> c_rho;          // D_rho c

  double sigma = 0.1;   // diffusion coefficient (not squared)
  double gamma = 0.0;   // control penalization
  double beta_a = 0.0;  // boundary flux at a (zero-flux when 0)
  double beta_b = 0.0;  // boundary flux at b
  double T = 1.0;

  std::function<double(double)> rho0;

  // When set, s_rho == 0 and the selective terms join the time-dependent
  // linear part of the forward system.
  bool selective_density_independent = false;

  // Fast particle drift when p(x,y) does not depend on y.
  bool kernel_y_independent = false;
};

/// Time-indexed grid function: row k holds the slice at t_k ((m+1) x n).
struct TrajectoryField {
  Eigen::MatrixXd values;

  TrajectoryField() = default;
  TrajectoryField(int m_plus_1, int n) : values(Eigen::MatrixXd::Zero(m_plus_1, n)) {}

  int slices() const { return static_cast<int>(values.rows()); }
  int nodes() const { return static_cast<int>(values.cols()); }
  Eigen::VectorXd slice(int k) const { return values.row(k).transpose(); }
  void set_slice(int k, const Eigen::VectorXd& v) { values.row(k) = v.transpose(); }
};

}  // namespace mfc
