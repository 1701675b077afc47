#pragma once

#include <vector>

#include "mfc/optimizer.hpp"
#include "mfc/presets.hpp"

namespace mfc {

struct ConvergenceRow {
  int m = 0;
  double err_rho_at_T = 0.0;  // max-norm relative error vs the reference
  double err_psi_at_0 = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double slope_rho = 0.0;  // fitted temporal order (positive); 0 with one row
  double slope_psi = 0.0;
};

/// Full optimize-to-stabilization for every m in the ascending list plus a
/// fine self-reference run (ref_multiplier * max m, same n), then max-norm
/// relative errors of rho(T) and psi(0) against the reference.
ConvergenceReport convergence_study(const ModelSpec& model, const Grid1D& g,
                                    const std::vector<int>& m_list,
                                    const DescentConfig& cfg,
                                    const PhiOptions& opts = {},
                                    int ref_multiplier = 4);

/// Least-squares slope of log(err) vs log(m).
double fit_loglog_slope(const std::vector<int>& m,
                        const std::vector<double>& err);

}  // namespace mfc
