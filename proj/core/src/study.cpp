#include "mfc/study.hpp"

#include <cmath>
#include <stdexcept>

namespace mfc {

double fit_loglog_slope(const std::vector<int>& m,
                        const std::vector<double>& err) {
  const int k = static_cast<int>(m.size());
  if (k < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < k; ++i) {
    const double x = std::log(static_cast<double>(m[i]));
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ConvergenceReport convergence_study(const ModelSpec& model, const Grid1D& g,
                                    const std::vector<int>& m_list,
                                    const DescentConfig& cfg,
                                    const PhiOptions& opts,
                                    int ref_multiplier) {
  if (m_list.empty())
    throw std::invalid_argument("convergence_study: empty m list");
  for (size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1])
      throw std::invalid_argument("convergence_study: m list not ascending");

  const int m_ref = ref_multiplier * m_list.back();
  const TimeGrid tg_ref = build_time_grid(model.T, m_ref);
  const TrajectoryField u0_ref(m_ref + 1, g.n);
  const OptimizationResult ref = optimize(model, g, tg_ref, cfg, u0_ref, opts);
  const Eigen::VectorXd rho_T_ref = ref.rho.slice(m_ref);
  const Eigen::VectorXd psi_0_ref = ref.psi.slice(0);
  const double rho_scale = rho_T_ref.lpNorm<Eigen::Infinity>();
  const double psi_scale = psi_0_ref.lpNorm<Eigen::Infinity>();

  ConvergenceReport report;
  std::vector<double> errs_rho, errs_psi;
  for (int m : m_list) {
    const TimeGrid tg = build_time_grid(model.T, m);
    const TrajectoryField u0(m + 1, g.n);
    const OptimizationResult run = optimize(model, g, tg, cfg, u0, opts);
    ConvergenceRow row;
    row.m = m;
    row.err_rho_at_T =
        (run.rho.slice(m) - rho_T_ref).lpNorm<Eigen::Infinity>() / rho_scale;
    row.err_psi_at_0 =
        (run.psi.slice(0) - psi_0_ref).lpNorm<Eigen::Infinity>() / psi_scale;
    report.rows.push_back(row);
    errs_rho.push_back(row.err_rho_at_T);
    errs_psi.push_back(row.err_psi_at_0);
  }
  // sign flip: the fitted slope of err vs m is minus the temporal order
  report.slope_rho = -fit_loglog_slope(m_list, errs_rho);
  report.slope_psi = -fit_loglog_slope(m_list, errs_psi);
  return report;
}

}  // namespace mfc
