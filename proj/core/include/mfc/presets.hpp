#pragma once

#include <string>

#include "mfc/model.hpp"

namespace mfc {

enum class PresetName { sznajd, hegselmann_krause, crowd_exit, mass_transfer };

/// Throws std::invalid_argument for an unknown name.
PresetName parse_preset(const std::string& name);
std::string preset_to_string(PresetName name);

/// Tunables the literature leaves open for the crowd model.
struct CrowdOptions {
  double gamma = 0.3;
  double x_d = -1.0;  // running-cost target (left exit)
};

/// Builds the problem data for one of the four models. Densities written
/// with a normalization constant are normalized by trapezoid quadrature on
/// the given grid.
ModelSpec make_preset(PresetName name, const Grid1D& g,
                      const CrowdOptions& crowd = {});

/// Scales raw so that its trapezoid mass is 1.
/// Throws std::invalid_argument on non-positive mass.
Eigen::VectorXd normalize_density(const Grid1D& g, const Eigen::VectorXd& w,
                                  const Eigen::VectorXd& raw);

}  // namespace mfc
