#pragma once

#include <string>

#include "mfc/model.hpp"

namespace mfc {

/// Long-format trajectory CSV: header "t,x,value", row-major by time then
/// node, 17 significant digits (lossless double round trip).
void write_field_csv(const std::string& path, const TimeGrid& tg,
                     const Grid1D& g, const TrajectoryField& field);

/// Reads a long-format trajectory CSV written by write_field_csv.
TrajectoryField read_field_csv(const std::string& path, int m_plus_1, int n);

/// "iter,J" per descent iteration.
void write_functional_csv(const std::string& path,
                          const std::vector<double>& J_trace);

/// Single spatial profile: "x,value".
void write_profile_csv(const std::string& path, const Grid1D& g,
                       const Eigen::VectorXd& values);

}  // namespace mfc
