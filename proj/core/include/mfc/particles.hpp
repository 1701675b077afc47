#pragma once

#include <cstdint>

#include "mfc/model.hpp"

namespace mfc {

/// Euler-Maruyama simulation of the uncontrolled interacting particle
/// system with reflecting boundaries (zero-flux analogue). Returns the
/// empirical density binned to node-centered cells; its trapezoid mass is
/// 1 by construction.
///
/// Drift: N^-1 sum_j p(x_i,x_j)(x_j - x_i); an O(N) fast path is used
/// when the kernel does not depend on its second argument.
Eigen::VectorXd simulate_particles(const ModelSpec& model, const Grid1D& g,
                                   int N, int steps, std::uint64_t seed);

}  // namespace mfc
