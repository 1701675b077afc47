#include "mfc/particles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace mfc {

namespace {

double reflect(double x, double a, double b) {
  while (x < a || x > b) {
    if (x < a) x = 2.0 * a - x;
    if (x > b) x = 2.0 * b - x;
  }
  return x;
}

}  // namespace

Eigen::VectorXd simulate_particles(const ModelSpec& model, const Grid1D& g,
                                   int N, int steps, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("simulate_particles: N < 1");
  if (steps < 1) throw std::invalid_argument("simulate_particles: steps < 1");
  const double a = g.a, b = g.b;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(a, b);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // rejection sampling from the initial density
  double fmax = 0.0;
  for (int i = 0; i < g.n; ++i) fmax = std::max(fmax, model.rho0(g.nodes(i)));
  fmax *= 1.05;
  std::vector<double> x(N);
  for (int i = 0; i < N; ++i) {
    double cand;
    do {
      cand = ux(rng);
    } while (u01(rng) * fmax > model.rho0(cand));
    x[i] = cand;
  }

  const double tau = model.T / steps;
  const double noise = model.sigma * std::sqrt(tau);
  std::vector<double> drift(N);
  for (int k = 0; k < steps; ++k) {
    if (model.kernel_y_independent) {
      double mean = 0.0;
      for (int i = 0; i < N; ++i) mean += x[i];
      mean /= N;
      for (int i = 0; i < N; ++i)
        drift[i] = model.p(x[i], mean) * (mean - x[i]);
    } else {
      for (int i = 0; i < N; ++i) {
        double acc = 0.0;
        for (int j = 0; j < N; ++j) acc += model.p(x[i], x[j]) * (x[j] - x[i]);
        drift[i] = acc / N;
      }
    }
    for (int i = 0; i < N; ++i)
      x[i] = reflect(x[i] + tau * drift[i] + noise * gauss(rng), a, b);
  }

  // node-centered bins of width h (h/2 at the ends); the trapezoid weights
  // equal the bin widths, so the trapezoid mass is exactly 1
  Eigen::VectorXd density = Eigen::VectorXd::Zero(g.n);
  for (int i = 0; i < N; ++i) {
    int idx = static_cast<int>(std::lround((x[i] - a) / g.h));
    idx = std::min(std::max(idx, 0), g.n - 1);
    density(idx) += 1.0;
  }
  for (int i = 0; i < g.n; ++i) {
    const double width = (i == 0 || i == g.n - 1) ? 0.5 * g.h : g.h;
    density(i) /= static_cast<double>(N) * width;
  }
  return density;
}

}  // namespace mfc
