#include "mfc/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace mfc {

PresetName parse_preset(const std::string& name) {
  if (name == "sznajd") return PresetName::sznajd;
  if (name == "hegselmann_krause") return PresetName::hegselmann_krause;
  if (name == "crowd_exit") return PresetName::crowd_exit;
  if (name == "mass_transfer") return PresetName::mass_transfer;
  throw std::invalid_argument("unknown preset: " + name);
}

std::string preset_to_string(PresetName name) {
  switch (name) {
    case PresetName::sznajd: return "sznajd";
    case PresetName::hegselmann_krause: return "hegselmann_krause";
    case PresetName::crowd_exit: return "crowd_exit";
    case PresetName::mass_transfer: return "mass_transfer";
  }
  return "?";
}

Eigen::VectorXd normalize_density(const Grid1D& g, const Eigen::VectorXd& w,
                                  const Eigen::VectorXd& raw) {
  const double mass = w.dot(raw);
  if (!(mass > 0))
    throw std::invalid_argument("normalize_density: non-positive mass");
  return raw / mass;
}

namespace {

double trapezoid_mass(const Grid1D& g, const std::function<double(double)>& f) {
  double mass = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double wi = (i == 0 || i == g.n - 1) ? 0.5 * g.h : g.h;
    mass += wi * f(g.nodes(i));
  }
  return mass;
}

double rho_plus(double x, double a, double b) {
  return std::max(-(x / b) * (x / b) + a, 0.0);
}

constexpr auto kConstOne = [](double, double, double) { return 1.0; };
constexpr auto kConstZero3 = [](double, double, double) { return 0.0; };
constexpr auto kConstZero2 = [](double, double) { return 0.0; };

void set_quadratic_tracking_cost(ModelSpec& spec, double x_d) {
  spec.e = [x_d](double, double x, double rho) {
    return (x - x_d) * (x - x_d) * rho;
  };
  spec.e_rho = [x_d](double, double x, double) { return (x - x_d) * (x - x_d); };
}

}  // namespace

ModelSpec make_preset(PresetName name, const Grid1D& g,
                      const CrowdOptions& crowd) {
  ModelSpec spec;
  spec.a = -1.0;
  spec.b = 1.0;
  spec.s = kConstOne;
  spec.s_rho = kConstZero3;
  spec.c = kConstZero2;
  spec.c_rho = kConstZero2;
  spec.selective_density_independent = true;

  switch (name) {
    case PresetName::sznajd: {
      spec.p = [](double x, double) { return x * x - 1.0; };
      spec.kernel_y_independent = true;
      set_quadratic_tracking_cost(spec, -0.5);
      spec.gamma = 0.5;
      spec.sigma = std::sqrt(0.02);
      spec.T = 8.0;
      auto raw = [](double x) {
        return rho_plus(x + 0.75, 0.05, 0.5) + rho_plus(x - 0.5, 0.15, 1.0);
      };
      const double C = 1.0 / trapezoid_mass(g, raw);
      spec.rho0 = [raw, C](double x) { return C * raw(x); };
      break;
    }
    case PresetName::hegselmann_krause: {
      const double kappa = 0.15;
      // closed ball: |x-y| == kappa is included
      spec.p = [kappa](double x, double y) {
        return std::abs(x - y) <= kappa ? 1.0 : 0.0;
      };
      set_quadratic_tracking_cost(spec, 0.0);
      spec.gamma = 2.5;
      spec.sigma = std::sqrt(0.002);
      spec.T = 10.0;
      auto raw = [](double x) { return 0.5 + 0.01 * (1.0 - x * x); };
      const double C = 1.0 / trapezoid_mass(g, raw);
      spec.rho0 = [raw, C](double x) { return C * raw(x); };
      break;
    }
    case PresetName::crowd_exit: {
      spec.p = [](double, double) { return 0.0; };
      spec.kernel_y_independent = true;
      spec.s = [](double, double, double rho) { return 1.0 - rho; };
      spec.s_rho = [](double, double, double) { return -1.0; };
      spec.selective_density_independent = false;
      set_quadratic_tracking_cost(spec, crowd.x_d);
      spec.gamma = crowd.gamma;
      spec.sigma = std::sqrt(0.04);
      spec.beta_a = -10.0;
      spec.beta_b = 10.0;
      spec.T = 3.0;
      spec.rho0 = [](double x) {
        return 0.9 * std::exp(-100.0 * (x + 0.4) * (x + 0.4)) +
               0.65 * std::exp(-150.0 * x * x);
      };
      break;
    }
    case PresetName::mass_transfer: {
      spec.p = [](double x, double) { return (x * x - 1.0) / 20.0; };
      spec.kernel_y_independent = true;
      spec.gamma = 0.1;
      spec.sigma = std::sqrt(0.02);
      spec.T = 3.0;
      const double mu0 = 0.0, s0 = 0.1;
      auto raw0 = [=](double x) {
        return std::exp(-(x - mu0) * (x - mu0) / (2.0 * s0 * s0));
      };
      const double C = 1.0 / trapezoid_mass(g, raw0);
      spec.rho0 = [raw0, C](double x) { return C * raw0(x); };

      const double mu1 = 0.5, s1 = 0.1, mu2 = -0.3, s2 = 0.15;
      auto raw_bar = [=](double x) {
        return std::exp(-(x - mu1) * (x - mu1) / (2.0 * s1 * s1)) +
               std::exp(-(x - mu2) * (x - mu2) / (2.0 * s2 * s2));
      };
      const double Cbar = 1.0 / trapezoid_mass(g, raw_bar);
      auto rho_bar = [raw_bar, Cbar](double x) { return Cbar * raw_bar(x); };
      spec.e = [rho_bar](double, double x, double rho) {
        const double d = rho - rho_bar(x);
        return d * d;
      };
      spec.e_rho = [rho_bar](double, double x, double rho) {
        return 2.0 * (rho - rho_bar(x));
      };
      spec.c = [rho_bar](double x, double rho_T) {
        const double d = rho_T - rho_bar(x);
        return d * d;
      };
      spec.c_rho = [rho_bar](double x, double rho_T) {
        return 2.0 * (rho_T - rho_bar(x));
      };
      break;
    }
  }
  return spec;
}

}  // namespace mfc
