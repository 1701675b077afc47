#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mfc/csv.hpp"
#include "mfc/particles.hpp"
#include "mfc/study.hpp"

namespace fs = std::filesystem;
using namespace mfc;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Options {
  std::string preset = "sznajd";
  int n = 200;
  int m = 200;
  double T = -1.0;  // < 0: keep the preset horizon
  double tol = 2e-3;
  int max_iters = 200;
  double lambda = 1.0;
  std::string lambda_mode = "armijo";
  double krylov_tol = 1e-10;
  int dense_threshold = 400;
  std::string out = ".";
  std::uint64_t seed = 0;
  std::vector<int> m_list;
  int ref_multiplier = 4;
  int N = 100000;
  double gamma = -1.0;  // < 0: keep the preset value
  double x_d = -1.0;
};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ModelSpec build_model(const Options& o, const Grid1D& g) {
  CrowdOptions crowd;
  if (o.gamma > 0) crowd.gamma = o.gamma;
  crowd.x_d = o.x_d;
  ModelSpec model = make_preset(parse_preset(o.preset), g, crowd);
  if (o.T > 0) model.T = o.T;
  if (o.gamma > 0) model.gamma = o.gamma;
  return model;
}

DescentConfig build_descent(const Options& o) {
  DescentConfig cfg;
  cfg.tol = o.tol;
  cfg.max_iters = o.max_iters;
  if (o.lambda_mode == "fixed")
    cfg.fixed_lambda = o.lambda;
  else
    cfg.lambda0 = o.lambda;
  return cfg;
}

PhiOptions build_phi(const Options& o) {
  PhiOptions opts;
  opts.krylov_tol = o.krylov_tol;
  opts.dense_threshold = o.dense_threshold;
  return opts;
}

int cmd_run(const Options& o) {
  const Grid1D g = build_grid(-1.0, 1.0, o.n);
  const ModelSpec model = build_model(o, g);
  const TimeGrid tg = build_time_grid(model.T, o.m);
  const DescentConfig cfg = build_descent(o);
  const PhiOptions opts = build_phi(o);
  fs::create_directories(o.out);

  const auto t0 = std::chrono::steady_clock::now();
  const OptimizationResult res =
      optimize(model, g, tg, cfg, TrajectoryField(tg.m + 1, g.n), opts);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const fs::path dir(o.out);
  write_field_csv((dir / "density.csv").string(), tg, g, res.rho);
  write_field_csv((dir / "control.csv").string(), tg, g, res.u);
  write_field_csv((dir / "adjoint.csv").string(), tg, g, res.psi);
  write_functional_csv((dir / "functional.csv").string(), res.J_trace);

  std::FILE* f = std::fopen((dir / "run_summary").string().c_str(), "w");
  if (!f) throw std::runtime_error("cannot write run_summary");
  std::fprintf(f, "preset = %s\n", o.preset.c_str());
  std::fprintf(f, "iterations = %d\n", res.iterations);
  std::fprintf(f, "final_J = %s\n", fmt17(res.J_trace.back()).c_str());
  std::fprintf(f, "wall_time_s = %.3f\n", wall);
  std::fprintf(f, "converged = %s\n", res.converged ? "true" : "false");
  std::fclose(f);

  std::cout << "iterations=" << res.iterations
            << " final_J=" << fmt17(res.J_trace.back())
            << " converged=" << (res.converged ? "true" : "false") << "\n";
  return 0;
}

int cmd_converge(const Options& o) {
  if (o.m_list.empty())
    throw CLI::ValidationError("--m-list", "converge requires --m-list");
  const Grid1D g = build_grid(-1.0, 1.0, o.n);
  const ModelSpec model = build_model(o, g);
  const DescentConfig cfg = build_descent(o);
  const PhiOptions opts = build_phi(o);
  fs::create_directories(o.out);

  const ConvergenceReport rep =
      convergence_study(model, g, o.m_list, cfg, opts, o.ref_multiplier);

  const fs::path path = fs::path(o.out) / "convergence.csv";
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw std::runtime_error("cannot write convergence.csv");
  std::fprintf(f, "m,err_rho_at_T,err_psi_at_0\n");
  for (const auto& r : rep.rows)
    std::fprintf(f, "%d,%s,%s\n", r.m, fmt17(r.err_rho_at_T).c_str(),
                 fmt17(r.err_psi_at_0).c_str());
  std::fclose(f);

  std::cout << "slope_rho=" << fmt17(rep.slope_rho)
            << " slope_psi=" << fmt17(rep.slope_psi) << "\n";
  return 0;
}

int cmd_particles(const Options& o) {
  const Grid1D g = build_grid(-1.0, 1.0, o.n);
  const ModelSpec model = build_model(o, g);
  if (model.beta_a != 0.0 || model.beta_b != 0.0)
    throw CLI::ValidationError(
        "--preset", "particle validation requires a zero-flux preset");
  if (o.N < 1) throw CLI::ValidationError("--N", "N must be positive");
  fs::create_directories(o.out);

  const Eigen::VectorXd hist = simulate_particles(model, g, o.N, o.m, o.seed);
  write_profile_csv((fs::path(o.out) / "particles.csv").string(), g, hist);

  // reference: uncontrolled PDE solve on the same mesh
  const Eigen::VectorXd w = trapezoid_weights(g);
  const Eigen::MatrixXd P = interaction_matrix(g, w, model.p);
  const ForwardProblem fwd(model, g, P);
  const TimeGrid tg = build_time_grid(model.T, o.m);
  const Eigen::VectorXd rho_T =
      fwd.solve(tg, TrajectoryField(tg.m + 1, g.n), discretize(g, model.rho0),
                build_phi(o))
          .slice(tg.m);
  const double l1 = w.dot((hist - rho_T).cwiseAbs());
  std::cout << "l1_distance=" << fmt17(l1) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field selective control solver"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.set_config("--config")->description("key = value file, # comments");
  app.add_option("--preset", o.preset, "model name")
      ->check(CLI::IsMember(
          {"sznajd", "hegselmann_krause", "crowd_exit", "mass_transfer"}));
  app.add_option("--n", o.n, "spatial nodes")->check(CLI::Range(3, 100000));
  app.add_option("--m", o.m, "time steps")->check(CLI::PositiveNumber);
  app.add_option("--T", o.T, "horizon override");
  app.add_option("--tol", o.tol, "descent stopping tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iters", o.max_iters, "descent iteration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--lambda", o.lambda, "step size (initial or fixed)")
      ->check(CLI::PositiveNumber);
  app.add_option("--lambda-mode", o.lambda_mode, "armijo or fixed")
      ->check(CLI::IsMember({"armijo", "fixed"}));
  app.add_option("--krylov-tol", o.krylov_tol, "phi-action tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--dense-threshold", o.dense_threshold,
                 "max dimension for the dense phi path");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--m-list", o.m_list, "ascending step counts")
      ->delimiter(',');
  app.add_option("--ref-multiplier", o.ref_multiplier,
                 "reference mesh factor for converge")
      ->check(CLI::PositiveNumber);
  app.add_option("--N", o.N, "particle count");
  app.add_option("--gamma", o.gamma, "control penalization override");
  app.add_option("--xd", o.x_d, "crowd running-cost target");

  auto* run = app.add_subcommand("run", "optimize one model, write CSVs");
  auto* conv = app.add_subcommand("converge", "temporal convergence study");
  auto* part = app.add_subcommand("particles", "Monte Carlo cross-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(o);
    if (conv->parsed()) return cmd_converge(o);
    return cmd_particles(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitSolver;
  }
}
