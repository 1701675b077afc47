#include "mfc/optimizer.hpp"

#include <cmath>

namespace mfc {

Eigen::VectorXd discretize(const Grid1D& g,
                           const std::function<double(double)>& f) {
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v(i) = f(g.nodes(i));
  return v;
}

namespace {

Eigen::VectorXd time_weights(const TimeGrid& tg) {
  Eigen::VectorXd wt = Eigen::VectorXd::Constant(tg.m + 1, tg.tau());
  wt(0) = 0.5 * tg.tau();
  wt(tg.m) = 0.5 * tg.tau();
  return wt;
}

}  // namespace

double evaluate_cost(const ModelSpec& model, const Grid1D& g,
                     const Eigen::VectorXd& w, const TimeGrid& tg,
                     const TrajectoryField& rho_traj,
                     const TrajectoryField& u) {
  const Eigen::VectorXd wt = time_weights(tg);
  double running = 0.0;
  for (int k = 0; k <= tg.m; ++k) {
    const double t = tg.t(k);
    double slice = 0.0;
    for (int i = 0; i < g.n; ++i) {
      const double r = rho_traj.values(k, i);
      const double uu = u.values(k, i);
      slice += w(i) * (model.e(t, g.nodes(i), r) + model.gamma * uu * uu * r);
    }
    running += wt(k) * slice;
  }
  double terminal = 0.0;
  for (int i = 0; i < g.n; ++i)
    terminal += w(i) * model.c(g.nodes(i), rho_traj.values(tg.m, i));
  return 0.5 * running + 0.5 * terminal;
}

TrajectoryField gradient_direction(const ModelSpec& model, const Grid1D& g,
                                   const TrajectoryField& rho,
                                   const TrajectoryField& psi,
                                   const TrajectoryField& u) {
  const SpMat d1 = first_derivative_matrix(g);
  const int m = rho.slices() - 1;
  TrajectoryField G(m + 1, g.n);
  const double dt = model.T / m;
  for (int k = 0; k <= m; ++k) {
    const double t = k * dt;
    const Eigen::VectorXd grad_psi = d1 * psi.slice(k);
    for (int i = 0; i < g.n; ++i) {
      G.values(k, i) = model.gamma * u.values(k, i) +
                       model.s(t, g.nodes(i), rho.values(k, i)) * grad_psi(i);
    }
  }
  return G;
}

double field_inner(const Eigen::VectorXd& w, const TimeGrid& tg,
                   const TrajectoryField& f, const TrajectoryField& h) {
  const Eigen::VectorXd wt = time_weights(tg);
  double acc = 0.0;
  for (int k = 0; k <= tg.m; ++k)
    acc += wt(k) * (f.values.row(k).cwiseProduct(h.values.row(k)) *
                    w.asDiagonal())
                       .sum();
  return acc;
}

OptimizationResult optimize(const ModelSpec& model, const Grid1D& g,
                            const TimeGrid& tg, const DescentConfig& cfg,
                            const TrajectoryField& u0, const PhiOptions& opts) {
  const Eigen::VectorXd w = trapezoid_weights(g);
  const Eigen::MatrixXd P = interaction_matrix(g, w, model.p);
  const Eigen::MatrixXd Q = adjoint_interaction_matrix(g, w, model.p);
  const ForwardProblem fwd(model, g, P);
  const AdjointProblem bwd(model, g, P, Q);
  const Eigen::VectorXd rho0 = discretize(g, model.rho0);

  OptimizationResult res;
  res.u = u0;
  res.rho = fwd.solve(tg, res.u, rho0, opts);
  double J = evaluate_cost(model, g, w, tg, res.rho, res.u);
  res.J_trace.push_back(J);

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    res.psi = bwd.solve(tg, res.rho, res.u, opts);
    const TrajectoryField G = gradient_direction(model, g, res.rho, res.psi, res.u);
    // directional derivative of J along -G is the density-weighted norm:
    // dJ[-G] = -<G,G>_rho, which is what Armijo has to compare against
    TrajectoryField rhoG;
    rhoG.values = res.rho.values.cwiseProduct(G.values);
    const double gg = field_inner(w, tg, rhoG, G);

    TrajectoryField u_next, rho_next;
    double J_next = J;
    if (cfg.fixed_lambda) {
      u_next.values = res.u.values - *cfg.fixed_lambda * G.values;
      rho_next = fwd.solve(tg, u_next, rho0, opts);
      J_next = evaluate_cost(model, g, w, tg, rho_next, u_next);
    } else {
      double lambda = cfg.lambda0;
      bool accepted = false;
      while (lambda >= cfg.min_lambda) {
        u_next.values = res.u.values - lambda * G.values;
        // a too-aggressive trial control can blow the state up; treat a
        // failed or non-finite solve like a rejected step
        bool probe_ok = true;
        try {
          rho_next = fwd.solve(tg, u_next, rho0, opts);
          J_next = evaluate_cost(model, g, w, tg, rho_next, u_next);
        } catch (const std::exception&) {
          probe_ok = false;
        }
        if (probe_ok && std::isfinite(J_next) &&
            J_next <= J - cfg.armijo_c * lambda * gg) {
          accepted = true;
          break;
        }
        lambda *= cfg.backtrack;
      }
      if (!accepted) {
        // line search exhausted: return the best iterate so far
        res.converged = false;
        return res;
      }
    }

    res.u = std::move(u_next);
    res.rho = std::move(rho_next);
    const double dJ = std::abs(J - J_next);
    J = J_next;
    res.J_trace.push_back(J);
    ++res.iterations;
    if (dJ < cfg.tol) {
      res.converged = true;
      break;
    }
  }
  // expose the adjoint consistent with the final control
  res.psi = bwd.solve(tg, res.rho, res.u, opts);
  return res;
}

}  // namespace mfc
