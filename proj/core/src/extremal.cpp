#include "amt/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "amt/bubble.hpp"
#include "amt/errors.hpp"

namespace amt {

namespace {

double sup_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

std::vector<double> product(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

// (-Delta)^m u from the stored top level.
std::vector<double> polyharmonic_of(const RadialLadder& u) {
  std::vector<double> out = u.levels[2 * u.m];
  if (u.m % 2 == 1) {
    for (double& v : out) v = -v;
  }
  return out;
}

double pairing_norm_sq(const PolyharmonicDirichletSolver& solver, const RadialLadder& u,
                       double alpha) {
  const auto& v = u.values();
  return solver.integrate(product(v, polyharmonic_of(u))) - alpha * solver.integrate(product(v, v));
}

void check_grid(const ProblemConfig& cfg) {
  if (!cfg.grid.contains_origin()) throw InputError("extremal: grid must start at r = 0");
  if (std::abs(cfg.grid.r_outer() - cfg.ball_radius) > 1e-14 * cfg.ball_radius) {
    throw InputError("extremal: grid must end at the ball radius");
  }
}

// Normalized potential of a concentrated bubble source: a truncated bubble with
// zero Dirichlet data.
RadialLadder bubble_guess(const PolyharmonicDirichletSolver& solver, const DimensionContext& ctx,
                          double alpha) {
  const auto& r = solver.grid().nodes();
  const double eps = 0.25 * solver.grid().r_outer();
  std::vector<double> f(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) f[i] = std::exp(2.0 * ctx.beta() * eta0(ctx, r[i] / eps));
  RadialLadder u = solver.solve(f);
  const double n2 = pairing_norm_sq(solver, u, alpha);
  if (!(n2 > 0.0)) throw InputError("maximize_subcritical: alpha not below lambda_1");
  u.scale(1.0 / std::sqrt(n2));
  return u;
}

struct EulerLagrangeStep {
  double lambda = 0.0;
  RadialLadder w;
  double residual = 0.0;
  double w_norm = 0.0;
};

EulerLagrangeStep el_step(const PolyharmonicDirichletSolver& solver, const RadialLadder& u,
                          double alpha, double beta) {
  const auto& v = u.values();
  std::vector<double> weight(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) weight[i] = v[i] * v[i] * std::exp(beta * v[i] * v[i]);
  EulerLagrangeStep step;
  step.lambda = 1.0 / solver.integrate(weight);
  std::vector<double> h(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    h[i] = step.lambda * v[i] * std::exp(beta * v[i] * v[i]) + alpha * v[i];
  }
  step.w = solver.solve(h);
  const auto& w = step.w.values();
  double diff = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(w[i] - v[i]));
  step.residual = diff / sup_abs(v);
  const double n2 = solver.integrate(product(w, h)) - alpha * solver.integrate(product(w, w));
  if (!(n2 > 0.0)) throw ConvergenceError("maximize_subcritical: lost positivity of the alpha-norm", 0.0, step.residual);
  step.w_norm = std::sqrt(n2);
  return step;
}

}  // namespace

ProblemConfig make_config(const DimensionContext& ctx, double ball_radius, double alpha,
                          double beta, std::size_t grid_n, double grading) {
  ProblemConfig cfg;
  cfg.ctx = ctx;
  cfg.ball_radius = ball_radius;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.grid = RadialGrid::graded(ball_radius, grid_n, grading);
  return cfg;
}

double ball_volume(const DimensionContext& ctx, double ball_radius) {
  return ctx.omega_at(2 * ctx.m - 1).value() * std::pow(ball_radius, 2 * ctx.m) / (2 * ctx.m);
}

double log_functional(const RadialProfile& u, double beta, double ball_radius) {
  const auto& grid = u.grid();
  if (!grid.contains_origin() || std::abs(grid.r_outer() - ball_radius) > 1e-14 * ball_radius) {
    throw InputError("evaluate_functional: profile must cover [0, ball_radius]");
  }
  const int m = u.m();
  const double log_omega = std::log(sphere_measure(2 * m - 1).value());
  const auto w = radial_weights(grid, 2 * m - 1);
  std::vector<double> logs(w.size(), -INFINITY);
  double top = -INFINITY;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const double x = u[i];
    logs[i] = beta * x * x + std::log(std::abs(w[i])) + log_omega;
    top = std::max(top, logs[i]);
  }
  long double acc = 0.0L;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const long double term = std::exp(static_cast<long double>(logs[i] - top));
    acc += w[i] > 0.0 ? term : -term;
  }
  if (!(acc > 0.0L)) throw ConsistencyError("evaluate_functional: non-positive quadrature sum");
  return top + static_cast<double>(std::log(acc));
}

double evaluate_functional(const RadialProfile& u, double beta, double ball_radius) {
  return std::exp(log_functional(u, beta, ball_radius));
}

double alpha_norm_sq(const RadialProfile& u, double alpha) {
  const RadialProfile top = apply_radial_polyharmonic(u, u.m());
  const auto& t = top.values();
  const auto& v = u.values();
  const double omega = sphere_measure(2 * u.m() - 1).value();
  return omega * (u.radial_integral(product(t, t)) - alpha * u.radial_integral(product(v, v)));
}

double alpha_norm(const RadialProfile& u, double alpha) {
  const double sq = alpha_norm_sq(u, alpha);
  if (sq < 0.0) throw InputError("alpha_norm: negative square, alpha exceeds lambda_1");
  return std::sqrt(sq);
}

double alpha_norm_sq(const RadialLadder& u, double alpha) {
  const PolyharmonicDirichletSolver solver(u.grid, u.m);
  return pairing_norm_sq(solver, u, alpha);
}

EigenPair first_eigenpair(const DimensionContext& ctx, double ball_radius, const RadialGrid& grid,
                          double tol, int max_iters) {
  if (!(ball_radius > 0.0)) throw InputError("first_eigenpair: ball radius must be positive");
  if (grid.size() < 512) throw InputError("first_eigenpair: grid needs at least 512 nodes");
  if (std::abs(grid.r_outer() - ball_radius) > 1e-14 * ball_radius) {
    throw InputError("first_eigenpair: grid must end at the ball radius");
  }
  const PolyharmonicDirichletSolver solver(grid, ctx.m);
  RadialLadder phi = solver.solve(std::vector<double>(grid.size(), 1.0));
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    RadialLadder next = solver.solve(phi.values());
    const double next_lambda = solver.integrate(product(phi.values(), phi.values())) /
                               solver.integrate(product(phi.values(), next.values()));
    const double l2 = std::sqrt(solver.integrate(product(next.values(), next.values())));
    next.scale((next.values().front() > 0.0 ? 1.0 : -1.0) / l2);
    phi = std::move(next);
    if (std::abs(next_lambda - lambda) <= tol * next_lambda) {
      return EigenPair{next_lambda, std::move(phi)};
    }
    lambda = next_lambda;
  }
  throw ConvergenceError("first_eigenpair: inverse iteration did not settle", lambda, 0.0);
}

ExtremalSolution maximize_subcritical(const ProblemConfig& cfg,
                                      const std::optional<RadialLadder>& initial) {
  const auto& ctx = cfg.ctx;
  if (!(cfg.beta > 0.0) || !(cfg.beta < ctx.beta())) {
    throw InputError("maximize_subcritical: beta must lie in (0, beta*)");
  }
  if (cfg.alpha < 0.0) throw InputError("maximize_subcritical: alpha must be non-negative");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw InputError("maximize_subcritical: damping in (0,1]");
  check_grid(cfg);
  const PolyharmonicDirichletSolver solver(cfg.grid, ctx.m);

  RadialLadder u = initial ? *initial : bubble_guess(solver, ctx, cfg.alpha);
  if (u.grid.size() != cfg.grid.size() || u.m != ctx.m) {
    throw InputError("maximize_subcritical: initial guess lives on a different grid");
  }
  const double n0 = pairing_norm_sq(solver, u, cfg.alpha);
  if (!(n0 > 0.0)) throw InputError("maximize_subcritical: alpha not below lambda_1");
  u.scale(1.0 / std::sqrt(n0));

  double theta = cfg.damping;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_iters; ++it) {
    EulerLagrangeStep step = el_step(solver, u, cfg.alpha, cfg.beta);
    if (step.residual < cfg.residual_tol) {
      ExtremalSolution sol;
      if (u.values().front() < 0.0) u.scale(-1.0);
      sol.beta = cfg.beta;
      sol.alpha = cfg.alpha;
      sol.lambda = step.lambda;
      sol.mu = u.values().front();
      sol.F_value = evaluate_functional(u.profile(0), cfg.beta, cfg.ball_radius);
      sol.el_residual = step.residual;
      sol.alpha_norm = std::sqrt(pairing_norm_sq(solver, u, cfg.alpha));
      sol.iterations = it;
      sol.ladder = std::move(u);
      return sol;
    }
    if (step.residual > previous) {
      theta = std::max(0.5 * theta, 1e-4);
    } else {
      theta = std::min(1.25 * theta, 1.0);
    }
    previous = step.residual;
    u.combine(1.0 - theta, theta / step.w_norm, step.w);
    const double n2 = pairing_norm_sq(solver, u, cfg.alpha);
    u.scale(1.0 / std::sqrt(n2));
  }
  throw ConvergenceError("maximize_subcritical: no convergence after " +
                             std::to_string(cfg.max_iters) + " iterations",
                         evaluate_functional(u.profile(0), cfg.beta, cfg.ball_radius), previous);
}

std::vector<ExtremalSolution> continuation(const ProblemConfig& cfg) {
  if (cfg.beta_schedule.empty()) throw InputError("continuation: empty beta schedule");
  std::vector<ExtremalSolution> out;
  std::optional<RadialLadder> guess;
  for (double frac : cfg.beta_schedule) {
    ProblemConfig step = cfg;
    step.beta = frac * cfg.ctx.beta();
    out.push_back(maximize_subcritical(step, guess));
    guess = out.back().ladder;
  }
  return out;
}

BlowupDiagnostics blowup_diagnostics(const ExtremalSolution& sol, const DimensionContext& ctx) {
  const int m = ctx.m;
  const double log_omega = std::log(ctx.omega_at(2 * m).value());
  BlowupDiagnostics d;
  const double mu = sol.mu;
  const double log_rest = log_omega + std::log(sol.lambda) + 2.0 * std::log(mu) + sol.beta * mu * mu;
  d.r_scale = std::exp(-log_rest / (2 * m));
  d.scale_identity = std::exp(log_rest + 2 * m * std::log(d.r_scale));
  d.lambda_mu_sq = sol.lambda * mu * mu;
  d.predicted_S = ball_volume(ctx, sol.ball_radius()) + 1.0 / d.lambda_mu_sq;
  d.pre_asymptotic = mu < 2.0;
  const RadialProfile u = sol.u();
  constexpr int kSamples = 400;
  for (int k = 0; k <= kSamples; ++k) {
    const double y = 4.0 * k / kSamples;
    const double r = std::min(d.r_scale * y, sol.ball_radius());
    const double eta = mu * (u.value_at(r) - mu);
    d.profile_sup_error = std::max(d.profile_sup_error, std::abs(eta - eta0(ctx, y)));
  }
  return d;
}

namespace {

// Both sides of the identity from the boundary ladder of u at R and the volume
// integral of H(u).
PohozaevReport pohozaev_terms(int m, double R, const std::vector<double>& boundary_levels,
                              double H_boundary, double H_volume) {
  const int n = 2 * m;
  const double area = sphere_measure(n - 1).value() * std::pow(R, n - 1);
  const auto L = [&](int j) { return boundary_levels[j]; };
  // Ladder of x . grad u: even level 2k is 2k L_2k + r L_(2k+1); odd level
  // 2k+1 is (2k+2-n) L_(2k+1) + r L_(2k+2).
  const auto X = [&](int j) {
    const int k = j / 2;
    return j % 2 == 0 ? 2.0 * k * L(j) + R * L(j + 1) : (2.0 * k + 2 - n) * L(j) + R * L(j + 1);
  };
  PohozaevReport rep;
  rep.lhs_boundary_energy = 0.5 * area * R * L(m) * L(m);
  double f = 0.0;
  for (int j = 0; j < m; ++j) f += ((m + j) % 2 == 0 ? 1.0 : -1.0) * X(j) * L(2 * m - j - 1);
  rep.lhs_f_term = area * f;
  rep.rhs_boundary_H = area * R * H_boundary;
  rep.rhs_volume_H = -n * H_volume;
  const double lhs = rep.lhs_boundary_energy + rep.lhs_f_term;
  const double rhs = rep.rhs_boundary_H + rep.rhs_volume_H;
  rep.residual = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
  return rep;
}

}  // namespace

PohozaevReport pohozaev_residual(const ExtremalSolution& sol, const DimensionContext& ctx) {
  const int m = ctx.m;
  const auto& u = sol.ladder;
  const PolyharmonicDirichletSolver solver(u.grid, m);
  std::vector<double> boundary(2 * m + 1);
  for (int j = 0; j <= 2 * m; ++j) boundary[j] = u.levels[j].back();
  const double b = sol.beta;
  const auto H = [&](double t) {
    return sol.lambda / (2.0 * b) * std::expm1(b * t * t) + 0.5 * sol.alpha * t * t;
  };
  std::vector<double> Hu(u.values().size());
  for (std::size_t i = 0; i < Hu.size(); ++i) Hu[i] = H(u.values()[i]);
  PohozaevReport rep = pohozaev_terms(m, sol.ball_radius(), boundary, H(boundary[0]), solver.integrate(Hu));
  for (double v : {rep.lhs_boundary_energy, rep.lhs_f_term, rep.rhs_boundary_H, rep.rhs_volume_H}) {
    if (!std::isfinite(v)) throw ConsistencyError("pohozaev_residual: non-finite term");
  }
  return rep;
}

PohozaevReport pohozaev_manufactured(const DimensionContext& ctx, const RadialGrid& grid) {
  const int m = ctx.m;
  const double R = grid.r_outer();
  const RadialProfile u = RadialProfile::sample(grid, m, [&](double r) {
    return std::pow(1.0 - (r / R) * (r / R), m);
  });
  std::vector<RadialProfile> levels{u};
  for (int j = 1; j <= 2 * m; ++j) levels.push_back(apply_radial_polyharmonic(u, j));
  std::vector<double> h = levels[2 * m].values();
  if (m % 2 == 1) {
    for (double& v : h) v = -v;
  }
  // H(u(r_i)) = integral of h(u) du from 0 to u(r_i) = -integral_(r_i)^R h u' dr.
  const auto rules = cell_rules(grid, 0);
  const auto cumulative = cumulative_integral(rules, product(h, levels[1].values()));
  std::vector<double> Hu(grid.size());
  for (std::size_t i = 0; i < Hu.size(); ++i) Hu[i] = -(cumulative.back() - cumulative[i]);
  std::vector<double> boundary(2 * m + 1);
  for (int j = 0; j <= 2 * m; ++j) boundary[j] = levels[j].values().back();
  const double volume = sphere_measure(2 * m - 1).value() * u.radial_integral(Hu);
  return pohozaev_terms(m, R, boundary, 0.0, volume);
}

std::vector<DivergenceSample> supercritical_divergence_demo(const DimensionContext& ctx,
                                                            double ball_radius, double alpha,
                                                            double beta,
                                                            const std::vector<double>& t_list,
                                                            const RadialGrid& grid) {
  const EigenPair eig = first_eigenpair(ctx, ball_radius, grid);
  if (alpha < eig.lambda) throw InputError("supercritical_divergence_demo: alpha must be >= lambda_1");
  if (beta < 0.0) throw InputError("supercritical_divergence_demo: beta must be non-negative");
  const double phi_norm_sq = alpha_norm_sq(eig.phi, alpha);
  std::vector<DivergenceSample> out;
  for (double t : t_list) {
    RadialLadder scaled = eig.phi;
    scaled.scale(t);
    const double log_f = log_functional(scaled.profile(0), beta, ball_radius);
    out.push_back({t, t * t * phi_norm_sq, std::exp(log_f), log_f});
  }
  return out;
}

}  // namespace amt
