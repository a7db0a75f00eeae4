#include <cmath>
#include <numbers>

#include <doctest.h>

#include "amt/constants.hpp"
#include "amt/errors.hpp"
#include "amt/extremal.hpp"
#include "amt/greens.hpp"
#include "amt/oracles.hpp"
#include "amt/radial_solver.hpp"

using namespace amt;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("polyharmonic solver on polynomial sources") {
  const auto grid = RadialGrid::graded(1.0, 513);
  const PolyharmonicDirichletSolver s1(grid, 1);
  const auto w1 = s1.solve(std::vector<double>(grid.size(), 1.0));
  const PolyharmonicDirichletSolver s2(grid, 2);
  const auto w2 = s2.solve(std::vector<double>(grid.size(), 1.0));
  for (std::size_t i = 0; i < grid.size(); i += 64) {
    const double s = grid[i] * grid[i];
    CHECK(w1.values()[i] == Approx((1 - s) / 4).epsilon(1e-12).scale(1.0));
    CHECK(w2.values()[i] == Approx((1 - s) * (1 - s) / 192).epsilon(1e-12).scale(1.0));
    CHECK(w2.levels[4][i] == Approx(1.0).epsilon(1e-12));
  }
  CHECK(s1.integrate(std::vector<double>(grid.size(), 1.0)) == Approx(pi).epsilon(1e-13));
  CHECK_THROWS_AS(PolyharmonicDirichletSolver(RadialGrid::graded(1.0, 7), 2), InputError);
}

TEST_CASE("functional on constant profiles") {
  const auto ctx = build_context(1);
  const auto grid = RadialGrid::graded(1.0, 512);
  const auto zero = RadialProfile::sample(grid, 1, [](double) { return 0.0; });
  CHECK(evaluate_functional(zero, ctx.beta(), 1.0) == Approx(pi).epsilon(1e-13));
  const auto c = RadialProfile::sample(grid, 1, [](double) { return 0.7; });
  CHECK(evaluate_functional(c, 3.0, 1.0) == Approx(pi * std::exp(3.0 * 0.49)).epsilon(1e-13));
  CHECK(evaluate_functional(c, 0.0, 1.0) == Approx(pi).epsilon(1e-13));
  CHECK(log_functional(c, 3.0, 1.0) == Approx(std::log(pi) + 3.0 * 0.49).epsilon(1e-13));
  CHECK(ball_volume(build_context(2), 1.0) == Approx(pi * pi / 2).epsilon(1e-14));
  CHECK(alpha_norm(zero, 0.0) == 0.0);
}

TEST_CASE("first eigenpair") {
  const auto ctx = build_context(1);
  const double j = oracle::bessel_j0_first_zero();
  const auto e1 = first_eigenpair(ctx, 1.0, RadialGrid::graded(1.0, 1024));
  CHECK(e1.lambda == Approx(j * j).epsilon(1e-8));
  const auto e2 = first_eigenpair(ctx, 2.0, RadialGrid::graded(2.0, 1024));
  CHECK(e2.lambda == Approx(e1.lambda / 4).epsilon(1e-8));
  const auto c2 = build_context(2);
  const auto g = RadialGrid::graded(1.0, 1024);
  const auto e4 = first_eigenpair(c2, 1.0, g);
  CHECK(e4.lambda == Approx(series_first_eigenvalue(c2, 1.0)).epsilon(1e-8));
  // Rayleigh quotient of (1 - r^2)^2 against lambda_1.
  const PolyharmonicDirichletSolver solver(g, 2);
  std::vector<double> u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = std::pow(1 - g[i] * g[i], 2);
  const RadialProfile up(g, u, 2);
  const double top = alpha_norm_sq(up, 0.0);
  std::vector<double> u2(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u2[i] = u[i] * u[i];
  CHECK(top / solver.integrate(u2) >= e4.lambda - 1e-6);
  // ||t phi||_alpha^2 = t^2 (lambda_1 - alpha) ||phi||^2.
  std::vector<double> p2(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) p2[i] = e4.phi.values()[i] * e4.phi.values()[i];
  const double l2 = solver.integrate(p2);
  auto scaled = e4.phi;
  scaled.scale(3.0);
  CHECK(alpha_norm_sq(scaled, 1.5 * e4.lambda) == Approx(9.0 * (-0.5 * e4.lambda) * l2).epsilon(1e-8));
}

TEST_CASE("subcritical maximizer invariants") {
  const auto ctx = build_context(1);
  auto cfg = make_config(ctx, 1.0, 0.0, 0.5 * ctx.beta(), 1024);
  const auto sol = maximize_subcritical(cfg);
  CHECK(sol.el_residual < 1e-8);
  CHECK(sol.alpha_norm == Approx(1.0).epsilon(1e-10));
  CHECK(sol.u()[0] > 0.0);
  const PolyharmonicDirichletSolver solver(sol.ladder.grid, 1);
  std::vector<double> g(sol.ladder.grid.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double u = sol.u()[i];
    g[i] = u * u * std::exp(sol.beta * u * u);
  }
  CHECK(sol.lambda * solver.integrate(g) == Approx(1.0).epsilon(1e-10));
  const auto best = oracle::truncated_bubble_family_best(0.5 * ctx.beta(), 12, 10);
  CHECK(sol.F_value >= best.F - 1e-6);
  const auto diag = blowup_diagnostics(sol, ctx);
  CHECK(diag.scale_identity == Approx(1.0).epsilon(1e-14));
  CHECK(pohozaev_residual(sol, ctx).residual < 1e-6);
}

TEST_CASE("S is monotone in alpha and beta") {
  const auto ctx = build_context(1);
  const double lam = series_first_eigenvalue(ctx, 1.0);
  double table[3][3];
  const double alphas[3] = {0.0, 0.3 * lam, 0.6 * lam};
  const double betas[3] = {0.5, 0.6, 0.7};
  for (int a = 0; a < 3; ++a) {
    auto cfg = make_config(ctx, 1.0, alphas[a], betas[2] * ctx.beta(), 512);
    cfg.beta_schedule = {betas[0], betas[1], betas[2]};
    const auto sols = continuation(cfg);
    REQUIRE(sols.size() == 3);
    for (int b = 0; b < 3; ++b) table[a][b] = sols[b].F_value;
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a > 0) CHECK(table[a][b] >= table[a - 1][b]);
      if (b > 0) CHECK(table[a][b] >= table[a][b - 1]);
    }
}

TEST_CASE("maximizer preconditions") {
  const auto ctx = build_context(1);
  CHECK_THROWS_AS(maximize_subcritical(make_config(ctx, 1.0, 0.0, ctx.beta(), 512)), InputError);
  CHECK_THROWS_AS(maximize_subcritical(make_config(ctx, 1.0, 6.0, 0.5 * ctx.beta(), 512)), InputError);
}

TEST_CASE("Pohozaev residual on the manufactured pair") {
  for (int m = 1; m <= 3; ++m) {
    const auto rep = pohozaev_manufactured(build_context(m), RadialGrid::graded(1.0, 2048));
    CHECK(rep.residual < 1e-6);
  }
}

TEST_CASE("divergence demo") {
  const auto ctx = build_context(1);
  const auto grid = RadialGrid::graded(1.0, 1024);
  const double lam = first_eigenpair(ctx, 1.0, grid).lambda;
  const auto s = supercritical_divergence_demo(ctx, 1.0, 1.1 * lam, ctx.beta(), {0.0, 1.0, 2.0, 8.0}, grid);
  CHECK(s[0].F_value == Approx(pi).epsilon(1e-12));
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i].norm_sq <= 1e-9);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i].log_F > s[i - 1].log_F);
  CHECK(s[2].F_value > 10 * pi);
  CHECK(std::isinf(s[3].F_value));
  CHECK(std::isfinite(s[3].log_F));
  CHECK_THROWS_AS(supercritical_divergence_demo(ctx, 1.0, 0.5 * lam, ctx.beta(), {1.0}, grid), InputError);
}
