#include <cmath>
#include <numbers>

#include <doctest.h>

#include "amt/constants.hpp"
#include "amt/errors.hpp"
#include "amt/greens.hpp"
#include "amt/oracles.hpp"

using namespace amt;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("first eigenvalue by series") {
  const double j = oracle::bessel_j0_first_zero();
  CHECK(j == Approx(2.404825557695773).epsilon(1e-12));
  CHECK(series_first_eigenvalue(build_context(1), 1.0) == Approx(j * j).epsilon(1e-10));
  CHECK(series_first_eigenvalue(build_context(1), 2.0) == Approx(j * j / 4).epsilon(1e-10));
  const double l2 = series_first_eigenvalue(build_context(2), 1.0);
  CHECK(series_first_eigenvalue(build_context(2), 0.5) == Approx(l2 * 16).epsilon(1e-10));
}

TEST_CASE("Green function closed forms") {
  const auto c1 = build_context(1);
  const auto g = solve_green(c1, 0.0, 1.0);
  CHECK(std::abs(g.C) < 1e-14);
  for (double r : {0.0, 0.3, 0.9}) CHECK(std::abs(g.psi_value(r)) < 1e-14);
  CHECK(g.value(0.5) == Approx(std::log(2.0) / (2 * pi)).epsilon(1e-13));
  const auto g2 = solve_green(c1, 0.0, 2.0);
  CHECK(g2.C == Approx(std::log(2.0) / (2 * pi)).epsilon(1e-12));
  const auto c2 = build_context(2);
  const auto h = solve_green(c2, 0.0, 1.0);
  CHECK(h.C == Approx(-1.0 / (16 * pi * pi)).epsilon(1e-12));
  // G = (1/8 pi^2)(-log r + (r^2 - 1)/2) on the unit ball in R^4.
  CHECK(h.value(0.4) == Approx((-std::log(0.4) + (0.16 - 1) / 2) / (8 * pi * pi)).epsilon(1e-12));
}

TEST_CASE("Green function boundary data and flux") {
  for (int m = 1; m <= 3; ++m) {
    const auto ctx = build_context(m);
    const double lam = series_first_eigenvalue(ctx, 1.0);
    for (double a : {0.0, 0.3 * lam, 0.8 * lam}) {
      const auto g = solve_green(ctx, a, 1.0);
      for (double r : g.dirichlet_residuals) CHECK(r < 1e-8);
      CHECK(g.l2_norm_sq > 0.0);
    }
    CHECK(green_boundary_flux(solve_green(ctx, 0.0, 1.0), 1e-3) ==
          Approx(m % 2 == 0 ? 1.0 : -1.0).epsilon(1e-6));
    CHECK_THROWS_AS(solve_green(ctx, 1.01 * lam, 1.0), InputError);
    CHECK_THROWS_AS(solve_green(ctx, -1.0, 1.0), InputError);
  }
}

TEST_CASE("C grows with alpha") {
  const auto ctx = build_context(1);
  const double lam = series_first_eigenvalue(ctx, 1.0);
  double prev = -INFINITY;
  for (double f : {0.0, 0.2, 0.4, 0.6}) {
    const double C = solve_green(ctx, f * lam, 1.0).C;
    CHECK(C > prev);
    prev = C;
  }
}

TEST_CASE("Green energy expansion") {
  const auto ctx = with_i_m(build_context(1));
  const auto g = solve_green(ctx, 0.0, 1.0);
  for (double d : {1e-3, 0.1, 0.5, 0.99}) {
    const auto rep = green_energy_expansion(g, d);
    CHECK(rep.lhs == Approx(-std::log(d) / (2 * pi)).epsilon(1e-10));
    CHECK(std::abs(rep.residual) < 1e-10);
    CHECK(rep.lhs > 0.0);
  }
  const auto g2 = solve_green(with_i_m(build_context(2)), 0.0, 1.0);
  CHECK(std::abs(green_energy_expansion(g2, 0.05).residual) < std::abs(green_energy_expansion(g2, 0.5).residual));
}
