#include <cmath>
#include <numbers>

#include <doctest.h>

#include "amt/bubble.hpp"
#include "amt/constants.hpp"
#include "amt/errors.hpp"

using namespace amt;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("eta0 values") {
  const auto c1 = build_context(1);
  CHECK(eta0(c1, 0.0) == 0.0);
  CHECK(eta0(c1, 2.0) == Approx(-std::log(2.0) / (4 * pi)).epsilon(1e-14));
  const auto c3 = build_context(3);
  CHECK(eta0(c3, 2.0) == Approx(-3.0 / c3.beta() * std::log(2.0)).epsilon(1e-14));
  double prev = 0.0;
  for (double r = 0.1; r < 100; r *= 1.5) {
    CHECK(eta0(c3, r) < prev);
    prev = eta0(c3, r);
  }
}

TEST_CASE("ladder at the origin and at infinity") {
  const auto l1 = build_ladder(build_context(1));
  CHECK(ladder_eval(l1, 2, 0.0) == Approx(-1.0 / (4 * pi)).epsilon(1e-14));
  for (int m = 1; m <= 4; ++m) {
    const auto lad = build_ladder(build_context(m));
    CHECK(ladder_eval(lad, 1, 0.0) == 0.0);
    CHECK_THROWS_AS(ladder_eval(lad, 2 * m + 1, 1.0), InputError);
    for (int j = 2; j < 2 * m; j += 2) {
      const double limit = -lad.ctx.log_coeff() * lad.ctx.k_at(j).value();
      CHECK(ladder_eval(lad, j, 1e4) * std::pow(1e4, j) == Approx(limit).epsilon(1e-6));
    }
  }
}

TEST_CASE("closed-form coefficients obey the recurrences") {
  for (int m = 2; m <= 5; ++m) {
    const auto lad = build_ladder(build_context(m));
    for (int l = 1; l < m; ++l) {
      CHECK(lad.a_exact[l][l] == -2 * lad.ctx.k_tilde_at(l).rational());
      CHECK(lad.b_exact[l][l] == -2 * l * lad.a_exact[l][l]);
      for (int k = 0; k < l; ++k)
        CHECK(lad.b_exact[l][k] == 8 * (k + 1) * lad.a_exact[l][k + 1] + (2 * k - 4 * l) * lad.a_exact[l][k]);
    }
    CHECK(bubble_pde_residual(lad) < 1e-8);
    CHECK(bubble_half_step_residual(lad) < 1e-8);
  }
}

TEST_CASE("bubble mass") {
  const auto c1 = build_context(1);
  CHECK(bubble_mass(c1, 2.0) == Approx(0.5).epsilon(1e-12));
  CHECK(bubble_mass(c1, 1e-3) < 1e-6);
  for (int m = 1; m <= 3; ++m) {
    const auto c = build_context(m);
    CHECK(bubble_mass(c, 1e3) + bubble_mass_deficit(c, 1e3) == Approx(1.0).epsilon(1e-12));
    CHECK(bubble_mass(c, 1e3) <= 1.0);
  }
  CHECK(bubble_mass_deficit(c1, 10.0) == Approx(1.0 / (1.0 + 25.0)).epsilon(1e-10));
}

TEST_CASE("bubble energy") {
  const auto c1 = with_i_m(build_context(1));
  const auto l1 = build_ladder(c1);
  CHECK(bubble_energy(c1, l1, 4.0).energy > 0.0);
  const auto r8 = bubble_energy(c1, l1, 8.0);
  const auto r20 = bubble_energy(c1, l1, 20.0);
  CHECK(std::abs(r20.energy - r20.energy_prediction) < std::abs(r8.energy - r8.energy_prediction));
  for (int m = 1; m <= 3; ++m) {
    const auto c = with_i_m(build_context(m));
    CHECK(self_energy_by_operator(build_ladder(c), INFINITY) == Approx(*c.i_m).epsilon(1e-8));
  }
  CHECK_THROWS_AS(bubble_energy(c1, l1, 2.0), InputError);
}
