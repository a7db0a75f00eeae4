#include <cmath>
#include <numbers>

#include <doctest.h>

#include "amt/constants.hpp"
#include "amt/errors.hpp"

using namespace amt;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("sphere measures") {
  CHECK(sphere_measure(1) == ExactConstant(Rational(2), 1));
  CHECK(sphere_measure(2) == ExactConstant(Rational(4), 1));
  CHECK(sphere_measure(3) == ExactConstant(Rational(2), 2));
  CHECK(sphere_measure(4) == ExactConstant(Rational(8, 3), 2));
}

TEST_CASE("dimension context m = 1 and m = 2") {
  const auto c1 = build_context(1);
  CHECK(c1.beta_star == ExactConstant(Rational(4), 1));
  CHECK(c1.gamma_m == ExactConstant(Rational(2), 1));
  const auto c2 = build_context(2);
  CHECK(c2.beta_star == ExactConstant(Rational(32), 2));
  CHECK(c2.k_tilde_at(1) == ExactConstant::integer(2));
  CHECK(c2.k_at(3) == ExactConstant::integer(-4));
  CHECK_THROWS_AS(build_context(0), InputError);
}

TEST_CASE("identities hold exactly for m = 1..12") {
  for (int m = 1; m <= 12; ++m) {
    CAPTURE(m);
    const auto ctx = build_context(m);
    CHECK(ctx.k_at(1) == ExactConstant::integer(1));
    CHECK(ctx.gamma_m == ctx.beta_star / ExactConstant::integer(2 * m));
    CHECK(residue_identity_holds(ctx, 2 * m - 1));
    CHECK(h_constant(ctx, HMethod::Definition) == h_constant(ctx, HMethod::Remark));
  }
}

TEST_CASE("H_m values") {
  CHECK(h_constant(build_context(1), HMethod::Definition).is_zero());
  CHECK(h_constant(build_context(1), HMethod::Remark).is_zero());
  const ExactConstant h2(Rational(-1, 16), -2);
  CHECK(h_constant(build_context(2), HMethod::Definition) == h2);
  CHECK(h_constant(build_context(2), HMethod::Remark) == h2);
}

TEST_CASE("I_m by quadrature") {
  const auto c1 = build_context(1);
  CHECK(compute_i_m(c1, 1e-10) == Approx(-1.0 / (4 * pi)).epsilon(1e-10));
  // pi e^(4 pi (0 - I_1)) = pi e.
  CHECK(pi * std::exp(c1.beta() * (0.0 - compute_i_m(c1))) == Approx(pi * std::numbers::e).epsilon(1e-10));
  for (int m = 2; m <= 5; ++m) CHECK(compute_i_m(build_context(m)) < 0.0);
  CHECK_THROWS_AS(build_context(2).require_i_m(), InputError);
  CHECK(with_i_m(build_context(2)).i_m.has_value());
}
