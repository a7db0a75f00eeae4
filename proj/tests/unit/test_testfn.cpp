#include <cmath>
#include <numbers>

#include <doctest.h>

#include "amt/bubble.hpp"
#include "amt/constants.hpp"
#include "amt/errors.hpp"
#include "amt/greens.hpp"
#include "amt/testfn.hpp"

using namespace amt;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("eta0 derivatives match finite differences") {
  const auto ctx = build_context(2);
  const double h = 1e-4;
  for (double r : {0.5, 3.0, 20.0}) {
    const double fd = (eta0(ctx, r + h) - eta0(ctx, r - h)) / (2 * h);
    CHECK(eta0_derivative(ctx, 1, r) == Approx(fd).epsilon(1e-7));
    const double fd2 = (eta0_derivative(ctx, 2, r + h) - eta0_derivative(ctx, 2, r - h)) / (2 * h);
    CHECK(eta0_derivative(ctx, 3, r) == Approx(fd2).epsilon(1e-6));
  }
}

TEST_CASE("matching polynomial") {
  const auto c1 = build_context(1);
  for (double R : {4.0, 10.0, 100.0}) {
    const auto p = build_matching_polynomial(c1, 1e-3, R, 1.0);
    CHECK(p.d_coeffs.size() == 1);
    CHECK(p.d_coeffs[0] == Approx(std::log1p(4 / (R * R)) / (4 * pi)).epsilon(1e-13));
  }
  for (int m = 1; m <= 4; ++m) {
    const auto p = build_matching_polynomial(build_context(m), 1e-4, 12.0, 2.0);
    for (double r : p.matching_residuals) CHECK(r < 1e-9);
  }
  CHECK_THROWS_AS(build_matching_polynomial(c1, 1e-3, 3.0, 1.0), InputError);
  CHECK_THROWS_AS(build_matching_polynomial(c1, 0.0, 10.0, 1.0), InputError);
}

TEST_CASE("glued test function for m = 1 on the unit disk") {
  const auto ctx = with_i_m(build_context(1));
  const auto g = solve_green(ctx, 0.0, 1.0);
  const auto tf = assemble_test_function(ctx, 0.0, g, 1e-4);
  CHECK(tf.R_eps == Approx(std::log(1e4)).epsilon(1e-14));
  CHECK(tf.alpha_norm() == Approx(1.0).epsilon(1e-9));
  for (double r : tf.continuity_residuals) CHECK(r < 1e-9);
  const double predicted = -std::log(2e-4) / (2 * pi) - 1.0 / (4 * pi);
  // Remainder is O(R^-2 log R) in R = R_eps.
  const double bound = std::log(tf.R_eps) / (tf.R_eps * tf.R_eps);
  CHECK(std::abs(tf.mu_eps * tf.mu_eps - predicted) < bound);
  const auto gap = evaluate_threshold_gap(tf);
  CHECK(gap.threshold == Approx(pi * (1 + std::numbers::e)).epsilon(1e-12));
  CHECK(gap.gap > 0.0);
  CHECK(test_functional(tf, 0.0) == Approx(pi).epsilon(1e-12));
  CHECK(tf.value(1.0) == Approx(0.0).scale(1.0));
  CHECK(tf.value(0.0) > tf.value(tf.interface()));
}

TEST_CASE("glued test function for m = 2 with alpha > 0") {
  const auto ctx = with_i_m(build_context(2));
  const double lam = series_first_eigenvalue(ctx, 1.0);
  const auto g = solve_green(ctx, 0.3 * lam, 1.0);
  const auto tf = assemble_test_function(ctx, 0.3 * lam, g, 1e-5);
  CHECK(tf.alpha_norm() == Approx(1.0).epsilon(1e-9));
  for (double r : tf.continuity_residuals) CHECK(r < 1e-9);
  const auto gap = evaluate_threshold_gap(tf);
  CHECK(gap.gap > 0.0);
  CHECK(gap.mu_sq_prediction == Approx(tf.mu_eps * tf.mu_eps).epsilon(0.02));
  const auto bounds = matching_polynomial_bounds(tf.poly);
  CHECK(bounds.value_bound < 1.0);
}

TEST_CASE("assemble_test_function preconditions") {
  const auto ctx = with_i_m(build_context(1));
  const auto g = solve_green(ctx, 0.0, 1.0);
  CHECK_THROWS_AS(assemble_test_function(ctx, 0.5, g, 1e-4), InputError);
  CHECK_THROWS_AS(assemble_test_function(with_i_m(build_context(2)), 0.0, g, 1e-4), InputError);
  CHECK_THROWS_AS(assemble_test_function(ctx, 0.0, g, 0.05), InputError);
}

TEST_CASE("matching polynomial bounds have R-independent constants") {
  for (int m = 2; m <= 4; ++m) {
    const auto ctx = build_context(m);
    double k1_lo = INFINITY, k1_hi = 0, k2_lo = INFINITY, k2_hi = 0;
    for (double R = 8; R <= 256; R *= 2) {
      const double eps = 1e-3;
      const auto b = matching_polynomial_bounds(build_matching_polynomial(ctx, eps, R, 1.0));
      const double k1 = b.value_bound * R * R;
      const double k2 = b.top_level_bound * std::pow(eps * R, m) * R * R;
      k1_lo = std::min(k1_lo, k1);
      k1_hi = std::max(k1_hi, k1);
      k2_lo = std::min(k2_lo, k2);
      k2_hi = std::max(k2_hi, k2);
    }
    CHECK(k1_hi / k1_lo < 1.2);
    CHECK(k2_hi / k2_lo < 1.2);
  }
}
