#include "amt/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "amt/errors.hpp"
#include "amt/linalg.hpp"
#include "amt/quadrature.hpp"
#include "amt/radial_series.hpp"

namespace amt {

namespace {

double falling_factorial(int top, int count) {
  double v = 1.0;
  for (int t = 0; t < count; ++t) v *= top - t;
  return v;
}

double factorial_d(int k) { return falling_factorial(k, k); }

// 1 - Re (1 + 2 i_unit / R)^-i, evaluated without cancellation.
double one_minus_scaled_derivative(int i, double R) {
  const double a = -0.5 * i * std::log1p(4.0 / (R * R));
  const double b = -i * std::atan(2.0 / R);
  const double sh = std::sin(0.5 * b);
  return -(std::expm1(a) * std::cos(b) - 2.0 * sh * sh);
}

RadialSeries polynomial_series(const MatchingPolynomial& poly) {
  RadialSeries p(poly.ctx.m);
  for (std::size_t j = 0; j < poly.c_coeffs.size(); ++j) {
    p.add_poly(static_cast<int>(j), poly.c_coeffs[j]);
  }
  return p;
}

}  // namespace

double eta0_derivative(const DimensionContext& ctx, int i, double r) {
  if (i < 1) throw InputError("eta0_derivative: order must be at least 1");
  // d^i/dr^i log(r + a) = (-1)^(i-1) (i-1)! (r + a)^-i with a = +-2 i_unit.
  const double modulus = std::pow(r * r + 4.0, -0.5 * i);
  const double phase = -i * std::atan2(2.0, r);
  const double re = modulus * std::cos(phase);
  const double sign = (i - 1) % 2 == 0 ? 1.0 : -1.0;
  return -(ctx.m / ctx.beta()) * sign * factorial_d(i - 1) * 2.0 * re;
}

double MatchingPolynomial::shifted_value(double r) const {
  const double s = r * r;
  double v = 0.0;
  for (std::size_t j = c_coeffs.size(); j-- > 0;) v = v * s + c_coeffs[j];
  return v;
}

MatchingPolynomial build_matching_polynomial(const DimensionContext& ctx, double eps, double R,
                                             double mu) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw InputError("build_matching_polynomial: eps must lie in (0,1)");
  if (!(R >= 4.0) || !std::isfinite(R)) throw InputError("build_matching_polynomial: R must be >= 4");
  const int m = ctx.m;
  const double kappa = ctx.log_coeff();
  MatchingPolynomial poly;
  poly.ctx = ctx;
  poly.eps = eps;
  poly.R = R;
  poly.mu = mu;
  poly.d_coeffs.assign(m, 0.0);

  if (m > 1) {
    const int n = m - 1;
    DenseMatrix A(n, std::vector<double>(n, 0.0));
    std::vector<double> rhs(n, 0.0);
    for (int i = 1; i <= n; ++i) {
      for (int j = (i + 1) / 2; j <= n; ++j) A[i - 1][j - 1] = falling_factorial(2 * j, i);
      const double sign = i % 2 == 0 ? 1.0 : -1.0;
      rhs[i - 1] = kappa * sign * factorial_d(i - 1) * one_minus_scaled_derivative(i, R);
    }
    const auto d = solve_linear_system(A, rhs);
    for (int j = 1; j <= n; ++j) poly.d_coeffs[j] = d[j - 1];
  }
  double tail = 0.0;
  for (int j = 1; j < m; ++j) tail += poly.d_coeffs[j];
  poly.d_coeffs[0] = 0.5 * kappa * std::log1p(4.0 / (R * R)) - tail;

  const double rho = eps * R;
  poly.c_coeffs.assign(m, 0.0);
  poly.c_coeffs[0] = -kappa * std::log(2.0 * eps) + poly.d_coeffs[0];
  for (int j = 1; j < m; ++j) poly.c_coeffs[j] = std::pow(rho, -2 * j) * poly.d_coeffs[j];

  // Contact check in the scaled variable y = r / (eps R), where every term is O(1).
  poly.matching_residuals.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double bubble_part;
    double log_part;
    if (i == 0) {
      bubble_part = eta0(ctx, R) + poly.c_coeffs[0] + kappa * std::log(2.0 * eps);
      log_part = kappa * std::log(R / 2.0);
    } else {
      bubble_part = std::pow(R, i) * eta0_derivative(ctx, i, R);
      const double sign = (i - 1) % 2 == 0 ? 1.0 : -1.0;
      log_part = kappa * sign * factorial_d(i - 1);
    }
    double poly_part = 0.0;
    double scale = std::max(std::abs(bubble_part), std::abs(log_part));
    for (int j = std::max(1, (i + 1) / 2); j < m; ++j) {
      const double t = falling_factorial(2 * j, i) * poly.d_coeffs[j];
      poly_part += t;
      scale = std::max(scale, std::abs(t));
    }
    if (i == 0) {
      poly_part = 0.0;
      for (int j = 1; j < m; ++j) poly_part += poly.d_coeffs[j];
    }
    const double total = bubble_part + poly_part + log_part;
    poly.matching_residuals[i] = std::abs(total) / std::max(scale, 1e-300);
  }
  for (int i = 0; i < m; ++i) {
    if (!(poly.matching_residuals[i] < 1e-9)) {
      throw ConsistencyError("build_matching_polynomial: contact of order " + std::to_string(i) +
                             " violated, residual " + std::to_string(poly.matching_residuals[i]));
    }
  }
  return poly;
}

MatchingBounds matching_polynomial_bounds(const MatchingPolynomial& poly) {
  const int m = poly.ctx.m;
  const double rho = poly.eps * poly.R;
  RadialSeries p = polynomial_series(poly);
  p.add_poly(0, poly.ctx.log_coeff() * std::log(2.0 * poly.eps));
  const RadialSeries top = p.ladder(m);
  MatchingBounds b;
  constexpr int kSamples = 400;
  for (int k = 0; k <= kSamples; ++k) {
    const double r = rho * k / kSamples;
    b.value_bound = std::max(b.value_bound, std::abs(p(r)));
    b.top_level_bound = std::max(b.top_level_bound, std::abs(top(r)));
  }
  return b;
}

double TestFunction::tilde_value(double r) const {
  if (r < interface()) {
    return eta0(ctx, r / eps) + green.C + green.psi_value(r) + poly.shifted_value(r);
  }
  return green.value(std::min(r, green.ball_radius));
}

double TestFunction::tilde_ladder(int j, double r) const {
  if (j == 0) return tilde_value(r);
  if (r < interface()) {
    return std::pow(eps, -j) * ladder_eval(bubble, j, r / eps) + green.psi_ladder(j, r) +
           poly_levels[j](r);
  }
  return green.ladder(j, std::min(r, green.ball_radius));
}

double TestFunction::alpha_norm() const {
  const double sq = (inner_energy + outer_energy - alpha * (inner_l2 + outer_l2)) /
                    (mu_eps * mu_eps);
  return std::sqrt(sq);
}

TestFunction assemble_test_function(const DimensionContext& ctx, double alpha,
                                    const GreenFunction& green, double eps, double rel_tol) {
  if (green.ctx.m != ctx.m) throw InputError("assemble_test_function: Green function dimension mismatch");
  if (std::abs(green.alpha - alpha) > 1e-14 * std::max(1.0, alpha)) {
    throw InputError("assemble_test_function: Green function solved for a different alpha");
  }
  if (!(eps > 0.0) || !(eps < 1.0)) throw InputError("assemble_test_function: eps must lie in (0,1)");
  const double R_eps = std::abs(std::log(eps));
  const double delta = eps * R_eps;
  if (!(R_eps >= 4.0)) throw InputError("assemble_test_function: |log eps| must be at least 4");
  if (!(delta < 0.5 * green.ball_radius)) {
    throw InputError("assemble_test_function: eps |log eps| must be below half the ball radius");
  }
  const int m = ctx.m;
  const int n = 2 * m;
  const double omega = ctx.omega_at(n - 1).value();
  const double kappa = ctx.log_coeff();

  MatchingPolynomial poly = build_matching_polynomial(ctx, eps, R_eps, 0.0);
  const BubbleLadder bubble = build_ladder(ctx);
  const RadialSeries p = polynomial_series(poly);
  std::vector<RadialSeries> poly_levels;
  for (int l = 0; l <= n; ++l) poly_levels.push_back(p.ladder(l));
  const RadialSeries& p_top = poly_levels[m];

  std::vector<double> inner_values;
  const RadialGrid inner_grid = RadialGrid::graded(delta, 1024, 2.0);
  for (double r : inner_grid.nodes()) {
    inner_values.push_back(eta0(ctx, r / eps) + green.C + green.psi_value(r) + poly.shifted_value(r));
  }
  TestFunction tf{ctx,    alpha, green, std::move(poly), eps, R_eps, 0.0, 0.0, 0.0, 0.0, 0.0, {},
                  bubble, poly_levels, RadialProfile(inner_grid, std::move(inner_values), m)};
  const double eps_m = std::pow(eps, m);
  const double eps_n = std::pow(eps, n);

  // Inner region in y = r / eps, y in [0, R_eps].
  auto inner_top = [&](double y) {
    const double r = eps * y;
    return ladder_eval(bubble, m, y) + eps_m * (green.psi_ladder(m, r) + p_top(r));
  };
  tf.inner_energy = adaptive_integrate(
      [&](double y) {
        const double v = inner_top(y);
        return omega * v * v * std::pow(y, n - 1);
      },
      0.0, R_eps, rel_tol);
  tf.inner_l2 = adaptive_integrate(
      [&](double y) {
        const double v = tf.tilde_value(eps * y);
        return omega * v * v * eps_n * std::pow(y, n - 1);
      },
      0.0, R_eps, rel_tol);

  // Outer region in r.
  const double Rb = green.ball_radius;
  tf.outer_energy = adaptive_integrate(
      [&](double r) {
        const double v = green.ladder(m, r);
        return omega * v * v * std::pow(r, n - 1);
      },
      delta, Rb, rel_tol);
  tf.outer_l2 = adaptive_integrate(
      [&](double r) {
        const double v = green.value(r);
        return omega * v * v * std::pow(r, n - 1);
      },
      delta, Rb, rel_tol);

  const double mu_sq = tf.inner_energy + tf.outer_energy - alpha * (tf.inner_l2 + tf.outer_l2);
  if (!(mu_sq > 0.0)) throw ConsistencyError("assemble_test_function: non-positive alpha-norm");
  tf.mu_eps = std::sqrt(mu_sq);
  tf.poly.mu = tf.mu_eps;

  // Jumps of the plain derivatives across r = delta.
  tf.continuity_residuals.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double inner;
    double outer;
    if (i == 0) {
      inner = eta0(ctx, R_eps) + green.C + green.psi_value(delta) + tf.poly.shifted_value(delta);
      outer = green.value(delta);
    } else {
      inner = std::pow(eps, -i) * eta0_derivative(ctx, i, R_eps) +
              green.psi_radial_derivative(i, delta) + p.radial_derivative(i, delta);
      outer = green.radial_derivative(i, delta);
    }
    // Scale by delta^i so every order is compared at the size of the log term.
    const double scale = std::pow(delta, i);
    const double ref = std::max({std::abs(inner) * scale, std::abs(outer) * scale, kappa});
    tf.continuity_residuals[i] = std::abs(inner - outer) * scale / ref;
  }
  return tf;
}

double test_functional(const TestFunction& tf, double beta, double rel_tol) {
  const int n = 2 * tf.ctx.m;
  const double omega = tf.ctx.omega_at(n - 1).value();
  const double eps = tf.eps;
  const double mu_sq = tf.mu_eps * tf.mu_eps;
  const double log_eps = std::log(eps);
  const double inner = adaptive_integrate(
      [&](double y) {
        if (y <= 0.0) return 0.0;
        const double u = tf.tilde_value(eps * y);
        return omega * std::exp(beta * u * u / mu_sq + n * log_eps + (n - 1) * std::log(y));
      },
      0.0, tf.R_eps, rel_tol);
  const double Rb = tf.green.ball_radius;
  const double outer = adaptive_integrate(
      [&](double t) {
        const double r = std::min(std::exp(t), Rb);
        const double g = tf.green.value(r);
        return omega * std::exp(beta * g * g / mu_sq + n * t);
      },
      std::log(tf.interface()), std::log(Rb), rel_tol);
  return inner + outer;
}

ThresholdGap evaluate_threshold_gap(const TestFunction& tf, double rel_tol) {
  const auto& ctx = tf.ctx;
  const int m = ctx.m;
  const double beta = ctx.beta();
  const double i_m = ctx.require_i_m();
  const double Rb = tf.green.ball_radius;
  const double volume = ctx.omega_at(2 * m - 1).value() * std::pow(Rb, 2 * m) / (2 * m);
  ThresholdGap gap;
  gap.F_value = test_functional(tf, beta, rel_tol);
  gap.threshold = volume + ctx.omega_at(2 * m).value() / std::pow(2.0, 2 * m) *
                               std::exp(beta * (tf.green.C - i_m));
  gap.gap = gap.F_value - gap.threshold;
  const double mu_sq = tf.mu_eps * tf.mu_eps;
  gap.predicted_gap = beta / mu_sq * tf.green.l2_norm_sq;
  gap.mu_sq_prediction = -ctx.log_coeff() * std::log(2.0 * tf.eps) + tf.green.C + i_m;
  return gap;
}

}  // namespace amt
