#pragma once

#include <vector>

#include "amt/bubble.hpp"
#include "amt/constants.hpp"
#include "amt/greens.hpp"
#include "amt/radial_profile.hpp"
#include "amt/radial_series.hpp"

namespace amt {

/// Radial polynomial gluing the rescaled bubble eta0(r/eps) to -(2m/beta*) log r
/// with C^(m-1) contact at r = eps R:
///   p(r) + mu^2 = c_0 + sum_{j>=1} c_j r^2j,
///   c_0 = -(2m/beta*) log(2 eps) + d_0(R),  c_j = (eps R)^-2j d_j(R).
struct MatchingPolynomial {
  DimensionContext ctx;
  double eps = 0.0;
  double R = 0.0;
  double mu = 0.0;
  std::vector<double> d_coeffs;  ///< d_0(R)..d_{m-1}(R)
  std::vector<double> c_coeffs;  ///< c_0..c_{m-1}
  /// (eps R)^i |d^i/dr^i [eta0(r/eps) + p + mu^2 + (2m/beta*) log r]| at r = eps R,
  /// relative to the largest term, i = 0..m-1.
  std::vector<double> matching_residuals;

  /// p(r) + mu^2 for r <= eps R.
  double shifted_value(double r) const;
};

/// d_1..d_{m-1} from the (m-1)x(m-1) system
///   sum_{j >= ceil(i/2)} (2j)!/(2j-i)! d_j = (2m/beta*) (-1)^i (i-1)! - R^i eta0^(i)(R),
/// whose right side is evaluated without cancellation from the exact
/// derivatives of eta0; d_0 = (m/beta*) log(1 + 4/R^2) - sum_j d_j.
/// Throws InputError unless eps > 0 and R >= 4; ConsistencyError if matching fails 1e-9.
MatchingPolynomial build_matching_polynomial(const DimensionContext& ctx, double eps, double R,
                                             double mu);

/// Exact d^i/dr^i eta0 at r: -(m/beta*) (-1)^(i-1) (i-1)! 2 Re (r + 2 i_unit)^-i, i >= 1.
double eta0_derivative(const DimensionContext& ctx, int i, double r);

/// The glued candidate: u~ = eta0(r/eps) + C + psi + p + mu^2 inside r < eps R_eps,
/// u~ = G outside, R_eps = |log eps|; u = u~ / mu_eps with mu_eps^2 = ||u~||_alpha^2.
struct TestFunction {
  DimensionContext ctx;
  double alpha = 0.0;
  GreenFunction green;
  MatchingPolynomial poly;
  double eps = 0.0;
  double R_eps = 0.0;
  double mu_eps = 0.0;
  double inner_energy = 0.0;  ///< integral of |Delta^(m/2) u~|^2 over r < eps R_eps
  double outer_energy = 0.0;  ///< same over eps R_eps < r < ball radius
  double inner_l2 = 0.0;
  double outer_l2 = 0.0;
  std::vector<double> continuity_residuals;  ///< relative jumps of d^i u~/dr^i, i = 0..m-1
  BubbleLadder bubble;
  std::vector<RadialSeries> poly_levels;  ///< ladder of p + mu^2, levels 0..2m
  RadialProfile inner;  ///< u~ sampled on [0, eps R_eps]

  double interface() const { return eps * R_eps; }
  /// u~(r), 0 <= r <= ball radius (r = 0 allowed).
  double tilde_value(double r) const;
  /// u(r) = u~(r) / mu_eps.
  double value(double r) const { return tilde_value(r) / mu_eps; }
  /// Ladder level j of u~ at r > 0.
  double tilde_ladder(int j, double r) const;
  /// ||u||_alpha recomputed from the stored pieces.
  double alpha_norm() const;
};

/// Assembles u_eps. Requires green solved for the same m and alpha, and
/// eps R_eps < ball_radius / 2 (InputError otherwise).
TestFunction assemble_test_function(const DimensionContext& ctx, double alpha,
                                    const GreenFunction& green, double eps, double rel_tol = 1e-12);

struct ThresholdGap {
  double F_value = 0.0;
  double threshold = 0.0;
  double gap = 0.0;
  double predicted_gap = 0.0;  ///< (beta*/mu_eps^2) ||G||^2
  double mu_sq_prediction = 0.0;  ///< -(2m/beta*) log(2 eps) + C + I_m
};

/// F_beta(u_eps) with the exponent kept in log form at every node.
double test_functional(const TestFunction& tf, double beta, double rel_tol = 1e-12);

/// F_beta*(u_eps) against |Omega| + (omega_2m / 2^2m) e^(beta* (C - I_m)).
ThresholdGap evaluate_threshold_gap(const TestFunction& tf, double rel_tol = 1e-12);

/// Maxima of |p + mu^2 + (2m/beta*) log(2 eps)| and of |Delta^(m/2) p| on r <= eps R.
struct MatchingBounds {
  double value_bound = 0.0;
  double top_level_bound = 0.0;
};
MatchingBounds matching_polynomial_bounds(const MatchingPolynomial& poly);

}  // namespace amt
