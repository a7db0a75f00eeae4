#pragma once

#include <vector>

#include "amt/constants.hpp"

namespace amt {

/// Closed-form coefficients of the half-Laplacian ladder of
/// eta0(r) = -(m/beta*) log(1 + r^2/4), with s = r^2:
///
///   Delta^l eta0       = (m/beta*) sum_k a[l][k] s^k / (4+s)^(2l),       1 <= l <= m-1
///   d/dr Delta^l eta0  = (m/beta*) r sum_k b[l][k] s^k / (4+s)^(2l+1),   0 <= l <= m-1
struct BubbleLadder {
  DimensionContext ctx;
  std::vector<std::vector<Rational>> a_exact;  ///< a_exact[l][k], row 0 empty
  std::vector<std::vector<Rational>> b_exact;  ///< b_exact[l][k]
  std::vector<std::vector<double>> a_coeffs;
  std::vector<std::vector<double>> b_coeffs;
};

/// Numerator polynomial (ascending powers of s) over (4+s)^denominator_power,
/// all times m/beta*, and times r when `times_r` is set.
struct RationalLevel {
  std::vector<Rational> numerator;
  int denominator_power = 0;
  bool times_r = false;
};

struct BubbleReport {
  double R = 0.0;
  double mass = 0.0;
  double mass_deficit = 0.0;  ///< 1 - mass, integrated over r > R directly
  double energy = 0.0;
  double energy_prediction = 0.0;
  double pde_max_residual = 0.0;
  double asymptotic_max_residual = 0.0;
};

/// Radii at which the Liouville equation and half-step identities are sampled.
const std::vector<double>& bubble_sample_radii();

double eta0(const DimensionContext& ctx, double r);

/// a_{k,l} = (-1)^l (l-1)! C(l,k) (m+l-1)! (m-l+k-1)! / ((m+k-1)! (m-l-1)!) 2^(4l-2k),
/// b_{k,l} = 8(k+1) a_{k+1,l} + (2k-4l) a_{k,l} (k < l), b_{l,l} = -2l a_{l,l}, b_{0,0} = -2.
BubbleLadder build_ladder(const DimensionContext& ctx);

/// Ladder level j of eta0 at r (0 <= j <= 2m); j = 2m is (-1)^m omega_2m^-1 (1+r^2/4)^-2m.
double ladder_eval(const BubbleLadder& ladder, int j, double r);

/// Levels 1..2m of eta0 derived independently by exact differentiation of
/// rational functions of s, starting from d eta0/ds = -(m/beta*)/(4+s).
/// Entry j holds level j (entry 0 unused).
std::vector<RationalLevel> ladder_by_operator_chain(const DimensionContext& ctx);

/// r^j * level j + (2m/beta*) K_{m,j/2} for 1 <= j <= 2m-1: the remainder of the
/// far-field law. The limit is subtracted exactly in the rational numerator
/// before evaluation, so the result carries no cancellation error.
double asymptotic_remainder(const BubbleLadder& ladder, int j, double r);

/// Radial Laplacian of the closed-form level 2l (0 <= l <= m-1) at r, obtained
/// by differentiating its a-coefficient representation in extended precision.
double laplacian_of_level(const BubbleLadder& ladder, int l, double r);

/// d/dr of the closed-form level 2l from its a-coefficients, for comparison
/// with the b-coefficient form.
double radial_derivative_of_level(const BubbleLadder& ladder, int l, double r);

/// Max relative deviation of laplacian_of_level(m-1) from (-1)^m omega_2m^-1 e^(2 beta* eta0)
/// over bubble_sample_radii().
double bubble_pde_residual(const BubbleLadder& ladder);

/// Max relative deviation between radial_derivative_of_level(l) and the
/// b-coefficient level 2l+1 over l = 1..m-1 and the sample radii.
double bubble_half_step_residual(const BubbleLadder& ladder);

/// omega_2m^-1 * integral of e^(2 beta* eta0) over B_R.
double bubble_mass(const DimensionContext& ctx, double R, double rel_tol = 1e-12);

/// omega_2m^-1 * integral of e^(2 beta* eta0) outside B_R (the deficit 1 - mass).
double bubble_mass_deficit(const DimensionContext& ctx, double R, double rel_tol = 1e-12);

/// Energy of eta0 on B_R against (2m/beta*) log(R/2) + I_m - H_m. Requires R >= 4
/// and ctx.i_m.
BubbleReport bubble_energy(const DimensionContext& ctx, const BubbleLadder& ladder, double R,
                           double rel_tol = 1e-12);

/// integral over B_R of eta0 (-Delta)^m eta0 with (-Delta)^m eta0 taken from
/// laplacian_of_level(m-1); R = infinity gives the full-space value.
double self_energy_by_operator(const BubbleLadder& ladder, double R, double rel_tol = 1e-12);

}  // namespace amt
