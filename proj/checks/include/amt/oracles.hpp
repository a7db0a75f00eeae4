#pragma once

#include <functional>
#include <vector>

namespace amt::oracle {

/// J_0(x) from its power series (accurate for 0 <= x <= 10).
double bessel_j0(double x);

/// First positive zero of J_0 by bisection on [2, 3].
double bessel_j0_first_zero();

/// Best value of F_beta over the two-parameter family of normalized truncated
/// bubbles on the unit disk (m = 1): the bubble eta0(r/eps) cut at r = rho and
/// continued by k log(1/r) with C^1 contact, scanned on a log grid in eps and a
/// linear grid in rho.
struct FamilyBest {
  double F = 0.0;
  double eps = 0.0;
  double rho = 0.0;
};
FamilyBest truncated_bubble_family_best(double beta, int eps_points = 25, int rho_points = 20);

/// Radial polynomial pair (u, v) in s = r^2 on the unit ball, both vanishing
/// to order m-1 at r = 1: (1 - s)^m times a low-degree factor.
struct PolynomialPair {
  std::function<double(double)> u;
  std::function<double(double)> v;
};
std::vector<PolynomialPair> integration_by_parts_pairs(int m);

}  // namespace amt::oracle
