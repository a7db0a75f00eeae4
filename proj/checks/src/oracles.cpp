#include "amt/oracles.hpp"

#include <cmath>
#include <numbers>

#include "amt/quadrature.hpp"

namespace amt::oracle {

double bessel_j0(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_j0_first_zero() {
  double lo = 2.0;
  double hi = 3.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j0(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

constexpr double kPi = std::numbers::pi;

// eta0 for m = 1 and its derivative.
double bubble(double y) { return -std::log1p(0.25 * y * y) / (4.0 * kPi); }
double bubble_slope(double y) { return -(0.5 * y) / (1.0 + 0.25 * y * y) / (4.0 * kPi); }

double family_value(double beta, double eps, double rho) {
  const double k = -rho / eps * bubble_slope(rho / eps);
  const double shift = -bubble(rho / eps) + k * std::log(1.0 / rho);
  const auto w = [&](double r) {
    return r < rho ? bubble(r / eps) + shift : k * std::log(1.0 / r);
  };
  const double inner_grad = adaptive_integrate(
      [&](double r) {
        const double g = bubble_slope(r / eps) / eps;
        return g * g * r;
      },
      0.0, rho, 1e-12);
  const double dirichlet = 2.0 * kPi * (inner_grad + k * k * std::log(1.0 / rho));
  const double scale = beta / dirichlet;
  const auto integrand = [&](double r) {
    const double v = w(r);
    return 2.0 * kPi * std::exp(scale * v * v) * r;
  };
  double F = adaptive_integrate(integrand, 0.0, rho, 1e-12);
  if (rho < 1.0) F += adaptive_integrate(integrand, rho, 1.0, 1e-12);
  return F;
}

}  // namespace

FamilyBest truncated_bubble_family_best(double beta, int eps_points, int rho_points) {
  FamilyBest best;
  for (int i = 0; i < eps_points; ++i) {
    const double eps = std::pow(10.0, -3.0 + 4.0 * i / (eps_points - 1));
    for (int j = 1; j <= rho_points; ++j) {
      const double rho = static_cast<double>(j) / rho_points;
      const double F = family_value(beta, eps, rho);
      if (F > best.F) best = {F, eps, rho};
    }
  }
  return best;
}

std::vector<PolynomialPair> integration_by_parts_pairs(int m) {
  const auto base = [m](double r) { return std::pow(1.0 - r * r, m); };
  std::vector<PolynomialPair> pairs;
  pairs.push_back({base, [base](double r) { return base(r) * (2.0 + r * r * r * r); }});
  pairs.push_back({[base](double r) { return base(r) * (1.0 + 3.0 * r * r); },
                   [base](double r) { return base(r) * (1.0 - 0.5 * r * r); }});
  pairs.push_back({[base](double r) { return base(r) * (0.5 - r * r + r * r * r * r); },
                   [base](double r) { return base(r) * base(r); }});
  return pairs;
}

}  // namespace amt::oracle
