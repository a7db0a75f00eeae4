#include "amt/constants.hpp"

#include <cmath>
#include <sstream>

#include "amt/errors.hpp"
#include "amt/quadrature.hpp"

namespace amt {

const ExactConstant& DimensionContext::omega_at(int l) const {
  if (l < 1 || l >= static_cast<int>(omega.size())) throw InputError("omega_at: index out of range");
  return omega[l];
}

const ExactConstant& DimensionContext::k_tilde_at(int l) const {
  if (l < 1 || l >= static_cast<int>(k_tilde.size())) {
    throw InputError("k_tilde_at: index out of range");
  }
  return k_tilde[l];
}

const ExactConstant& DimensionContext::k_at(int j) const {
  if (j < 1 || j >= static_cast<int>(k_half.size())) throw InputError("k_at: index out of range");
  return k_half[j];
}

double DimensionContext::require_i_m() const {
  if (!i_m) throw InputError("DimensionContext: I_m has not been computed");
  return *i_m;
}

ExactConstant sphere_measure(int l) {
  if (l < 1) throw InputError("sphere_measure: l must be >= 1");
  if (l % 2 == 1) {
    const int k = (l + 1) / 2;
    return ExactConstant(Rational(BigInt(2), factorial(k - 1)), k);
  }
  const int k = l / 2;
  return ExactConstant(Rational(BigInt(1) << (k + 1), double_factorial(2 * k - 1)), k);
}

namespace {

ExactConstant k_tilde_value(int m, int l) {
  // (-1)^(l+1) 2^(2l-1) (l-1)! (m-1)! / (m-l-1)!
  BigInt num = (BigInt(1) << (2 * l - 1)) * factorial(l - 1) * factorial(m - 1);
  Rational q(num, factorial(m - l - 1));
  if (l % 2 == 0) q = -q;
  return ExactConstant(q, 0);
}

ExactConstant sign(int exponent) { return ExactConstant::integer(exponent % 2 == 0 ? 1 : -1); }

ExactConstant h_by_definition(const DimensionContext& ctx) {
  const int m = ctx.m;
  if (m == 1) return ExactConstant();
  ExactConstant sum;
  for (int j = 1; j <= m - 1; ++j) {
    sum = sum + sign(j + m) * ctx.k_at(j) * ctx.k_at(2 * m - j - 1);
  }
  const ExactConstant c = ExactConstant::integer(2 * m) / ctx.beta_star;
  return c * c * ctx.omega_at(2 * m - 1) * sum;
}

ExactConstant h_by_remark(const DimensionContext& ctx) {
  const int m = ctx.m;
  ExactConstant sum;
  for (int j = 1; j <= m - 1; ++j) {
    sum = sum + sign((2 * j) / m) * ExactConstant(Rational(1, j), 0);
  }
  return ExactConstant::integer(m) / ctx.beta_star * sum;
}

}  // namespace

ExactConstant h_constant(const DimensionContext& ctx, HMethod method) {
  return method == HMethod::Definition ? h_by_definition(ctx) : h_by_remark(ctx);
}

bool residue_identity_holds(const DimensionContext& ctx, int index) {
  if (index < 1 || index > 2 * ctx.m - 1) return false;
  const ExactConstant lhs = ExactConstant::integer(2 * ctx.m) / ctx.beta_star * ctx.k_at(index);
  const ExactConstant rhs = sign(ctx.m - 1) / ctx.omega_at(2 * ctx.m - 1);
  return lhs == rhs;
}

DimensionContext build_context(int m) {
  if (m < 1 || m > 12) {
    std::ostringstream os;
    os << "build_context: m = " << m << " outside 1..12";
    throw InputError(os.str());
  }
  DimensionContext ctx;
  ctx.m = m;
  ctx.dim = 2 * m;
  ctx.omega.resize(2 * m + 1);
  for (int l = 1; l <= 2 * m; ++l) ctx.omega[l] = sphere_measure(l);
  ctx.beta_star = ExactConstant(Rational(BigInt(m) * factorial(2 * m - 1)), 0) * ctx.omega[2 * m];
  ctx.gamma_m = ExactConstant(Rational(BigInt(1) << (2 * m - 2)) * Rational(factorial(m - 1)) *
                                  Rational(factorial(m - 1)),
                              0) *
                ctx.omega[2 * m - 1];

  ctx.k_tilde.resize(m);
  for (int l = 1; l <= m - 1; ++l) ctx.k_tilde[l] = k_tilde_value(m, l);
  ctx.k_half.resize(2 * m);
  for (int j = 1; j <= 2 * m - 1; ++j) {
    if (j == 1) {
      ctx.k_half[j] = ExactConstant::integer(1);
    } else if (j % 2 == 0) {
      ctx.k_half[j] = ctx.k_tilde[j / 2];
    } else {
      ctx.k_half[j] = ExactConstant::integer(-(j - 1)) * ctx.k_tilde[(j - 1) / 2];
    }
  }

  const ExactConstant h_def = h_by_definition(ctx);
  const ExactConstant h_rem = h_by_remark(ctx);
  if (h_def != h_rem) {
    throw ConsistencyError("build_context: the two H_m formulas disagree: " + h_def.to_string() +
                           " vs " + h_rem.to_string());
  }
  ctx.h_m = h_def;

  if (ctx.gamma_m != ctx.beta_star / ExactConstant::integer(2 * m)) {
    throw ConsistencyError("build_context: gamma_m != beta*/(2m)");
  }
  if (!residue_identity_holds(ctx, 2 * m - 1)) {
    throw ConsistencyError("build_context: (2m/beta*) K_{m,(2m-1)/2} identity fails");
  }
  const ExactConstant km = ctx.k_at(m);
  if (ctx.omega_at(2 * m - 1) * (ExactConstant::integer(2 * m) / ctx.beta_star) * km * km !=
      ExactConstant::integer(1)) {
    throw ConsistencyError("build_context: omega_{2m-1} (2m/beta*) K_{m,m/2}^2 != 1");
  }
  return ctx;
}

double compute_i_m(const DimensionContext& ctx, double rel_tol) {
  if (!(rel_tol <= 1e-8)) throw InputError("compute_i_m: rel_tol must be <= 1e-8");
  const int m = ctx.m;
  const ExactConstant prefactor = ExactConstant(Rational(BigInt(m) * (BigInt(1) << (4 * m))), 0) *
                                  ctx.omega_at(2 * m - 1) / (ctx.beta_star * ctx.omega_at(2 * m));
  auto integrand = [m](double r) {
    if (r == 0.0) return 0.0;
    const double s = r * r;
    return std::log1p(0.25 * s) *
           std::exp((2 * m - 1) * std::log(r) - 2.0 * m * std::log(4.0 + s));
  };
  // log(r) r^(-2m-1) decay of the one-dimensional radial integrand.
  const double integral = improper_integrate(integrand, 0.0, rel_tol, 2.0 * m + 1.0);
  return -prefactor.value() * integral;
}

DimensionContext with_i_m(DimensionContext ctx, double rel_tol) {
  ctx.i_m = compute_i_m(ctx, rel_tol);
  return ctx;
}

}  // namespace amt
