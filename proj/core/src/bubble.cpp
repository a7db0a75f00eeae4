#include "amt/bubble.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "amt/errors.hpp"
#include "amt/quadrature.hpp"

namespace amt {
namespace {

using RPoly = std::vector<Rational>;

BigInt binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

RPoly rpoly_derivative(const RPoly& p) {
  RPoly d(p.size() > 1 ? p.size() - 1 : 1, Rational(0));
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = Rational(static_cast<long long>(k)) * p[k];
  return d;
}

// p (4 + s) + c q, coefficients ascending.
RPoly times_four_plus_s_plus(const RPoly& p, const Rational& c, const RPoly& q) {
  RPoly out(std::max(p.size() + 1, q.size()), Rational(0));
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k] += 4 * p[k];
    out[k + 1] += p[k];
  }
  for (std::size_t k = 0; k < q.size(); ++k) out[k] += c * q[k];
  return out;
}

void trim(RPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// With f = P / (4+s)^q: df/ds = A / (4+s)^(q+1), A = P'(4+s) - qP.
RPoly s_derivative_numerator(const RPoly& P, int q) {
  RPoly A = times_four_plus_s_plus(rpoly_derivative(P), Rational(-q), P);
  trim(A);
  return A;
}

// Delta f = [4s B + 2n A (4+s)] / (4+s)^(q+2), B = A'(4+s) - (q+1) A.
RPoly laplacian_numerator(const RPoly& P, int q, int n) {
  const RPoly A = s_derivative_numerator(P, q);
  const RPoly B = s_derivative_numerator(A, q + 1);
  RPoly out(std::max(B.size() + 1, A.size() + 1), Rational(0));
  for (std::size_t k = 0; k < B.size(); ++k) out[k + 1] += 4 * B[k];
  for (std::size_t k = 0; k < A.size(); ++k) {
    out[k] += 2 * n * 4 * A[k];
    out[k + 1] += 2 * n * A[k];
  }
  trim(out);
  return out;
}

long double poly_eval_ld(const std::vector<double>& p, long double s, int derivative) {
  long double v = 0.0L;
  for (std::size_t k = p.size(); k-- > static_cast<std::size_t>(derivative);) {
    long double c = p[k];
    for (int d = 0; d < derivative; ++d) c *= static_cast<long double>(k - d);
    v = v * s + c;
  }
  return v;
}

double double_poly_eval(const std::vector<double>& p, double s) {
  double v = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * s + p[k];
  return v;
}

}  // namespace

const std::vector<double>& bubble_sample_radii() {
  static const std::vector<double> radii{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0};
  return radii;
}

double eta0(const DimensionContext& ctx, double r) {
  return -(ctx.m / ctx.beta()) * std::log1p(0.25 * r * r);
}

BubbleLadder build_ladder(const DimensionContext& ctx) {
  const int m = ctx.m;
  BubbleLadder L;
  L.ctx = ctx;
  L.a_exact.assign(m, {});
  L.b_exact.assign(m, {});
  for (int l = 1; l <= m - 1; ++l) {
    for (int k = 0; k <= l; ++k) {
      BigInt num = factorial(l - 1) * binomial(l, k) * factorial(m + l - 1) *
                   factorial(m - l + k - 1) * (BigInt(1) << (4 * l - 2 * k));
      Rational a(num, factorial(m + k - 1) * factorial(m - l - 1));
      if (l % 2 == 1) a = -a;
      L.a_exact[l].push_back(a);
    }
  }
  L.b_exact[0] = {Rational(-2)};
  for (int l = 1; l <= m - 1; ++l) {
    const auto& a = L.a_exact[l];
    for (int k = 0; k < l; ++k) {
      L.b_exact[l].push_back(8 * (k + 1) * a[k + 1] + (2 * k - 4 * l) * a[k]);
    }
    L.b_exact[l].push_back(-2 * l * a[l]);
  }
  auto to_double = [](const std::vector<std::vector<Rational>>& t) {
    std::vector<std::vector<double>> out;
    for (const auto& row : t) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(v.convert_to<double>());
      out.push_back(r);
    }
    return out;
  };
  L.a_coeffs = to_double(L.a_exact);
  L.b_coeffs = to_double(L.b_exact);
  return L;
}

double ladder_eval(const BubbleLadder& ladder, int j, double r) {
  const DimensionContext& ctx = ladder.ctx;
  const int m = ctx.m;
  if (j < 0 || j > 2 * m) {
    std::ostringstream os;
    os << "ladder_eval: level " << j << " outside 0.." << 2 * m;
    throw InputError(os.str());
  }
  if (!(r >= 0.0) || !std::isfinite(r)) throw InputError("ladder_eval: radius must be finite and >= 0");
  const double c = m / ctx.beta();
  const double s = r * r;
  if (j == 0) return eta0(ctx, r);
  if (j == 2 * m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign / ctx.omega_at(2 * m).value() * std::pow(1.0 + 0.25 * s, -2.0 * m);
  }
  const int l = j / 2;
  if (j % 2 == 0) {
    return c * double_poly_eval(ladder.a_coeffs[l], s) / std::pow(4.0 + s, 2 * l);
  }
  return c * r * double_poly_eval(ladder.b_coeffs[l], s) / std::pow(4.0 + s, 2 * l + 1);
}

std::vector<RationalLevel> ladder_by_operator_chain(const DimensionContext& ctx) {
  const int m = ctx.m;
  const int n = 2 * m;
  std::vector<RationalLevel> out(2 * m + 1);
  // d eta0 / ds = -(m/beta*) / (4+s): level 1 = 2r d/ds, level 2 = 4s d2/ds2 + 2n d/ds.
  out[1] = RationalLevel{{Rational(-2)}, 1, true};
  RPoly lap{Rational(-8 * n), Rational(4 - 2 * n)};
  trim(lap);
  out[2] = RationalLevel{lap, 2, false};
  for (int l = 1; 2 * l <= 2 * m - 1; ++l) {
    const RationalLevel& even = out[2 * l];
    if (2 * l + 1 <= 2 * m) {
      RPoly A = s_derivative_numerator(even.numerator, even.denominator_power);
      for (auto& v : A) v *= 2;
      out[2 * l + 1] = RationalLevel{A, even.denominator_power + 1, true};
    }
    if (2 * l + 2 <= 2 * m) {
      out[2 * l + 2] = RationalLevel{laplacian_numerator(even.numerator, even.denominator_power, n),
                                     even.denominator_power + 2, false};
    }
  }
  return out;
}

double asymptotic_remainder(const BubbleLadder& ladder, int j, double r) {
  const DimensionContext& ctx = ladder.ctx;
  const int m = ctx.m;
  if (j < 1 || j > 2 * m - 1) throw InputError("asymptotic_remainder: level outside 1..2m-1");
  const int l = j / 2;
  const bool odd = j % 2 == 1;
  const RPoly& coeffs = odd ? ladder.b_exact[l] : ladder.a_exact[l];
  const int shift = odd ? l + 1 : l;
  const int q = odd ? 2 * l + 1 : 2 * l;
  // s^shift * coeffs(s) + 2 K_{m,j/2} (4+s)^q, all over (4+s)^q.
  RPoly num(std::max<std::size_t>(coeffs.size() + shift, q + 1), Rational(0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) num[k + shift] += coeffs[k];
  const Rational twice_k = 2 * ctx.k_at(j).rational();
  for (int k = 0; k <= q; ++k) {
    num[k] += twice_k * Rational(binomial(q, k) * BigInt(1) * (BigInt(1) << (2 * (q - k))));
  }
  trim(num);
  std::vector<double> nd;
  for (const auto& v : num) nd.push_back(v.convert_to<double>());
  const long double s = static_cast<long double>(r) * r;
  const long double c = static_cast<long double>(m) / ctx.beta();
  return static_cast<double>(c * poly_eval_ld(nd, s, 0) / std::pow(4.0L + s, q));
}

double laplacian_of_level(const BubbleLadder& ladder, int l, double r) {
  const DimensionContext& ctx = ladder.ctx;
  const int m = ctx.m;
  const int n = 2 * m;
  if (l < 0 || l > m - 1) throw InputError("laplacian_of_level: l outside 0..m-1");
  const long double c = static_cast<long double>(m) / ctx.beta();
  const long double s = static_cast<long double>(r) * r;
  const long double w = 4.0L + s;
  if (l == 0) {
    // eta0' = -c/(4+s), eta0'' = c/(4+s)^2 in s.
    return static_cast<double>(c * (4.0L * s - 2.0L * n * w) / (w * w));
  }
  const auto& a = ladder.a_coeffs[l];
  const int q = 2 * l;
  const long double P = poly_eval_ld(a, s, 0);
  const long double dP = poly_eval_ld(a, s, 1);
  const long double ddP = poly_eval_ld(a, s, 2);
  const long double A = dP * w - q * P;
  const long double dA = ddP * w + dP - q * dP;
  const long double B = dA * w - (q + 1) * A;
  return static_cast<double>(c * (4.0L * s * B + 2.0L * n * A * w) / std::pow(w, q + 2));
}

double radial_derivative_of_level(const BubbleLadder& ladder, int l, double r) {
  const DimensionContext& ctx = ladder.ctx;
  if (l < 1 || l > ctx.m - 1) throw InputError("radial_derivative_of_level: l outside 1..m-1");
  const long double c = static_cast<long double>(ctx.m) / ctx.beta();
  const long double s = static_cast<long double>(r) * r;
  const long double w = 4.0L + s;
  const auto& a = ladder.a_coeffs[l];
  const int q = 2 * l;
  const long double A = poly_eval_ld(a, s, 1) * w - q * poly_eval_ld(a, s, 0);
  return static_cast<double>(c * 2.0L * r * A / std::pow(w, q + 1));
}

double bubble_pde_residual(const BubbleLadder& ladder) {
  const int m = ladder.ctx.m;
  double worst = 0.0;
  for (double r : bubble_sample_radii()) {
    const double exact = ladder_eval(ladder, 2 * m, r);
    const double numeric = laplacian_of_level(ladder, m - 1, r);
    worst = std::max(worst, std::abs(numeric - exact) / std::abs(exact));
  }
  return worst;
}

double bubble_half_step_residual(const BubbleLadder& ladder) {
  const int m = ladder.ctx.m;
  double worst = 0.0;
  for (int l = 1; l <= m - 1; ++l) {
    for (double r : bubble_sample_radii()) {
      if (r == 0.0) continue;
      const double closed = ladder_eval(ladder, 2 * l + 1, r);
      const double numeric = radial_derivative_of_level(ladder, l, r);
      worst = std::max(worst, std::abs(numeric - closed) / std::abs(closed));
    }
  }
  return worst;
}

namespace {

double mass_integrand(int m, double r) {
  if (r == 0.0) return 0.0;
  return std::exp((2 * m - 1) * std::log(r) - 2.0 * m * std::log1p(0.25 * r * r));
}

}  // namespace

double bubble_mass(const DimensionContext& ctx, double R, double rel_tol) {
  if (!(R > 0.0)) throw InputError("bubble_mass: R must be positive");
  const int m = ctx.m;
  const double ratio = (ctx.omega_at(2 * m - 1) / ctx.omega_at(2 * m)).value();
  return ratio * adaptive_integrate([m](double r) { return mass_integrand(m, r); }, 0.0, R, rel_tol);
}

double bubble_mass_deficit(const DimensionContext& ctx, double R, double rel_tol) {
  if (!(R > 0.0)) throw InputError("bubble_mass_deficit: R must be positive");
  const int m = ctx.m;
  const double ratio = (ctx.omega_at(2 * m - 1) / ctx.omega_at(2 * m)).value();
  return ratio * improper_integrate([m](double r) { return mass_integrand(m, r); }, R, rel_tol,
                                    2.0 * m + 1.0);
}

BubbleReport bubble_energy(const DimensionContext& ctx, const BubbleLadder& ladder, double R,
                           double rel_tol) {
  if (!(R >= 4.0)) throw InputError("bubble_energy: R must be >= 4");
  const int m = ctx.m;
  const double i_m = ctx.require_i_m();
  const double omega = ctx.omega_at(2 * m - 1).value();
  BubbleReport rep;
  rep.R = R;
  rep.mass = bubble_mass(ctx, R, rel_tol);
  rep.mass_deficit = bubble_mass_deficit(ctx, R, rel_tol);
  // Split at r = 2 where the squared top level turns from its core to its tail.
  auto integrand = [&](double r) {
    const double v = ladder_eval(ladder, m, r);
    return omega * v * v * std::pow(r, 2 * m - 1);
  };
  rep.energy = adaptive_integrate(integrand, 0.0, 2.0, rel_tol) +
               adaptive_integrate(integrand, 2.0, R, rel_tol);
  rep.energy_prediction = ctx.log_coeff() * std::log(R / 2.0) + i_m - ctx.h_m.value();
  rep.pde_max_residual = bubble_pde_residual(ladder);
  double asym = 0.0;
  for (int j = 1; j <= 2 * m - 1; ++j) {
    asym = std::max(asym, std::abs(asymptotic_remainder(ladder, j, R)));
  }
  rep.asymptotic_max_residual = asym;
  return rep;
}

double self_energy_by_operator(const BubbleLadder& ladder, double R, double rel_tol) {
  const DimensionContext& ctx = ladder.ctx;
  const int m = ctx.m;
  const double omega = ctx.omega_at(2 * m - 1).value();
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  auto integrand = [&](double r) {
    if (r == 0.0) return 0.0;
    return omega * eta0(ctx, r) * sign * laplacian_of_level(ladder, m - 1, r) *
           std::pow(r, 2 * m - 1);
  };
  if (std::isinf(R)) return improper_integrate(integrand, 0.0, rel_tol, 2.0 * m + 1.0);
  if (!(R > 0.0)) throw InputError("self_energy_by_operator: R must be positive");
  return adaptive_integrate(integrand, 0.0, R, rel_tol);
}

}  // namespace amt
