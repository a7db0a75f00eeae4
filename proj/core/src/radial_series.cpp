#include "amt/radial_series.hpp"

#include <cmath>

#include "amt/errors.hpp"

namespace amt {

RadialSeries RadialSeries::monomial(int m, int k, double coeff) {
  RadialSeries s(m);
  s.add_poly(k, coeff);
  return s;
}

RadialSeries RadialSeries::log_r(int m, double coeff) {
  RadialSeries s(m);
  s.add_log(0, coeff);
  return s;
}

double RadialSeries::poly_coeff(int k) const {
  auto it = p_.find(k);
  return it == p_.end() ? 0.0 : it->second;
}

double RadialSeries::log_coeff(int k) const {
  auto it = q_.find(k);
  return it == q_.end() ? 0.0 : it->second;
}

void RadialSeries::add_poly(int k, double c) {
  if (c != 0.0) p_[k] += c;
}

void RadialSeries::add_log(int k, double c) {
  if (c != 0.0) q_[k] += c;
}

RadialSeries& RadialSeries::operator+=(const RadialSeries& other) {
  if (other.m_ != m_ || other.odd_ != odd_) {
    throw InputError("RadialSeries: adding series of different dimension or parity");
  }
  for (const auto& [k, c] : other.p_) add_poly(k, c);
  for (const auto& [k, c] : other.q_) add_log(k, c);
  return *this;
}

RadialSeries RadialSeries::operator+(const RadialSeries& other) const {
  RadialSeries out = *this;
  out += other;
  return out;
}

RadialSeries RadialSeries::operator*(double c) const {
  RadialSeries out(m_);
  out.odd_ = odd_;
  for (const auto& [k, v] : p_) out.add_poly(k, v * c);
  for (const auto& [k, v] : q_) out.add_log(k, v * c);
  return out;
}

RadialSeries RadialSeries::laplacian() const {
  if (odd_) throw InputError("RadialSeries::laplacian: series is odd");
  RadialSeries out(m_);
  for (const auto& [k, c] : p_) {
    out.add_poly(k - 1, 4.0 * k * (k + m_ - 1) * c);
  }
  for (const auto& [k, c] : q_) {
    out.add_log(k - 1, 4.0 * k * (k + m_ - 1) * c);
    out.add_poly(k - 1, (4.0 * k + 2.0 * m_ - 2.0) * c);
  }
  return out;
}

RadialSeries RadialSeries::d_dr() const {
  if (odd_) throw InputError("RadialSeries::d_dr: series is already odd");
  // d/dr (P + Q log r) = (1/r) [2sP' + Q + 2sQ' log r]
  RadialSeries out(m_);
  out.odd_ = true;
  for (const auto& [k, c] : p_) out.add_poly(k, 2.0 * k * c);
  for (const auto& [k, c] : q_) {
    out.add_poly(k, c);
    out.add_log(k, 2.0 * k * c);
  }
  return out;
}

RadialSeries RadialSeries::inverse_laplacian() const {
  if (odd_) throw InputError("RadialSeries::inverse_laplacian: series is odd");
  RadialSeries out(m_);
  auto inv_monomial = [&](int k, double c) {
    out.add_poly(k + 1, c / (4.0 * (k + 1) * (k + m_)));
  };
  for (const auto& [k, c] : p_) {
    if (k < 0) throw InputError("RadialSeries::inverse_laplacian: negative power");
    inv_monomial(k, c);
  }
  for (const auto& [k, c] : q_) {
    if (k < 0) throw InputError("RadialSeries::inverse_laplacian: negative power");
    const double d = 4.0 * (k + 1) * (k + m_);
    out.add_log(k + 1, c / d);
    inv_monomial(k, -(4.0 * k + 2.0 * m_ + 2.0) * c / d);
  }
  return out;
}

RadialSeries RadialSeries::ladder(int j) const {
  if (j < 0) throw InputError("RadialSeries::ladder: negative level");
  RadialSeries out = *this;
  for (int l = 0; l < j / 2; ++l) out = out.laplacian();
  if (j % 2 == 1) out = out.d_dr();
  return out;
}

RadialSeries RadialSeries::truncated(int max_degree) const {
  RadialSeries out(m_);
  out.odd_ = odd_;
  for (const auto& [k, c] : p_) {
    if (k <= max_degree) out.add_poly(k, c);
  }
  for (const auto& [k, c] : q_) {
    if (k <= max_degree) out.add_log(k, c);
  }
  return out;
}

double RadialSeries::operator()(double r) const {
  if (r == 0.0) {
    // Terms s^k log r with k >= 1 vanish at the origin; anything else must be regular.
    const bool p_regular = p_.empty() || p_.begin()->first >= (odd_ ? 1 : 0);
    const bool q_regular = q_.empty() || q_.begin()->first >= 1;
    if (!p_regular || !q_regular) {
      throw InputError("RadialSeries: evaluation at r = 0 of a singular series");
    }
    return odd_ ? 0.0 : poly_coeff(0);
  }
  if (!(r > 0.0)) throw InputError("RadialSeries: evaluation at negative radius");
  const double s = r * r;
  long double pv = 0.0L, qv = 0.0L;
  for (const auto& [k, c] : p_) pv += static_cast<long double>(c) * std::pow(s, k);
  for (const auto& [k, c] : q_) qv += static_cast<long double>(c) * std::pow(s, k);
  long double v = pv + qv * std::log(r);
  if (odd_) v /= r;
  return static_cast<double>(v);
}

double RadialSeries::radial_derivative(int order, double r) const {
  if (odd_) throw InputError("RadialSeries::radial_derivative: series is odd");
  if (order < 0 || !(r > 0.0)) throw InputError("RadialSeries::radial_derivative: bad arguments");
  auto falling = [](double x, int n) {
    double f = 1.0;
    for (int i = 0; i < n; ++i) f *= x - i;
    return f;
  };
  auto choose = [](int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
  };
  const double lr = std::log(r);
  long double v = 0.0L;
  for (const auto& [k, c] : p_) v += c * falling(2.0 * k, order) * std::pow(r, 2 * k - order);
  for (const auto& [k, c] : q_) {
    // Leibniz rule with (log r)^(t) = (-1)^(t-1) (t-1)! r^-t.
    long double term = falling(2.0 * k, order) * lr;
    double fact = 1.0;
    for (int t = 1; t <= order; ++t) {
      if (t > 1) fact *= (t - 1);
      const double sign = (t % 2 == 1) ? 1.0 : -1.0;
      term += choose(order, t) * falling(2.0 * k, order - t) * sign * fact;
    }
    v += c * term * std::pow(r, 2 * k - order);
  }
  return static_cast<double>(v);
}

double RadialSeries::l1_norm() const {
  double n = 0.0;
  for (const auto& kv : p_) n += std::abs(kv.second);
  for (const auto& kv : q_) n += std::abs(kv.second);
  return n;
}

}  // namespace amt
