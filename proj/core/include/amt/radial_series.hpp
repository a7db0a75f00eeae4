#pragma once

#include <map>

namespace amt {

/// Exact radial calculus on truncated expansions
///
///   f(r) = r^(-odd) [ sum_k p_k s^k + log(r) sum_k q_k s^k ],   s = r^2,
///
/// in dimension n = 2m. Powers k may be negative. Even series (odd = 0) are
/// closed under the radial Laplacian and its particular inverse; d/dr maps an
/// even series to an odd one.
class RadialSeries {
 public:
  explicit RadialSeries(int m) : m_(m) {}

  static RadialSeries monomial(int m, int k, double coeff = 1.0);
  static RadialSeries log_r(int m, double coeff = 1.0);

  int m() const { return m_; }
  bool odd() const { return odd_; }
  const std::map<int, double>& poly() const { return p_; }
  const std::map<int, double>& log_poly() const { return q_; }
  double poly_coeff(int k) const;
  double log_coeff(int k) const;

  void add_poly(int k, double c);
  void add_log(int k, double c);

  RadialSeries& operator+=(const RadialSeries& other);
  RadialSeries operator+(const RadialSeries& other) const;
  RadialSeries operator*(double c) const;

  /// Radial Laplacian: Delta s^k = 4k(k+m-1) s^(k-1),
  /// Delta(s^k log r) = 4k(k+m-1) s^(k-1) log r + (4k+2m-2) s^(k-1).
  RadialSeries laplacian() const;
  /// d/dr of an even series.
  RadialSeries d_dr() const;
  /// The particular solution of Delta w = f built termwise from
  /// Delta^-1 s^k = s^(k+1) / (4(k+1)(k+m)); requires an even series with k >= 0.
  RadialSeries inverse_laplacian() const;
  /// Ladder level j (Delta^(j/2) for even j, d/dr Delta^((j-1)/2) for odd j).
  RadialSeries ladder(int j) const;
  /// Drops every term of degree above max_degree.
  RadialSeries truncated(int max_degree) const;

  double operator()(double r) const;
  /// Plain derivative d^order/dr^order of an even series at r > 0.
  double radial_derivative(int order, double r) const;

  /// Sum of |coefficients| (both parts).
  double l1_norm() const;

 private:
  int m_;
  bool odd_ = false;
  std::map<int, double> p_;
  std::map<int, double> q_;
};

}  // namespace amt
