#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace amt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A number q * pi^k with q rational (lowest terms) and k an integer.
class ExactConstant {
 public:
  ExactConstant() : ExactConstant(Rational(0), 0) {}
  ExactConstant(Rational q, int pi_power);
  static ExactConstant integer(long long v) { return ExactConstant(Rational(v), 0); }

  const Rational& rational() const { return q_; }
  int pi_power() const { return k_; }
  /// Cached double evaluation of q * pi^k.
  double value() const { return value_; }
  bool is_zero() const { return q_ == 0; }

  std::string numerator_string() const;
  std::string denominator_string() const;
  /// Human-readable form, e.g. "-1/16 * pi^-2".
  std::string to_string() const;

  ExactConstant operator-() const { return ExactConstant(-q_, k_); }
  ExactConstant operator*(const ExactConstant& o) const;
  ExactConstant operator/(const ExactConstant& o) const;
  /// Sum of two constants with the same power of pi (zero is compatible with any power).
  /// Throws InputError otherwise, since the result would leave the representation.
  ExactConstant operator+(const ExactConstant& o) const;
  ExactConstant operator-(const ExactConstant& o) const { return *this + (-o); }
  ExactConstant pow(int e) const;
  /// Exact equality (no tolerance).
  bool operator==(const ExactConstant& o) const;
  bool operator!=(const ExactConstant& o) const { return !(*this == o); }

 private:
  Rational q_;
  int k_;
  double value_;
};

BigInt factorial(int n);
/// n!! for n >= -1 (with (-1)!! = 0!! = 1).
BigInt double_factorial(int n);

}  // namespace amt
