#include "amt/exact_constant.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>

#include "amt/errors.hpp"

namespace amt {

ExactConstant::ExactConstant(Rational q, int pi_power) : q_(std::move(q)), k_(pi_power) {
  if (q_ == 0) k_ = 0;
  const long double pi = boost::math::constants::pi<long double>();
  const long double qv = q_.convert_to<long double>();
  value_ = static_cast<double>(qv * std::pow(pi, static_cast<long double>(k_)));
}

std::string ExactConstant::numerator_string() const {
  return boost::multiprecision::numerator(q_).str();
}

std::string ExactConstant::denominator_string() const {
  return boost::multiprecision::denominator(q_).str();
}

std::string ExactConstant::to_string() const {
  std::ostringstream os;
  os << numerator_string();
  if (boost::multiprecision::denominator(q_) != 1) os << "/" << denominator_string();
  if (k_ == 1) os << " * pi";
  if (k_ != 0 && k_ != 1) os << " * pi^" << k_;
  return os.str();
}

ExactConstant ExactConstant::operator*(const ExactConstant& o) const {
  return ExactConstant(q_ * o.q_, k_ + o.k_);
}

ExactConstant ExactConstant::operator/(const ExactConstant& o) const {
  if (o.q_ == 0) throw InputError("ExactConstant: division by zero");
  return ExactConstant(q_ / o.q_, k_ - o.k_);
}

ExactConstant ExactConstant::operator+(const ExactConstant& o) const {
  if (q_ == 0) return o;
  if (o.q_ == 0) return *this;
  if (k_ != o.k_) throw InputError("ExactConstant: sum of different powers of pi");
  return ExactConstant(q_ + o.q_, k_);
}

ExactConstant ExactConstant::pow(int e) const {
  if (e < 0) return ExactConstant(Rational(1), 0) / pow(-e);
  ExactConstant out(Rational(1), 0);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

bool ExactConstant::operator==(const ExactConstant& o) const {
  return q_ == o.q_ && (q_ == 0 || k_ == o.k_);
}

BigInt factorial(int n) {
  if (n < 0) throw InputError("factorial: negative argument");
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt double_factorial(int n) {
  if (n < -1) throw InputError("double_factorial: argument below -1");
  BigInt f = 1;
  for (int i = n; i > 1; i -= 2) f *= i;
  return f;
}

}  // namespace amt
