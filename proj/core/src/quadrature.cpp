#include "amt/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "amt/errors.hpp"

namespace amt {
namespace {

void check_tolerance(double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw InputError("quadrature: rel_tol must lie in (0, 1e-2]");
  }
}

double checked_eval(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os << "quadrature: integrand is not finite at x = " << x;
    throw InputError(os.str());
  }
  return y;
}

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk_panel(const RealFunction& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  Panel p{a, b, 0.0, 0.0, 0.0};
  p.value = GK::integrate([&](double x) { return checked_eval(f, x); }, a, b, 0, 0.0, &p.error,
                          &p.l1);
  // The single-panel error estimate comes back in the reference variable on [-1, 1].
  p.error *= 0.5 * (b - a);
  return p;
}

// Globally adaptive Gauss-Kronrod: the panel with the largest error estimate
// is bisected until the summed estimate meets the budget
// max(rel_tol |I|, abs_target) or only roundoff-level error remains.
double gk_finite(const RealFunction& f, double a, double b, double rel_tol,
                 double abs_target = 0.0) {
  constexpr std::size_t kMaxPanels = 20000;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::priority_queue<Panel> heap;
  heap.push(gk_panel(f, a, b));
  long double value = heap.top().value;
  long double error = heap.top().error;
  long double l1 = heap.top().l1;
  while (true) {
    const double budget = std::max(rel_tol * std::abs(static_cast<double>(value)), abs_target);
    if (error <= budget || error <= 50 * kEps * l1) return static_cast<double>(value);
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (heap.size() >= kMaxPanels || !(mid > worst.a && mid < worst.b)) {
      std::ostringstream os;
      os << "quadrature: no convergence on [" << a << ", " << b << "], error estimate "
         << static_cast<double>(error) << " vs budget " << budget;
      throw ConvergenceError(os.str(), static_cast<double>(value), static_cast<double>(error));
    }
    heap.pop();
    const Panel left = gk_panel(f, worst.a, mid);
    const Panel right = gk_panel(f, mid, worst.b);
    value += static_cast<long double>(left.value) + right.value - worst.value;
    error += static_cast<long double>(left.error) + right.error - worst.error;
    l1 += static_cast<long double>(left.l1) + right.l1 - worst.l1;
    if (error < 0) error = 0;
    heap.push(left);
    heap.push(right);
  }
}

// Integral over [a, inf) in the compactified variable s = t / (1 + t), t = r - a.
double gk_compactified(const RealFunction& f, double a, double rel_tol) {
  auto g = [&](double s) {
    const double q = 1.0 - s;
    // A node rounded onto s = 1 sits at r = inf, where an integrable f carries no mass.
    if (!(q > 0.0)) return 0.0;
    return f(a + s / q) / (q * q);
  };
  return gk_finite(g, 0.0, 1.0, rel_tol);
}

// Integral over [r0, r1] (0 < r0 < r1) in the variable u = log r.
double gk_logarithmic(const RealFunction& f, double r0, double r1, double rel_tol,
                      double abs_target) {
  auto g = [&](double u) {
    const double r = std::exp(u);
    return f(r) * r;
  };
  return gk_finite(g, std::log(r0), std::log(r1), rel_tol, abs_target);
}

}  // namespace

double adaptive_integrate(const RealFunction& f, double a, double b, double rel_tol) {
  check_tolerance(rel_tol);
  if (!std::isfinite(a) || std::isnan(b) || !(a < b)) {
    throw InputError("adaptive_integrate: require finite a < b");
  }
  if (std::isinf(b)) {
    return gk_compactified(f, a, rel_tol);
  }
  return gk_finite(f, a, b, rel_tol);
}

double improper_integrate(const RealFunction& f, double a, double rel_tol, double tail_decay_hint) {
  check_tolerance(rel_tol);
  if (!std::isfinite(a)) throw InputError("improper_integrate: lower limit must be finite");
  if (!(tail_decay_hint > 1.0)) throw InputError("improper_integrate: tail_decay_hint must exceed 1");

  constexpr double kMaxTruncation = 1e15;
  // The finite head is integrated relative to its own size; geometric tail
  // segments [T, 16T] in log r are held to a share of the running total.
  double t_next = std::max(8.0, 2.0 * std::abs(a));
  double total = gk_finite(f, a, a + t_next, 0.1 * rel_tol);
  double tail = 0.0;
  while (true) {
    const double r = a + t_next;
    tail = checked_eval(f, r) * r / (tail_decay_hint - 1.0);
    if (std::abs(tail) <= rel_tol * std::abs(total + tail)) break;
    if (t_next >= kMaxTruncation) {
      std::ostringstream os;
      os << "improper_integrate: tail estimate " << tail << " exceeds budget at T = " << r;
      throw ConvergenceError(os.str(), total + tail, std::abs(tail));
    }
    const double r_next = a + 16.0 * t_next;
    total += gk_logarithmic(f, r, r_next, 0.1 * rel_tol, 0.01 * rel_tol * std::abs(total));
    t_next *= 16.0;
  }
  return total + tail;
}

}  // namespace amt
