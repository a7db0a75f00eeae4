#pragma once

#include <functional>

namespace amt {

using RealFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod quadrature of f over [a, b].
///
/// `b` may be +infinity, in which case the interval is compactified with
/// s = (r - a) / (1 + r - a) and integrated over s in [0, 1). The estimated
/// error is controlled relative to the L1 norm of the integrand. Throws
/// InputError for a NaN/inf sample or bad bounds, and ConvergenceError
/// (carrying the partial estimate) when the refinement depth is exhausted.
double adaptive_integrate(const RealFunction& f, double a, double b, double rel_tol = 1e-10);

/// Integral of f over [a, inf) for integrands with |f| <= C r^-p eventually,
/// p = tail_decay_hint > 1. The range is truncated at a growing radius T; the
/// truncated part is integrated in the compactified variable and the remainder
/// is estimated analytically as f(T) T / (p - 1). Throws ConvergenceError if
/// that tail estimate still exceeds the tolerance budget at T = 1e15.
double improper_integrate(const RealFunction& f, double a, double rel_tol, double tail_decay_hint);

}  // namespace amt
