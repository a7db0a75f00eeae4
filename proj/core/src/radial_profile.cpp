#include "amt/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amt/errors.hpp"

namespace amt {

RadialProfile::RadialProfile(RadialGrid grid, std::vector<double> values, int m)
    : grid_(std::move(grid)), values_(std::move(values)), m_(m) {
  if (m_ < 1) throw InputError("RadialProfile: m must be >= 1");
  if (values_.size() != grid_.size()) throw InputError("RadialProfile: size mismatch");
  if (grid_.size() < static_cast<std::size_t>(4 * m_ + 1)) {
    throw InputError("RadialProfile: grid needs at least 4m+1 nodes");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("RadialProfile: non-finite value");
  }
}

RadialProfile RadialProfile::sample(const RadialGrid& grid, int m,
                                    const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  return RadialProfile(grid, std::move(v), m);
}

double RadialProfile::value_at(double r) const {
  const auto& x = grid_.nodes();
  if (!(r >= x.front() - 1e-14 * x.back() && r <= x.back() * (1 + 1e-14))) {
    throw InputError("RadialProfile::value_at: radius outside grid");
  }
  constexpr std::size_t kPts = 6;
  const std::size_t n = x.size();
  const std::size_t hi = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), r) - x.begin());
  std::size_t j0 = hi >= kPts / 2 ? hi - kPts / 2 : 0;
  j0 = std::min(j0, n - kPts);
  double s[kPts];
  for (std::size_t k = 0; k < kPts; ++k) s[k] = x[j0 + k] * x[j0 + k];
  return lagrange_eval(s, values_.data() + j0, kPts, r * r);
}

double RadialProfile::radial_integral(const std::vector<double>& f) const {
  if (f.size() != grid_.size()) throw InputError("radial_integral: size mismatch");
  const auto w = radial_weights(grid_, 2 * m_ - 1);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) acc += static_cast<long double>(w[i]) * f[i];
  return static_cast<double>(acc);
}

namespace {

// Polynomial in s, coefficients by ascending degree.
using Poly = std::vector<double>;

Poly poly_derivative(const Poly& p) {
  Poly d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

void poly_add_to(Poly& acc, const Poly& p, double scale, std::size_t shift) {
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) acc[k + shift] += scale * p[k];
}

double poly_eval(const Poly& p, double s) {
  double v = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * s + p[k];
  return v;
}

// Operator sum_j P_j(s) D^j, D = d/ds.
using Operator = std::vector<Poly>;

// Delta = 4 s D^2 + 2n D applied on the left of L.
Operator laplacian_of(const Operator& L, int n) {
  Operator out(L.size() + 2, Poly{0.0});
  for (std::size_t j = 0; j < L.size(); ++j) {
    const Poly& p = L[j];
    const Poly dp = poly_derivative(p);
    const Poly ddp = poly_derivative(dp);
    // 4s (p'' D^j + 2 p' D^{j+1} + p D^{j+2}) + 2n (p' D^j + p D^{j+1})
    poly_add_to(out[j], ddp, 4.0, 1);
    poly_add_to(out[j + 1], dp, 8.0, 1);
    poly_add_to(out[j + 2], p, 4.0, 1);
    poly_add_to(out[j], dp, 2.0 * n, 0);
    poly_add_to(out[j + 1], p, 2.0 * n, 0);
  }
  return out;
}

// D applied on the left of L (the 2r factor of d/dr is applied at evaluation).
Operator s_derivative_of(const Operator& L) {
  Operator out(L.size() + 1, Poly{0.0});
  for (std::size_t j = 0; j < L.size(); ++j) {
    poly_add_to(out[j], poly_derivative(L[j]), 1.0, 0);
    poly_add_to(out[j + 1], L[j], 1.0, 0);
  }
  return out;
}

// Nodes used for derivatives at s0: `count` grid points near the ideal
// positions s0 + (k - c) h, with h widened until the picks are distinct.
std::vector<std::size_t> pick_stencil(const std::vector<double>& s, double s0, std::size_t count,
                                      double h) {
  const std::size_t n = s.size();
  const double lo = s.front();
  const double hi = s.back();
  for (int attempt = 0; attempt < 200; ++attempt, h *= 1.25) {
    if (h * static_cast<double>(count - 1) > hi - lo) h = (hi - lo) / static_cast<double>(count - 1);
    const double span = h * static_cast<double>(count - 1);
    double start = s0 - 0.5 * span;
    start = std::clamp(start, lo, hi - span);
    std::vector<std::size_t> idx;
    bool distinct = true;
    for (std::size_t k = 0; k < count; ++k) {
      const double target = start + h * static_cast<double>(k);
      auto it = std::lower_bound(s.begin(), s.end(), target);
      std::size_t j = static_cast<std::size_t>(it - s.begin());
      if (j == n) j = n - 1;
      if (j > 0 && std::abs(s[j - 1] - target) <= std::abs(s[j] - target)) --j;
      if (!idx.empty() && j <= idx.back()) {
        distinct = false;
        break;
      }
      idx.push_back(j);
    }
    if (distinct) return idx;
  }
  throw InputError("apply_radial_polyharmonic: could not place a stencil");
}

}  // namespace

RadialProfile apply_radial_polyharmonic(const RadialProfile& u, int j,
                                        const DifferentiationOptions& opts) {
  const int m = u.m();
  if (j < 0 || j > 2 * m) {
    std::ostringstream os;
    os << "apply_radial_polyharmonic: ladder level " << j << " outside 0.." << 2 * m;
    throw InputError(os.str());
  }
  if (j == 0) return u;
  const int n = 2 * m;
  const int levels = j / 2;
  Operator L{Poly{1.0}};
  for (int l = 0; l < levels; ++l) L = laplacian_of(L, n);
  const bool odd = (j % 2) == 1;
  if (odd) L = s_derivative_of(L);
  const int order = static_cast<int>(L.size()) - 1;

  const int extra = opts.stencil_extra > 0 ? opts.stencil_extra : 8;
  const std::size_t count = static_cast<std::size_t>(order + 1 + extra);
  const auto& r = u.grid().nodes();
  if (r.size() < count) {
    std::ostringstream os;
    os << "apply_radial_polyharmonic: grid of " << r.size() << " nodes too coarse for a "
       << count << "-point stencil";
    throw InputError(os.str());
  }
  std::vector<double> s(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) s[i] = r[i] * r[i];
  const double range = s.back() - s.front();
  double frac = opts.min_spacing_fraction;
  if (!(frac > 0.0)) {
    // Balance truncation against roundoff growth ~ eps h^-order.
    frac = order <= 2 ? 0.06 : order <= 4 ? 0.08 : 0.1;
  }
  const double h = frac * range;

  // Off the origin the function may be singular at s = 0, so the spacing also
  // follows the local scale s.
  const bool annulus = !u.grid().contains_origin();
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto idx = pick_stencil(s, s[i], count, annulus ? std::min(h, 0.25 * frac * s[i]) : h);
    std::vector<double> xs(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) xs[k] = s[idx[k]];
    const auto w = fd_weights(xs, s[i], order);
    long double acc = 0.0L;
    for (int d = 0; d <= order; ++d) {
      const double coeff = poly_eval(L[d], s[i]);
      if (coeff == 0.0) continue;
      // Derivative weights sum to zero, so differences against u(s0) cut roundoff.
      const double ref = d > 0 ? u[i] : 0.0;
      long double deriv = 0.0L;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        deriv += static_cast<long double>(w[d][k]) * (u[idx[k]] - ref);
      }
      acc += coeff * deriv;
    }
    out[i] = static_cast<double>(acc) * (odd ? 2.0 * r[i] : 1.0);
  }
  return RadialProfile(u.grid(), std::move(out), m);
}

}  // namespace amt
