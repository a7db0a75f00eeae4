#pragma once

#include <functional>
#include <vector>

#include "amt/radial_grid.hpp"

namespace amt {

/// A radial function on a RadialGrid in dimension 2m. Immutable.
class RadialProfile {
 public:
  RadialProfile(RadialGrid grid, std::vector<double> values, int m);

  static RadialProfile sample(const RadialGrid& grid, int m, const std::function<double(double)>& f);

  const RadialGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  int m() const { return m_; }
  int dim() const { return 2 * m_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Degree-5 Lagrange interpolation in s = r^2 through the nearest nodes.
  double value_at(double r) const;

  /// integral of f over the grid range against r^(2m-1) dr (no sphere factor).
  double radial_integral(const std::vector<double>& f) const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
  int m_;
};

/// Stencil controls for radial differentiation.
///
/// Derivatives are taken in s = r^2, where smooth radial functions are smooth
/// up to the origin. Each stencil uses `stencil_extra` more points than the
/// derivative order needs, picked from the grid with spacing at least
/// `min_spacing_fraction` times the s-range (to bound roundoff growth).
/// Non-positive values select defaults tuned for double precision.
struct DifferentiationOptions {
  int stencil_extra = 0;
  double min_spacing_fraction = 0.0;
};

/// Level j of the half-Laplacian ladder of u: Delta^(j/2) u for even j and
/// d/dr Delta^((j-1)/2) u for odd j. Requires 1 <= j <= 2m (j = 0 returns u).
/// Throws InputError when the grid has too few nodes for the derivative order.
RadialProfile apply_radial_polyharmonic(const RadialProfile& u, int j,
                                        const DifferentiationOptions& opts = {});

}  // namespace amt
