#pragma once

#include <vector>

#include "amt/radial_grid.hpp"
#include "amt/radial_profile.hpp"

namespace amt {

/// Every level of the half-Laplacian ladder of a radial function, sampled on
/// one grid: levels[j][i] is level j at node i, j = 0..2m.
struct RadialLadder {
  RadialGrid grid = RadialGrid::graded(1.0, 5);
  int m = 1;
  std::vector<std::vector<double>> levels;

  RadialProfile profile(int j = 0) const;
  const std::vector<double>& values() const { return levels[0]; }
  /// this := a * this + b * other (levels are linear in the function).
  void combine(double a, double b, const RadialLadder& other);
  void scale(double a);
};

/// Radial Dirichlet problem (-Delta)^m w = f on B_R with w regular at 0,
/// solved by m nested flux/potential integrations followed by the
/// polynomial correction in s = r^2 that clears ladder levels 0..m-1 at R.
class PolyharmonicDirichletSolver {
 public:
  /// The grid must start at r = 0 and have at least 4m+1 nodes.
  PolyharmonicDirichletSolver(RadialGrid grid, int m);

  const RadialGrid& grid() const { return grid_; }
  int m() const { return m_; }

  RadialLadder solve(const std::vector<double>& f) const;
  /// integral over the ball of f, sphere factor included.
  double integrate(const std::vector<double>& f) const;

 private:
  RadialGrid grid_;
  int m_;
  double omega_;
  std::vector<CellRule> flux_rules_;
  std::vector<CellRule> plain_rules_;
  std::vector<double> volume_weights_;
  std::vector<std::vector<std::vector<double>>> homogeneous_;  ///< [k][level][node] of (r/R)^2k
  std::vector<std::vector<double>> boundary_matrix_;            ///< [level][k] at r = R
};

}  // namespace amt
