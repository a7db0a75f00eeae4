#include "amt/radial_solver.hpp"

#include <cmath>

#include "amt/constants.hpp"
#include "amt/errors.hpp"
#include "amt/linalg.hpp"
#include "amt/radial_series.hpp"

namespace amt {

RadialProfile RadialLadder::profile(int j) const {
  if (j < 0 || j >= static_cast<int>(levels.size())) throw InputError("RadialLadder: level out of range");
  return RadialProfile(grid, levels[j], m);
}

void RadialLadder::combine(double a, double b, const RadialLadder& other) {
  if (other.levels.size() != levels.size() || other.grid.size() != grid.size()) {
    throw InputError("RadialLadder::combine: shape mismatch");
  }
  for (std::size_t j = 0; j < levels.size(); ++j) {
    for (std::size_t i = 0; i < levels[j].size(); ++i) {
      levels[j][i] = a * levels[j][i] + b * other.levels[j][i];
    }
  }
}

void RadialLadder::scale(double a) {
  for (auto& level : levels) {
    for (double& v : level) v *= a;
  }
}

PolyharmonicDirichletSolver::PolyharmonicDirichletSolver(RadialGrid grid, int m)
    : grid_(std::move(grid)), m_(m) {
  if (m < 1) throw InputError("PolyharmonicDirichletSolver: m must be >= 1");
  if (!grid_.contains_origin()) throw InputError("PolyharmonicDirichletSolver: grid must start at 0");
  if (grid_.size() < static_cast<std::size_t>(4 * m + 1)) {
    throw InputError("PolyharmonicDirichletSolver: need at least 4m+1 nodes");
  }
  omega_ = sphere_measure(2 * m - 1).value();
  flux_rules_ = cell_rules(grid_, 2 * m - 1);
  plain_rules_ = cell_rules(grid_, 0);
  volume_weights_ = radial_weights(grid_, 2 * m - 1);

  const double R = grid_.r_outer();
  const auto& r = grid_.nodes();
  homogeneous_.resize(m);
  boundary_matrix_.assign(m, std::vector<double>(m, 0.0));
  for (int k = 0; k < m; ++k) {
    const RadialSeries basis = RadialSeries::monomial(m, k, std::pow(R, -2 * k));
    homogeneous_[k].resize(2 * m + 1);
    for (int j = 0; j <= 2 * m; ++j) {
      const RadialSeries level = basis.ladder(j);
      auto& column = homogeneous_[k][j];
      column.resize(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) column[i] = level(r[i]);
      if (j < m) boundary_matrix_[j][k] = column.back();
    }
  }
}

RadialLadder PolyharmonicDirichletSolver::solve(const std::vector<double>& f) const {
  const auto& r = grid_.nodes();
  const std::size_t n = r.size();
  if (f.size() != n) throw InputError("PolyharmonicDirichletSolver::solve: size mismatch");
  const int m = m_;
  RadialLadder out{grid_, m, std::vector<std::vector<double>>(2 * m + 1)};
  out.levels[2 * m] = f;
  if (m % 2 == 1) {
    for (double& v : out.levels[2 * m]) v = -v;
  }
  for (int l = m - 1; l >= 0; --l) {
    // Delta v = g: r^(2m-1) v' = integral_0^r g t^(2m-1) dt, then v(R) = 0.
    const auto flux = cumulative_integral(flux_rules_, out.levels[2 * l + 2]);
    std::vector<double> dv(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) dv[i] = flux[i] / std::pow(r[i], 2 * m - 1);
    const auto pot = cumulative_integral(plain_rules_, dv);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = pot[i] - pot.back();
    out.levels[2 * l + 1] = std::move(dv);
    out.levels[2 * l] = std::move(v);
  }
  std::vector<double> rhs(m);
  for (int j = 0; j < m; ++j) rhs[j] = -out.levels[j].back();
  const auto coeff = solve_linear_system(boundary_matrix_, rhs);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j <= 2 * m; ++j) {
      auto& level = out.levels[j];
      const auto& h = homogeneous_[k][j];
      for (std::size_t i = 0; i < n; ++i) level[i] += coeff[k] * h[i];
    }
  }
  for (int j = 0; j < m; ++j) out.levels[j].back() = 0.0;
  return out;
}

double PolyharmonicDirichletSolver::integrate(const std::vector<double>& f) const {
  if (f.size() != volume_weights_.size()) throw InputError("integrate: size mismatch");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) acc += volume_weights_[i] * f[i];
  return omega_ * static_cast<double>(acc);
}

}  // namespace amt
