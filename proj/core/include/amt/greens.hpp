#pragma once

#include <vector>

#include "amt/constants.hpp"
#include "amt/radial_profile.hpp"
#include "amt/radial_series.hpp"

namespace amt {

struct GreenOptions {
  double theta = 1.0;      ///< relaxation of the corrector fixed point
  int max_iters = 200;
  int max_degree = 60;     ///< truncation degree in s of the corrector expansion
  std::size_t grid_n = 2048;  ///< nodes of the sampled psi profile
};

/// Radial Green function of (-Delta)^m - alpha on B_R(0) with Dirichlet data,
/// pole at the center: G(r) = -(2m/beta*) log r + C + psi(r).
///
/// Internally G(r) = Phi(r/R) + h(r/R) with Phi(rho) = -(2m/beta*) log rho and
/// h the corrector solved on the unit ball with alpha' = alpha R^2m.
struct GreenFunction {
  DimensionContext ctx;
  double alpha = 0.0;
  double ball_radius = 1.0;
  double C = 0.0;
  RadialProfile psi;
  double l2_norm_sq = 0.0;
  RadialSeries corrector{1};   ///< h in the unit-ball variable rho
  std::vector<RadialSeries> g_levels;    ///< ladder of Phi + h in rho, levels 0..2m
  std::vector<RadialSeries> psi_levels;  ///< ladder of h - h(0) in rho, levels 0..2m
  std::vector<double> dirichlet_residuals;  ///< |d^i G / dr^i (R)|, i = 0..m-1
  int iterations = 0;
  double last_change = 0.0;

  /// G(r) for 0 < r <= R.
  double value(double r) const;
  /// Ladder level j of G at 0 < r <= R (Delta^(j/2) G, or d/dr Delta^((j-1)/2) G).
  double ladder(int j, double r) const;
  /// Ladder level j of psi at 0 <= r <= R.
  double psi_ladder(int j, double r) const;
  double psi_value(double r) const { return psi_ladder(0, r); }
  /// Plain radial derivatives d^i/dr^i of G (r > 0) and of psi (r > 0).
  double radial_derivative(int i, double r) const;
  double psi_radial_derivative(int i, double r) const;
};

struct GreenEnergyReport {
  double delta = 0.0;
  double lhs = 0.0;
  double rhs_prediction = 0.0;
  double residual = 0.0;
};

/// First Dirichlet eigenvalue of (-Delta)^m on B_R among radial functions,
/// from the determinant of the boundary conditions applied to the regular
/// power-series solutions of (-Delta)^m u = lambda u.
double series_first_eigenvalue(const DimensionContext& ctx, double ball_radius);

/// Solves the corrector problem by fixed-point iteration on the alpha coupling.
/// Throws InputError if alpha < 0, alpha >= lambda_1 or ball_radius <= 0, and
/// ConvergenceError (naming the last change) if the iteration stalls or diverges.
GreenFunction solve_green(const DimensionContext& ctx, double alpha, double ball_radius,
                          double tol = 1e-13, const GreenOptions& opts = {});

/// Energy of G outside B_delta against alpha ||G||^2 - (2m/beta*) log delta + C + H_m.
GreenEnergyReport green_energy_expansion(const GreenFunction& g, double delta,
                                         double rel_tol = 1e-12);

/// omega_{2m-1} delta^(2m-1) (d/dr Delta^(m-1) G)(delta); tends to (-1)^m as delta -> 0.
double green_boundary_flux(const GreenFunction& g, double delta);

}  // namespace amt
