#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "amt/constants.hpp"
#include "amt/radial_grid.hpp"
#include "amt/radial_profile.hpp"
#include "amt/radial_solver.hpp"

namespace amt {

/// Maximization of F_beta(u) = integral of e^(beta u^2) over radial u in H_0^m(B_R)
/// with ||u||_alpha <= 1.
struct ProblemConfig {
  DimensionContext ctx;
  double ball_radius = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  RadialGrid grid = RadialGrid::graded(1.0);
  double damping = 0.3;
  int max_iters = 500;
  double residual_tol = 1e-10;
  std::vector<double> beta_schedule;  ///< fractions of beta* for continuation runs
};

/// Config on the default graded grid of the ball.
ProblemConfig make_config(const DimensionContext& ctx, double ball_radius, double alpha,
                          double beta, std::size_t grid_n = 2048, double grading = 2.0);

struct ExtremalSolution {
  RadialLadder ladder;  ///< u and its full ladder; level 2m is Delta^m u
  double beta = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;  ///< (integral of u^2 e^(beta u^2))^-1
  double mu = 0.0;      ///< u(0)
  double F_value = 0.0;
  double el_residual = 0.0;  ///< sup |S(h(u)) - u| / sup |u|, S the Dirichlet solve
  double alpha_norm = 0.0;   ///< ||u||_alpha from the pairing with (-Delta)^m u
  int iterations = 0;

  RadialProfile u() const { return ladder.profile(0); }
  double ball_radius() const { return ladder.grid.r_outer(); }
};

struct BlowupDiagnostics {
  double r_scale = 0.0;
  double scale_identity = 0.0;  ///< omega_2m r^2m lambda mu^2 e^(beta mu^2), should be 1
  double lambda_mu_sq = 0.0;
  double predicted_S = 0.0;     ///< |Omega| + 1/(lambda mu^2)
  double profile_sup_error = 0.0;
  bool pre_asymptotic = false;  ///< mu < 2
};

struct PohozaevReport {
  double lhs_boundary_energy = 0.0;  ///< (1/2) |dB| R |Delta^(m/2) u(R)|^2
  double lhs_f_term = 0.0;           ///< boundary integral of the mixed ladder products
  double rhs_boundary_H = 0.0;       ///< |dB| R H(u(R))
  double rhs_volume_H = 0.0;         ///< -2m integral of H(u)
  double residual = 0.0;
};

struct EigenPair {
  double lambda = 0.0;
  RadialLadder phi;  ///< L2-normalized, phi(0) > 0
};

/// Volume of B_R in dimension 2m.
double ball_volume(const DimensionContext& ctx, double ball_radius);

/// log F_beta(u), accumulated relative to the largest node term so it never overflows.
double log_functional(const RadialProfile& u, double beta, double ball_radius);
/// integral over the ball of e^(beta u^2), each node weight applied in log form.
double evaluate_functional(const RadialProfile& u, double beta, double ball_radius);

/// ||Delta^(m/2) u||^2 - alpha ||u||^2 with the top ladder level taken by
/// apply_radial_polyharmonic. Returns the signed square; negative for alpha past lambda_1.
double alpha_norm_sq(const RadialProfile& u, double alpha);
/// sqrt of alpha_norm_sq; InputError when the square is negative.
double alpha_norm(const RadialProfile& u, double alpha);
/// Same quantity for a ladder, using integral of u (-Delta)^m u.
double alpha_norm_sq(const RadialLadder& u, double alpha);

/// Smallest radial Dirichlet eigenvalue of (-Delta)^m on the ball by inverse
/// iteration with the nested solver. Assumes the first eigenfunction is radial.
EigenPair first_eigenpair(const DimensionContext& ctx, double ball_radius, const RadialGrid& grid,
                          double tol = 1e-14, int max_iters = 500);

/// Damped fixed point u <- (1-theta) u + theta w/||w||_alpha with
/// (-Delta)^m w = lambda u e^(beta u^2) + alpha u. Starts from `initial` or from
/// a normalized truncated bubble. Throws InputError if beta >= beta* or alpha is
/// not below lambda_1, ConvergenceError after max_iters.
ExtremalSolution maximize_subcritical(const ProblemConfig& cfg,
                                      const std::optional<RadialLadder>& initial = std::nullopt);

/// Solves along cfg.beta_schedule (fractions of beta*), each step started from
/// the previous solution.
std::vector<ExtremalSolution> continuation(const ProblemConfig& cfg);

BlowupDiagnostics blowup_diagnostics(const ExtremalSolution& sol, const DimensionContext& ctx);

/// Pohozaev identity on the ball with y = 0 and h(t) = lambda t e^(beta t^2) + alpha t.
PohozaevReport pohozaev_residual(const ExtremalSolution& sol, const DimensionContext& ctx);

/// The identity for u = (1 - r^2/R^2)^m with h := (-Delta)^m u obtained by
/// numerical differentiation and H by quadrature of h along the range of u.
PohozaevReport pohozaev_manufactured(const DimensionContext& ctx, const RadialGrid& grid);

struct DivergenceSample {
  double t = 0.0;
  double norm_sq = 0.0;  ///< ||t phi_1||_alpha^2
  double F_value = 0.0;  ///< +inf once it exceeds the double range
  double log_F = 0.0;
};

/// F_beta(t phi_1) along t_list for alpha >= lambda_1, where t phi_1 lies in M_alpha for every t.
std::vector<DivergenceSample> supercritical_divergence_demo(const DimensionContext& ctx,
                                                            double ball_radius, double alpha,
                                                            double beta,
                                                            const std::vector<double>& t_list,
                                                            const RadialGrid& grid);

}  // namespace amt
