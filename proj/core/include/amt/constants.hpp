#pragma once

#include <optional>
#include <vector>

#include "amt/exact_constant.hpp"

namespace amt {

/// Dimension m (ambient dimension 2m) and its exact constants.
struct DimensionContext {
  int m = 0;
  int dim = 0;
  ExactConstant beta_star;  ///< critical exponent m (2m-1)! |S^2m|
  ExactConstant gamma_m;    ///< beta_star / (2m)
  std::vector<ExactConstant> omega;    ///< omega[l] = |S^l|, l = 1..2m (index 0 unused)
  std::vector<ExactConstant> k_tilde;  ///< k_tilde[l], l = 1..m-1: Delta^l log r = k_tilde[l] r^-2l
  std::vector<ExactConstant> k_half;   ///< k_half[j] = K_{m,j/2}, j = 1..2m-1
  ExactConstant h_m;                   ///< boundary pairing constant
  std::optional<double> i_m;           ///< bubble self-energy, by quadrature

  double beta() const { return beta_star.value(); }
  /// 2m / beta_star, the coefficient of -log r in the fundamental solution.
  double log_coeff() const { return 2.0 * m / beta_star.value(); }
  const ExactConstant& omega_at(int l) const;
  const ExactConstant& k_tilde_at(int l) const;
  const ExactConstant& k_at(int j) const;
  /// i_m, throwing InputError if it has not been computed.
  double require_i_m() const;
};

enum class HMethod { Definition, Remark };

/// |S^l|: 2 pi^k / (k-1)! for l = 2k-1 and 2^(k+1) pi^k / (2k-1)!! for l = 2k.
ExactConstant sphere_measure(int l);

/// Builds every exact table for 1 <= m <= 12 and verifies the identities
/// gamma_m = beta*/(2m), (2m/beta*) K_{m,(2m-1)/2} = (-1)^(m-1)/omega_{2m-1},
/// omega_{2m-1} (2m/beta*) K_{m,m/2}^2 = 1 and the agreement of both H_m
/// formulas. Throws InputError for m out of range, ConsistencyError if an
/// identity fails.
DimensionContext build_context(int m);

/// H_m either from the pairing sum of K constants or from the harmonic-type
/// sum (m/beta*) sum_j (-1)^floor(2j/m) / j.
ExactConstant h_constant(const DimensionContext& ctx, HMethod method);

/// Whether (2m/beta*) K_{m,index/2} equals (-1)^(m-1)/omega_{2m-1} exactly.
/// True for index = 2m-1; used to show that index = m-1 does not work.
bool residue_identity_holds(const DimensionContext& ctx, int index);

/// I_m = -(m 4^2m / (beta* omega_2m)) omega_{2m-1} int_0^inf log(1+r^2/4) r^(2m-1) / (4+r^2)^2m dr.
double compute_i_m(const DimensionContext& ctx, double rel_tol = 1e-12);

/// Copy of ctx with i_m filled in.
DimensionContext with_i_m(DimensionContext ctx, double rel_tol = 1e-12);

}  // namespace amt
