#pragma once

#include <utility>
#include <vector>

namespace amt {

enum class DecayModel {
  PurePower,  ///< e(R) = c R^-p
  PowerLog,   ///< e(R) = c R^-p log R
};

/// Least-squares fit of a decay law in log-log coordinates.
struct DecayFit {
  double exponent = 0.0;  ///< p
  double constant = 0.0;  ///< c
  double residual = 0.0;  ///< RMS misfit of the log-log regression
  bool below_noise_floor = false;  ///< some |e| was under the floor; no fit was made
};

/// Fits |e(R)| to the chosen model from (R, e) samples. Rates in a small
/// parameter delta are fitted by passing R = 1/delta.
///
/// Requires at least 3 samples, positive scales spanning a decade (and R > 1
/// for the log model). Residuals under `noise_floor` do not throw: the result
/// carries below_noise_floor = true and NaN exponent.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, DecayModel model,
                   double noise_floor = 100 * 2.220446049250313e-16);

}  // namespace amt
