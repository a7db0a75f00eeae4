#include "amt/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "amt/errors.hpp"

namespace amt {

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, DecayModel model,
                   double noise_floor) {
  if (samples.size() < 3) throw InputError("fit_decay: need at least 3 samples");
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (const auto& [R, e] : samples) {
    if (!(R > 0.0) || !std::isfinite(R) || !std::isfinite(e)) {
      throw InputError("fit_decay: scales must be positive and samples finite");
    }
    if (model == DecayModel::PowerLog && !(R > 1.0)) {
      throw InputError("fit_decay: power-log model needs scales above 1");
    }
    rmin = std::min(rmin, R);
    rmax = std::max(rmax, R);
  }
  if (rmax < 10.0 * rmin * (1.0 - 1e-12)) throw InputError("fit_decay: scales must span a decade");

  DecayFit fit;
  for (const auto& s : samples) {
    if (!(std::abs(s.second) >= noise_floor)) {
      fit.below_noise_floor = true;
      fit.exponent = std::numeric_limits<double>::quiet_NaN();
      fit.constant = std::numeric_limits<double>::quiet_NaN();
      return fit;
    }
  }

  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (const auto& [R, e] : samples) {
    const double x = std::log(R);
    double y = std::log(std::abs(e));
    if (model == DecayModel::PowerLog) y -= std::log(std::log(R));
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = ys[i] - (intercept + slope * xs[i]);
    ss += d * d;
  }
  fit.exponent = -slope;
  fit.constant = std::exp(intercept);
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace amt
