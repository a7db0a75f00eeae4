#include "amt/errors.hpp"

namespace amt {

ConvergenceError::ConvergenceError(const std::string& what, double partial_estimate,
                                   double last_residual)
    : Error(what), partial_(partial_estimate), residual_(last_residual) {}

}  // namespace amt
