#pragma once

#include <span>

namespace frostlab {

/// Ordinary least squares fit of log(y) = exponent * log(x) + log_constant.
struct PowerFit {
    double exponent = 0.0;
    double log_constant = 0.0;
    double residual = 0.0;  // root mean square of the log residuals
    int points = 0;
};

/// Throws Error("insufficient scales for fit") with fewer than two points,
/// and Error("nonpositive value in fit") if any x or y is <= 0.
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace frostlab
