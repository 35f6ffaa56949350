#pragma once

#include <span>

namespace smallball {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

// Least squares on (log x, log y); the slope is the fitted exponent.
LineFit log_log_fit(std::span<const double> x, std::span<const double> y);

}  // namespace smallball
