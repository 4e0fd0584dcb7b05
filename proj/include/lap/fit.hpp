#pragma once

#include <vector>

namespace lap {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Least squares on (log x, log y). Requires >= 4 samples, positive data.
FitResult fit_exponent(const std::vector<double>& x,
                       const std::vector<double>& y);

// Plain least squares with r^2.
FitResult linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

}  // namespace lap
