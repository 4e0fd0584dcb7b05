#include "lap/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace lap {

FitResult linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need matched samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    FitResult f;
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw std::invalid_argument("linear_fit: degenerate x");
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double p = f.slope * x[i] + f.intercept;
        ss_res += (y[i] - p) * (y[i] - p);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

FitResult fit_exponent(const std::vector<double>& x,
                       const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 4)
        throw std::invalid_argument("fit_exponent: insufficient rows");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0)
            throw std::invalid_argument("fit_exponent: non-positive values");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return linear_fit(lx, ly);
}

}  // namespace lap
