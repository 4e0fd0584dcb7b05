#include "lap/sturm.hpp"

#include <cmath>
#include <limits>

namespace lap {

SymmetricTridiag dirichlet_mode_matrix(const ModeProblem& p) {
    require(p.profiles.V.is_real(), "sturm_eigencount: complex potential");
    require(p.profiles.theta.is_real(), "sturm_eigencount: complex theta");
    const auto& g = *p.grid;
    const std::size_t n = g.size();
    require(n >= 4, "sturm_eigencount: grid too small");
    const double h = g.h;
    const std::size_t m = n - 2;  // interior nodes

    std::vector<double> diag(m), lower(m), upper(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = k + 1;
        const double r = g.r[i];
        const double th = p.profiles.theta.values[i].real();
        diag[k] = 2.0 / (h * h) + p.mode.centrifugal() / (r * r) +
                  p.profiles.V.values[i].real() + (p.mode.n - 1) * th / r;
        lower[k] = -1.0 / (h * h) + th / (2.0 * h);
        upper[k] = -1.0 / (h * h) - th / (2.0 * h);
    }

    SymmetricTridiag s;
    s.diag = diag;
    s.off.resize(m - 1);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double prod = upper[k] * lower[k + 1];
        require(prod > 0.0,
                "sturm_eigencount: operator not symmetrizable (|theta| h too large)");
        s.off[k] = -std::sqrt(prod);
    }
    return s;
}

int sturm_count_below(const SymmetricTridiag& m, double x) {
    const std::size_t n = m.diag.size();
    int count = 0;
    double d = 1.0;
    const double tiny = std::numeric_limits<double>::min();
    for (std::size_t i = 0; i < n; ++i) {
        const double off2 = i == 0 ? 0.0 : m.off[i - 1] * m.off[i - 1];
        d = (m.diag[i] - x) - off2 / d;
        if (d == 0.0) d = tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

int sturm_eigencount(const ModeProblem& p, double a, double b) {
    require(a < b, "sturm_eigencount: need a < b");
    const auto m = dirichlet_mode_matrix(p);
    const double hi = std::nextafter(b, std::numeric_limits<double>::infinity());
    const int below_hi = sturm_count_below(m, hi);
    if (a == -std::numeric_limits<double>::infinity()) return below_hi;
    return below_hi - sturm_count_below(m, a);
}

}  // namespace lap
