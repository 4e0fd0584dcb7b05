#include "lap/tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace lap {

std::vector<cplx> Tridiag::apply(const std::vector<cplx>& x) const {
    const std::size_t n = size();
    std::vector<cplx> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = diag[i] * x[i];
        if (i > 0) s += lower[i] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

namespace {

double matrix_scale(const Tridiag& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double row = std::abs(a.diag[i]);
        if (i > 0) row += std::abs(a.lower[i]);
        if (i + 1 < a.size()) row += std::abs(a.upper[i]);
        s = std::max(s, row);
    }
    return s;
}

bool thomas(const Tridiag& a, const std::vector<cplx>& rhs,
            std::vector<cplx>& x, double scale, double& min_ratio) {
    const std::size_t n = a.size();
    std::vector<cplx> c(n), d(n);
    cplx piv = a.diag[0];
    min_ratio = std::abs(piv) / scale;
    if (std::abs(piv) < 1e-14 * scale) return false;
    c[0] = a.upper[0] / piv;
    d[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = a.diag[i] - a.lower[i] * c[i - 1];
        min_ratio = std::min(min_ratio, std::abs(piv) / scale);
        if (std::abs(piv) < 1e-14 * scale) return false;
        if (i + 1 < n) c[i] = a.upper[i] / piv;
        d[i] = (rhs[i] - a.lower[i] * d[i - 1]) / piv;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return true;
}

// Banded Gaussian elimination with partial pivoting; the row swaps introduce
// one extra superdiagonal of fill-in.
bool banded_pivoted(const Tridiag& a, const std::vector<cplx>& rhs,
                    std::vector<cplx>& x, double scale, double& min_ratio) {
    const std::size_t n = a.size();
    std::vector<cplx> dl(n), d(n), du(n), du2(n, 0.0), b = rhs;
    for (std::size_t i = 0; i < n; ++i) {
        dl[i] = a.lower[i];
        d[i] = a.diag[i];
        du[i] = a.upper[i];
    }
    min_ratio = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(dl[k + 1]) > std::abs(d[k])) {
            std::swap(d[k], dl[k + 1]);
            std::swap(du[k], d[k + 1]);
            std::swap(du2[k], du[k + 1]);
            std::swap(b[k], b[k + 1]);
        }
        min_ratio = std::min(min_ratio, std::abs(d[k]) / scale);
        if (std::abs(d[k]) < 1e-16 * scale) return false;
        const cplx m = dl[k + 1] / d[k];
        d[k + 1] -= m * du[k];
        du[k + 1] -= m * du2[k];
        b[k + 1] -= m * b[k];
    }
    min_ratio = std::min(min_ratio, std::abs(d[n - 1]) / scale);
    if (std::abs(d[n - 1]) < 1e-16 * scale) return false;
    x[n - 1] = b[n - 1] / d[n - 1];
    if (n >= 2) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    return true;
}

}  // namespace

std::vector<cplx> solve_tridiag(const Tridiag& a, const std::vector<cplx>& rhs,
                                TridiagSolveInfo* info) {
    require(a.size() == rhs.size() && a.size() >= 2, "solve_tridiag: bad sizes");
    const double scale = matrix_scale(a);
    if (scale == 0.0) throw std::runtime_error("solve_tridiag: zero matrix");
    std::vector<cplx> x(a.size());
    double ratio = 1.0;
    if (thomas(a, rhs, x, scale, ratio)) {
        if (info) *info = {false, ratio};
    } else {
        if (!banded_pivoted(a, rhs, x, scale, ratio))
            throw std::runtime_error(
                "solve_tridiag: singular system (min pivot ratio " +
                std::to_string(ratio) + ")");
        if (info) *info = {true, ratio};
    }
    for (const auto& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("solve_tridiag: NaN in solve");
    return x;
}

}  // namespace lap
