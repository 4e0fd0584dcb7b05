#include "lap/grid.hpp"

#include <cmath>

namespace lap {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

GridPtr make_grid(double r_min, double r_max, std::size_t n) {
    require(r_min > 0.0, "make_grid: r_min must be positive");
    require(r_min < r_max, "make_grid: r_min must be below r_max");
    require(n >= 3, "make_grid: N too small");
    auto g = std::make_shared<RadialGrid>();
    g->h = (r_max - r_min) / static_cast<double>(n - 1);
    g->r.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g->r[i] = r_min + static_cast<double>(i) * g->h;
    g->r.back() = r_max;
    return g;
}

GridPtr standard_grid(double r_max, std::size_t n) {
    return make_grid(r_max / static_cast<double>(n), r_max, n);
}

RadialFunction::RadialFunction(GridPtr g, std::vector<cplx> v)
    : grid(std::move(g)), values(std::move(v)) {
    require(grid != nullptr, "RadialFunction: null grid");
    require(values.size() == grid->size(),
            "RadialFunction: value/grid length mismatch");
}

RadialFunction RadialFunction::zero(GridPtr g) {
    std::vector<cplx> v(g->size(), cplx(0.0));
    return RadialFunction(std::move(g), std::move(v));
}

bool RadialFunction::is_real(double tol) const {
    for (const auto& v : values)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

double RadialFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

std::vector<cplx> derivative(const RadialFunction& f) {
    const auto& v = f.values;
    const double h = f.grid->h;
    const std::size_t n = v.size();
    require(n >= 3, "derivative: need at least 3 samples");
    std::vector<cplx> d(n);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return d;
}

std::vector<cplx> second_derivative(const RadialFunction& f) {
    const auto& v = f.values;
    const double h2 = f.grid->h * f.grid->h;
    const std::size_t n = v.size();
    require(n >= 4, "second_derivative: need at least 4 samples");
    std::vector<cplx> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
    d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    return d;
}

cplx integrate(const RadialGrid& g, const std::vector<cplx>& vals) {
    require(vals.size() == g.size(), "integrate: length mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) s += g.weight(i) * vals[i];
    return s;
}

double integrate(const RadialGrid& g, const std::vector<double>& vals) {
    require(vals.size() == g.size(), "integrate: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) s += g.weight(i) * vals[i];
    return s;
}

}  // namespace lap
