#include "lap/norms.hpp"

#include <cmath>

namespace lap {

namespace {

double windowed_quadrature(const RadialGrid& g, const std::vector<double>& f,
                           double r_lo, double r_hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.r[i] < r_lo || g.r[i] > r_hi) continue;
        s += g.weight(i) * f[i];
    }
    return s;
}

void check_samples(const RadialFunction& v) {
    require(!v.values.empty(), "weighted_norm: empty function");
    for (const auto& x : v.values)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw std::invalid_argument("weighted_norm: NaN samples");
}

}  // namespace

double weighted_norm(const RadialFunction& v, const WeightSpec& w,
                     const ModeParams& mode, double r_lo, double r_hi) {
    check_samples(v);
    const auto& g = *v.grid;
    std::vector<double> dens(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        dens[i] = std::pow(g.r[i], 2.0 * w.m) * std::norm(v.values[i]);
    double total = windowed_quadrature(g, dens, r_lo, r_hi);
    if (w.s == 1) {
        const auto vr = derivative(v);
        const double ang = mode.angular_eigenvalue();
        const double a = 0.5 * (mode.n - 1);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double r = g.r[i];
            const cplx ur = vr[i] - (a / r) * v.values[i];
            dens[i] = std::pow(r, 2.0 * w.m) *
                      (std::norm(ur) + ang / (r * r) * std::norm(v.values[i]));
        }
        total += windowed_quadrature(g, dens, r_lo, r_hi);
    }
    return std::sqrt(total);
}

double weighted_gradient_norm(const RadialFunction& v, double m,
                              const ModeParams& mode, double r_lo, double r_hi) {
    check_samples(v);
    const auto& g = *v.grid;
    const auto vr = derivative(v);
    const double ang = mode.angular_eigenvalue();
    const double a = 0.5 * (mode.n - 1);
    std::vector<double> dens(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.r[i];
        const cplx ur = vr[i] - (a / r) * v.values[i];
        dens[i] = std::pow(r, 2.0 * m) *
                  (std::norm(ur) + ang / (r * r) * std::norm(v.values[i]));
    }
    return std::sqrt(windowed_quadrature(g, dens, r_lo, r_hi));
}

double l2_norm(const RadialFunction& v, double r_lo, double r_hi) {
    check_samples(v);
    const auto& g = *v.grid;
    std::vector<double> dens(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) dens[i] = std::norm(v.values[i]);
    return std::sqrt(windowed_quadrature(g, dens, r_lo, r_hi));
}

}  // namespace lap
