#include "lap/profiles.hpp"

#include <cmath>

namespace lap {

Profiles Profiles::free_space(GridPtr g, double A, double sigma0) {
    Profiles p;
    p.V = RadialFunction::zero(g);
    p.theta = RadialFunction::zero(std::move(g));
    p.A = A;
    p.sigma0 = sigma0;
    return p;
}

bool Profiles::potential_decay_ok(double lambda) const {
    require(V.is_real(), "Profiles: V must be real");
    const auto& g = *V.grid;
    const double sl = std::sqrt(std::max(lambda, 0.0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.r[i];
        const double bound = A * (std::pow(r, -2.0 - 2.0 * sigma0) +
                                  sl * std::pow(r, -1.0 - 2.0 * sigma0));
        if (std::abs(V.values[i].real()) > bound) return false;
    }
    return true;
}

bool Profiles::theta_decay_ok() const {
    require(theta.is_real(), "Profiles: theta must be real");
    const auto& g = *theta.grid;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double bound = A * std::pow(g.r[i], -1.0 - 2.0 * sigma0);
        if (std::abs(theta.values[i].real()) > bound) return false;
    }
    return true;
}

}  // namespace lap
