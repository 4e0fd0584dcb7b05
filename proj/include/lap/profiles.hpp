#pragma once

#include "lap/grid.hpp"

namespace lap {

// Potential V(r) and mean-curvature perturbation theta(r) of the radially
// perturbed conic metric, together with the decay budget (A, sigma0) they
// are certified against.
struct Profiles {
    RadialFunction V;
    RadialFunction theta;
    double A = 1.0;
    double sigma0 = 0.5;

    static Profiles free_space(GridPtr g, double A = 1.0, double sigma0 = 0.5);

    // |V(r)| <= A (r^{-2-2s0} + sqrt(lambda) r^{-1-2s0}) pointwise.
    bool potential_decay_ok(double lambda) const;
    // |theta(r)| <= A r^{-1-2s0} pointwise.
    bool theta_decay_ok() const;
};

}  // namespace lap
