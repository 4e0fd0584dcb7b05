#pragma once

#include "lap/grid.hpp"

namespace lap {

// Angular order and dimension of one spherical-harmonic mode.
// L = l + (n-1)/2 is the effective Bessel index of the reduced ODE.
struct ModeParams {
    int n = 3;
    int l = 0;

    ModeParams() = default;
    ModeParams(int n_, int l_) : n(n_), l(l_) {
        require(n >= 3, "ModeParams: dimension must be >= 3");
        require(l >= 0, "ModeParams: angular order must be >= 0");
    }

    double L() const { return l + 0.5 * (n - 1); }
    // Centrifugal strength L(L-1) = l(l+n-2) + (n-1)(n-3)/4.
    double centrifugal() const { return L() * (L() - 1.0); }
    double angular_eigenvalue() const {
        return static_cast<double>(l) * (l + n - 2);
    }
};

struct WeightSpec {
    int s = 0;      // derivative count, 0 or 1
    double m = 0.0; // weight exponent

    WeightSpec() = default;
    WeightSpec(int s_, double m_) : s(s_), m(m_) {
        require(s == 0 || s == 1, "WeightSpec: s must be 0 or 1");
    }
};

// Per-mode radial reduction of the weighted Sobolev norm of
// u = r^{-(n-1)/2} v Y_l with L^2-normalized Y_l:
//   s=0: ( int r^{2m} |v|^2 dr )^{1/2}
//   s=1: adds int r^{2m} [ |v_r - (n-1)v/(2r)|^2 + l(l+n-2) r^{-2} |v|^2 ] dr.
// Optional [r_lo, r_hi] restricts the quadrature window.
double weighted_norm(const RadialFunction& v, const WeightSpec& w,
                     const ModeParams& mode, double r_lo = 0.0,
                     double r_hi = 1e300);

// Gradient part alone: || |grad u| ||_{H^{0,m}} in the mode reduction.
double weighted_gradient_norm(const RadialFunction& v, double m,
                              const ModeParams& mode, double r_lo = 0.0,
                              double r_hi = 1e300);

// Plain L^2(M) norm of u over a radial window (m = 0, s = 0).
double l2_norm(const RadialFunction& v, double r_lo = 0.0, double r_hi = 1e300);

}  // namespace lap
