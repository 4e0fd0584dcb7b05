#pragma once

#include "lap/problem.hpp"
#include "lap/sturm.hpp"

namespace lap {

// Zero-energy matched mode: v = r^L below 1/2, r^{-L+1} above 1, glued by a
// smooth exponent blend, with the potential V = (v'' - L(L-1)v/r^2)/v that
// makes v an exact zero mode. V is evaluated from analytic derivatives of
// the blended exponent.
struct MatchedMode {
    ModeParams mode;
    RadialFunction v;
    RadialFunction V;
    double blend_width = 0.5;

    // closed-form evaluators off the grid
    double exponent(double r) const;
    double v_at(double r) const;
    double V_at(double r) const;
};

MatchedMode build_bessel_matching(int l, int n, GridPtr g,
                                  double blend_width = 0.5);

enum class EpsRule {
    fixed_ratio,     // eps_m = lambda_m / 100
    residual_scaled  // eps_m = lambda_m * m^{-l} * 1e-12
};

struct BlowupReport {
    int m = 0;
    int l = 0;
    double lambda_m = 0.0;
    double eps_m = 0.0;
    double f_norm = 0.0;  // H^{0,1/2+sigma}
    double u_norm = 0.0;  // H^{0,-1/2-sigma}
    double ratio = 0.0;
    double cross_validation_error = 0.0;  // relative mismatch of the re-solve
    RadialFunction f_m;                   // probe source, v-form
    RadialFunction u_m;                   // truncated zero mode, v-form
};

// lambda_m = m^{-l/10} probe: truncate the zero mode at scale m, apply the
// shifted operator discretely, report the norm blowup, and cross-validate by
// solving the resolvent problem with the constructed source.
BlowupReport perturb_and_probe(const MatchedMode& base, int m, double sigma,
                               EpsRule eps_rule = EpsRule::residual_scaled);

struct SpectralSanity {
    bool negative_count_stable = false;
    int negative_count_base = 0;
    int negative_count_perturbed = 0;
    int zero_window_count = 0;  // eigenvalues of V_m in [-lambda_m/2, lambda_m/2]
};

SpectralSanity spectral_sanity(const MatchedMode& base, int m, GridPtr probe_grid);

// Perturbed potential V_m = V + lambda_m chi_m sampled on a grid.
RadialFunction perturbed_potential(const MatchedMode& base, int m, GridPtr g);

// Sup over [r_lo, r_hi] of |stencil(v) at spacing h| relative to the local
// operator scale, evaluated in extended precision (plain double drowns the
// h^2 truncation term in second-difference cancellation noise).
double matched_kernel_residual(const MatchedMode& mm, double r_lo, double r_hi,
                               double h);

// Variational location of the engineered zero mode: the quadratic-form
// Rayleigh quotient of the Dirichlet operator at the sampled profile, which
// is O(h^2) off the discrete eigenvalue without the 1/h^2 entry scale that
// limits Sturm counts in floating point.
double matched_zero_rayleigh(const MatchedMode& mm, double r_min, double r_max,
                             std::size_t n);

struct QuasimodeProfile {
    int l = 0;
    int n = 0;
    double lambda_l = 0.0;  // (l+1)(l+n)
    std::vector<double> theta;
    std::vector<double> U;    // sectorial factor sin^l cos
    std::vector<double> chi;  // symmetric cutoff, 1 on [pi/4, 3pi/4]
    double near_equator_mass = 0.0;
    double tail_mass = 0.0;
    double total_mass = 0.0;
    double chiU_norm = 0.0;
    double residual_norm = 0.0;  // ||(A_l - lambda_l)(chi U)||, commutator form
    double eigen_check = 0.0;    // discrete ||(A_l - lambda_l) U|| on [pi/3, 2pi/3]
};

QuasimodeProfile quasimode_profile(int l, int n, double theta_lo,
                                   double theta_hi, std::size_t n_theta = 16384);

}  // namespace lap
