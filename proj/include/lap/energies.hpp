#pragma once

#include <string>

#include "lap/problem.hpp"

namespace lap {

// Per-mode spherical energies of a solution: mass M, radial energy R,
// angular energy A, mass flux F, outgoing null energy N, complex flux Z,
// and the forcing term G.
struct SphericalEnergySeries {
    GridPtr grid;
    std::vector<double> M, R, A, F, N, G;
    std::vector<cplx> Z;
    ModeParams mode;
    double lambda = 0.0;
    double epsilon = 0.0;
    cplx z;
};

// G-normalization toggle: the v-weighted form carries r^{(n-1)/2} against
// v-quantities; the u-weighted form carries r^{n-1} against u-quantities.
enum class ForcingNormalization { v_weighted, u_weighted };

SphericalEnergySeries spherical_energies(
    const ModeSolution& sol, const RadialFunction& f_mode,
    ForcingNormalization norm = ForcingNormalization::v_weighted);

struct MotionResiduals {
    // Pointwise defect of each equation of motion against its leading terms,
    // and the decay envelope the paper allows for the dropped error terms.
    std::vector<double> eq_mass_flux;        // d/dr M - 2F
    std::vector<double> eq_flux_balance;     // d/dr F - (R + A - lambda M)
    std::vector<double> eq_pohozaev;         // d/dr (R + lambda M - A) - (2/r) A
    std::vector<double> eq_null_energy;      // d/dr (N - A) - (2/r)A - 2b(N + A)
    std::vector<double> env_mass_flux, env_flux_balance, env_pohozaev,
        env_null_energy;
};

MotionResiduals motion_residuals(const SphericalEnergySeries& s,
                                 const ModeProblem& problem);

struct DimensionlessSeries {
    GridPtr grid;
    std::vector<double> mu, alpha, beta;
    std::vector<bool> valid;           // false where M = 0 in the window
    std::vector<double> F_star, P_star;
    double delta = 0.0;
    double C_corr = 1.0;
};

DimensionlessSeries dimensionless(const SphericalEnergySeries& s, double delta,
                                  double lambda, double C_corr = 1.0);

struct DichotomyVerdict {
    enum class Kind { bounded, exponential_growth, indeterminate } kind;
    // bounded
    double r0 = 0.0;
    double bound = 0.0;
    // exponential growth: measured dimensionless rate -r M'/M over the window
    double measured_rate = 0.0;
    // indeterminate diagnostics
    double growth_fraction = 0.0;  // fraction of window samples at the rate
    std::string note;
};

struct DichotomyConfig {
    double C1 = 16.0;
    double C2 = 8.0;
    double bound_factor = 10.0;  // fitted constant reported, never assumed
    double bound_C = 2.0;        // lambda exponent in the (lambda^-C + 1) bound
    double sample_fraction = 0.95;
};

// Lemma-10.1-style classifier. Growth is tested through the dimensionless
// log-derivative -r M'/M >= C2 (1 + sqrt(lambda)) on [C1, 10 C1].
DichotomyVerdict classify_dichotomy(const SphericalEnergySeries& s,
                                    double lambda, double delta, double C1,
                                    double C2, double r_cap,
                                    const DichotomyConfig& cfg = {});

struct PohozaevMargin {
    GridPtr grid;
    std::vector<double> P;       // lambda M + R - A
    std::vector<double> margin;  // K1 (r^-1 + sqrt(lambda)) delta + K2 r^{-2-2s} M - P
    double K1 = 0.0, K2 = 0.0;
    bool flagged = false;  // normalization-dependent case (bound needs K growth)
};

PohozaevMargin pohozaev_bound_check(const SphericalEnergySeries& s,
                                    double lambda, double delta, double sigma,
                                    double r_lo, double r_hi);

}  // namespace lap
