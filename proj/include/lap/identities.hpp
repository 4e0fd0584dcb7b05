#pragma once

#include <string>

#include "lap/problem.hpp"

namespace lap {

// Radial multiplier weight with sampled first and second derivatives.
struct WeightFunction {
    enum class Kind { morawetz_default, carleman, custom };
    RadialFunction W;
    std::vector<double> W1, W2;
    Kind kind = Kind::custom;
};

// W(r) = r - (1+r)^{1-2 sigma}, the convex weight of the positive-commutator
// proof in the free case.
WeightFunction morawetz_default_weight(GridPtr g, double sigma);

// w(r) = scale * (1 + r^2)^{1/2}, convex Carleman exponent.
WeightFunction carleman_sqrt_weight(GridPtr g, double scale = 1.0);

struct IdentityResidualReport {
    std::string identity_id;
    double lhs_value = 0.0;
    double rhs_value = 0.0;
    double residual = 0.0;
    double relative_residual = 0.0;
    // boundary terms are always computed and reported, never assumed zero
    double flux_rmax = 0.0;
    double flux_rmin = 0.0;
};

// Discrete charge balance of the assembled operator: the trapezoid pairing of
// the solve telescopes exactly, so the residual is at solver tolerance.
// lhs = sign(eps) int |u|^2 + theta flux volume term + boundary outflow,
// rhs = source charge injection -Im <v, g>.
IdentityResidualReport charge_residual(const ModeSolution& sol,
                                       const RadialFunction& f_mode);

// Energy bookkeeping against a compactly supported cutoff.
IdentityResidualReport lagrangean_residual(const ModeSolution& sol,
                                           const RadialFunction& f_mode,
                                           const RadialFunction& chi);

struct MorawetzReport : IdentityResidualReport {
    double hessian_term = 0.0;      // int chi (W'' |u_r|^2 + angular part)
    double bilaplacian_term = 0.0;  // -1/4 int chi (Delta^2 W) |u|^2
};

// Weighted Pohozaev-Morawetz balance; the epsilon > 0 correction terms are
// included automatically when the solution carries a nonzero epsilon.
MorawetzReport morawetz_residual(const ModeSolution& sol,
                                 const RadialFunction& f_mode,
                                 const WeightFunction& W,
                                 const RadialFunction& chi);

// Single-weight Carleman identity with exponent t*w on a compactly supported
// profile u_c (u-form); the source (-Delta_mode - lambda) u_c is formed
// discretely so the balance closes at O(h^2).
IdentityResidualReport carleman_identity_residual(const RadialFunction& u_c,
                                                  const ModeParams& mode,
                                                  const WeightFunction& w,
                                                  double t, double lambda);

struct SommerfeldGauge {
    double gauge_value = 0.0;
    double tail_growth_exponent = 0.0;
};

// Outgoing/incoming discrimination gauge: weighted norm of (d/dr -+ iz) u
// plus the angular defect over r >= 2 r0, with the growth exponent of the
// squared gauge as the upper window edge sweeps toward r_max.
SommerfeldGauge sommerfeld_gauge(const ModeSolution& sol, double sigma_prime,
                                 double sigma = 0.25, double r0 = 2.0,
                                 Branch test_branch_override = Branch::plus,
                                 bool use_solution_branch = true);

}  // namespace lap
