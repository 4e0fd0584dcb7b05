#pragma once

#include "lap/problem.hpp"

namespace lap {

// Catalog of measured estimates. Numbers follow the usual labelling of the
// limiting-absorption bounds this lab tracks; second-derivative (s = 2)
// variants are reduced to their s = 1 forms.
enum class EstimateId {
    e1,    // ||u||_{0,-1/2-s}  <= C lambda^{-1/2} ||f||_{0,1/2+s}
    e3,    // ||u||_{0,-3/2+s}  <= C (1+lambda)^{-1/2} ||f||
    e10,   // near-infinity: ||u||_{1,-1/2-s}(r>=K) <= lam^{1/2}(lam^{-C}+1)||f||
    e11,   // global: ||u||_{1,-1/2-s} <= (lam^{-C}+e^{C sqrt(lam)}) ||f||
    e14,   // non-trapping high energy: ||u||_{1,-1/2-s} <= lam^0 ||f||
    e16,   // low energy: ||u||_{1,-1/2-s} <= lam^{-1/2} ||f||
    e17,   // low energy, s>1/2: ||u||_{1,-1/2-s} <= ||f||
    e18,   // as e16, constants depending on the bound A only
    e19,   // uniform low energy: ||u||_{0,-3/2+s} <= ||f||
    e28,   // charge: eps int |u|^2 <= ||f||_{0,1/2+s} ||u||_{0,-1/2-s}
    e34,   // energy: lam^{1/2}||u||_{0,-1/2-s} <= grad/lower-order data
    e37,   // localized energy: lam int_{r>=2R} r^{-1-2s}|u|^2 <= ...
    e40,   // Sommerfeld: ||u_r -+ izu|| + ||r^{-1} ang u|| <= data
};

const char* estimate_name(EstimateId id);
std::vector<EstimateId> estimate_catalog();

struct GaugeConfig {
    double sigma = 0.25;
    double C = 2.0;         // abstract constant inside the (10)/(11) factors
    double K_restrict = 10; // near-infinity restriction radius for (10)
    double R_loc = 2.0;     // localization radius for (37)
    double r0 = 2.0;        // base radius for (40)
};

struct GaugeReport {
    EstimateId estimate_id = EstimateId::e1;
    double lhs = 0.0;
    double rhs_factor = 0.0;  // canonical lambda factor times the data norm
    double ratio = 0.0;       // lhs / rhs_factor
    bool ratio_defined = true;
    double lambda = 0.0;
    double epsilon = 0.0;
    double sigma = 0.0;
};

GaugeReport estimate_gauge(const ModeSolution& sol, const RadialFunction& f_mode,
                           EstimateId id, const GaugeConfig& cfg = {});

// lhs / ||f||_{H^{0,1/2+sigma}} with no lambda factor; the quantity whose
// log-log slope against lambda recovers the canonical factor in scaling fits.
double gauge_scaling_ratio(const GaugeReport& rep, const GaugeConfig& cfg = {});

double canonical_lambda_factor(EstimateId id, double lambda,
                               const GaugeConfig& cfg = {});

}  // namespace lap
