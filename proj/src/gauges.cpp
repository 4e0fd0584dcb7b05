#include "lap/gauges.hpp"

#include <cmath>

namespace lap {

namespace {

RadialFunction to_v_form(const RadialFunction& f, int n) {
    std::vector<cplx> vals(f.size());
    const double a = 0.5 * (n - 1);
    for (std::size_t i = 0; i < f.size(); ++i)
        vals[i] = f.values[i] * std::pow(f.grid->r[i], a);
    return RadialFunction(f.grid, std::move(vals));
}

// v-form samples of (d/dr -+ i z) u.
RadialFunction sommerfeld_defect(const ModeSolution& sol, cplx z, double sign) {
    const auto vr = derivative(sol.v);
    const auto& g = *sol.v.grid;
    const double a = 0.5 * (sol.problem.mode.n - 1);
    std::vector<cplx> vals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        vals[i] = vr[i] - (a / g.r[i]) * sol.v.values[i] -
                  sign * cplx(0.0, 1.0) * z * sol.v.values[i];
    return RadialFunction(sol.v.grid, std::move(vals));
}

}  // namespace

const char* estimate_name(EstimateId id) {
    switch (id) {
        case EstimateId::e1: return "1";
        case EstimateId::e3: return "3";
        case EstimateId::e10: return "10";
        case EstimateId::e11: return "11";
        case EstimateId::e14: return "14";
        case EstimateId::e16: return "16";
        case EstimateId::e17: return "17";
        case EstimateId::e18: return "18";
        case EstimateId::e19: return "19";
        case EstimateId::e28: return "28";
        case EstimateId::e34: return "34";
        case EstimateId::e37: return "37";
        case EstimateId::e40: return "40";
    }
    return "?";
}

std::vector<EstimateId> estimate_catalog() {
    return {EstimateId::e1,  EstimateId::e3,  EstimateId::e10, EstimateId::e11,
            EstimateId::e14, EstimateId::e16, EstimateId::e17, EstimateId::e18,
            EstimateId::e19, EstimateId::e28, EstimateId::e34, EstimateId::e37,
            EstimateId::e40};
}

double canonical_lambda_factor(EstimateId id, double lambda,
                               const GaugeConfig& cfg) {
    switch (id) {
        case EstimateId::e1: return std::pow(lambda, -0.5);
        case EstimateId::e3: return std::pow(1.0 + lambda, -0.5);
        case EstimateId::e10:
            return std::sqrt(lambda) * (std::pow(lambda, -cfg.C) + 1.0);
        case EstimateId::e11:
            return std::pow(lambda, -cfg.C) + std::exp(cfg.C * std::sqrt(lambda));
        case EstimateId::e14: return 1.0;  // lambda^{(s-1)/2} at s = 1
        case EstimateId::e16:
        case EstimateId::e18: return std::pow(lambda, -0.5);
        case EstimateId::e17:
        case EstimateId::e19: return 1.0;
        default: return 1.0;  // composite right-hand sides
    }
}

GaugeReport estimate_gauge(const ModeSolution& sol, const RadialFunction& f_mode,
                           EstimateId id, const GaugeConfig& cfg) {
    require(sol.v.grid->size() == f_mode.grid->size(),
            "estimate_gauge: solution and data must share a grid");
    const ModeParams& mode = sol.problem.mode;
    const double lambda = sol.problem.lambda;
    const double sg = cfg.sigma;
    const RadialFunction gdata = to_v_form(f_mode, mode.n);
    const double fnorm = weighted_norm(gdata, WeightSpec(0, 0.5 + sg), mode);

    GaugeReport rep;
    rep.estimate_id = id;
    rep.lambda = lambda;
    rep.epsilon = sol.problem.epsilon;
    rep.sigma = sg;

    const auto& v = sol.v;
    switch (id) {
        case EstimateId::e1:
            rep.lhs = weighted_norm(v, WeightSpec(0, -0.5 - sg), mode);
            rep.rhs_factor = canonical_lambda_factor(id, lambda, cfg) * fnorm;
            break;
        case EstimateId::e3:
            rep.lhs = weighted_norm(v, WeightSpec(0, -1.5 + sg), mode);
            rep.rhs_factor = canonical_lambda_factor(id, lambda, cfg) * fnorm;
            break;
        case EstimateId::e10:
            rep.lhs = weighted_norm(v, WeightSpec(1, -0.5 - sg), mode,
                                    cfg.K_restrict);
            rep.rhs_factor = canonical_lambda_factor(id, lambda, cfg) * fnorm;
            break;
        case EstimateId::e11:
        case EstimateId::e14:
        case EstimateId::e16:
        case EstimateId::e17:
        case EstimateId::e18:
            rep.lhs = weighted_norm(v, WeightSpec(1, -0.5 - sg), mode);
            rep.rhs_factor = canonical_lambda_factor(id, lambda, cfg) * fnorm;
            break;
        case EstimateId::e19:
            rep.lhs = weighted_norm(v, WeightSpec(0, -1.5 + sg), mode);
            rep.rhs_factor = canonical_lambda_factor(id, lambda, cfg) * fnorm;
            break;
        case EstimateId::e28: {
            const double l2 = l2_norm(v);
            rep.lhs = sol.problem.epsilon * l2 * l2;
            rep.rhs_factor =
                fnorm * weighted_norm(v, WeightSpec(0, -0.5 - sg), mode);
            break;
        }
        case EstimateId::e34:
            rep.lhs = std::sqrt(lambda) *
                      weighted_norm(v, WeightSpec(0, -0.5 - sg), mode);
            rep.rhs_factor =
                weighted_gradient_norm(v, -0.5 - sg, mode) +
                weighted_norm(v, WeightSpec(0, -1.5 - sg), mode) + fnorm;
            break;
        case EstimateId::e37: {
            const double R = cfg.R_loc;
            const double lhs_n =
                weighted_norm(v, WeightSpec(0, -0.5 - sg), mode, 2.0 * R);
            const double gn = weighted_gradient_norm(v, -0.5 - sg, mode, R);
            const double un = weighted_norm(v, WeightSpec(0, -1.5 - sg), mode, R);
            const double fn =
                weighted_norm(gdata, WeightSpec(0, 0.5 + sg), mode, R);
            rep.lhs = lambda * lhs_n * lhs_n;
            rep.rhs_factor = gn * gn + un * un + fn * fn;
            break;
        }
        case EstimateId::e40: {
            const double r0 = cfg.r0;
            const double sign = branch_sign(sol.problem.branch);
            const auto defect = sommerfeld_defect(sol, sol.problem.z(), sign);
            const double s_prime = 0.5 * sg;
            double lhs = weighted_norm(defect, WeightSpec(0, -0.5 + s_prime),
                                       mode, 2.0 * r0);
            const double ang = std::sqrt(mode.angular_eigenvalue());
            std::vector<cplx> angv(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                angv[i] = ang / v.grid->r[i] * v.values[i];
            lhs += weighted_norm(RadialFunction(v.grid, std::move(angv)),
                                 WeightSpec(0, -0.5 + s_prime), mode, 2.0 * r0);
            rep.lhs = lhs;
            rep.rhs_factor =
                weighted_norm(gdata, WeightSpec(0, 0.5 + sg), mode, r0) +
                (1.0 + std::sqrt(lambda)) * l2_norm(v, r0, 4.0 * r0);
            break;
        }
        default:
            throw std::invalid_argument("estimate_gauge: unknown estimate id");
    }

    if (rep.rhs_factor > 0.0) {
        rep.ratio = rep.lhs / rep.rhs_factor;
        rep.ratio_defined = true;
    } else {
        rep.ratio = std::nan("");
        rep.ratio_defined = false;
    }
    return rep;
}

double gauge_scaling_ratio(const GaugeReport& rep, const GaugeConfig& cfg) {
    if (!rep.ratio_defined) return std::nan("");
    return rep.ratio * canonical_lambda_factor(rep.estimate_id, rep.lambda, cfg);
}

}  // namespace lap
