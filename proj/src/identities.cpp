#include "lap/identities.hpp"

#include <cmath>

#include "lap/mode_util.hpp"
#include "lap/norms.hpp"

namespace lap {

namespace {

constexpr double kResidualFloor = 1e-30;

std::vector<double> centered_d(const RadialGrid& g, const std::vector<double>& f) {
    const std::size_t n = f.size();
    const double h = g.h;
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

void finish(IdentityResidualReport& rep) {
    rep.residual = std::abs(rep.lhs_value - rep.rhs_value);
    rep.relative_residual =
        rep.residual /
        (std::abs(rep.lhs_value) + std::abs(rep.rhs_value) + kResidualFloor);
}

void require_compact_support(const RadialFunction& f, std::size_t margin,
                             const char* what) {
    require(f.size() > 2 * margin + 4, "identity: grid too small for cutoff");
    for (std::size_t i = 0; i < margin; ++i) {
        const bool lo = std::abs(f.values[i]) == 0.0;
        const bool hi = std::abs(f.values[f.size() - 1 - i]) == 0.0;
        if (!lo || !hi)
            throw std::invalid_argument(std::string(what) +
                                        ": support touches the grid boundary");
    }
}

}  // namespace

WeightFunction morawetz_default_weight(GridPtr g, double sigma) {
    WeightFunction w;
    w.kind = WeightFunction::Kind::morawetz_default;
    const double p = 1.0 - 2.0 * sigma;
    std::vector<cplx> vals(g->size());
    w.W1.resize(g->size());
    w.W2.resize(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double r = g->r[i];
        vals[i] = r - std::pow(1.0 + r, p);
        w.W1[i] = 1.0 - p * std::pow(1.0 + r, p - 1.0);
        w.W2[i] = -p * (p - 1.0) * std::pow(1.0 + r, p - 2.0);
    }
    w.W = RadialFunction(std::move(g), std::move(vals));
    return w;
}

WeightFunction carleman_sqrt_weight(GridPtr g, double scale) {
    WeightFunction w;
    w.kind = WeightFunction::Kind::carleman;
    std::vector<cplx> vals(g->size());
    w.W1.resize(g->size());
    w.W2.resize(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double r = g->r[i];
        const double s = std::sqrt(1.0 + r * r);
        vals[i] = scale * s;
        w.W1[i] = scale * r / s;
        w.W2[i] = scale / (s * s * s);
    }
    w.W = RadialFunction(std::move(g), std::move(vals));
    return w;
}

IdentityResidualReport charge_residual(const ModeSolution& sol,
                                       const RadialFunction& f_mode) {
    const auto& g = *sol.v.grid;
    const std::size_t n = g.size();
    const auto& v = sol.v.values;
    const double h = g.h;
    const double sgn = branch_sign(sol.problem.branch);
    const double eps = sol.problem.epsilon;

    double q2 = 0.0;
    cplx source_pairing = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q2 += g.weight(i) * std::norm(v[i]);
        source_pairing += g.weight(i) * std::conj(v[i]) * sol.source.values[i];
    }
    if (sol.bc_kind == BcKind::dirichlet)
        source_pairing -= g.weight(n - 1) * std::conj(v[n - 1]) *
                          sol.source.values[n - 1];

    double theta_term = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double th = sol.problem.profiles.theta.values[i].real();
        theta_term += 0.5 * th * (std::conj(v[i]) * (v[i + 1] - v[i - 1])).imag();
    }

    double flux_top = 0.0;
    if (sol.bc_kind != BcKind::dirichlet) {
        const cplx z = sol.problem.z();
        const cplx beta = (sol.bc_kind == BcKind::outgoing ? cplx(0.0, 1.0)
                                                           : cplx(0.0, -1.0)) * z;
        const double th_e = sol.problem.profiles.theta.values[n - 1].real();
        flux_top = beta.imag() * (1.0 + 0.5 * h * th_e) * std::norm(v[n - 1]);
    }

    IdentityResidualReport rep;
    rep.identity_id = "charge";
    rep.lhs_value = sgn * eps * q2 + theta_term + flux_top;
    rep.rhs_value = -source_pairing.imag();
    rep.flux_rmax = flux_top;
    rep.flux_rmin = 0.0;  // real Robin regularity row carries no charge flux
    finish(rep);
    return rep;
}

IdentityResidualReport lagrangean_residual(const ModeSolution& sol,
                                           const RadialFunction& f_mode,
                                           const RadialFunction& chi) {
    require(chi.grid->size() == sol.v.grid->size(),
            "lagrangean_residual: cutoff grid mismatch");
    require_compact_support(chi, 2, "lagrangean_residual");
    const auto& g = *sol.v.grid;
    const std::size_t n = g.size();
    const ModeParams mode = sol.problem.mode;
    const double a = 0.5 * (mode.n - 1);
    const double ang = mode.angular_eigenvalue();
    const double lam = sol.problem.lambda;

    const auto vr = derivative(sol.v);
    std::vector<double> chire(n);
    for (std::size_t i = 0; i < n; ++i) chire[i] = chi.values[i].real();
    const auto chi1 = centered_d(g, chire);
    const auto chi2 = centered_d(g, chi1);

    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.r[i];
        const double w = g.weight(i);
        const cplx up_v = vr[i] - (a / r) * sol.v.values[i];
        const double e = std::norm(up_v) + ang / (r * r) * std::norm(sol.v.values[i]);
        const double q = std::norm(sol.v.values[i]);
        const double lap_chi = chi2[i] + (mode.n - 1) / r * chi1[i];
        const cplx F_v = sol.source.values[i] -
                         sol.problem.profiles.V.values[i].real() * sol.v.values[i];
        lhs += w * chire[i] * e;
        rhs += w * (lam * chire[i] * q + 0.5 * lap_chi * q +
                    chire[i] * (std::conj(sol.v.values[i]) * F_v).real());
    }

    IdentityResidualReport rep;
    rep.identity_id = "lagrangean";
    rep.lhs_value = lhs;
    rep.rhs_value = rhs;
    finish(rep);
    return rep;
}

MorawetzReport morawetz_residual(const ModeSolution& sol,
                                 const RadialFunction& f_mode,
                                 const WeightFunction& W,
                                 const RadialFunction& chi) {
    require(W.kind == WeightFunction::Kind::morawetz_default ||
                W.kind == WeightFunction::Kind::custom,
            "morawetz_residual: unsupported weight kind");
    require(chi.grid->size() == sol.v.grid->size() &&
                W.W.grid->size() == sol.v.grid->size(),
            "morawetz_residual: grid mismatch");
    require(sol.problem.profiles.theta.max_abs() == 0.0,
            "morawetz_residual: radial reduction requires theta = 0");
    require_compact_support(chi, 2, "morawetz_residual");

    const auto& g = *sol.v.grid;
    const std::size_t n = g.size();
    const ModeParams mode = sol.problem.mode;
    const double ang = mode.angular_eigenvalue();
    const double a = 0.5 * (mode.n - 1);
    const double lam = sol.problem.lambda;
    const double sgn = branch_sign(sol.problem.branch);
    const double eps = sol.problem.epsilon;
    const cplx z = sol.problem.z();
    const double rez = z.real(), imz = z.imag();
    const double zabs2 = std::norm(z);

    const auto vr = derivative(sol.v);
    std::vector<double> chire(n), dW(n);
    for (std::size_t i = 0; i < n; ++i) chire[i] = chi.values[i].real();
    const auto chi1 = centered_d(g, chire);

    std::vector<double> lapW(n);
    for (std::size_t i = 0; i < n; ++i)
        lapW[i] = W.W2[i] + (mode.n - 1) / g.r[i] * W.W1[i];
    const auto dlapW = centered_d(g, lapW);
    const auto d2lapW = centered_d(g, dlapW);
    std::vector<double> lap2W(n);
    for (std::size_t i = 0; i < n; ++i)
        lap2W[i] = d2lapW[i] + (mode.n - 1) / g.r[i] * dlapW[i];

    MorawetzReport rep;
    rep.identity_id = "morawetz";
    double lhs = 0.0, rhs = 0.0, hess_q = 0.0, bilap_q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.r[i];
        const double mu = g.weight(i) * std::pow(r, mode.n - 1);
        const double ra = std::pow(r, -a);
        const cplx u = sol.v.values[i] * ra;
        const cplx up = (vr[i] - (a / r) * sol.v.values[i]) * ra;
        const double q = std::norm(u);
        const double e = std::norm(up) + ang / (r * r) * q;
        const double vrad = (std::conj(u) * up).real();
        const double jrad = (std::conj(u) * up).imag();
        const double Qrr = std::norm(up) - 0.5 * (e - zabs2 * q);
        const cplx F = f_mode.values[i] -
                       sol.problem.profiles.V.values[i].real() * u;
        const double ReuF = (std::conj(u) * F).real();
        const double ImuF = (std::conj(u) * F).imag();
        const double ReupF = (std::conj(up) * F).real();

        const double hess = W.W2[i] * std::norm(up) + W.W1[i] / r * ang / (r * r) * q;
        hess_q += mu * chire[i] * hess;
        bilap_q += mu * chire[i] * (-0.25 * lap2W[i] * q);

        lhs += mu * chire[i] *
               (hess - 0.25 * lap2W[i] * q + 0.5 * lapW[i] * (zabs2 - lam) * q +
                imz * e - imz * lam * q + sgn * eps * rez * q -
                0.5 * lapW[i] * ReuF - W.W1[i] * ReupF -
                W.W1[i] * ((lam - zabs2) * vrad + sgn * eps * jrad) +
                rez * ImuF - imz * ReuF);
        rhs += -mu * chi1[i] *
               (-0.25 * dlapW[i] * q + 0.5 * lapW[i] * vrad + W.W1[i] * Qrr +
                imz * vrad - rez * jrad);
    }
    rep.lhs_value = lhs;
    rep.rhs_value = rhs;
    rep.hessian_term = hess_q;
    rep.bilaplacian_term = bilap_q;
    finish(rep);
    return rep;
}

IdentityResidualReport carleman_identity_residual(const RadialFunction& u_c,
                                                  const ModeParams& mode,
                                                  const WeightFunction& w,
                                                  double t, double lambda) {
    require(w.W.grid->size() == u_c.grid->size(),
            "carleman_identity_residual: grid mismatch");
    require_compact_support(u_c, 3, "carleman_identity_residual");
    const auto& g = *u_c.grid;
    const std::size_t n = g.size();
    const double ang = mode.angular_eigenvalue();

    // support window padded by a few nodes; the weight exponential is only
    // evaluated there (it may overflow on the full grid)
    std::size_t lo = n, hi = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(u_c.values[i]) != 0.0) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
    if (lo > hi) {
        IdentityResidualReport rep;
        rep.identity_id = "carleman";
        finish(rep);
        return rep;
    }
    lo = lo >= 4 ? lo - 4 : 0;
    hi = std::min(hi + 4, n - 1);

    const auto up = derivative(u_c);
    const auto upp = second_derivative(u_c);

    std::vector<double> lapw(n);
    for (std::size_t i = 0; i < n; ++i)
        lapw[i] = t * (w.W2[i] + (mode.n - 1) / g.r[i] * w.W1[i]);
    const auto dlapw = centered_d(g, lapw);
    const auto d2lapw = centered_d(g, dlapw);

    // d/dr (e^{t w} u) within the window by centered differences
    std::vector<cplx> eu(n, 0.0);
    for (std::size_t i = lo; i <= hi; ++i)
        eu[i] = std::exp(t * w.W.values[i].real()) * u_c.values[i];

    double T1 = 0.0, T2 = 0.0, T3 = 0.0, T4 = 0.0, rhs = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double r = g.r[i];
        const double mu = g.weight(i) * std::pow(r, mode.n - 1);
        const double wexp = std::exp(t * w.W.values[i].real());
        const double w1 = t * w.W1[i];
        const double w2 = t * w.W2[i];
        const cplx u = u_c.values[i];
        const cplx G_src = -(upp[i] + (mode.n - 1) / r * up[i] -
                             ang / (r * r) * u) - lambda * u;
        const cplx U = (2.0 * w1 * up[i] + (2.0 * w1 * w1 + lapw[i]) * u) * wexp;
        const cplx deu = (i > lo && i < hi)
                             ? (eu[i + 1] - eu[i - 1]) / (2.0 * g.h)
                             : cplx(0.0);
        T1 += mu * std::norm(U);
        T2 += mu * 2.0 * w2 * std::norm(deu);
        T3 += mu * 2.0 * (w1 / r) * ang / (r * r) * std::norm(wexp * u);
        T4 += mu * 2.0 * w2 * w1 * w1 * std::norm(u) * wexp * wexp;
        const double lap2w = d2lapw[i] + (mode.n - 1) / r * dlapw[i];
        rhs += mu * (0.5 * lap2w * std::norm(u) * wexp * wexp +
                     (std::conj(wexp * G_src) * U).real());
    }

    IdentityResidualReport rep;
    rep.identity_id = "carleman";
    rep.lhs_value = T1 + T2 + T3 + T4;
    rep.rhs_value = rhs;
    finish(rep);
    return rep;
}

SommerfeldGauge sommerfeld_gauge(const ModeSolution& sol, double sigma_prime,
                                 double sigma, double r0,
                                 Branch test_branch_override,
                                 bool use_solution_branch) {
    require(sigma_prime > 0.0 && sigma_prime < sigma,
            "sommerfeld_gauge: need 0 < sigma' < sigma");
    const Branch test_branch =
        use_solution_branch ? sol.problem.branch : test_branch_override;
    const double sign = branch_sign(test_branch);
    const ModeParams mode = sol.problem.mode;
    const cplx z = sol.problem.z();
    const auto defect = sommerfeld_defect_vform(sol.v, mode.n, z, sign);

    const double ang = std::sqrt(mode.angular_eigenvalue());
    std::vector<cplx> angv(sol.v.size());
    for (std::size_t i = 0; i < sol.v.size(); ++i)
        angv[i] = ang / sol.v.grid->r[i] * sol.v.values[i];
    const RadialFunction angf(sol.v.grid, std::move(angv));

    const WeightSpec ws(0, -0.5 + sigma_prime);
    auto gauge_to = [&](double R) {
        const double gd = weighted_norm(defect, ws, mode, 2.0 * r0, R);
        const double ga = weighted_norm(angf, ws, mode, 2.0 * r0, R);
        return gd + ga;
    };

    SommerfeldGauge out;
    const double r_max = sol.v.grid->r_max();
    out.gauge_value = gauge_to(r_max);

    // squared-gauge growth as the window edge sweeps outward
    std::vector<double> xs, ys;
    for (double R = r_max; R >= 8.0 * r0 && xs.size() < 6; R /= std::sqrt(2.0)) {
        const double gv = gauge_to(R);
        if (gv > 0.0) {
            xs.push_back(std::log(R));
            ys.push_back(std::log(gv * gv));
        }
    }
    if (xs.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double m = static_cast<double>(xs.size());
        out.tail_growth_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return out;
}

}  // namespace lap
