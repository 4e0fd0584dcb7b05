#include "lap/energies.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

namespace lap {

namespace {

std::vector<double> centered_d(const RadialGrid& g, const std::vector<double>& f) {
    const std::size_t n = f.size();
    const double h = g.h;
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

// Tail integral int_r^{r_max} q ds by trapezoid, accumulated from the right.
std::vector<double> tail_integral(const RadialGrid& g, const std::vector<double>& q) {
    std::vector<double> t(q.size(), 0.0);
    for (std::size_t i = q.size() - 1; i-- > 0;)
        t[i] = t[i + 1] + 0.5 * g.h * (q[i] + q[i + 1]);
    return t;
}

}  // namespace

SphericalEnergySeries spherical_energies(const ModeSolution& sol,
                                         const RadialFunction& f_mode,
                                         ForcingNormalization norm) {
    require(sol.v.grid->size() == f_mode.grid->size(),
            "spherical_energies: grid mismatch");
    const auto& g = *sol.v.grid;
    const std::size_t n = g.size();
    const auto vr = derivative(sol.v);
    const double cf = sol.problem.mode.centrifugal();
    const double a = 0.5 * (sol.problem.mode.n - 1);
    const cplx z = sol.problem.z();
    const double sign = branch_sign(sol.problem.branch);
    const double eps = sol.problem.epsilon;
    const double sqrt_lam = std::sqrt(std::max(sol.problem.lambda, 0.0));

    SphericalEnergySeries s;
    s.grid = sol.v.grid;
    s.mode = sol.problem.mode;
    s.lambda = sol.problem.lambda;
    s.epsilon = eps;
    s.z = z;
    s.M.resize(n);
    s.R.resize(n);
    s.A.resize(n);
    s.F.resize(n);
    s.N.resize(n);
    s.G.resize(n);
    s.Z.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.r[i];
        const cplx v = sol.v.values[i];
        const cplx d = vr[i];
        s.M[i] = std::norm(v);
        s.R[i] = std::norm(d);
        s.A[i] = cf / (r * r) * std::norm(v);
        s.Z[i] = d * std::conj(v);
        s.F[i] = s.Z[i].real();
        s.N[i] = std::norm(d - sign * cplx(0.0, 1.0) * z * v);

        const double fd = std::abs(f_mode.values[i]);
        const double gain = 1.0 / (1.0 / r + sqrt_lam);
        if (norm == ForcingNormalization::v_weighted) {
            const double u_abs = std::abs(v) * std::pow(r, -a);
            s.G[i] = std::pow(r, a) * (std::abs(v) + gain * std::abs(d)) *
                     (fd + eps * u_abs);
        } else {
            const double u_abs = std::abs(v) * std::pow(r, -a);
            const double ur_abs = std::abs(d - (a / r) * v) * std::pow(r, -a);
            s.G[i] = std::pow(r, static_cast<double>(sol.problem.mode.n - 1)) *
                     (u_abs + gain * ur_abs) * (fd + eps * u_abs);
        }
    }
    return s;
}

MotionResiduals motion_residuals(const SphericalEnergySeries& s,
                                 const ModeProblem& problem) {
    const auto& g = *s.grid;
    const std::size_t n = g.size();
    const double A0 = problem.profiles.A;
    const double s0 = problem.profiles.sigma0;
    const double lam = s.lambda;
    const double sqrt_lam = std::sqrt(std::max(lam, 0.0));
    const double b = std::abs(s.z.imag());

    const auto dM = centered_d(g, s.M);
    const auto dF = centered_d(g, s.F);
    std::vector<double> poho(n), null_minus_ang(n);
    for (std::size_t i = 0; i < n; ++i) {
        poho[i] = s.R[i] + lam * s.M[i] - s.A[i];
        null_minus_ang[i] = s.N[i] - s.A[i];
    }
    const auto dP = centered_d(g, poho);
    const auto dNA = centered_d(g, null_minus_ang);

    // |g|^2 = r^{n-1} |f|^2 on the mode, recovered from G when f-free runs
    // report zero anyway; the data term enters only through the envelope.
    MotionResiduals out;
    out.eq_mass_flux.resize(n);
    out.eq_flux_balance.resize(n);
    out.eq_pohozaev.resize(n);
    out.eq_null_energy.resize(n);
    out.env_mass_flux.resize(n);
    out.env_flux_balance.resize(n);
    out.env_pohozaev.resize(n);
    out.env_null_energy.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.r[i];
        out.eq_mass_flux[i] = std::abs(dM[i] - 2.0 * s.F[i]);
        out.eq_flux_balance[i] =
            std::abs(dF[i] - (s.R[i] + s.A[i] - lam * s.M[i]));
        out.eq_pohozaev[i] = std::abs(dP[i] - 2.0 / r * s.A[i]);
        out.eq_null_energy[i] = std::abs(dNA[i] - 2.0 / r * s.A[i] -
                                         2.0 * b * (s.N[i] + s.A[i]));

        const double w1 = A0 * std::pow(r, -1.0 - 2.0 * s0);
        const double w2 = A0 * std::pow(r, -2.0 - 2.0 * s0);
        const double w3 = A0 * std::pow(r, -3.0 - 2.0 * s0);
        out.env_mass_flux[i] = w1 * s.M[i];
        out.env_flux_balance[i] = (w2 + sqrt_lam * w1) * s.M[i] + s.G[i];
        out.env_pohozaev[i] = w1 * (s.A[i] + s.R[i] + lam * s.M[i]) +
                              w3 * s.M[i] + (1.0 / r + sqrt_lam) * s.G[i];
        const double zn = std::norm(s.z);
        out.env_null_energy[i] =
            w2 * b * s.M[i] + w1 * (s.R[i] + s.A[i] + zn * s.M[i]) +
            (w2 + sqrt_lam * w1) * std::sqrt(s.M[i] * s.N[i]) +
            std::sqrt(std::max(s.G[i], 0.0) * s.N[i]);
    }
    return out;
}

DimensionlessSeries dimensionless(const SphericalEnergySeries& s, double delta,
                                  double lambda, double C_corr) {
    const auto& g = *s.grid;
    const std::size_t n = g.size();
    const double sqrt_lam = std::sqrt(std::max(lambda, 0.0));

    std::vector<double> absG(n), absG_weighted(n);
    for (std::size_t i = 0; i < n; ++i) {
        absG[i] = std::abs(s.G[i]);
        absG_weighted[i] = (1.0 / g.r[i] + sqrt_lam) * absG[i];
    }
    const auto tG = tail_integral(g, absG);
    const auto tGw = tail_integral(g, absG_weighted);

    DimensionlessSeries d;
    d.grid = s.grid;
    d.delta = delta;
    d.C_corr = C_corr;
    d.mu.resize(n);
    d.alpha.resize(n);
    d.beta.resize(n);
    d.valid.resize(n);
    d.F_star.resize(n);
    d.P_star.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double r = g.r[i];
        const double P = lambda * s.M[i] + s.R[i] - s.A[i];
        d.F_star[i] = s.F[i] - C_corr * tG[i];
        d.P_star[i] = P - C_corr * tGw[i];
        if (s.M[i] > 0.0) {
            d.valid[i] = true;
            d.mu[i] = r * delta / s.M[i];
            d.alpha[i] = -r * d.F_star[i] / s.M[i];
            d.beta[i] = -r * r * d.P_star[i] / s.M[i];
        } else {
            d.valid[i] = false;
            d.mu[i] = d.alpha[i] = d.beta[i] = 0.0;
        }
    }
    return d;
}

DichotomyVerdict classify_dichotomy(const SphericalEnergySeries& s,
                                    double lambda, double delta, double C1,
                                    double C2, double r_cap,
                                    const DichotomyConfig& cfg) {
    const auto& g = *s.grid;
    require(C1 > g.r_min(), "classify_dichotomy: C1 must exceed grid r_min");
    require(r_cap <= g.r_max() + 1e-12, "classify_dichotomy: window exceeds grid");
    require(r_cap > C1, "classify_dichotomy: r_cap must exceed C1");

    const double rate_threshold = C2 * (1.0 + std::sqrt(std::max(lambda, 0.0)));
    const double g_hi = std::min(10.0 * C1, r_cap);
    const auto dM = centered_d(g, s.M);

    std::vector<double> rates;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        const double r = g.r[i];
        if (r < C1 || r > g_hi) continue;
        if (s.M[i] <= 0.0) continue;
        rates.push_back(-r * dM[i] / s.M[i]);
    }

    DichotomyVerdict v;
    if (!rates.empty()) {
        std::sort(rates.begin(), rates.end());
        const std::size_t q =
            static_cast<std::size_t>((1.0 - cfg.sample_fraction) * rates.size());
        const double low_quantile = rates[std::min(q, rates.size() - 1)];
        std::size_t npass = 0;
        for (double rho : rates)
            if (rho >= rate_threshold) ++npass;
        v.growth_fraction = static_cast<double>(npass) / rates.size();
        if (low_quantile >= rate_threshold) {
            v.kind = DichotomyVerdict::Kind::exponential_growth;
            v.measured_rate = low_quantile;
            return v;
        }
        v.measured_rate = low_quantile;
    }

    // Bounded branch: some r0 in [C1, r_cap] with the mass small on
    // [r0/2, 4 r0] relative to the data size delta.
    const double bound =
        cfg.bound_factor * (std::pow(lambda, -cfg.bound_C) + 1.0) * delta;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r0 = g.r[i];
        if (r0 < C1 || r0 > r_cap) continue;
        if (r0 / 2.0 < g.r_min() || 4.0 * r0 > g.r_max()) continue;
        double mmax = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g.r[j] >= r0 / 2.0 && g.r[j] <= 4.0 * r0)
                mmax = std::max(mmax, s.M[j]);
        if (mmax <= bound) {
            v.kind = DichotomyVerdict::Kind::bounded;
            v.r0 = r0;
            v.bound = mmax;
            return v;
        }
    }

    v.kind = DichotomyVerdict::Kind::indeterminate;
    v.note = "neither growth-rate nor mass-bound criterion fired";
    return v;
}

PohozaevMargin pohozaev_bound_check(const SphericalEnergySeries& s,
                                    double lambda, double delta, double sigma,
                                    double r_lo, double r_hi) {
    const auto& g = *s.grid;
    const std::size_t n = g.size();
    const double sqrt_lam = std::sqrt(std::max(lambda, 0.0));

    PohozaevMargin out;
    out.grid = s.grid;
    out.P.resize(n);
    out.margin.assign(n, 0.0);

    std::vector<double> need;  // per-point constant required with K1 = K2
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.P[i] = lambda * s.M[i] + s.R[i] - s.A[i];
        a[i] = (1.0 / g.r[i] + sqrt_lam) * delta;
        b[i] = std::pow(g.r[i], -2.0 - 2.0 * sigma) * s.M[i];
        if (g.r[i] < r_lo || g.r[i] > r_hi) continue;
        if (a[i] + b[i] > 0.0)
            need.push_back(std::max(out.P[i], 0.0) / (a[i] + b[i]));
        else if (out.P[i] > 0.0)
            need.push_back(std::numeric_limits<double>::infinity());
    }

    double K = 0.0;
    for (double x : need) K = std::max(K, x);
    out.K1 = out.K2 = K;
    for (std::size_t i = 0; i < n; ++i)
        out.margin[i] = K * (a[i] + b[i]) - out.P[i];

    // A required constant that grows with r means the bound is not
    // satisfiable uniformly for this normalization.
    out.flagged = std::isinf(K);
    {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < n; ++i) {
            if (g.r[i] < r_lo || g.r[i] > r_hi) continue;
            if (a[i] + b[i] <= 0.0) continue;
            const double ni = std::max(out.P[i], 0.0) / (a[i] + b[i]);
            if (ni > 1e-12 * (K + 1e-300)) {
                lx.push_back(std::log(g.r[i]));
                ly.push_back(std::log(ni));
            }
        }
        if (lx.size() >= 8) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sx += lx[i];
                sy += ly[i];
                sxx += lx[i] * lx[i];
                sxy += lx[i] * ly[i];
            }
            const double m = static_cast<double>(lx.size());
            const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            if (slope > 0.5) out.flagged = true;
        }
    }
    return out;
}

}  // namespace lap
