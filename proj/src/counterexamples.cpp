#include "lap/counterexamples.hpp"

#include <cmath>

#include "lap/cutoff.hpp"
#include "lap/mode_util.hpp"
#include "lap/norms.hpp"
#include "lap/solver.hpp"

namespace lap {

namespace {

struct BlendDerivs {
    double p, p1, p2;  // exponent and derivatives at r
};

BlendDerivs blend_exponent(double L, double bw, double r) {
    const double s = (r - 0.5) / bw;
    const double drop = 2.0 * L - 1.0;
    BlendDerivs b;
    b.p = L - drop * smooth_step(s);
    b.p1 = -drop * smooth_step_d1(s) / bw;
    b.p2 = -drop * smooth_step_d2(s) / (bw * bw);
    return b;
}

}  // namespace

double MatchedMode::exponent(double r) const {
    return blend_exponent(mode.L(), blend_width, r).p;
}

double MatchedMode::v_at(double r) const {
    return std::pow(r, exponent(r));
}

double MatchedMode::V_at(double r) const {
    const double L = mode.L();
    const double s = (r - 0.5) / blend_width;
    if (s <= 0.0 || s >= 1.0) return 0.0;  // exact power pieces outside
    const auto b = blend_exponent(L, blend_width, r);
    const double lr = std::log(r);
    const double q1 = b.p1 * lr + b.p / r;
    const double q2 = b.p2 * lr + 2.0 * b.p1 / r - b.p / (r * r);
    return q2 + q1 * q1 - L * (L - 1.0) / (r * r);
}

MatchedMode build_bessel_matching(int l, int n, GridPtr g, double blend_width) {
    require(l % 2 == 0, "build_bessel_matching: l must be even");
    require(l >= 4, "build_bessel_matching: l must be >= 4");
    require(blend_width > 0.0 && blend_width <= 0.5,
            "build_bessel_matching: blend must stay inside [1/2, 1]");
    MatchedMode mm;
    mm.mode = ModeParams(n, l);
    mm.blend_width = blend_width;

    std::vector<cplx> vv(g->size()), Vv(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) {
        vv[i] = mm.v_at(g->r[i]);
        Vv[i] = mm.V_at(g->r[i]);
    }
    mm.v = RadialFunction(g, std::move(vv));
    mm.V = RadialFunction(std::move(g), std::move(Vv));
    return mm;
}

RadialFunction perturbed_potential(const MatchedMode& base, int m, GridPtr g) {
    const double lam = std::pow(static_cast<double>(m),
                                -static_cast<double>(base.mode.l) / 10.0);
    std::vector<cplx> vals(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) {
        const double r = g->r[i];
        const double chi = smooth_step((2.0 * m - r) / static_cast<double>(m));
        vals[i] = base.V_at(r) + lam * chi;
    }
    return RadialFunction(std::move(g), std::move(vals));
}

BlowupReport perturb_and_probe(const MatchedMode& base, int m, double sigma,
                               EpsRule eps_rule) {
    require(m >= 2, "perturb_and_probe: m must be >= 2");
    const int l = base.mode.l;
    const double lam = std::pow(static_cast<double>(m), -l / 10.0);
    double eps;
    if (eps_rule == EpsRule::fixed_ratio) {
        eps = lam / 100.0;
    } else {
        eps = lam * std::pow(static_cast<double>(m), -static_cast<double>(l)) * 1e-12;
        eps = std::max(eps, 1e-300);
    }
    require(eps < lam, "perturb_and_probe: eps_m must stay below lambda_m");

    // probe grid: [h, 8m] with spacing fine enough to resolve the deep well
    const double r_max = 8.0 * m;
    const std::size_t N = static_cast<std::size_t>(
        std::max(1 << 16, static_cast<int>(r_max / 2.5e-3)));
    GridPtr g = standard_grid(r_max, N);
    require(g->r_max() >= 8.0 * m - 1e-9, "perturb_and_probe: grid too short");

    const std::size_t n = g->size();
    std::vector<cplx> vm(n), chi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = g->r[i];
        chi[i] = smooth_step((2.0 * m - r) / static_cast<double>(m));
        vm[i] = base.v_at(r) * chi[i];
    }
    RadialFunction u_m(g, std::move(vm));

    Profiles prof;
    prof.V = perturbed_potential(base, m, g);
    prof.theta = RadialFunction::zero(g);
    prof.A = 4.0;
    prof.sigma0 = 0.5;
    ModeProblem problem(base.mode, prof, lam, eps, Branch::plus, g);

    // Exact discrete image of the truncated mode; the cross-check re-solve
    // must reproduce u_m from it through the near-singular system.
    const auto op = assemble_mode_operator(problem, BcKind::outgoing);
    const auto image = op.apply(u_m.values);

    // Annulus mismatch of the construction: the same image with the base
    // zero-mode defect subtracted under the cutoff, so it vanishes (to the
    // epsilon term) off the annulus m <= r <= 2m.
    ModeProblem base_problem(base.mode,
                             Profiles{[&] {
                                          std::vector<cplx> bv(n);
                                          for (std::size_t i = 0; i < n; ++i)
                                              bv[i] = base.V_at(g->r[i]);
                                          return RadialFunction(g, std::move(bv));
                                      }(),
                                      RadialFunction::zero(g), 4.0, 0.5},
                             0.0, 0.0, Branch::plus, g);
    const auto base_op = assemble_mode_operator(problem, BcKind::outgoing);
    // base operator without the lambda/eps shift and without the chi bump
    const auto op0 = assemble_mode_operator_static(base_problem, BcKind::outgoing);
    std::vector<cplx> vfull(n);
    for (std::size_t i = 0; i < n; ++i) vfull[i] = base.v_at(g->r[i]);
    const auto base_image = op0.apply(vfull);
    std::vector<cplx> fm(n);
    for (std::size_t i = 0; i < n; ++i)
        fm[i] = image[i] - chi[i] * base_image[i];
    RadialFunction f_m(g, std::move(fm));

    BlowupReport rep;
    rep.m = m;
    rep.l = l;
    rep.lambda_m = lam;
    rep.eps_m = eps;
    rep.u_m = u_m;
    rep.f_m = f_m;
    rep.u_norm = weighted_norm(u_m, WeightSpec(0, -0.5 - sigma), base.mode);
    rep.f_norm = weighted_norm(f_m, WeightSpec(0, 0.5 + sigma), base.mode);
    rep.ratio = rep.f_norm > 0.0 ? rep.u_norm / rep.f_norm : 0.0;

    // Cross-check: the solver must reproduce u_m through the near-resonant
    // system when fed the exact discrete image.
    RadialFunction image_fn(g, image);
    const auto recovered = solve_resolvent_mode(problem, image_fn, BcKind::outgoing);
    std::vector<cplx> diff(n);
    for (std::size_t i = 0; i < n; ++i)
        diff[i] = recovered.v.values[i] - u_m.values[i];
    const double dn = weighted_norm(RadialFunction(g, std::move(diff)),
                                    WeightSpec(0, -0.5 - sigma), base.mode);
    rep.cross_validation_error = rep.u_norm > 0.0 ? dn / rep.u_norm : 0.0;
    return rep;
}

namespace {

// Streaming Sturm count for -v'' + (L(L-1)/r^2 + V(r)) v on [r_min, r_max]
// with Dirichlet ends; O(1) memory so very fine spacings are affordable.
template <class PotFn>
int stream_count_below(double L, PotFn&& V, double r_min, double r_max,
                       std::size_t N, double x) {
    const double h = (r_max - r_min) / static_cast<double>(N - 1);
    const double inv_h2 = 1.0 / (h * h);
    const double off2 = inv_h2 * inv_h2;
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double r = r_min + static_cast<double>(i) * h;
        const double diag = 2.0 * inv_h2 + L * (L - 1.0) / (r * r) + V(r) - x;
        d = (i == 1) ? diag : diag - off2 / d;
        if (d == 0.0) d = std::numeric_limits<double>::min();
        if (d < 0.0) ++count;
    }
    return count;
}

}  // namespace

SpectralSanity spectral_sanity(const MatchedMode& base, int m, GridPtr) {
    const int l = base.mode.l;
    const double L = base.mode.L();
    const double lam = std::pow(static_cast<double>(m), -l / 10.0);

    // discretization shift of the engineered zero mode ~ (h^2/12) <|v''|^2>/<|v|^2>
    double num = 0.0, den = 0.0;
    {
        const std::size_t M = 1 << 15;
        const double a = 0.01, b = 24.0;
        const double hh = (b - a) / (M - 1);
        for (std::size_t i = 0; i < M; ++i) {
            const double r = a + i * hh;
            const double v = base.v_at(r);
            const double vpp = (base.V_at(r) + L * (L - 1.0) / (r * r)) * v;
            num += vpp * vpp * hh;
            den += v * v * hh;
        }
    }
    const double shift_coeff = num / den / 12.0;
    const double target_shift = lam / 40.0;
    const double h_needed = std::sqrt(target_shift / shift_coeff);

    const double r_max = 2.0 * m;
    const std::size_t N = static_cast<std::size_t>(
        std::max(1 << 18, static_cast<int>(r_max / h_needed) + 1));

    auto Vbase = [&](double r) { return base.V_at(r); };
    auto Vpert = [&](double r) {
        return base.V_at(r) + lam * smooth_step((2.0 * m - r) / static_cast<double>(m));
    };
    const double r_min = r_max / static_cast<double>(N);

    SpectralSanity out;
    out.zero_window_count =
        stream_count_below(L, Vpert, r_min, r_max, N, lam / 2.0) -
        stream_count_below(L, Vpert, r_min, r_max, N, -lam / 2.0);
    out.negative_count_base =
        stream_count_below(L, Vbase, r_min, r_max, N, -lam);
    out.negative_count_perturbed =
        stream_count_below(L, Vpert, r_min, r_max, N, -lam);
    out.negative_count_stable =
        out.negative_count_base == out.negative_count_perturbed;
    return out;
}

namespace {

// long-double evaluation chain for the matched profile; the double chain
// leaves eps/h^2 noise in second differences that masks the h^2 truncation
long double step_l(long double t) {
    if (t <= 0.0L) return 0.0L;
    if (t >= 1.0L) return 1.0L;
    const long double g = expl(-1.0L / t), gc = expl(-1.0L / (1.0L - t));
    return g / (g + gc);
}

long double v_at_l(const MatchedMode& mm, long double r) {
    const long double L = mm.mode.L();
    const long double s = (r - 0.5L) / static_cast<long double>(mm.blend_width);
    const long double p = L - (2.0L * L - 1.0L) * step_l(s);
    return expl(p * logl(r));
}

}  // namespace

double matched_kernel_residual(const MatchedMode& mm, double r_lo, double r_hi,
                               double h) {
    const long double cf = mm.mode.centrifugal();
    const long double hl = h;
    double worst = 0.0;
    for (long double r = r_lo; r <= static_cast<long double>(r_hi); r += hl) {
        const long double vm = v_at_l(mm, r - hl);
        const long double v0 = v_at_l(mm, r);
        const long double vp = v_at_l(mm, r + hl);
        const long double d2 = (vp - 2.0L * v0 + vm) / (hl * hl);
        const long double V = mm.V_at(static_cast<double>(r));
        const long double img = -d2 + (cf / (r * r) + V) * v0;
        const long double scale =
            fabsl(v0) * (cf / (r * r) + fabsl(V)) + 1e-300L;
        worst = std::max(worst, static_cast<double>(fabsl(img) / scale));
    }
    return worst;
}

double matched_zero_rayleigh(const MatchedMode& mm, double r_min, double r_max,
                             std::size_t n) {
    const long double h = (static_cast<long double>(r_max) - r_min) /
                          static_cast<long double>(n - 1);
    const long double cf = mm.mode.centrifugal();
    long double form = 0.0L, mass = 0.0L;
    long double v_prev = v_at_l(mm, r_min);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const long double r1 = r_min + static_cast<long double>(i + 1) * h;
        const long double v_next = v_at_l(mm, r1);
        const long double dv = (v_next - v_prev);
        form += dv * dv / h;
        v_prev = v_next;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const long double r = r_min + static_cast<long double>(i) * h;
        const long double v = v_at_l(mm, r);
        form += (cf / (r * r) + mm.V_at(static_cast<double>(r))) * v * v * h;
        mass += v * v * h;
    }
    return static_cast<double>(form / mass);
}

QuasimodeProfile quasimode_profile(int l, int n, double theta_lo,
                                   double theta_hi, std::size_t n_theta) {
    require(l >= 4, "quasimode_profile: l must be >= 4");
    require(theta_lo > 0.0 && theta_lo < M_PI / 4.0,
            "quasimode_profile: cutoff must start inside (0, pi/4)");
    require(theta_hi > 3.0 * M_PI / 4.0 && theta_hi < M_PI,
            "quasimode_profile: cutoff must end inside (3pi/4, pi)");

    QuasimodeProfile qp;
    qp.l = l;
    qp.n = n;
    qp.lambda_l = static_cast<double>(l + 1) * (l + n);

    const std::size_t N = n_theta;
    const double dth = M_PI / static_cast<double>(N + 1);
    qp.theta.resize(N);
    qp.U.resize(N);
    qp.chi.resize(N);

    // chi: symmetric, 1 on [pi/4, 3pi/4], supported in [theta_lo, theta_hi]
    const double rise = M_PI / 4.0 - theta_lo;
    const double fall = theta_hi - 3.0 * M_PI / 4.0;
    std::vector<double> chi1(N), chi2(N), U1(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double th = (i + 1) * dth;
        qp.theta[i] = th;
        const double s = std::sin(th), c = std::cos(th);
        qp.U[i] = std::pow(s, l) * c;
        U1[i] = std::pow(s, l - 1) * (l * c * c - s * s);
        const double tu = (th - theta_lo) / rise;
        const double td = (theta_hi - th) / fall;
        qp.chi[i] = smooth_step(tu) * smooth_step(td);
        chi1[i] = smooth_step_d1(tu) / rise * smooth_step(td) -
                  smooth_step(tu) * smooth_step_d1(td) / fall;
        chi2[i] = smooth_step_d2(tu) / (rise * rise) * smooth_step(td) -
                  2.0 * smooth_step_d1(tu) / rise * smooth_step_d1(td) / fall +
                  smooth_step(tu) * smooth_step_d2(td) / (fall * fall);
    }

    auto wgt = [&](std::size_t i) { return std::pow(std::sin(qp.theta[i]), n - 1); };

    double near = 0.0, tail = 0.0, chiU = 0.0, resid = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double th = qp.theta[i];
        const double cell = qp.U[i] * qp.U[i] * wgt(i) * dth;
        if (std::abs(th - M_PI / 2.0) <= M_PI / 4.0)
            near += cell;
        else
            tail += cell;
        chiU += qp.chi[i] * qp.chi[i] * cell / (qp.U[i] * qp.U[i] + 1e-300) *
                qp.U[i] * qp.U[i];
        // commutator residual with analytic derivatives:
        // (A - lambda)(chi U) = -2 chi' U' - (chi'' + (n-1) cot(th) chi') U
        const double com = -2.0 * chi1[i] * U1[i] -
                           (chi2[i] + (n - 1) * std::cos(th) / std::sin(th) * chi1[i]) *
                               qp.U[i];
        resid += com * com * wgt(i) * dth;
    }
    qp.near_equator_mass = near;
    qp.tail_mass = tail;
    qp.total_mass = near + tail;
    qp.chiU_norm = std::sqrt(chiU);
    qp.residual_norm = std::sqrt(resid);

    // discrete eigen-relation check on [pi/3, 2pi/3]
    double ec = 0.0;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const double th = qp.theta[i];
        if (th < M_PI / 3.0 || th > 2.0 * M_PI / 3.0) continue;
        const double upp = (qp.U[i + 1] - 2.0 * qp.U[i] + qp.U[i - 1]) / (dth * dth);
        const double up = (qp.U[i + 1] - qp.U[i - 1]) / (2.0 * dth);
        const double s = std::sin(th), c = std::cos(th);
        const double a = -upp - (n - 1) * c / s * up +
                         static_cast<double>(l) * (l + n - 2) / (s * s) * qp.U[i];
        const double d = a - qp.lambda_l * qp.U[i];
        ec += d * d * wgt(i) * dth;
    }
    qp.eigen_check = std::sqrt(ec);
    return qp;
}

}  // namespace lap
