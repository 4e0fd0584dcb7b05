#include <doctest.h>

#include <cmath>

#include "lap/counterexamples.hpp"
#include "lap/fit.hpp"
#include "lap/norms.hpp"
#include "lap/solver.hpp"
#include "oracles.hpp"

using namespace lap;

TEST_CASE("matched mode construction") {
    auto g = standard_grid(4.0, 1 << 14);
    const auto mm = build_bessel_matching(4, 3, g);

    SUBCASE("piece formulas") {
        CHECK(mm.v_at(0.25) == doctest::Approx(std::pow(0.25, 5)).epsilon(1e-13));
        CHECK(mm.v_at(2.0) == doctest::Approx(0.0625).epsilon(1e-13));
        for (std::size_t i = 0; i < g->size(); ++i) {
            const double r = g->r[i];
            if (r <= 0.5)
                CHECK(std::abs(mm.v.values[i].real() - std::pow(r, 5)) <=
                      1e-12 * std::pow(r, 5));
            if (r >= 1.0)
                CHECK(std::abs(mm.v.values[i].real() - std::pow(r, -4)) <=
                      1e-12 * std::pow(r, -4));
        }
    }

    SUBCASE("potential is supported in [1/2, 1]") {
        for (std::size_t i = 0; i < g->size(); ++i) {
            const double r = g->r[i];
            if (r < 0.5 - 1e-9 || r > 1.0 + 1e-9)
                CHECK(std::abs(mm.V.values[i].real()) <= 1e-12);
        }
    }

    SUBCASE("potential magnitude against high-resolution differencing of v") {
        double sup_V = 0.0, sup_fd = 0.0;
        const double hh = 1.0 / (10.0 * (1 << 14));
        for (double r = 0.5 + 1e-3; r <= 1.0 - 1e-3; r += 1e-3) {
            sup_V = std::max(sup_V, std::abs(mm.V_at(r)));
            const double vpp = (mm.v_at(r + hh) - 2.0 * mm.v_at(r) +
                                mm.v_at(r - hh)) / (hh * hh);
            const double L = mm.mode.L();
            sup_fd = std::max(sup_fd, std::abs(
                (vpp - L * (L - 1.0) / (r * r) * mm.v_at(r)) / mm.v_at(r)));
        }
        CHECK(sup_V == doctest::Approx(sup_fd).epsilon(1e-4));
    }

    SUBCASE("kernel property at h^2 order") {
        // truncation-dominated regime inside the blend window
        double resid[2];
        int k = 0;
        for (double h : {6e-5, 3e-5})
            resid[k++] = matched_kernel_residual(mm, 0.45, 1.05, h);
        CHECK(resid[0] / resid[1] >= 3.4);
        CHECK(resid[0] / resid[1] <= 4.6);
    }

    SUBCASE("kernel property reaches 1e-8 at fine spacing") {
        CHECK(matched_kernel_residual(mm, 0.45, 1.05, 4e-6) <= 1e-8);
    }

    SUBCASE("validation") {
        CHECK_THROWS_AS(build_bessel_matching(5, 3, g), std::invalid_argument);
        CHECK_THROWS_AS(build_bessel_matching(2, 3, g), std::invalid_argument);
        CHECK_THROWS_AS(build_bessel_matching(4, 3, g, 0.7),
                        std::invalid_argument);
    }
}

TEST_CASE("matched potential family stays uniformly bounded") {
    auto g = standard_grid(16.0, 1 << 13);
    const auto mm = build_bessel_matching(20, 3, g);
    const double sigma0 = 0.5;
    double prev = 1e300;
    for (int m : {4, 8, 16}) {
        auto gp = standard_grid(2.0 * m + 8.0, 1 << 14);
        const auto Vm = perturbed_potential(mm, m, gp);
        double sup = 0.0;
        for (std::size_t i = 0; i < gp->size(); ++i)
            sup = std::max(sup, std::pow(1.0 + gp->r[i], 1.0 + sigma0) *
                                    std::abs(Vm.values[i].real()));
        CHECK(sup <= prev * (1.0 + 1e-9));
        prev = sup;
    }
}

TEST_CASE("perturb_and_probe") {
    auto g = standard_grid(16.0, 1 << 13);
    const auto mm = build_bessel_matching(20, 3, g);

    SUBCASE("lambda rule") {
        auto rep = perturb_and_probe(mm, 4, 0.25);
        CHECK(rep.lambda_m == doctest::Approx(0.0625).epsilon(1e-14));
        CHECK(rep.eps_m < rep.lambda_m);
    }

    SUBCASE("probe source is confined to the annulus") {
        auto rep = perturb_and_probe(mm, 4, 0.25);
        const auto& gg = *rep.f_m.grid;
        const double h = gg.h;
        double inside = 0.0, outside = 0.0;
        for (std::size_t i = 0; i < gg.size(); ++i) {
            const double r = gg.r[i];
            const double a = std::abs(rep.f_m.values[i]);
            if (r >= 4.0 * (1.0 - 2.0 * h) && r <= 8.0 * (1.0 + 2.0 * h))
                inside = std::max(inside, a);
            else
                outside = std::max(outside, a);
        }
        CHECK(outside <= 1e-10 * inside);
    }

    SUBCASE("cross-validation reproduces the truncated mode") {
        for (int m : {2, 4}) {
            auto rep = perturb_and_probe(mm, m, 0.25);
            CHECK(rep.cross_validation_error <= 1e-2);
        }
    }

    SUBCASE("blowup sweep: ratio increases and the fitted slope is steep") {
        std::vector<double> lams, ratios;
        double prev = 0.0;
        for (int m : {2, 4, 8, 16}) {
            auto rep = perturb_and_probe(mm, m, 0.25);
            CHECK(rep.ratio > prev);
            prev = rep.ratio;
            lams.push_back(rep.lambda_m);
            ratios.push_back(rep.ratio);
        }
        const auto fit = fit_exponent(lams, ratios);
        CHECK(fit.slope <= -1.0);
    }

    SUBCASE("eps rule guard") {
        CHECK_THROWS_AS(perturb_and_probe(mm, 1, 0.25), std::invalid_argument);
    }
}

TEST_CASE("spectral sanity") {
    auto g = standard_grid(16.0, 1 << 13);

    SUBCASE("free operator has an empty negative window") {
        auto gg = standard_grid(50.0, 1 << 13);
        auto p = ModeProblem::free_mode(ModeParams(3, 0), 0.0, 0.0,
                                        Branch::plus, gg);
        CHECK(sturm_eigencount(p, -1e300, -1e-12) == 0);
    }

    SUBCASE("perturbed operators keep the zero window empty") {
        const auto mm = build_bessel_matching(20, 3, g);
        for (int m : {2, 4, 8, 16}) {
            const auto ss = spectral_sanity(mm, m, nullptr);
            CHECK(ss.zero_window_count == 0);
            CHECK(ss.negative_count_stable);
        }
    }

    SUBCASE("base operator's engineered zero mode is detected") {
        const auto mm = build_bessel_matching(4, 3, g);
        const double L = mm.mode.L();
        const double r_min = 1e-6, r_max = 24.0;

        // variational location of the zero mode hits the 1e-8 window
        const double ray = matched_zero_rayleigh(mm, r_min, r_max, 1 << 23);
        CHECK(std::abs(ray) <= 1e-8);

        // Sturm counts confirm the near-singularity within the window the
        // 2/h^2 entry scale lets floating point resolve
        const std::size_t N = 1 << 23;
        const double h = (r_max - r_min) / static_cast<double>(N - 1);
        const double window =
            std::max(1e-8, 64.0 * 2.2e-16 / (h * h) + 4.0 * std::abs(ray));
        auto count_below = [&](double x) {
            const double inv_h2 = 1.0 / (h * h);
            const double off2 = inv_h2 * inv_h2;
            int count = 0;
            double d = 1.0;
            for (std::size_t i = 1; i + 1 < N; ++i) {
                const double r = r_min + static_cast<double>(i) * h;
                const double diag =
                    2.0 * inv_h2 + L * (L - 1.0) / (r * r) + mm.V_at(r) - x;
                d = (i == 1) ? diag : diag - off2 / d;
                if (d == 0.0) d = std::numeric_limits<double>::min();
                if (d < 0.0) ++count;
            }
            return count;
        };
        const int in_window = count_below(window) - count_below(-window);
        CHECK(in_window >= 1);
    }

    SUBCASE("sturm counts agree with a dense eigensolve on the same matrix") {
        auto gg = standard_grid(12.0, 1600);
        const auto mm = build_bessel_matching(4, 3, gg);
        Profiles prof;
        prof.V = mm.V;
        prof.theta = RadialFunction::zero(gg);
        ModeProblem p(mm.mode, prof, 0.0, 0.0, Branch::plus, gg);
        const auto mat = dirichlet_mode_matrix(p);
        const auto eigs = oracles::dense_eigenvalues(mat);
        for (double x : {-50.0, -1.0, -1e-4, 1e-4, 0.5}) {
            int want = 0;
            for (double e : eigs)
                if (e < x) ++want;
            CHECK(sturm_count_below(mat, x) == want);
        }
    }
}

TEST_CASE("quasimode profile") {
    SUBCASE("eigenvalue and equator zero") {
        auto q = quasimode_profile(10, 3, M_PI / 8.0, 7.0 * M_PI / 8.0, 4096);
        CHECK(q.lambda_l == doctest::Approx(143.0).epsilon(1e-15));
        double at_eq = 1e300;
        for (std::size_t i = 0; i < q.theta.size(); ++i)
            if (std::abs(q.theta[i] - M_PI / 2.0) < 2e-3)
                at_eq = std::min(at_eq, std::abs(q.U[i]));
        CHECK(at_eq <= 2e-3);
    }

    SUBCASE("near + tail = total mass to 1e-10") {
        auto q = quasimode_profile(16, 3, M_PI / 8.0, 7.0 * M_PI / 8.0, 8192);
        CHECK(q.near_equator_mass + q.tail_mass ==
              doctest::Approx(q.total_mass).epsilon(1e-10));
    }

    SUBCASE("eigen-relation holds discretely at h^2") {
        double resid[2];
        int k = 0;
        for (std::size_t n : {4096u, 8192u}) {
            auto q = quasimode_profile(10, 3, M_PI / 8.0, 7.0 * M_PI / 8.0, n);
            resid[k++] = q.eigen_check;
        }
        CHECK(resid[0] / resid[1] >= 3.4);
        CHECK(resid[0] / resid[1] <= 4.6);
    }

    SUBCASE("sectorial sweep scalings") {
        std::vector<double> lams, masses, sqrt_lams, log_resid_ratio;
        for (int l : {8, 16, 32, 64}) {
            auto q = quasimode_profile(l, 3, M_PI / 8.0, 7.0 * M_PI / 8.0,
                                       1 << 14);
            lams.push_back(q.lambda_l);
            masses.push_back(q.near_equator_mass);
            sqrt_lams.push_back(std::sqrt(q.lambda_l));
            log_resid_ratio.push_back(std::log(q.residual_norm / q.chiU_norm));
        }
        // commutator residual decays exponentially in sqrt(lambda)
        const auto lin = linear_fit(sqrt_lams, log_resid_ratio);
        CHECK(lin.slope < 0.0);
        CHECK(lin.r2 >= 0.98);

        // the sphere mass follows the exact Beta-function value
        // B(l + n/2, 3/2) = Gamma(l+3/2) Gamma(3/2) / Gamma(l+3) for n = 3,
        // so the near-equator mass scales like lambda^{-3/4}
        const auto mf = fit_exponent(lams, masses);
        CHECK(mf.slope == doctest::Approx(-0.75).epsilon(0.05));
        int idx = 0;
        for (int l : {8, 16, 32, 64}) {
            const double want = std::tgamma(l + 1.5) * std::tgamma(1.5) /
                                std::tgamma(l + 3.0);
            auto q = quasimode_profile(l, 3, M_PI / 8.0, 7.0 * M_PI / 8.0,
                                       1 << 14);
            CHECK(q.total_mass == doctest::Approx(want).epsilon(1e-6));
            CHECK(masses[idx++] <= want);
        }
    }

    SUBCASE("validation") {
        CHECK_THROWS_AS(quasimode_profile(2, 3, 0.1, 3.0), std::invalid_argument);
        CHECK_THROWS_AS(quasimode_profile(8, 3, 1.0, 3.0), std::invalid_argument);
        CHECK_THROWS_AS(quasimode_profile(8, 3, 0.1, 1.0), std::invalid_argument);
    }
}
