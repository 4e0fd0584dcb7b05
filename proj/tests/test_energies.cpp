#include <doctest.h>

#include <cmath>

#include "lap/energies.hpp"
#include "lap/mode_util.hpp"
#include "lap/solver.hpp"
#include "oracles.hpp"

using namespace lap;

namespace {

ModeSolution manufactured_solution(GridPtr g, int n, int l, double lambda,
                                   double eps, Branch br,
                                   const std::function<cplx(double)>& fn) {
    ModeProblem p = ModeProblem::free_mode(ModeParams(n, l), lambda, eps, br, g);
    ModeSolution sol;
    sol.v = RadialFunction::sample(g, fn);
    sol.problem = p;
    sol.source = RadialFunction::zero(g);
    sol.bc_kind = BcKind::outgoing;
    return sol;
}

}  // namespace

TEST_CASE("spherical energies: trivial and model values") {
    auto g = standard_grid(40.0, 1 << 12);

    SUBCASE("zero solution gives zero series") {
        auto sol = manufactured_solution(g, 3, 0, 1.0, 0.0, Branch::plus,
                                         [](double) { return 0.0; });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        for (std::size_t i = 0; i < g->size(); ++i) {
            CHECK(s.M[i] == 0.0);
            CHECK(s.N[i] == 0.0);
            CHECK(s.G[i] == 0.0);
        }
    }

    SUBCASE("pure outgoing plane mode: N = F = 0, M = 1, R = lambda") {
        const double lambda = 2.0;
        const cplx z = std::sqrt(cplx(lambda, 0.0));
        auto sol = manufactured_solution(g, 3, 0, lambda, 0.0, Branch::plus,
                                         [&](double r) {
                                             return std::exp(cplx(0, 1) * z * r);
                                         });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        for (std::size_t i = 2; i + 2 < g->size(); ++i) {
            CHECK(s.M[i] == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(s.R[i] == doctest::Approx(lambda).epsilon(3e-4));
            CHECK(std::abs(s.F[i]) <= 1e-6);
            CHECK(s.N[i] <= 1e-6);
        }
    }

    SUBCASE("v = r^2 (L=2 mode, lambda=0): closed forms") {
        auto sol = manufactured_solution(standard_grid(10.0, 1 << 12), 3, 1, 0.0,
                                         0.0, Branch::plus,
                                         [](double r) { return r * r; });
        auto s = spherical_energies(sol, RadialFunction::zero(sol.v.grid));
        const auto& gg = *sol.v.grid;
        for (std::size_t i = 2; i + 2 < gg.size(); ++i) {
            const double r = gg.r[i];
            CHECK(s.M[i] == doctest::Approx(std::pow(r, 4)).epsilon(1e-12));
            CHECK(s.F[i] == doctest::Approx(2.0 * std::pow(r, 3)).epsilon(1e-6));
            CHECK(s.R[i] == doctest::Approx(4.0 * r * r).epsilon(1e-6));
            CHECK(s.A[i] == doctest::Approx(2.0 * r * r).epsilon(1e-12));
        }
    }
}

TEST_CASE("positivity, Cauchy-Schwarz and F = Re Z on computed solutions") {
    auto g = standard_grid(100.0, 1 << 13);
    auto p = ModeProblem::free_mode(ModeParams(3, 2), 1.5, 0.05, Branch::plus, g);
    auto f = smooth_bump(g, 5.0, 0.5, BumpNormalization::l2);
    auto sol = solve_resolvent_mode(p, to_v_form(f, 3), BcKind::outgoing);
    auto s = spherical_energies(sol, f);
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(s.M[i] >= 0.0);
        CHECK(s.R[i] >= 0.0);
        CHECK(s.A[i] >= 0.0);
        CHECK(s.N[i] >= 0.0);
        CHECK(std::abs(s.F[i]) <=
              std::sqrt(s.M[i] * s.R[i]) * (1.0 + 1e-12) + 1e-300);
        CHECK(s.F[i] == doctest::Approx(s.Z[i].real()).epsilon(1e-14));
    }
}

TEST_CASE("equations of motion in the model case") {
    const double lambda = 1.0;
    double resid78[2], resid80[2];
    int k = 0;
    for (std::size_t n : {1u << 13, 1u << 14}) {
        auto g = standard_grid(40.0, n);
        auto sol = manufactured_solution(g, 3, 0, lambda, 0.0, Branch::plus,
                                         [&](double r) {
                                             return std::sin(std::sqrt(lambda) * r);
                                         });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        auto mr = motion_residuals(s, sol.problem);
        double m78 = 0.0, m79 = 0.0, m80 = 0.0;
        for (std::size_t i = 8; i + 8 < g->size(); ++i) {
            m78 = std::max(m78, mr.eq_mass_flux[i]);
            m79 = std::max(m79, mr.eq_flux_balance[i]);
            m80 = std::max(m80, mr.eq_pohozaev[i]);
        }
        resid78[k] = m78;
        resid80[k] = m80;
        ++k;
        if (n == (1u << 14)) {
            CHECK(m78 <= 1e-4);
            CHECK(m79 <= 1e-4);
            CHECK(m80 <= 1e-4);
        }
    }
    // h^2 scaling under grid doubling
    CHECK(resid78[0] / resid78[1] >= 3.0);
    CHECK(resid80[0] / resid80[1] >= 3.0);
}

TEST_CASE("null-energy equation of motion holds for outgoing solves") {
    auto g = standard_grid(120.0, 1 << 14);
    auto p = ModeProblem::free_mode(ModeParams(3, 0), 1.0, 0.0, Branch::plus, g);
    auto f = smooth_bump(g, 5.0, 0.25, BumpNormalization::l2);
    auto sol = solve_resolvent_mode(p, to_v_form(f, 3), BcKind::outgoing);
    auto s = spherical_energies(sol, f);
    auto mr = motion_residuals(s, p);
    // beyond the source the model-case (111) is exact up to h^2
    double worst = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i)
        if (g->r[i] > 8.0 && g->r[i] < 100.0)
            worst = std::max(worst, mr.eq_null_energy[i]);
    CHECK(worst <= 1e-4);

    // zero solution: all residuals vanish
    auto zsol = manufactured_solution(g, 3, 0, 1.0, 0.0, Branch::plus,
                                      [](double) { return 0.0; });
    auto zs = spherical_energies(zsol, RadialFunction::zero(g));
    auto zmr = motion_residuals(zs, zsol.problem);
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(zmr.eq_mass_flux[i] == 0.0);
        CHECK(zmr.eq_pohozaev[i] == 0.0);
    }
}

TEST_CASE("dimensionless variables") {
    auto g = standard_grid(40.0, 1 << 12);

    SUBCASE("no forcing: starred fluxes equal the raw ones") {
        auto sol = manufactured_solution(g, 3, 1, 1.0, 0.0, Branch::plus,
                                         [](double r) { return r * r; });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        auto d = dimensionless(s, 0.0, 1.0, 1.0);
        for (std::size_t i = 0; i < g->size(); ++i) {
            CHECK(d.F_star[i] == doctest::Approx(s.F[i]));
            CHECK(d.P_star[i] ==
                  doctest::Approx(1.0 * s.M[i] + s.R[i] - s.A[i]));
        }
    }

    SUBCASE("outgoing plane mode: alpha = 0, beta = -2 lambda r^2") {
        const double lambda = 1.7;
        const cplx z = std::sqrt(cplx(lambda, 0.0));
        auto sol = manufactured_solution(g, 3, 0, lambda, 0.0, Branch::plus,
                                         [&](double r) {
                                             return std::exp(cplx(0, 1) * z * r);
                                         });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        auto d = dimensionless(s, 0.0, lambda, 1.0);
        for (std::size_t i = 4; i + 4 < g->size(); ++i) {
            const double r = g->r[i];
            CHECK(std::abs(d.alpha[i]) <= 1e-4 * r);
            CHECK(d.beta[i] ==
                  doctest::Approx(-2.0 * lambda * r * r).epsilon(1e-4));
        }
    }

    SUBCASE("decaying Bessel-limit mode: alpha = 1") {
        // v = r^{-L+1} with L = 2, lambda = 0
        auto sol = manufactured_solution(g, 3, 1, 0.0, 0.0, Branch::plus,
                                         [](double r) { return 1.0 / r; });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        auto d = dimensionless(s, 0.0, 0.0, 1.0);
        for (std::size_t i = 4; i + 4 < g->size(); ++i) {
            if (g->r[i] < 1.0) continue;  // (h/r)^2 derivative error below
            CHECK(d.alpha[i] == doctest::Approx(1.0).epsilon(1e-3));
        }
    }

    SUBCASE("recomputable by construction where M > 0") {
        auto sol = manufactured_solution(g, 3, 1, 0.5, 0.0, Branch::plus,
                                         [](double r) { return r; });
        auto f = smooth_bump(g, 5.0, 1.0, BumpNormalization::l2);
        auto s = spherical_energies(sol, f);
        const double delta = 0.3;
        auto d = dimensionless(s, delta, 0.5, 2.0);
        for (std::size_t i = 10; i < g->size(); i += 97) {
            if (!d.valid[i]) continue;
            const double r = g->r[i];
            CHECK(d.mu[i] == doctest::Approx(r * delta / s.M[i]));
            CHECK(d.alpha[i] == doctest::Approx(-r * d.F_star[i] / s.M[i]));
            CHECK(d.beta[i] == doctest::Approx(-r * r * d.P_star[i] / s.M[i]));
        }
    }
}

TEST_CASE("dichotomy classifier") {
    SUBCASE("barrier-dominated mode grows exponentially inward") {
        // lambda = 0.01, L = 10 (n=3, l=9): source at r=2, window [5, 80]
        auto g = standard_grid(120.0, 1 << 14);
        auto p = ModeProblem::free_mode(ModeParams(3, 9), 0.01, 0.0,
                                        Branch::plus, g);
        auto f = smooth_bump(g, 2.0, 0.25, BumpNormalization::l2);
        auto sol = solve_resolvent_mode(p, to_v_form(f, 3), BcKind::outgoing);
        auto s = spherical_energies(sol, f);
        auto v = classify_dichotomy(s, 0.01, 1.0, 5.0, 8.0, 80.0);
        CHECK(v.kind == DichotomyVerdict::Kind::exponential_growth);
        CHECK(v.measured_rate >= 8.0 * (1.0 + 0.1));

        // oracle: independent high-accuracy integration of the decaying
        // branch gives the same log-log slope on the window
        const double L = ModeParams(3, 9).L();
        for (double r : {8.0, 16.0, 32.0}) {
            const double want = 2.0 * std::sqrt(L * (L - 1.0) - 0.01 * r * r);
            std::size_t i = 0;
            while (g->r[i] < r) ++i;
            const double h = g->h;
            const double got =
                -r * (s.M[i + 1] - s.M[i - 1]) / (2.0 * h) / s.M[i];
            CHECK(got == doctest::Approx(want).epsilon(0.12));
        }
    }

    SUBCASE("propagating mode stays bounded") {
        auto g = standard_grid(700.0, 1 << 15);
        auto p = ModeProblem::free_mode(ModeParams(3, 0), 4.0, 0.0,
                                        Branch::plus, g);
        auto f = smooth_bump(g, 2.0, 0.25, BumpNormalization::l2);
        auto sol = solve_resolvent_mode(p, to_v_form(f, 3), BcKind::outgoing);
        auto s = spherical_energies(sol, f);
        const double delta =
            weighted_norm(to_v_form(f, 3), WeightSpec(0, 0.75), p.mode);
        auto v = classify_dichotomy(s, 4.0, delta, 16.0, 8.0, 160.0);
        CHECK(v.kind == DichotomyVerdict::Kind::bounded);
    }

    SUBCASE("constant mass is bounded") {
        auto g = standard_grid(200.0, 1 << 12);
        auto sol = manufactured_solution(g, 3, 0, 4.0, 0.0, Branch::plus,
                                         [](double) { return 0.05; });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        auto v = classify_dichotomy(s, 4.0, 1.0, 16.0, 8.0, 50.0);
        CHECK(v.kind == DichotomyVerdict::Kind::bounded);
    }

    SUBCASE("window validation") {
        auto g = standard_grid(100.0, 1 << 11);
        auto sol = manufactured_solution(g, 3, 0, 1.0, 0.0, Branch::plus,
                                         [](double) { return 1.0; });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        CHECK_THROWS_AS(classify_dichotomy(s, 1.0, 1.0, 16.0, 8.0, 500.0),
                        std::invalid_argument);
    }
}

TEST_CASE("dichotomy consistency with the barrier heuristic") {
    // ExponentialGrowth whenever lambda r^2 < L(L-1)/2 throughout the window,
    // Bounded whenever lambda r^2 > 3 L(L-1)/2 throughout.
    auto g = standard_grid(300.0, 1 << 14);
    auto f = smooth_bump(g, 2.0, 0.25, BumpNormalization::l2);

    {
        // barrier case on [5, 50]: lambda r^2 <= 0.01*2500 = 25 < 36/2 = 45/...
        auto p = ModeProblem::free_mode(ModeParams(3, 9), 0.005, 0.0,
                                        Branch::plus, g);
        auto sol = solve_resolvent_mode(p, to_v_form(f, 3), BcKind::outgoing);
        auto s = spherical_energies(sol, f);
        const double L = p.mode.L();
        bool barrier = true;
        for (double r = 5.0; r <= 50.0; r += 1.0)
            barrier = barrier && (0.005 * r * r < L * (L - 1.0) * 0.5);
        REQUIRE(barrier);
        auto v = classify_dichotomy(s, 0.005, 1.0, 5.0, 8.0, 50.0);
        CHECK(v.kind == DichotomyVerdict::Kind::exponential_growth);
    }
    {
        // propagating case: lambda r^2 >= 9*256 > 1.5*L(L-1) = 3 on [16,160]
        auto p = ModeProblem::free_mode(ModeParams(3, 1), 9.0, 0.0,
                                        Branch::plus, g);
        auto sol = solve_resolvent_mode(p, to_v_form(f, 3), BcKind::outgoing);
        auto s = spherical_energies(sol, f);
        const double delta =
            weighted_norm(to_v_form(f, 3), WeightSpec(0, 0.75), p.mode);
        auto v = classify_dichotomy(s, 9.0, delta, 16.0, 8.0, 70.0);
        CHECK(v.kind == DichotomyVerdict::Kind::bounded);
    }
}

TEST_CASE("pohozaev flux bound") {
    auto g = standard_grid(120.0, 1 << 13);

    SUBCASE("zero solution: zero flux, zero constants") {
        auto sol = manufactured_solution(g, 3, 0, 1.0, 0.0, Branch::plus,
                                         [](double) { return 0.0; });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        auto pm = pohozaev_bound_check(s, 1.0, 0.0, 0.25, 10.0, 100.0);
        CHECK(pm.K1 == 0.0);
        CHECK_FALSE(pm.flagged);
        for (double m : pm.margin) CHECK(m >= -1e-300);
    }

    SUBCASE("pure plane mode with delta = 0 is flagged") {
        const double lambda = 1.0;
        auto sol = manufactured_solution(g, 3, 0, lambda, 0.0, Branch::plus,
                                         [&](double r) {
                                             return std::exp(cplx(0, 1) *
                                                             std::sqrt(lambda) * r);
                                         });
        auto s = spherical_energies(sol, RadialFunction::zero(g));
        auto pm = pohozaev_bound_check(s, lambda, 0.0, 0.25, 10.0, 100.0);
        // P = 2 lambda for the plane mode
        for (std::size_t i = 4; i + 4 < g->size(); ++i)
            CHECK(pm.P[i] == doctest::Approx(2.0 * lambda).epsilon(1e-4));
        CHECK(pm.flagged);
    }

    SUBCASE("decaying barrier mode satisfies the bound with small constants") {
        auto p = ModeProblem::free_mode(ModeParams(3, 9), 0.01, 0.0,
                                        Branch::plus, g);
        auto f = smooth_bump(g, 2.0, 0.25, BumpNormalization::l2);
        auto sol = solve_resolvent_mode(p, to_v_form(f, 3), BcKind::outgoing);
        auto s = spherical_energies(sol, f);
        const double delta =
            weighted_norm(to_v_form(f, 3), WeightSpec(0, 0.75), p.mode);
        auto pm = pohozaev_bound_check(s, 0.01, delta, 0.25, 5.0, 80.0);
        CHECK_FALSE(pm.flagged);
        for (std::size_t i = 0; i < g->size(); ++i)
            if (g->r[i] >= 5.0 && g->r[i] <= 80.0)
                CHECK(pm.margin[i] >= -1e-10);
    }
}
