#include "lap/solver.hpp"

#include <cmath>

namespace lap {

namespace {

Tridiag assemble(const ModeProblem& p, BcKind bc, bool with_z) {
    const auto& g = *p.grid;
    const std::size_t n = g.size();
    require(n >= 3, "assemble_mode_operator: grid too small");
    require(g.r_min() > 0.0, "assemble_mode_operator: r_min must be positive");

    const double h = g.h;
    const double L = p.mode.L();
    const double cf = p.mode.centrifugal();
    const cplx z2 = with_z ? p.z_squared() : cplx(0.0);
    const cplx z = p.z();

    Tridiag a;
    a.lower.assign(n, 0.0);
    a.diag.assign(n, 0.0);
    a.upper.assign(n, 0.0);

    auto coeff = [&](std::size_t i) {
        const double r = g.r[i];
        const double th = p.profiles.theta.values[i].real();
        return cplx(cf / (r * r) + p.profiles.V.values[i].real() +
                    (p.mode.n - 1) * th / r) - z2;
    };

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double th = p.profiles.theta.values[i].real();
        a.lower[i] = -1.0 / (h * h) + th / (2.0 * h);
        a.upper[i] = -1.0 / (h * h) - th / (2.0 * h);
        a.diag[i] = 2.0 / (h * h) + coeff(i);
    }

    // Regularity row: ghost v_{-1} = v_1 - 2 h (L/r_0) v_0.
    {
        const double r0 = g.r[0];
        const double th = p.profiles.theta.values[0].real();
        const double kap = L / r0;
        a.upper[0] = -2.0 / (h * h);
        a.diag[0] = 2.0 / (h * h) + 2.0 * kap / h - th * kap + coeff(0);
    }

    const std::size_t e = n - 1;
    if (bc == BcKind::dirichlet) {
        a.lower[e] = 0.0;
        a.diag[e] = 1.0;
    } else {
        // Radiation row: ghost v_N = v_{N-2} + 2 h beta v_{N-1},
        // beta = +iz outgoing, -iz incoming.
        const cplx beta = (bc == BcKind::outgoing ? cplx(0.0, 1.0) : cplx(0.0, -1.0)) * z;
        const double th = p.profiles.theta.values[e].real();
        a.lower[e] = -2.0 / (h * h);
        a.diag[e] = 2.0 / (h * h) - 2.0 * beta / h - th * beta + coeff(e);
    }
    return a;
}

}  // namespace

Tridiag assemble_mode_operator(const ModeProblem& p, BcKind bc) {
    return assemble(p, bc, true);
}

Tridiag assemble_mode_operator_static(const ModeProblem& p, BcKind bc) {
    return assemble(p, bc, false);
}

ModeSolution solve_resolvent_mode(const ModeProblem& problem,
                                  const RadialFunction& g, BcKind bc) {
    require(g.grid->size() == problem.grid->size(),
            "solve_resolvent_mode: source grid mismatch");
    if (problem.epsilon == 0.0)
        require(bc == BcKind::outgoing || bc == BcKind::incoming,
                "solve_resolvent_mode: epsilon = 0 requires an explicit "
                "outgoing or incoming boundary condition");

    const auto a = assemble_mode_operator(problem, bc);
    std::vector<cplx> rhs = g.values;
    if (bc == BcKind::dirichlet) rhs.back() = 0.0;

    const auto x = solve_tridiag(a, rhs);

    // Verify the linear solve over interior rows.
    const auto ax = a.apply(x);
    double gmax = 0.0;
    for (const auto& s : g.values) gmax = std::max(gmax, std::abs(s));
    double resid = 0.0;
    for (std::size_t i = 1; i + 1 < x.size(); ++i)
        resid = std::max(resid, std::abs(ax[i] - rhs[i]));
    resid /= (1.0 + gmax);

    ModeSolution sol;
    sol.v = RadialFunction(problem.grid, x);
    sol.problem = problem;
    sol.source = g;
    sol.discrete_residual = resid;
    sol.bc_kind = bc;
    return sol;
}

EpsilonLadder epsilon_ladder(const ModeProblem& tmpl, const RadialFunction& g,
                             const std::vector<double>& eps_list, double sigma) {
    require(!eps_list.empty(), "epsilon_ladder: empty epsilon list");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        require(eps_list[i] > 0.0, "epsilon_ladder: epsilons must be positive");
        if (i > 0)
            require(eps_list[i] < eps_list[i - 1],
                    "epsilon_ladder: epsilons must be strictly decreasing");
    }

    EpsilonLadder out;
    for (double eps : eps_list) {
        ModeProblem p = tmpl;
        p.epsilon = eps;
        BcKind bc = tmpl.branch == Branch::plus ? BcKind::outgoing : BcKind::incoming;
        out.rungs.push_back({eps, solve_resolvent_mode(p, g, bc)});
    }

    const WeightSpec w(0, -0.5 - sigma);
    for (std::size_t i = 0; i + 1 < out.rungs.size(); ++i) {
        const auto& va = out.rungs[i].solution.v;
        const auto& vb = out.rungs[i + 1].solution.v;
        std::vector<cplx> d(va.size());
        for (std::size_t k = 0; k < va.size(); ++k)
            d[k] = va.values[k] - vb.values[k];
        out.cauchy_differences.push_back(
            weighted_norm(RadialFunction(va.grid, std::move(d)), w, tmpl.mode));
    }

    if (!out.cauchy_differences.empty()) {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < out.cauchy_differences.size(); ++i)
            ok = ok && out.cauchy_differences[i + 1] * 1.5 <= out.cauchy_differences[i];
        out.converged = ok;
    }
    return out;
}

}  // namespace lap
