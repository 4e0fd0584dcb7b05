#pragma once

#include "lap/norms.hpp"
#include "lap/profiles.hpp"

namespace lap {

enum class Branch { plus, minus };
enum class BcKind { outgoing, incoming, dirichlet };

inline double branch_sign(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

// One angular mode's Helmholtz problem at energy lambda +- i epsilon.
// z is the principal square root of lambda +- i epsilon (Re z > 0).
struct ModeProblem {
    ModeParams mode;
    Profiles profiles;
    double lambda = 1.0;
    double epsilon = 0.0;
    Branch branch = Branch::plus;
    GridPtr grid;

    ModeProblem() = default;
    ModeProblem(ModeParams m, Profiles p, double lam, double eps, Branch br,
                GridPtr g);

    cplx z() const;
    cplx z_squared() const { return cplx(lambda, branch_sign(branch) * epsilon); }

    // Far-boundary adequacy of the leading-order outgoing Robin condition:
    // r_max >= max(50/sqrt(max(lambda, 1e-3)), 10 L / sqrt(lambda)).
    bool boundary_dominated() const;

    static ModeProblem free_mode(ModeParams m, double lam, double eps, Branch br,
                                 GridPtr g);
};

struct ModeSolution {
    RadialFunction v;
    ModeProblem problem;
    RadialFunction source;  // mode-reduced right-hand side g = r^{(n-1)/2} f
    double discrete_residual = 0.0;
    BcKind bc_kind = BcKind::outgoing;
};

}  // namespace lap
