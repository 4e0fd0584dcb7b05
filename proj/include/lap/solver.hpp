#pragma once

#include <optional>

#include "lap/problem.hpp"
#include "lap/tridiag.hpp"

namespace lap {

// Second-order centered discretization of
//   -v_rr - theta v_r + [ L(L-1)/r^2 + V + (n-1) theta / r - z^2 ] v
// with ghost-point boundary rows:
//   row 0:    regularity Robin v_r = (L/r_min) v   (v ~ r^L at the origin)
//   row N-1:  outgoing Robin v_r = i z v (incoming flips the sign), or a
//             Dirichlet row v = 0.
Tridiag assemble_mode_operator(const ModeProblem& problem, BcKind bc);

// Same operator with the z^2 term removed (evolution generator / eigenprobe).
Tridiag assemble_mode_operator_static(const ModeProblem& problem, BcKind bc);

ModeSolution solve_resolvent_mode(const ModeProblem& problem,
                                  const RadialFunction& g, BcKind bc);

struct LadderRung {
    double epsilon;
    ModeSolution solution;
};

struct EpsilonLadder {
    std::vector<LadderRung> rungs;
    // ||u_{e_i} - u_{e_{i+1}}||_{H^{0,-1/2-sigma}} per consecutive pair.
    std::vector<double> cauchy_differences;
    std::optional<bool> converged;  // empty when fewer than 2 rungs

    const ModeSolution& final_rung() const { return rungs.back().solution; }
};

// Solves at each epsilon in the (strictly decreasing, positive) list; flags
// convergence when differences decrease monotonically by >= 1.5x per rung.
EpsilonLadder epsilon_ladder(const ModeProblem& problem_template,
                             const RadialFunction& g,
                             const std::vector<double>& eps_list,
                             double sigma = 0.25);

}  // namespace lap
