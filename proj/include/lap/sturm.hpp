#pragma once

#include "lap/problem.hpp"

namespace lap {

// Real symmetric tridiagonal form of the Dirichlet mode operator on the
// interior nodes (v = 0 at both grid ends). A nonzero theta is folded in by
// the similarity transform that equalizes the off-diagonal products.
struct SymmetricTridiag {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples i and i+1, size = diag.size()-1
};

SymmetricTridiag dirichlet_mode_matrix(const ModeProblem& problem);

// Number of eigenvalues strictly below x, by Sturm sign counts.
int sturm_count_below(const SymmetricTridiag& m, double x);

// Number of Dirichlet eigenvalues in the closed interval [a, b]. Use
// -infinity for a to count the negative spectrum.
int sturm_eigencount(const ModeProblem& problem, double a, double b);

}  // namespace lap
