#pragma once

#include <complex>
#include <vector>

#include "lap/grid.hpp"

namespace lap {

// Complex tridiagonal system. lower[i] couples row i to i-1 (lower[0] unused),
// upper[i] couples row i to i+1 (upper[n-1] unused).
struct Tridiag {
    std::vector<cplx> lower, diag, upper;

    std::size_t size() const { return diag.size(); }
    std::vector<cplx> apply(const std::vector<cplx>& x) const;
};

struct TridiagSolveInfo {
    bool used_pivoting = false;
    double min_pivot_ratio = 1.0;  // smallest |pivot| / matrix scale seen
};

// Thomas elimination with a partial-pivot banded fallback on breakdown.
// Throws std::runtime_error on a numerically singular system.
std::vector<cplx> solve_tridiag(const Tridiag& a, const std::vector<cplx>& rhs,
                                TridiagSolveInfo* info = nullptr);

}  // namespace lap
