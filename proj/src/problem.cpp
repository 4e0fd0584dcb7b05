#include "lap/problem.hpp"

#include <cmath>

namespace lap {

ModeProblem::ModeProblem(ModeParams m, Profiles p, double lam, double eps,
                         Branch br, GridPtr g)
    : mode(m), profiles(std::move(p)), lambda(lam), epsilon(eps), branch(br),
      grid(std::move(g)) {
    require(epsilon >= 0.0, "ModeProblem: epsilon must be >= 0");
    require(grid != nullptr, "ModeProblem: null grid");
    require(profiles.V.grid->size() == grid->size() &&
                profiles.theta.grid->size() == grid->size(),
            "ModeProblem: grid/profile length mismatch");
}

cplx ModeProblem::z() const {
    const cplx zz = std::sqrt(z_squared());
    return zz.real() >= 0.0 ? zz : -zz;
}

bool ModeProblem::boundary_dominated() const {
    const double lam_floor = 1e-3;
    const double need = std::max(50.0 / std::sqrt(std::max(lambda, lam_floor)),
                                 10.0 * mode.L() / std::sqrt(std::max(lambda, lam_floor)));
    return grid->r_max() < need;
}

ModeProblem ModeProblem::free_mode(ModeParams m, double lam, double eps,
                                   Branch br, GridPtr g) {
    Profiles p = Profiles::free_space(g);
    return ModeProblem(m, std::move(p), lam, eps, br, std::move(g));
}

}  // namespace lap
