#include "lap/mode_util.hpp"

#include <cmath>

#include "lap/cutoff.hpp"
#include "lap/norms.hpp"

namespace lap {

RadialFunction to_v_form(const RadialFunction& u_fn, int n) {
    const double a = 0.5 * (n - 1);
    std::vector<cplx> vals(u_fn.size());
    for (std::size_t i = 0; i < u_fn.size(); ++i)
        vals[i] = u_fn.values[i] * std::pow(u_fn.grid->r[i], a);
    return RadialFunction(u_fn.grid, std::move(vals));
}

RadialFunction to_u_form(const RadialFunction& v_fn, int n) {
    const double a = 0.5 * (n - 1);
    std::vector<cplx> vals(v_fn.size());
    for (std::size_t i = 0; i < v_fn.size(); ++i)
        vals[i] = v_fn.values[i] * std::pow(v_fn.grid->r[i], -a);
    return RadialFunction(v_fn.grid, std::move(vals));
}

RadialFunction sommerfeld_defect_vform(const RadialFunction& v, int n, cplx z,
                                       double sign) {
    const auto vr = derivative(v);
    const double a = 0.5 * (n - 1);
    std::vector<cplx> vals(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        vals[i] = vr[i] - (a / v.grid->r[i]) * v.values[i] -
                  sign * cplx(0.0, 1.0) * z * v.values[i];
    return RadialFunction(v.grid, std::move(vals));
}

RadialFunction smooth_bump(GridPtr g, double center, double width,
                           BumpNormalization norm) {
    require(width > 0.0, "smooth_bump: width must be positive");
    std::vector<cplx> vals(g->size());
    for (std::size_t i = 0; i < g->size(); ++i)
        vals[i] = smooth_box(g->r[i], center - width, center + width, width);
    RadialFunction f(g, std::move(vals));
    double scale;
    if (norm == BumpNormalization::l1) {
        scale = integrate(*g, f.values).real();
    } else {
        scale = l2_norm(f);
    }
    require(scale > 0.0, "smooth_bump: bump not resolved by the grid");
    for (auto& x : f.values) x /= scale;
    return f;
}

}  // namespace lap
