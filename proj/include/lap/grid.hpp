#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lap {

using cplx = std::complex<double>;

// Uniform radial grid on [r_min, r_max], r_min > 0. The first node sits one
// spacing away from the coordinate singularity at r = 0; regularity there is
// enforced by the boundary condition of the mode operator, not by the mesh.
struct RadialGrid {
    std::vector<double> r;
    double h = 0.0;

    std::size_t size() const { return r.size(); }
    double r_min() const { return r.front(); }
    double r_max() const { return r.back(); }

    // Trapezoid weight of node i.
    double weight(std::size_t i) const {
        return (i == 0 || i + 1 == r.size()) ? 0.5 * h : h;
    }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double r_min, double r_max, std::size_t n);

// Grid on [r_max/n, r_max] with spacing exactly r_max/n.
GridPtr standard_grid(double r_max, std::size_t n);

// Complex samples over a shared grid.
struct RadialFunction {
    GridPtr grid;
    std::vector<cplx> values;

    RadialFunction() = default;
    RadialFunction(GridPtr g, std::vector<cplx> v);

    std::size_t size() const { return values.size(); }
    const std::vector<double>& radii() const { return grid->r; }

    static RadialFunction zero(GridPtr g);

    template <class F>
    static RadialFunction sample(GridPtr g, F&& f) {
        std::vector<cplx> vals(g->size());
        for (std::size_t i = 0; i < g->size(); ++i) vals[i] = cplx(f(g->r[i]));
        return RadialFunction(std::move(g), std::move(vals));
    }

    bool is_real(double tol = 0.0) const;
    double max_abs() const;
};

// Centered differences, second-order one-sided at the endpoints.
std::vector<cplx> derivative(const RadialFunction& f);
std::vector<cplx> second_derivative(const RadialFunction& f);

// Trapezoid quadrature of complex samples against the grid.
cplx integrate(const RadialGrid& g, const std::vector<cplx>& vals);
double integrate(const RadialGrid& g, const std::vector<double>& vals);

void require(bool cond, const std::string& msg);

}  // namespace lap
