#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lap/counterexamples.hpp"
#include "lap/csv.hpp"
#include "lap/cutoff.hpp"
#include "lap/energies.hpp"
#include "lap/evolution.hpp"
#include "lap/experiments.hpp"
#include "lap/fit.hpp"
#include "lap/gauges.hpp"
#include "lap/identities.hpp"
#include "lap/mode_util.hpp"
#include "lap/norms.hpp"
#include "lap/solver.hpp"

namespace py = pybind11;
using namespace lap;

// pybind holders want a non-const element type; grids are immutable through
// this API, so shedding the const at the boundary is safe
using PyGrid = std::shared_ptr<RadialGrid>;

namespace {

PyGrid unconst(GridPtr g) { return std::const_pointer_cast<RadialGrid>(g); }

BcKind bc_from_string(const std::string& s) {
    if (s == "outgoing") return BcKind::outgoing;
    if (s == "incoming") return BcKind::incoming;
    if (s == "dirichlet") return BcKind::dirichlet;
    throw std::invalid_argument("unknown boundary kind: " + s);
}

Branch branch_from_string(const std::string& s) {
    if (s == "plus") return Branch::plus;
    if (s == "minus") return Branch::minus;
    throw std::invalid_argument("unknown branch: " + s);
}

EstimateId estimate_from_string(const std::string& s) {
    for (auto id : estimate_catalog())
        if (s == estimate_name(id)) return id;
    throw std::invalid_argument("unknown estimate id: " + s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Radial limiting-absorption laboratory: per-mode Bessel-type "
              "resolvent solves, spherical energies, identity residuals, "
              "counterexample constructions, and mode evolution.";

    py::class_<RadialGrid, PyGrid>(m, "RadialGrid")
        .def_property_readonly("r", [](const RadialGrid& g) { return g.r; })
        .def_property_readonly("h", [](const RadialGrid& g) { return g.h; })
        .def("__len__", &RadialGrid::size);
    m.def("make_grid",
          [](double a, double b, std::size_t n) {
              return unconst(make_grid(a, b, n));
          },
          py::arg("r_min"), py::arg("r_max"), py::arg("n"));
    m.def("standard_grid",
          [](double rmax, std::size_t n) {
              return unconst(standard_grid(rmax, n));
          },
          py::arg("r_max"), py::arg("n"));

    py::class_<RadialFunction>(m, "RadialFunction")
        .def(py::init([](GridPtr g, std::vector<cplx> vals) {
                 return RadialFunction(std::move(g), std::move(vals));
             }),
             py::arg("grid"), py::arg("values"))
        .def_property_readonly(
            "values", [](const RadialFunction& f) { return f.values; })
        .def_property_readonly(
            "grid", [](const RadialFunction& f) { return unconst(f.grid); })
        .def("max_abs", &RadialFunction::max_abs);
    m.def("zero_function", &RadialFunction::zero, py::arg("grid"));
    m.def("smooth_bump",
          [](GridPtr g, double c, double w, const std::string& norm) {
              return smooth_bump(std::move(g), c, w,
                                 norm == "l1" ? BumpNormalization::l1
                                              : BumpNormalization::l2);
          },
          py::arg("grid"), py::arg("center"), py::arg("width"),
          py::arg("norm") = "l2");
    m.def("to_v_form", &to_v_form, py::arg("f"), py::arg("n"));
    m.def("to_u_form", &to_u_form, py::arg("v"), py::arg("n"));

    m.def("smooth_step", &smooth_step, py::arg("t"));

    py::class_<ModeParams>(m, "ModeParams")
        .def(py::init<int, int>(), py::arg("n"), py::arg("l"))
        .def_readonly("n", &ModeParams::n)
        .def_readonly("l", &ModeParams::l)
        .def_property_readonly("L", &ModeParams::L);

    py::class_<WeightSpec>(m, "WeightSpec")
        .def(py::init<int, double>(), py::arg("s"), py::arg("m"));
    m.def("weighted_norm",
          [](const RadialFunction& v, const WeightSpec& w, const ModeParams& mp,
             double r_lo, double r_hi) {
              return weighted_norm(v, w, mp, r_lo, r_hi);
          },
          py::arg("v"), py::arg("weight"), py::arg("mode"),
          py::arg("r_lo") = 0.0, py::arg("r_hi") = 1e300);

    py::class_<Profiles>(m, "Profiles")
        .def(py::init([](RadialFunction V, RadialFunction theta, double A,
                         double sigma0) {
                 Profiles p;
                 p.V = std::move(V);
                 p.theta = std::move(theta);
                 p.A = A;
                 p.sigma0 = sigma0;
                 return p;
             }),
             py::arg("V"), py::arg("theta"), py::arg("A") = 1.0,
             py::arg("sigma0") = 0.5)
        .def("potential_decay_ok", &Profiles::potential_decay_ok)
        .def("theta_decay_ok", &Profiles::theta_decay_ok);
    m.def("free_profiles", &Profiles::free_space, py::arg("grid"),
          py::arg("A") = 1.0, py::arg("sigma0") = 0.5);

    py::class_<ModeProblem>(m, "ModeProblem")
        .def(py::init([](ModeParams mp, Profiles prof, double lam, double eps,
                         const std::string& branch, GridPtr g) {
                 return ModeProblem(mp, std::move(prof), lam, eps,
                                    branch_from_string(branch), std::move(g));
             }),
             py::arg("mode"), py::arg("profiles"), py::arg("lam"),
             py::arg("eps"), py::arg("branch"), py::arg("grid"))
        .def_property_readonly("z", &ModeProblem::z)
        .def("boundary_dominated", &ModeProblem::boundary_dominated);
    m.def("free_mode_problem",
          [](int n, int l, double lam, double eps, const std::string& branch,
             GridPtr g) {
              return ModeProblem::free_mode(ModeParams(n, l), lam, eps,
                                            branch_from_string(branch),
                                            std::move(g));
          },
          py::arg("n"), py::arg("l"), py::arg("lam"), py::arg("eps"),
          py::arg("branch"), py::arg("grid"));

    py::class_<ModeSolution>(m, "ModeSolution")
        .def_readonly("v", &ModeSolution::v)
        .def_readonly("source", &ModeSolution::source)
        .def_readonly("discrete_residual", &ModeSolution::discrete_residual);
    m.def("solve_resolvent_mode",
          [](const ModeProblem& p, const RadialFunction& g,
             const std::string& bc) {
              return solve_resolvent_mode(p, g, bc_from_string(bc));
          },
          py::arg("problem"), py::arg("g"), py::arg("bc") = "outgoing");

    m.def("epsilon_ladder",
          [](const ModeProblem& tmpl, const RadialFunction& g,
             std::vector<double> eps, double sigma) {
              auto lad = epsilon_ladder(tmpl, g, eps, sigma);
              py::dict out;
              out["cauchy_differences"] = lad.cauchy_differences;
              out["converged"] = lad.converged.has_value()
                                     ? py::cast(*lad.converged)
                                     : py::none().cast<py::object>();
              out["final"] = lad.final_rung();
              return out;
          },
          py::arg("problem"), py::arg("g"), py::arg("eps_list"),
          py::arg("sigma") = 0.25);

    m.def("estimate_gauge",
          [](const ModeSolution& sol, const RadialFunction& f,
             const std::string& id, double sigma) {
              GaugeConfig gc;
              gc.sigma = sigma;
              auto rep = estimate_gauge(sol, f, estimate_from_string(id), gc);
              py::dict d;
              d["estimate_id"] = estimate_name(rep.estimate_id);
              d["lhs"] = rep.lhs;
              d["rhs_factor"] = rep.rhs_factor;
              d["ratio"] = rep.ratio;
              d["ratio_defined"] = rep.ratio_defined;
              return d;
          },
          py::arg("sol"), py::arg("f"), py::arg("estimate_id"),
          py::arg("sigma") = 0.25);
    m.def("estimate_catalog", [] {
        std::vector<std::string> out;
        for (auto id : estimate_catalog()) out.push_back(estimate_name(id));
        return out;
    });

    m.def("sturm_eigencount", &sturm_eigencount, py::arg("problem"),
          py::arg("a"), py::arg("b"));

    m.def("spherical_energies",
          [](const ModeSolution& sol, const RadialFunction& f) {
              auto s = spherical_energies(sol, f);
              py::dict d;
              d["r"] = s.grid->r;
              d["M"] = s.M;
              d["R"] = s.R;
              d["A"] = s.A;
              d["F"] = s.F;
              d["N"] = s.N;
              d["G"] = s.G;
              return d;
          },
          py::arg("sol"), py::arg("f"));

    m.def("classify_dichotomy",
          [](const ModeSolution& sol, const RadialFunction& f, double lam,
             double delta, double C1, double C2, double r_cap) {
              auto s = spherical_energies(sol, f);
              auto v = classify_dichotomy(s, lam, delta, C1, C2, r_cap);
              py::dict d;
              d["kind"] =
                  v.kind == DichotomyVerdict::Kind::bounded ? "bounded"
                  : v.kind == DichotomyVerdict::Kind::exponential_growth
                      ? "exponential_growth"
                      : "indeterminate";
              d["r0"] = v.r0;
              d["bound"] = v.bound;
              d["measured_rate"] = v.measured_rate;
              return d;
          },
          py::arg("sol"), py::arg("f"), py::arg("lam"), py::arg("delta"),
          py::arg("C1") = 16.0, py::arg("C2") = 8.0, py::arg("r_cap") = 160.0);

    m.def("charge_residual",
          [](const ModeSolution& sol, const RadialFunction& f) {
              auto rep = charge_residual(sol, f);
              py::dict d;
              d["lhs"] = rep.lhs_value;
              d["rhs"] = rep.rhs_value;
              d["relative_residual"] = rep.relative_residual;
              d["flux_rmax"] = rep.flux_rmax;
              return d;
          },
          py::arg("sol"), py::arg("f"));

    m.def("sommerfeld_gauge",
          [](const ModeSolution& sol, double sp, double sigma, double r0) {
              auto sg = sommerfeld_gauge(sol, sp, sigma, r0);
              return py::make_tuple(sg.gauge_value, sg.tail_growth_exponent);
          },
          py::arg("sol"), py::arg("sigma_prime"), py::arg("sigma") = 0.25,
          py::arg("r0") = 2.0);

    py::class_<MatchedMode>(m, "MatchedMode")
        .def_readonly("v", &MatchedMode::v)
        .def_readonly("V", &MatchedMode::V)
        .def("v_at", &MatchedMode::v_at)
        .def("V_at", &MatchedMode::V_at);
    m.def("build_bessel_matching",
          [](int l, int n, GridPtr g, double bw) {
              return build_bessel_matching(l, n, std::move(g), bw);
          },
          py::arg("l"), py::arg("n"), py::arg("grid"),
          py::arg("blend_width") = 0.5);
    m.def("perturb_and_probe",
          [](const MatchedMode& base, int mm, double sigma) {
              auto rep = perturb_and_probe(base, mm, sigma);
              py::dict d;
              d["m"] = rep.m;
              d["lambda_m"] = rep.lambda_m;
              d["eps_m"] = rep.eps_m;
              d["f_norm"] = rep.f_norm;
              d["u_norm"] = rep.u_norm;
              d["ratio"] = rep.ratio;
              d["cross_validation_error"] = rep.cross_validation_error;
              return d;
          },
          py::arg("base"), py::arg("m"), py::arg("sigma") = 0.25);
    m.def("quasimode_profile",
          [](int l, int n, double lo, double hi, std::size_t nth) {
              auto q = quasimode_profile(l, n, lo, hi, nth);
              py::dict d;
              d["lambda_l"] = q.lambda_l;
              d["near_equator_mass"] = q.near_equator_mass;
              d["tail_mass"] = q.tail_mass;
              d["residual_norm"] = q.residual_norm;
              d["chiU_norm"] = q.chiU_norm;
              return d;
          },
          py::arg("l"), py::arg("n") = 3, py::arg("theta_lo") = M_PI / 8.0,
          py::arg("theta_hi") = 7.0 * M_PI / 8.0, py::arg("n_theta") = 16384);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("conserved_log", &Trajectory::conserved_log)
        .def_readonly("warnings", &Trajectory::warnings)
        .def("state", [](const Trajectory& t, std::size_t k) {
            return t.states.at(k);
        });
    m.def("evolve_schrodinger", &evolve_schrodinger, py::arg("problem"),
          py::arg("v0"), py::arg("dt"), py::arg("T"),
          py::arg("absorber") = true, py::arg("max_snapshots") = 401);
    m.def("evolve_wave", &evolve_wave, py::arg("problem"), py::arg("v0"),
          py::arg("v1"), py::arg("dt"), py::arg("T"),
          py::arg("max_snapshots") = 401);
    m.def("local_observables",
          [](const Trajectory& t, double r_K) {
              auto obs = local_observables(t, r_K);
              py::dict d;
              d["times"] = obs.times;
              d["local_mass"] = obs.local_mass;
              d["local_energy"] = obs.local_energy;
              d["sup_u"] = obs.sup_u;
              return d;
          },
          py::arg("traj"), py::arg("r_K"));
    m.def("pointwise_decay_fit",
          [](const Trajectory& t, double lo, double hi) {
              auto f = pointwise_decay_fit(t, lo, hi);
              py::dict d;
              d["fitted_exponent"] = f.fitted_exponent;
              d["r2"] = f.fit_r2;
              d["vanished"] = f.vanished;
              return d;
          },
          py::arg("traj"), py::arg("t_lo"), py::arg("t_hi"));
    m.def("limiting_amplitude_experiment",
          [](const ModeProblem& p, const RadialFunction& f, double mu, double T,
             double r_K) {
              auto res = limiting_amplitude_experiment(p, f, mu, T, r_K);
              py::dict d;
              d["final_ratio"] = res.final_ratio;
              d["final_ratio_incoming"] = res.final_ratio_incoming;
              d["near_resonance_flag"] = res.near_resonance_flag;
              return d;
          },
          py::arg("problem"), py::arg("f"), py::arg("mu"), py::arg("T"),
          py::arg("r_K"));

    m.def("fit_exponent",
          [](std::vector<double> x, std::vector<double> y) {
              auto f = fit_exponent(x, y);
              return py::make_tuple(f.slope, f.intercept, f.r2);
          },
          py::arg("x"), py::arg("y"));

    m.def("run_experiment",
          [](const std::string& json_text) {
              auto cfg = ExperimentConfig::from_json_text(json_text);
              auto res = run_experiment(cfg);
              py::dict d;
              d["csv_files"] = res.csv_files;
              d["flags"] = res.flags;
              d["warning_count"] = res.warning_count;
              d["wall_seconds"] = res.wall_seconds;
              return d;
          },
          py::arg("config_json"));

    m.def("write_radial_function", &write_radial_function, py::arg("path"),
          py::arg("f"));
}
