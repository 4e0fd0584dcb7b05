#include "lap/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "lap/counterexamples.hpp"
#include "lap/csv.hpp"
#include "lap/cutoff.hpp"
#include "lap/energies.hpp"
#include "lap/evolution.hpp"
#include "lap/fit.hpp"
#include "lap/gauges.hpp"
#include "lap/identities.hpp"
#include "lap/mode_util.hpp"
#include "lap/norms.hpp"
#include "lap/solver.hpp"

namespace lap {

namespace {

using nlohmann::json;

bool power_of_two(std::size_t v) { return v && (v & (v - 1)) == 0; }

Profiles make_profiles(const ExperimentConfig& cfg, GridPtr g) {
    Profiles p;
    std::vector<cplx> V(g->size(), 0.0), th(g->size(), 0.0);
    if (cfg.potential == "repulsive3") {
        for (std::size_t i = 0; i < g->size(); ++i)
            V[i] = std::pow(1.0 + g->r[i], -3.0);
    } else if (cfg.potential == "well") {
        for (std::size_t i = 0; i < g->size(); ++i)
            V[i] = -5.0 * smooth_box(g->r[i], 1.0, 2.0, 0.25);
    } else if (cfg.potential != "free") {
        throw ConfigError("unknown value for field `potential`: " + cfg.potential);
    }
    if (cfg.theta_amp != 0.0)
        for (std::size_t i = 0; i < g->size(); ++i)
            th[i] = cfg.theta_amp * std::pow(1.0 + g->r[i], -2.0);
    p.V = RadialFunction(g, std::move(V));
    p.theta = RadialFunction(g, std::move(th));
    p.A = 5.0;
    p.sigma0 = 0.5;
    return p;
}

double auto_r_max(const ExperimentConfig& cfg) {
    if (cfg.r_max > 0.0) return cfg.r_max;
    double lam_min = 1e300;
    for (double l : cfg.lambda_grid) lam_min = std::min(lam_min, l);
    double L_max = 0.0;
    for (int l : cfg.l_grid)
        L_max = std::max(L_max, ModeParams(cfg.n, l).L());
    const double s = std::sqrt(std::max(lam_min, 1e-3));
    return std::max({100.0, 50.0 / s, 10.0 * L_max / s});
}

// Deterministic parallel map: tuples are pre-ordered, results land in
// index-addressed slots, output order never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::mutex err_mutex;
    std::exception_ptr first_error;
    const int nthreads = std::min<std::size_t>(threads, count);
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string fsjoin(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

struct Flags {
    std::mutex m;
    std::vector<std::string> flags;
    void add(const std::string& f) {
        std::lock_guard<std::mutex> lk(m);
        flags.push_back(f);
    }
};

// ---------------------------------------------------------------- lap_scan

void run_lap_scan(const ExperimentConfig& cfg, RunResult& result, Flags& flags) {
    const double r_max = auto_r_max(cfg);
    GridPtr g = standard_grid(r_max, cfg.resolution);
    const Profiles prof = make_profiles(cfg, g);
    const RadialFunction f = smooth_bump(g, 5.0, 0.25, BumpNormalization::l2);
    const RadialFunction gsrc = to_v_form(f, cfg.n);
    GaugeConfig gc;
    gc.sigma = cfg.sigma;

    struct Tuple {
        int l;
        double lambda;
    };
    std::vector<Tuple> tuples;
    for (int l : cfg.l_grid)
        for (double lam : cfg.lambda_grid) tuples.push_back({l, lam});
    std::sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
        return a.l != b.l ? a.l < b.l : a.lambda < b.lambda;
    });

    const auto catalog = estimate_catalog();
    std::vector<std::vector<GaugeReport>> rows(tuples.size());
    parallel_for(tuples.size(), cfg.threads, [&](std::size_t i) {
        const auto [l, lam] = tuples[i];
        ModeProblem tmpl(ModeParams(cfg.n, l), prof, lam, 0.0, Branch::plus, g);
        if (tmpl.boundary_dominated())
            flags.add("boundary-dominated: l=" + std::to_string(l) +
                      " lambda=" + CsvWriter::num(lam));
        const auto ladder = epsilon_ladder(tmpl, gsrc, cfg.eps_ladder, cfg.sigma);
        const auto& sol = ladder.final_rung();
        for (EstimateId id : catalog)
            rows[i].push_back(estimate_gauge(sol, f, id, gc));
    });

    const std::string path = fsjoin(cfg.out_dir, "lap_scan.csv");
    CsvWriter w(path, {"estimate_id", "n", "l", "lambda", "epsilon", "sigma",
                       "lhs", "rhs_factor", "ratio"});
    for (std::size_t i = 0; i < tuples.size(); ++i)
        for (const auto& rep : rows[i])
            w.row({estimate_name(rep.estimate_id), CsvWriter::num(cfg.n),
                   CsvWriter::num(tuples[i].l), CsvWriter::num(rep.lambda),
                   CsvWriter::num(rep.epsilon), CsvWriter::num(rep.sigma),
                   CsvWriter::num(rep.lhs), CsvWriter::num(rep.rhs_factor),
                   CsvWriter::num(rep.ratio)});
    result.csv_files.push_back(path);
}

// --------------------------------------------------------------- dichotomy

void run_dichotomy(const ExperimentConfig& cfg, RunResult& result, Flags& flags) {
    struct Tuple {
        int l;
        double lambda;
    };
    std::vector<Tuple> tuples;
    for (int l : cfg.l_grid)
        for (double lam : cfg.lambda_grid) tuples.push_back({l, lam});
    std::sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
        return a.l != b.l ? a.l < b.l : a.lambda < b.lambda;
    });

    struct Row {
        Tuple t;
        DichotomyVerdict v;
    };
    std::vector<Row> rows(tuples.size());
    parallel_for(tuples.size(), cfg.threads, [&](std::size_t i) {
        const auto [l, lam] = tuples[i];
        const double r_max = std::max(4.0 * cfg.r_cap, 2.0 * cfg.r_cap + 50.0);
        GridPtr g = standard_grid(r_max, cfg.resolution);
        ModeProblem p(ModeParams(cfg.n, l), make_profiles(cfg, g), lam, 0.0,
                      Branch::plus, g);
        const RadialFunction f = smooth_bump(g, 2.0, 0.25, BumpNormalization::l2);
        const RadialFunction gsrc = to_v_form(f, cfg.n);
        const auto sol = solve_resolvent_mode(p, gsrc, BcKind::outgoing);
        const auto series = spherical_energies(sol, f);
        const double delta =
            weighted_norm(gsrc, WeightSpec(0, 0.5 + cfg.sigma), p.mode);
        rows[i] = {tuples[i], classify_dichotomy(series, lam, delta, cfg.C1,
                                                 cfg.C2, cfg.r_cap)};
        char name[128];
        std::snprintf(name, sizeof(name), "dichotomy_series_l%d_lam%g.csv", l,
                      lam);
        write_energy_series(fsjoin(cfg.out_dir, name), series);
        std::snprintf(name, sizeof(name), "dichotomy_dimless_l%d_lam%g.csv", l,
                      lam);
        write_dimensionless_series(fsjoin(cfg.out_dir, name),
                                   dimensionless(series, delta, lam));
    });

    const std::string path = fsjoin(cfg.out_dir, "dichotomy.csv");
    CsvWriter w(path, {"n", "l", "lambda", "C1", "C2", "r_cap", "verdict", "r0",
                       "bound", "measured_rate", "growth_fraction"});
    for (const auto& row : rows) {
        const char* verdict =
            row.v.kind == DichotomyVerdict::Kind::bounded ? "bounded"
            : row.v.kind == DichotomyVerdict::Kind::exponential_growth
                ? "exponential_growth"
                : "indeterminate";
        if (row.v.kind == DichotomyVerdict::Kind::indeterminate)
            flags.add("indeterminate dichotomy: l=" + std::to_string(row.t.l));
        w.row({CsvWriter::num(cfg.n), CsvWriter::num(row.t.l),
               CsvWriter::num(row.t.lambda), CsvWriter::num(cfg.C1),
               CsvWriter::num(cfg.C2), CsvWriter::num(cfg.r_cap), verdict,
               CsvWriter::num(row.v.r0), CsvWriter::num(row.v.bound),
               CsvWriter::num(row.v.measured_rate),
               CsvWriter::num(row.v.growth_fraction)});
    }
    result.csv_files.push_back(path);
}

// --------------------------------------------------------------- identities

void run_identities(const ExperimentConfig& cfg, RunResult& result, Flags&) {
    const double r_max = auto_r_max(cfg);
    GridPtr g = standard_grid(r_max, cfg.resolution);
    const Profiles prof = make_profiles(cfg, g);
    const RadialFunction f = smooth_bump(g, 5.0, 0.5, BumpNormalization::l2);
    const RadialFunction gsrc = to_v_form(f, cfg.n);
    const RadialFunction chi = RadialFunction::sample(
        g, [&](double r) { return smooth_box(r, 2.0, 0.6 * r_max, 4.0); });

    struct Tuple {
        int l;
        double lambda;
    };
    std::vector<Tuple> tuples;
    for (int l : cfg.l_grid)
        for (double lam : cfg.lambda_grid) tuples.push_back({l, lam});
    std::sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
        return a.l != b.l ? a.l < b.l : a.lambda < b.lambda;
    });

    std::vector<std::vector<IdentityResidualReport>> rows(tuples.size());
    std::vector<double> epss(tuples.size());
    parallel_for(tuples.size(), cfg.threads, [&](std::size_t i) {
        const auto [l, lam] = tuples[i];
        ModeProblem p(ModeParams(cfg.n, l), prof, lam, 0.1, Branch::plus, g);
        epss[i] = p.epsilon;
        const auto sol = solve_resolvent_mode(p, gsrc, BcKind::outgoing);
        rows[i].push_back(charge_residual(sol, f));
        rows[i].push_back(lagrangean_residual(sol, f, chi));
        ModeProblem p0 = p;
        p0.epsilon = 0.0;
        const auto sol0 = solve_resolvent_mode(p0, gsrc, BcKind::outgoing);
        const auto W = morawetz_default_weight(g, cfg.sigma);
        rows[i].push_back(morawetz_residual(sol0, f, W, chi));
        const RadialFunction u_c = RadialFunction::sample(g, [&](double r) {
            return smooth_box(r, 3.0, 7.0, 1.0);
        });
        const auto cw = carleman_sqrt_weight(g, 1.0);
        rows[i].push_back(
            carleman_identity_residual(u_c, p.mode, cw, 4.0, lam));
    });

    const std::string path = fsjoin(cfg.out_dir, "identities.csv");
    CsvWriter w(path, {"identity_id", "n", "l", "lambda", "epsilon", "N", "lhs",
                       "rhs", "residual", "relative_residual"});
    for (std::size_t i = 0; i < tuples.size(); ++i)
        for (const auto& rep : rows[i])
            w.row({rep.identity_id, CsvWriter::num(cfg.n),
                   CsvWriter::num(tuples[i].l), CsvWriter::num(tuples[i].lambda),
                   CsvWriter::num(rep.identity_id == "charge" ? epss[i] : 0.0),
                   CsvWriter::num(static_cast<int>(cfg.resolution)),
                   CsvWriter::num(rep.lhs_value), CsvWriter::num(rep.rhs_value),
                   CsvWriter::num(rep.residual),
                   CsvWriter::num(rep.relative_residual)});
    result.csv_files.push_back(path);
}

// ------------------------------------------------------ counterexamples

void run_bessel(const ExperimentConfig& cfg, RunResult& result, Flags&) {
    GridPtr base_grid = standard_grid(16.0, 1 << 14);
    const MatchedMode base =
        build_bessel_matching(cfg.bessel_l, cfg.n, base_grid);
    std::vector<int> ms = cfg.m_list;
    std::sort(ms.begin(), ms.end());
    std::vector<BlowupReport> reports(ms.size());
    parallel_for(ms.size(), cfg.threads, [&](std::size_t i) {
        reports[i] = perturb_and_probe(base, ms[i], cfg.sigma);
    });
    const std::string path = fsjoin(cfg.out_dir, "bessel_blowup.csv");
    CsvWriter w(path, {"m", "l", "lambda_m", "eps_m", "f_norm", "u_norm", "ratio"});
    for (const auto& r : reports)
        w.row({CsvWriter::num(r.m), CsvWriter::num(r.l),
               CsvWriter::num(r.lambda_m), CsvWriter::num(r.eps_m),
               CsvWriter::num(r.f_norm), CsvWriter::num(r.u_norm),
               CsvWriter::num(r.ratio)});
    result.csv_files.push_back(path);
}

void run_quasimode(const ExperimentConfig& cfg, RunResult& result, Flags&) {
    std::vector<int> ls = cfg.quasimode_l_list;
    std::sort(ls.begin(), ls.end());
    std::vector<QuasimodeProfile> profiles(ls.size());
    parallel_for(ls.size(), cfg.threads, [&](std::size_t i) {
        profiles[i] = quasimode_profile(ls[i], cfg.n, M_PI / 8.0,
                                        7.0 * M_PI / 8.0, cfg.resolution);
    });
    const std::string path = fsjoin(cfg.out_dir, "quasimode.csv");
    CsvWriter w(path, {"l", "n", "lambda_l", "near_mass", "tail_mass",
                       "residual_norm", "quasimode_ratio"});
    for (const auto& q : profiles)
        w.row({CsvWriter::num(q.l), CsvWriter::num(q.n),
               CsvWriter::num(q.lambda_l), CsvWriter::num(q.near_equator_mass),
               CsvWriter::num(q.tail_mass), CsvWriter::num(q.residual_norm),
               CsvWriter::num(q.residual_norm > 0.0
                                  ? q.chiU_norm / q.residual_norm
                                  : 0.0)});
    result.csv_files.push_back(path);
}

// ------------------------------------------------------------- evolution

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          double r_K, bool with_EK, double r0) {
    const auto obs = local_observables(traj, r_K);
    CsvWriter w(path, {"t", "l2_norm", "local_mass", "local_energy", "sup_u",
                       "E_K"});
    MorawetzSpec spec;
    spec.r0 = r0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        double l2 = l2_norm(traj.states[k]);
        double ek = with_EK ? morawetz_energy(traj, k, spec) : 0.0;
        w.row({CsvWriter::num(traj.times[k]), CsvWriter::num(l2),
               CsvWriter::num(obs.local_mass[k]),
               CsvWriter::num(obs.local_energy[k]),
               CsvWriter::num(obs.sup_u[k]), CsvWriter::num(ek)});
    }
}

void append_summary(CsvWriter& w, const std::string& experiment,
                    const std::string& params, const std::string& metric,
                    double value, const std::string& flag = "") {
    w.row({experiment, params, metric, CsvWriter::num(value),
           flag.empty() ? (std::isfinite(value) ? "" : "nan") : flag});
}

void run_smoothing_like(const ExperimentConfig& cfg, RunResult& result,
                        Flags& flags, bool rage_only) {
    const double r_max = cfg.r_max > 0.0 ? cfg.r_max : 100.0;
    GridPtr g = standard_grid(r_max, cfg.resolution);
    const Profiles prof = make_profiles(cfg, g);
    ModeProblem p(ModeParams(cfg.n, cfg.l_grid.front()), prof,
                  cfg.lambda_grid.front(), 0.0, Branch::plus, g);
    const RadialFunction v0 = RadialFunction::sample(g, [&](double r) {
        return r * std::exp(-r * r / 4.0);
    });
    const auto traj = evolve_schrodinger(p, v0, cfg.dt, cfg.T, true);
    for (const auto& warn : traj.warnings) flags.add(warn);

    const std::string tpath = fsjoin(
        cfg.out_dir, rage_only ? "rage_trajectory.csv" : "smoothing_trajectory.csv");
    write_trajectory_csv(tpath, traj, cfg.r_K, false, 2.0);
    result.csv_files.push_back(tpath);

    const std::string spath = fsjoin(
        cfg.out_dir, rage_only ? "rage_summary.csv" : "smoothing_summary.csv");
    CsvWriter w(spath, {"experiment", "params", "metric", "value", "flag"});
    const std::string params = "n=" + std::to_string(cfg.n) +
                               ";l=" + std::to_string(cfg.l_grid.front()) +
                               ";T=" + CsvWriter::num(cfg.T);
    const auto obs = local_observables(traj, cfg.r_K);
    append_summary(w, cfg.experiment, params, "local_mass_initial",
                   obs.local_mass.front());
    append_summary(w, cfg.experiment, params, "local_mass_final",
                   obs.local_mass.back());
    if (!rage_only) {
        const auto rep = local_smoothing_integral(traj, cfg.sigma, cfg.T);
        append_summary(w, cfg.experiment, params, "I_final", rep.integral.back());
        append_summary(w, cfg.experiment, params, "data_norm", rep.data_norm);
        append_summary(w, cfg.experiment, params, "plateau_ratio",
                       rep.plateau_ratio);
        const auto fit = pointwise_decay_fit(traj, 5.0, std::min(cfg.T, 50.0));
        append_summary(w, cfg.experiment, params, "decay_exponent",
                       fit.fitted_exponent, fit.vanished ? "vanished" : "");
    }
    result.csv_files.push_back(spath);
}

void run_wave_decay(const ExperimentConfig& cfg, RunResult& result, Flags&) {
    const double r_max =
        cfg.r_max > 0.0 ? cfg.r_max : (5.0 + cfg.T + 20.0);
    GridPtr g = standard_grid(r_max, cfg.resolution);
    const Profiles prof = make_profiles(cfg, g);
    ModeProblem p(ModeParams(cfg.n, cfg.l_grid.front()), prof, 1.0, 0.0,
                  Branch::plus, g);
    const RadialFunction v0 = RadialFunction::sample(g, [&](double r) {
        return smooth_box(r, 1.0, 5.0, 1.5);
    });
    const RadialFunction v1 = RadialFunction::zero(g);
    const double dt = std::min(cfg.dt, 0.9 * g->h);
    const auto traj = evolve_wave(p, v0, v1, dt, cfg.T);

    const std::string tpath = fsjoin(cfg.out_dir, "wave_trajectory.csv");
    write_trajectory_csv(tpath, traj, cfg.r_K, true, 2.0);
    result.csv_files.push_back(tpath);

    const std::string spath = fsjoin(cfg.out_dir, "wave_summary.csv");
    CsvWriter w(spath, {"experiment", "params", "metric", "value", "flag"});
    const std::string params = "n=" + std::to_string(cfg.n) +
                               ";l=" + std::to_string(cfg.l_grid.front()) +
                               ";T=" + CsvWriter::num(cfg.T);
    double e0 = traj.conserved_log.front(), drift = 0.0;
    for (double e : traj.conserved_log)
        drift = std::max(drift, std::abs(e - e0));
    append_summary(w, cfg.experiment, params, "energy_drift_rel", drift / e0);

    const auto obs = local_observables(traj, cfg.r_K);
    double late_local = 0.0;
    for (std::size_t k = 0; k < obs.times.size(); ++k)
        if (obs.times[k] >= cfg.r_K + 5.0 + 1.0)
            late_local = std::max(late_local, obs.local_energy[k]);
    append_summary(w, cfg.experiment, params, "late_local_energy_over_E0",
                   late_local / e0);

    MorawetzSpec spec;
    spec.r0 = 2.0;
    const double ek0 = morawetz_energy(traj, 0, spec);
    double ek_max = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        if (traj.times[k] >= 10.0)
            ek_max = std::max(ek_max, morawetz_energy(traj, k, spec));
    append_summary(w, cfg.experiment, params, "EK_ratio_max", ek_max / ek0);
    result.csv_files.push_back(spath);
}

void run_limiting_amplitude(const ExperimentConfig& cfg, RunResult& result,
                            Flags& flags) {
    const double r_max = cfg.r_max > 0.0 ? cfg.r_max : (cfg.T + 20.0);
    GridPtr g = standard_grid(r_max, cfg.resolution);
    const Profiles prof = make_profiles(cfg, g);
    ModeProblem p(ModeParams(cfg.n, cfg.l_grid.front()), prof,
                  cfg.mu * cfg.mu, 0.0, Branch::plus, g);
    const RadialFunction f = smooth_bump(g, 3.0, 0.5, BumpNormalization::l2);
    const auto res =
        limiting_amplitude_experiment(p, f, cfg.mu, cfg.T, cfg.r_K);
    if (res.near_resonance_flag)
        flags.add("limiting_amplitude: mu^2 close to a discrete box eigenvalue");

    const std::string tpath = fsjoin(cfg.out_dir, "limiting_amplitude.csv");
    {
        CsvWriter w(tpath, {"t", "discrepancy", "discrepancy_incoming"});
        for (std::size_t k = 0; k < res.times.size(); ++k)
            w.row({CsvWriter::num(res.times[k]),
                   CsvWriter::num(res.discrepancy[k]),
                   CsvWriter::num(res.discrepancy_incoming[k])});
    }
    result.csv_files.push_back(tpath);

    const std::string spath = fsjoin(cfg.out_dir, "limiting_amplitude_summary.csv");
    CsvWriter w(spath, {"experiment", "params", "metric", "value", "flag"});
    const std::string params = "mu=" + CsvWriter::num(cfg.mu) +
                               ";T=" + CsvWriter::num(cfg.T);
    append_summary(w, cfg.experiment, params, "final_ratio", res.final_ratio);
    append_summary(w, cfg.experiment, params, "final_ratio_incoming",
                   res.final_ratio_incoming);
    append_summary(w, cfg.experiment, params, "v_out_window_norm",
                   res.v_out_window_norm);
    result.csv_files.push_back(spath);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("experiment", c.experiment);
    std::size_t res = c.resolution;
    if (j.contains("resolution")) res = j.at("resolution").get<std::size_t>();
    c.resolution = res;
    get("out_dir", c.out_dir);
    get("threads", c.threads);
    get("n", c.n);
    get("l_grid", c.l_grid);
    get("lambda_grid", c.lambda_grid);
    get("sigma", c.sigma);
    get("eps_ladder", c.eps_ladder);
    get("potential", c.potential);
    get("theta_amp", c.theta_amp);
    get("r_max", c.r_max);
    get("C1", c.C1);
    get("C2", c.C2);
    get("r_cap", c.r_cap);
    get("m_list", c.m_list);
    get("bessel_l", c.bessel_l);
    get("quasimode_l_list", c.quasimode_l_list);
    get("T", c.T);
    get("dt", c.dt);
    get("r_K", c.r_K);
    get("mu", c.mu);
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    try {
        return from_json_text(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> kinds = {
        "lap_scan",      "dichotomy",           "identities",
        "counterexample_bessel", "counterexample_quasimode", "smoothing",
        "wave_decay",    "limiting_amplitude",  "rage"};
    if (std::find(kinds.begin(), kinds.end(), experiment) == kinds.end())
        throw ConfigError("invalid field `experiment`: " + experiment);
    if (!power_of_two(resolution) || resolution < (1u << 10) ||
        resolution > (1u << 18))
        throw ConfigError(
            "invalid field `resolution`: must be a power of two in [2^10, 2^18]");
    if (lambda_grid.empty()) throw ConfigError("empty field `lambda_grid`");
    if (l_grid.empty()) throw ConfigError("empty field `l_grid`");
    for (double lam : lambda_grid)
        if (lam <= 0.0) throw ConfigError("invalid field `lambda_grid`: values must be positive");
    for (int l : l_grid)
        if (l < 0) throw ConfigError("invalid field `l_grid`: values must be >= 0");
    if (threads < 1) throw ConfigError("invalid field `threads`: must be >= 1");
    if (sigma <= 0.0 || sigma >= 0.5)
        throw ConfigError("invalid field `sigma`: need 0 < sigma < 1/2");
    if (experiment == "counterexample_bessel") {
        if (m_list.empty()) throw ConfigError("empty field `m_list`");
        if (bessel_l % 2 != 0 || bessel_l < 4)
            throw ConfigError("invalid field `bessel_l`: must be even and >= 4");
    }
    if (experiment == "counterexample_quasimode" && quasimode_l_list.empty())
        throw ConfigError("empty field `quasimode_l_list`");
}

RunResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.out_dir);
    const auto t0 = std::chrono::steady_clock::now();

    RunResult result;
    Flags flags;
    if (config.experiment == "lap_scan") {
        run_lap_scan(config, result, flags);
    } else if (config.experiment == "dichotomy") {
        run_dichotomy(config, result, flags);
    } else if (config.experiment == "identities") {
        run_identities(config, result, flags);
    } else if (config.experiment == "counterexample_bessel") {
        run_bessel(config, result, flags);
    } else if (config.experiment == "counterexample_quasimode") {
        run_quasimode(config, result, flags);
    } else if (config.experiment == "smoothing") {
        run_smoothing_like(config, result, flags, false);
    } else if (config.experiment == "rage") {
        run_smoothing_like(config, result, flags, true);
    } else if (config.experiment == "wave_decay") {
        run_wave_decay(config, result, flags);
    } else if (config.experiment == "limiting_amplitude") {
        run_limiting_amplitude(config, result, flags);
    }

    result.flags = flags.flags;
    result.warning_count = static_cast<int>(flags.flags.size());
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    // manifest: config echo, flags, warnings, wall time, column notes
    json manifest;
    manifest["config"] = {
        {"experiment", config.experiment}, {"resolution", config.resolution},
        {"out_dir", config.out_dir},       {"threads", config.threads},
        {"n", config.n},                   {"l_grid", config.l_grid},
        {"lambda_grid", config.lambda_grid}, {"sigma", config.sigma},
        {"eps_ladder", config.eps_ladder}, {"potential", config.potential},
        {"theta_amp", config.theta_amp},   {"r_max", config.r_max},
        {"C1", config.C1},                 {"C2", config.C2},
        {"r_cap", config.r_cap},           {"m_list", config.m_list},
        {"bessel_l", config.bessel_l},
        {"quasimode_l_list", config.quasimode_l_list},
        {"T", config.T},                   {"dt", config.dt},
        {"r_K", config.r_K},               {"mu", config.mu}};
    manifest["flags"] = result.flags;
    manifest["warnings"] = result.warning_count;
    manifest["wall_seconds"] = result.wall_seconds;
    manifest["columns"] = {
        {"lap_scan.csv",
         "estimate_id,n,l,lambda,epsilon,sigma,lhs,rhs_factor,ratio; ratio = "
         "lhs/rhs_factor with the canonical lambda factor inside rhs_factor"},
        {"dichotomy.csv",
         "verdict plus measured dimensionless growth rate -r M'/M"},
        {"identities.csv",
         "identity_id,n,l,lambda,epsilon,N,lhs,rhs,residual,relative_residual"},
        {"bessel_blowup.csv", "m,l,lambda_m,eps_m,f_norm,u_norm,ratio"},
        {"quasimode.csv",
         "l,n,lambda_l,near_mass,tail_mass,residual_norm,quasimode_ratio"},
        {"trajectory csv", "t,l2_norm,local_mass,local_energy,sup_u,E_K"},
        {"summary csv", "experiment,params,metric,value,flag; flag set on NaN"}};
    std::ofstream mf(fsjoin(config.out_dir, "manifest.json"));
    mf << manifest.dump(2) << "\n";

    return result;
}

}  // namespace lap
