#pragma once

#include <functional>
#include <string>

#include "lap/problem.hpp"
#include "lap/tridiag.hpp"

namespace lap {

enum class Scheme { crank_nicolson, leapfrog };

// Time series of radial mode profiles. States are stored at snapshot times
// (a few hundred per run); conserved quantities are logged every step.
struct Trajectory {
    Scheme scheme = Scheme::crank_nicolson;
    double dt = 0.0;
    ModeProblem problem;
    bool absorber = false;
    std::vector<double> times;               // snapshot times
    std::vector<RadialFunction> states;      // v at snapshots
    std::vector<RadialFunction> velocities;  // wave only: v_t at snapshots
    std::vector<double> step_times;
    std::vector<double> conserved_log;  // L2(M) norm (Schr.) / energy (wave)
    std::vector<std::string> warnings;
};

// Symmetric mass/stiffness pair realizing the mode generator with the
// regularity Robin row at r_min and a Dirichlet wall at r_max. theta != 0 is
// folded in through the volume weight w = exp(int theta), so the conserved
// quadratic form is the physical L^2(M) norm.
struct ModeGenerator {
    GridPtr grid;
    std::vector<double> mass;     // diagonal of M (volume-weighted trapezoid)
    std::vector<double> k_lower;  // symmetric stiffness, K
    std::vector<double> k_diag;
    std::vector<double> absorber; // sponge profile W_abs >= 0 (may be empty)

    std::size_t size() const { return k_diag.size(); }
    // y = M^{-1} (K - i W M) x
    std::vector<cplx> apply(const std::vector<cplx>& x) const;
    double m_norm(const std::vector<cplx>& x) const;
    double energy(const std::vector<cplx>& flux_diff_over_dt,
                  const std::vector<cplx>& a,
                  const std::vector<cplx>& b) const;
    double rayleigh(const std::vector<cplx>& x) const;
};

ModeGenerator make_generator(const ModeProblem& problem, bool with_absorber,
                             double absorber_strength = 40.0,
                             double absorber_start_fraction = 0.8);

Trajectory evolve_schrodinger(const ModeProblem& problem,
                              const RadialFunction& v0, double dt, double T,
                              bool absorber_flag,
                              std::size_t max_snapshots = 401);

Trajectory evolve_wave(const ModeProblem& problem, const RadialFunction& v0,
                       const RadialFunction& v1, double dt, double T,
                       std::size_t max_snapshots = 401);

// Forced wave v_tt + A v = exp(i mu t) g from zero data.
Trajectory evolve_wave_forced(const ModeProblem& problem,
                              const RadialFunction& g_mode, double mu,
                              double dt, double T,
                              std::size_t max_snapshots = 401);

struct LocalSmoothingReport {
    std::vector<double> times;
    std::vector<double> integral;  // I(t) = int_0^t ||u||^2_{H^{1,-1/2-s}} dt'
    double data_norm = 0.0;        // <(1 + A)^{1/2} v0, v0>_M, dense small-N
    double plateau_ratio = 0.0;    // I(T) / I(T/2)
};

LocalSmoothingReport local_smoothing_integral(const Trajectory& traj,
                                              double sigma, double up_to_T,
                                              std::size_t dense_n = 1024);

struct LocalObservables {
    std::vector<double> times;
    std::vector<double> local_mass;
    std::vector<double> local_energy;
    std::vector<double> sup_u;
};

LocalObservables local_observables(const Trajectory& traj, double r_K);

struct DecayFit {
    double t_lo = 0.0, t_hi = 0.0;
    double fitted_exponent = 0.0;
    double fit_r2 = 0.0;
    std::size_t samples = 0;
    bool vanished = false;  // sup dropped to the floor (Huygens), slope moot
};

DecayFit pointwise_decay_fit(const Trajectory& traj, double t_lo, double t_hi);

struct MorawetzSpec {
    double r0 = 2.0;
    // K = (t^2 + chi r^2) d_t + 2 t r chi d_r, b = (n-1) t + 2 t chi r theta
    double chi(double r) const;
    double K_t(double r, double t) const { return t * t + chi(r) * r * r; }
    double K_r(double r, double t) const { return 2.0 * t * r * chi(r); }
    double b(double r, double t, int n, double theta) const {
        return (n - 1) * t + 2.0 * t * chi(r) * r * theta;
    }
};

double morawetz_energy(const Trajectory& traj, std::size_t snapshot,
                       const MorawetzSpec& spec);

struct LimitingAmplitudeResult {
    std::vector<double> times;
    std::vector<double> discrepancy;           // vs outgoing Helmholtz profile
    std::vector<double> discrepancy_incoming;  // vs incoming profile
    double v_out_window_norm = 0.0;
    double final_ratio = 0.0;
    double final_ratio_incoming = 0.0;
    bool near_resonance_flag = false;
};

LimitingAmplitudeResult limiting_amplitude_experiment(
    const ModeProblem& problem, const RadialFunction& f_mode, double mu,
    double T, double r_K, double dt = 0.0);

}  // namespace lap
