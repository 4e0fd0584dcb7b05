#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lap {

// Config-driven experiment runner. Configs are JSON; see run_experiment.
struct ExperimentConfig {
    std::string experiment;
    std::size_t resolution = 1 << 14;
    std::string out_dir = ".";
    int threads = 1;
    int n = 3;
    std::vector<int> l_grid{0};
    std::vector<double> lambda_grid{1.0};
    double sigma = 0.25;
    std::vector<double> eps_ladder{1e-1, 1e-2, 1e-3, 1e-4};
    std::string potential = "free";  // free | repulsive3 | well
    double theta_amp = 0.0;
    double r_max = 0.0;  // 0 = choose from the boundary admissibility rule

    // dichotomy
    double C1 = 16.0, C2 = 8.0, r_cap = 160.0;
    // counterexample_bessel
    std::vector<int> m_list{2, 4, 8, 16};
    int bessel_l = 20;
    // counterexample_quasimode
    std::vector<int> quasimode_l_list{8, 16, 32, 64};
    // evolution experiments
    double T = 50.0, dt = 0.01, r_K = 10.0, mu = 1.0;

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    void validate() const;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunResult {
    std::vector<std::string> csv_files;
    std::vector<std::string> flags;
    int warning_count = 0;
    double wall_seconds = 0.0;
};

RunResult run_experiment(const ExperimentConfig& config);

}  // namespace lap
