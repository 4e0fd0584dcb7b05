#include <CLI11.hpp>
#include <cstdio>

#include "lap/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"labp - radial limiting-absorption laboratory"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    std::string config_path;
    std::string out_dir;
    int threads = 0;
    std::size_t resolution = 0;
    run->add_option("config", config_path, "experiment config (JSON)")
        ->required();
    run->add_option("--out", out_dir, "output directory override");
    run->add_option("--threads", threads, "worker thread count override");
    run->add_option("--resolution", resolution, "grid resolution override");

    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = lap::ExperimentConfig::from_json_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads > 0) cfg.threads = threads;
        if (resolution > 0) cfg.resolution = resolution;
        const auto result = lap::run_experiment(cfg);
        std::printf("experiment %s: %zu file(s), %d warning(s), %.2f s\n",
                    cfg.experiment.c_str(), result.csv_files.size(),
                    result.warning_count, result.wall_seconds);
        for (const auto& f : result.csv_files) std::printf("  %s\n", f.c_str());
        return 0;
    } catch (const lap::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
}
