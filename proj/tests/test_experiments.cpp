#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lap/experiments.hpp"
#include "lap/fit.hpp"

using namespace lap;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("fit_exponent") {
    SUBCASE("quadratic data") {
        std::vector<double> x{1, 2, 3, 4, 5}, y;
        for (double v : x) y.push_back(v * v);
        auto f = fit_exponent(x, y);
        CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant data") {
        std::vector<double> x{1, 2, 4, 8}, y{7, 7, 7, 7};
        auto f = fit_exponent(x, y);
        CHECK(f.slope == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(fit_exponent({1, 2, 3}, {1, 2, 3}),
                        std::invalid_argument);
        CHECK_THROWS_AS(fit_exponent({1, 2, 3, -4}, {1, 2, 3, 4}),
                        std::invalid_argument);
    }
}

TEST_CASE("config validation names the offending field") {
    auto cfg = ExperimentConfig::from_json_text(
        R"({"experiment":"lap_scan","lambda_grid":[]})");
    try {
        cfg.validate();
        FAIL("expected a validation error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("lambda_grid") != std::string::npos);
    }

    auto cfg2 = ExperimentConfig::from_json_text(
        R"({"experiment":"nope"})");
    CHECK_THROWS_AS(cfg2.validate(), ConfigError);

    auto cfg3 = ExperimentConfig::from_json_text(
        R"({"experiment":"lap_scan","resolution":3000})");
    CHECK_THROWS_AS(cfg3.validate(), ConfigError);
}

TEST_CASE("lap_scan produces one row per estimate per tuple") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "experiment": "lap_scan",
        "resolution": 1024,
        "l_grid": [0],
        "lambda_grid": [1.0],
        "eps_ladder": [0.1, 0.01],
        "out_dir": "exp_test_lap"
    })");
    auto res = run_experiment(cfg);
    REQUIRE(res.csv_files.size() == 1);
    const std::string text = slurp(res.csv_files[0]);
    // 13 catalog estimates + header
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 14);
    CHECK(std::filesystem::exists("exp_test_lap/manifest.json"));
    std::filesystem::remove_all("exp_test_lap");
}

TEST_CASE("identical configs give byte-identical CSVs at any thread count") {
    const char* base = R"({
        "experiment": "lap_scan",
        "resolution": 1024,
        "l_grid": [0, 1, 2],
        "lambda_grid": [1.0, 4.0],
        "eps_ladder": [0.1, 0.01],
        "out_dir": "DIR",
        "threads": T
    })";
    std::string one(base), four(base);
    one.replace(one.find("DIR"), 3, "exp_det_a");
    one.replace(one.find('T'), 1, "1");
    four.replace(four.find("DIR"), 3, "exp_det_b");
    four.replace(four.find('T'), 1, "4");
    auto ra = run_experiment(ExperimentConfig::from_json_text(one));
    auto rb = run_experiment(ExperimentConfig::from_json_text(four));
    CHECK(slurp(ra.csv_files[0]) == slurp(rb.csv_files[0]));
    std::filesystem::remove_all("exp_det_a");
    std::filesystem::remove_all("exp_det_b");
}

TEST_CASE("dichotomy experiment emits verdicts") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "experiment": "dichotomy",
        "resolution": 8192,
        "l_grid": [9],
        "lambda_grid": [0.01],
        "C1": 5.0, "C2": 8.0, "r_cap": 50.0,
        "out_dir": "exp_test_dich"
    })");
    auto res = run_experiment(cfg);
    const std::string text = slurp(res.csv_files[0]);
    CHECK(text.find("exponential_growth") != std::string::npos);
    std::filesystem::remove_all("exp_test_dich");
}
