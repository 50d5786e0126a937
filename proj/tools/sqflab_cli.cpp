// Deterministic suite runner. Every check is a named experiment; reports are
// UTF-8 JSON with LF endings, byte-identical for a fixed config and seed up
// to the single generated_at field.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqflab/suites.hpp"

namespace {

std::string now_utc() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sqflab: contour-calculus and square-function verification suites"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list available suites");

    sqflab::SuiteConfig cfg;
    std::string json_config;
    bool no_timestamp = false;
    auto* run = app.add_subcommand("run", "run a suite and write a JSON report");
    auto* suite_opt =
        run->add_option("--suite", cfg.suite, "suite name, or 'all'")->default_str("all");
    auto* seed_opt = run->add_option("--seed", cfg.seed, "master seed")->default_str("42");
    auto* samples_opt = run->add_option("--samples", cfg.samples, "Monte Carlo samples")
                            ->default_str("20000");
    double tol = 0.0;
    auto* tol_opt = run->add_option("--tol", tol, "tolerance override for single-tolerance suites");
    auto* omega_opt =
        run->add_option("--omega", cfg.omega, "weight parameter for fourier-pair/poisson")
            ->default_str("1");
    auto* out_opt = run->add_option("--out", cfg.out_dir, "directory for the report and CSV curves");
    run->add_option("--json", json_config, "JSON config file mirroring the flags (flags win)");
    run->add_flag("--no-timestamp", no_timestamp, "omit the generated_at field");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& name : sqflab::suite_names())
            std::cout << name << "\n    " << sqflab::suite_description(name) << "\n";
        std::cout << "all\n    every suite above, aggregated\n";
        return 0;
    }

    try {
        if (!json_config.empty()) {
            std::ifstream f(json_config);
            if (!f) throw std::invalid_argument("cannot open config file: " + json_config);
            nlohmann::json j;
            f >> j;
            // config file first, explicit flags win
            if (j.contains("suite") && suite_opt->count() == 0) cfg.suite = j["suite"];
            if (j.contains("seed") && seed_opt->count() == 0) cfg.seed = j["seed"];
            if (j.contains("samples") && samples_opt->count() == 0) cfg.samples = j["samples"];
            if (j.contains("omega") && omega_opt->count() == 0) cfg.omega = j["omega"];
            if (j.contains("tol") && tol_opt->count() == 0) {
                tol = j["tol"];
                cfg.tol_override = tol;
            }
            if (j.contains("out") && out_opt->count() == 0) cfg.out_dir = j["out"];
        }
        if (tol_opt->count() > 0) cfg.tol_override = tol;
        if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);

        const sqflab::SuiteResult result = sqflab::run_suite(cfg);
        const std::string report =
            sqflab::suite_result_to_json(result, no_timestamp ? "" : now_utc());
        if (!cfg.out_dir.empty()) {
            const std::string path = cfg.out_dir + "/" + result.suite + ".json";
            std::ofstream f(path, std::ios::binary);
            f << report;
        }
        std::cout << report;
        return result.pass ? 0 : 1;
    } catch (const std::exception& e) {
        nlohmann::ordered_json err;
        err["error"] = e.what();
        err["suite"] = cfg.suite;
        std::cout << err.dump(2) << "\n";
        return 2;
    }
}
