#pragma once

// Named verification suites, one per acceptance check, with machine-readable
// results. The CLI and the acceptance harness both drive these.

#include <optional>
#include <string>
#include <vector>

#include "sqflab/numlin.hpp"

namespace sqflab {

struct CaseResult {
    std::string name;
    double value = 0.0;
    std::optional<double> expected;
    std::optional<double> tol;
    std::optional<double> stderr_value;
    bool pass = false;
};

struct SuiteResult {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CaseResult> cases;  // sorted by case name
    bool pass = false;
};

struct SuiteConfig {
    std::string suite = "all";
    std::uint64_t seed = 42;
    std::size_t samples = 20000;
    double omega = 1.0;                 // fourier-pair / poisson weight parameter
    std::optional<double> tol_override; // applied to single-tolerance suites
    std::string out_dir;                // optional CSV / report output directory
};

std::vector<std::string> suite_names();
std::string suite_description(const std::string& name);

// Runs one named suite (or "all"); throws std::invalid_argument on unknown
// names.
SuiteResult run_suite(const SuiteConfig& config);

// UTF-8 JSON with LF endings; cases ordered by name. The timestamp lives in
// the single "generated_at" field (pass empty to omit it).
std::string suite_result_to_json(const SuiteResult& result, const std::string& timestamp);

}  // namespace sqflab
