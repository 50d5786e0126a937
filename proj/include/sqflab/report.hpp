#pragma once

// JSON records for the gamma-norm checkers:
// {op, inputs-digest, value, stderr, bound, pass}.

#include <string>

#include "sqflab/gauss_gamma.hpp"

namespace sqflab {

std::string report_json(const GammaNormResult& r, std::uint64_t digest);
std::string report_json(const ContractionReport& r, std::uint64_t digest);
std::string report_json(const IdealReport& r, std::uint64_t digest);
std::string report_json(const NuclearReport& r, std::uint64_t digest);

}  // namespace sqflab
