#include "sqflab/report.hpp"

#include <sstream>

#include "json.hpp"

namespace sqflab {

namespace {

std::string digest_hex(std::uint64_t digest) {
    std::ostringstream os;
    os << std::hex << digest;
    return os.str();
}

}  // namespace

std::string report_json(const GammaNormResult& r, std::uint64_t digest) {
    nlohmann::ordered_json j;
    j["op"] = "gamma_norm";
    j["inputs-digest"] = digest_hex(digest);
    j["value"] = r.value;
    if (r.stderr_value) j["stderr"] = *r.stderr_value;
    j["pass"] = true;
    return j.dump();
}

std::string report_json(const ContractionReport& r, std::uint64_t digest) {
    nlohmann::ordered_json j;
    j["op"] = "check_contraction_principle";
    j["inputs-digest"] = digest_hex(digest);
    j["value"] = r.lhs;
    if (!r.exact) j["stderr"] = r.stderr_combined;
    j["bound"] = r.rhs;
    j["pass"] = r.pass;
    return j.dump();
}

std::string report_json(const IdealReport& r, std::uint64_t digest) {
    nlohmann::ordered_json j;
    j["op"] = "check_ideal_property";
    j["inputs-digest"] = digest_hex(digest);
    j["value"] = r.lhs;
    if (!r.exact) j["stderr"] = r.stderr_combined;
    j["bound"] = r.rhs;
    j["pass"] = r.pass;
    return j.dump();
}

std::string report_json(const NuclearReport& r, std::uint64_t digest) {
    nlohmann::ordered_json j;
    j["op"] = "nuclear_bound";
    j["inputs-digest"] = digest_hex(digest);
    j["value"] = r.gamma_value;
    if (r.stderr_value) j["stderr"] = *r.stderr_value;
    j["bound"] = r.bound;
    j["pass"] = r.pass;
    return j.dump();
}

}  // namespace sqflab
