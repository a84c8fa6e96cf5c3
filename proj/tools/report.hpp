#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "destab/cone.hpp"
#include "destab/signed_square.hpp"

namespace destab::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "destab 0.1.0";

// Exact optimal data plus a display-only float rendering.
struct OptimalReport {
    std::vector<long long> ray;  // primitive integer vector
    int sign = 0;
    std::string square;          // "p/q" in lowest terms
    std::string float_approx;    // 12 significant digits, display only

    bool operator==(const OptimalReport&) const = default;
};

struct Report {
    std::string tool_version = kToolVersion;
    std::string kind;
    std::optional<std::string> verdict;  // semistable | unstable
    std::optional<OptimalReport> optimal;
    json stage = json::object();  // subcommand-specific exact data

    bool operator==(const Report&) const = default;
};

OptimalReport make_optimal_report(const std::vector<Int>& primitive, const SignedSquare& value);

std::string format_double12(double x);

json emit_report(const Report& r);
Report parse_report(const json& j);
std::string render_text(const Report& r);

// Shared exact-value JSON helpers.
json signed_square_json(const SignedSquare& s);
json rat_json(const Rat& r);            // string "p/q" or "p"
json vec_json(const Vec& v);
std::vector<long long> primitive_ll(const std::vector<Int>& prim);

} // namespace destab::cli
