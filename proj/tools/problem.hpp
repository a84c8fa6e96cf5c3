#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "destab/gauge.hpp"
#include "destab/gl.hpp"
#include "destab/torus.hpp"

namespace destab::cli {

using json = nlohmann::ordered_json;

// Parsed problem file: { "kind": ..., "payload": {...}, "metadata": {...} }.
struct ProblemFile {
    std::string kind;  // torus | hom | chain | bundle | pair | vector
    json payload;
    std::map<std::string, std::string> metadata;
};

ProblemFile parse_problem(const json& j);

struct TorusProblem {
    WeightSystem ws;
    StabilityParam tau;
    InnerProduct q;
    SupportVector v;
};

struct PairProblem {
    SubobjectLattice lattice;
    Rat tau;
};

TorusProblem parse_torus(const json& payload);
HomProblem parse_hom(const json& payload);
ChainProblem parse_chain(const json& payload);
SubobjectLattice parse_lattice(const json& payload);
PairProblem parse_pair(const json& payload);
Vec parse_vector_payload(const json& payload);

// Exact scalar ingestion: JSON integers or strings "p/q"; floats rejected.
Rat rat_at(const json& j, const std::string& path);
Vec vec_at(const json& j, const std::string& path);

} // namespace destab::cli
