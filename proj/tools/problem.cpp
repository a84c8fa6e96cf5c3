#include "problem.hpp"

#include "destab/errors.hpp"

namespace destab::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InvalidInput(path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "/" + key, "missing field");
    return *it;
}

const json* opt_field(const json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

long long int_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
}

std::string str_at(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

} // namespace

Rat rat_at(const json& j, const std::string& path) {
    if (j.is_number_integer())
        return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const Error& e) {
            fail(path, e.what());
        }
    }
    fail(path, "expected an integer or a rational string \"p/q\"");
}

Vec vec_at(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    Vec v;
    std::size_t i = 0;
    for (const auto& x : j) v.push_back(rat_at(x, path + "/" + std::to_string(i++)));
    return v;
}

ProblemFile parse_problem(const json& j) {
    ProblemFile p;
    p.kind = str_at(field(j, "kind", ""), "/kind");
    static const char* kinds[] = {"torus", "hom", "chain", "bundle", "pair", "vector"};
    bool known = false;
    for (const char* k : kinds) known = known || p.kind == k;
    if (!known) fail("/kind", "unknown kind '" + p.kind + "'");
    p.payload = field(j, "payload", "");
    if (const json* meta = opt_field(j, "metadata")) {
        if (!meta->is_object()) fail("/metadata", "expected an object");
        for (const auto& [k, v] : meta->items())
            p.metadata[k] = str_at(v, "/metadata/" + k);
    }
    return p;
}

TorusProblem parse_torus(const json& payload) {
    const std::string base = "/payload";
    long long dim = int_at(field(payload, "dim", base), base + "/dim");
    if (dim < 1 || dim > 16) fail(base + "/dim", "dim must be in [1,16]");

    WeightSystem ws;
    ws.dim = static_cast<std::size_t>(dim);
    const json& weights = field(payload, "weights", base);
    if (!weights.is_array()) fail(base + "/weights", "expected an array");
    std::size_t wi = 0;
    for (const auto& w : weights) {
        std::string wp = base + "/weights/" + std::to_string(wi++);
        WeightSystem::Weight weight;
        weight.label = str_at(field(w, "label", wp), wp + "/label");
        weight.chi = vec_at(field(w, "chi", wp), wp + "/chi");
        if (weight.chi.size() != ws.dim) fail(wp + "/chi", "length must equal dim");
        ws.weights.push_back(std::move(weight));
    }

    Vec tau = vec_at(field(payload, "tau", base), base + "/tau");
    if (tau.size() != ws.dim) fail(base + "/tau", "length must equal dim");

    Mat gram = Mat::identity(ws.dim);
    if (const json* g = opt_field(payload, "gram")) {
        if (!g->is_array() || g->size() != ws.dim) fail(base + "/gram", "expected dim rows");
        std::size_t gi = 0;
        std::vector<Vec> rows;
        for (const auto& row : *g) {
            Vec r = vec_at(row, base + "/gram/" + std::to_string(gi++));
            if (r.size() != ws.dim) fail(base + "/gram", "expected dim columns");
            rows.push_back(std::move(r));
        }
        gram = Mat::from_rows(rows);
    }

    SupportVector v;
    if (const json* s = opt_field(payload, "support")) {
        if (!s->is_array()) fail(base + "/support", "expected an array");
        std::size_t si = 0;
        for (const auto& e : *s) {
            std::string sp = base + "/support/" + std::to_string(si++);
            std::string label = str_at(field(e, "label", sp), sp + "/label");
            Rat amp = rat_at(field(e, "amp_sq", sp), sp + "/amp_sq");
            if (amp < 0) fail(sp + "/amp_sq", "must be nonnegative");
            if (v.amp_sq.count(label)) fail(sp + "/label", "duplicate support label");
            v.amp_sq[label] = amp;
        }
    }

    try {
        TorusProblem p{std::move(ws), StabilityParam{std::move(tau)},
                       InnerProduct(std::move(gram)), std::move(v)};
        p.ws.validate();
        p.v.validate(p.ws);
        return p;
    } catch (const Error& e) {
        fail(base, e.what());
    }
}

HomProblem parse_hom(const json& payload) {
    const std::string base = "/payload";
    HomProblem p;
    p.t = rat_at(field(payload, "t", base), base + "/t");
    const json& m = field(payload, "matrix", base);
    if (!m.is_array() || m.empty()) fail(base + "/matrix", "expected a nonempty array of rows");
    std::vector<Vec> rows;
    std::size_t ri = 0;
    for (const auto& row : m)
        rows.push_back(vec_at(row, base + "/matrix/" + std::to_string(ri++)));
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) fail(base + "/matrix", "ragged rows");
    p.f = Mat::from_rows(rows);
    try {
        p.validate();
    } catch (const Error& e) {
        fail(base, e.what());
    }
    return p;
}

ChainProblem parse_chain(const json& payload) {
    const std::string base = "/payload";
    ChainProblem p;
    const json& ts = field(payload, "t", base);
    if (!ts.is_array()) fail(base + "/t", "expected an array");
    std::size_t ti = 0;
    for (const auto& t : ts) p.t.push_back(rat_at(t, base + "/t/" + std::to_string(ti++)));

    const json& ms = field(payload, "matrices", base);
    if (!ms.is_array()) fail(base + "/matrices", "expected an array");
    std::size_t mi = 0;
    for (const auto& m : ms) {
        std::string mp = base + "/matrices/" + std::to_string(mi++);
        if (!m.is_array() || m.empty()) fail(mp, "expected a nonempty array of rows");
        std::vector<Vec> rows;
        std::size_t ri = 0;
        for (const auto& row : m) rows.push_back(vec_at(row, mp + "/" + std::to_string(ri++)));
        for (const auto& r : rows)
            if (r.size() != rows[0].size()) fail(mp, "ragged rows");
        p.maps.push_back(Mat::from_rows(rows));
    }
    try {
        p.validate();
    } catch (const Error& e) {
        fail(base, e.what());
    }
    return p;
}

SubobjectLattice parse_lattice(const json& payload) {
    const std::string base = "/payload";
    const json& ns = field(payload, "nodes", base);
    if (!ns.is_array()) fail(base + "/nodes", "expected an array");
    std::vector<LatticeNode> nodes;
    std::size_t ni = 0;
    for (const auto& n : ns) {
        std::string np = base + "/nodes/" + std::to_string(ni++);
        LatticeNode node;
        node.label = str_at(field(n, "label", np), np + "/label");
        node.rank = static_cast<long>(int_at(field(n, "rank", np), np + "/rank"));
        node.degree = static_cast<long>(int_at(field(n, "degree", np), np + "/degree"));
        if (const json* phi = opt_field(n, "contains_phi")) {
            if (!phi->is_boolean()) fail(np + "/contains_phi", "expected a boolean");
            node.contains_phi = phi->get<bool>();
        }
        nodes.push_back(std::move(node));
    }
    std::vector<std::pair<std::string, std::string>> order;
    if (const json* os = opt_field(payload, "order")) {
        if (!os->is_array()) fail(base + "/order", "expected an array");
        std::size_t oi = 0;
        for (const auto& o : *os) {
            std::string op = base + "/order/" + std::to_string(oi++);
            if (!o.is_array() || o.size() != 2) fail(op, "expected a pair [sub, super]");
            order.emplace_back(str_at(o[0], op + "/0"), str_at(o[1], op + "/1"));
        }
    }
    try {
        return SubobjectLattice(std::move(nodes), order);
    } catch (const Error& e) {
        fail(base, e.what());
    }
}

PairProblem parse_pair(const json& payload) {
    Rat tau = rat_at(field(payload, "tau", "/payload"), "/payload/tau");
    return PairProblem{parse_lattice(payload), std::move(tau)};
}

Vec parse_vector_payload(const json& payload) {
    Vec s = vec_at(field(payload, "s", "/payload"), "/payload/s");
    if (s.empty()) fail("/payload/s", "expected a nonempty vector");
    return s;
}

} // namespace destab::cli
