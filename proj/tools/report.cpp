#include "report.hpp"

#include <cstdio>

#include "destab/errors.hpp"

namespace destab::cli {

std::string format_double12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::vector<long long> primitive_ll(const std::vector<Int>& prim) {
    std::vector<long long> out;
    out.reserve(prim.size());
    for (const Int& x : prim) {
        if (!x.fits_slong_p())
            throw CapacityExceeded("primitive ray entry exceeds 64 bits");
        out.push_back(x.get_si());
    }
    return out;
}

OptimalReport make_optimal_report(const std::vector<Int>& primitive, const SignedSquare& value) {
    OptimalReport r;
    r.ray = primitive_ll(primitive);
    r.sign = value.sign;
    r.square = rat_str(value.square);
    r.float_approx = format_double12(value.to_double());
    return r;
}

json rat_json(const Rat& r) {
    return json(rat_str(r));
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

json signed_square_json(const SignedSquare& s) {
    json j = json::object();
    j["sign"] = s.sign;
    j["square"] = rat_str(s.square);
    return j;
}

json emit_report(const Report& r) {
    json j = json::object();
    j["tool_version"] = r.tool_version;
    j["kind"] = r.kind;
    if (r.verdict) j["verdict"] = *r.verdict;
    if (r.optimal) {
        json o = json::object();
        o["ray"] = r.optimal->ray;
        json li = json::object();
        li["sign"] = r.optimal->sign;
        li["square"] = r.optimal->square;
        o["lambda_inf"] = li;
        o["float_approx"] = r.optimal->float_approx;
        j["optimal"] = o;
    }
    for (const auto& [key, val] : r.stage.items()) j[key] = val;
    return j;
}

Report parse_report(const json& j) {
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    if (j.contains("verdict")) r.verdict = j.at("verdict").get<std::string>();
    if (j.contains("optimal")) {
        OptimalReport o;
        o.ray = j.at("optimal").at("ray").get<std::vector<long long>>();
        o.sign = j.at("optimal").at("lambda_inf").at("sign").get<int>();
        o.square = j.at("optimal").at("lambda_inf").at("square").get<std::string>();
        o.float_approx = j.at("optimal").at("float_approx").get<std::string>();
        r.optimal = std::move(o);
    }
    r.stage = json::object();
    for (const auto& [key, val] : j.items()) {
        if (key == "tool_version" || key == "kind" || key == "verdict" || key == "optimal")
            continue;
        r.stage[key] = val;
    }
    return r;
}

namespace {

void render_json_lines(const json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            std::string p = prefix.empty() ? key : prefix + "." + key;
            render_json_lines(val, p, out);
        }
    } else if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j)
            if (v.is_object() || v.is_array()) scalars = false;
        if (scalars) {
            out += prefix + ": " + j.dump() + "\n";
        } else {
            std::size_t i = 0;
            for (const auto& v : j) render_json_lines(v, prefix + "[" + std::to_string(i++) + "]", out);
        }
    } else {
        out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}

} // namespace

std::string render_text(const Report& r) {
    std::string out;
    out += r.tool_version;
    out += "\nkind: " + r.kind + "\n";
    if (r.verdict) out += "verdict: " + *r.verdict + "\n";
    if (r.optimal) {
        out += "optimal.ray: " + json(r.optimal->ray).dump() + "\n";
        out += "optimal.lambda_inf: sign=" + std::to_string(r.optimal->sign) + " square=" +
               r.optimal->square + " (~" + r.optimal->float_approx + ")\n";
    }
    render_json_lines(r.stage, "", out);
    return out;
}

} // namespace destab::cli
