#include "run.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "destab/gauge.hpp"
#include "destab/gl.hpp"
#include "destab/torus.hpp"
#include "problem.hpp"
#include "report.hpp"
#include "verify.hpp"

namespace destab::cli {

namespace {

struct Options {
    std::string subcommand;
    std::string input;
    std::string format = "text";
    bool verify = false;
    std::uint64_t seed = 0;
};

json min_value_json(const SphereMin& min) {
    if (min.infinite) {
        json j = json::object();
        j["infinite"] = true;
        return j;
    }
    return signed_square_json(min.value);
}

json certificate_json(const KktCertificate& cert) {
    json j = json::object();
    j["active_set"] = cert.active_set;
    json mult = json::array();
    for (const auto& m : cert.multipliers) mult.push_back(rat_str(m));
    j["multipliers"] = mult;
    return j;
}

json hermitian_class_json(const HermitianClass& cls) {
    json j = json::object();
    json eig = json::array();
    for (const auto& e : cls.eigenvalues) eig.push_back(rat_str(e));
    j["eigenvalues"] = eig;
    j["flag_dims"] = cls.flag_dims;
    return j;
}

json support_json(const SupportVector& v) {
    json a = json::array();
    for (const auto& [label, amp] : v.amp_sq) {
        if (amp == 0) continue;
        json e = json::object();
        e["label"] = label;
        e["amp_sq"] = rat_str(amp);
        a.push_back(e);
    }
    return a;
}

json mat_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json type_json(const HNType& type) {
    json a = json::array();
    for (const auto& s : type.steps) a.push_back(json::array({s.rank, s.degree}));
    return a;
}

void attach_optimal(Report& r, const Vec& direction, const SignedSquare& value) {
    r.optimal = make_optimal_report(primitive_integer(direction), value);
}

// ---- torus subcommands ------------------------------------------------

Report report_torus_base(const TorusProblem& p, const TorusVerdict& verdict) {
    Report r;
    r.kind = "torus";
    r.verdict = verdict.semistable ? "semistable" : "unstable";
    r.stage["min_value"] = min_value_json(verdict.min);
    if (!verdict.semistable)
        attach_optimal(r, verdict.optimal->ray.direction, verdict.optimal->lambda_inf);
    return r;
}

void attach_torus_verify(Report& r, const TorusProblem& p, const TorusVerdict& verdict,
                         const Options& opt) {
    json v = json::object();
    if (!verdict.semistable) {
        bool unique = torus_unique_optimal(p.ws, p.tau, p.q, p.v, verdict.optimal->ray);
        v["unique_optimal"] = unique;
        GridOracle grid = torus_grid_oracle(p.ws, p.tau, p.q, p.v, verdict.optimal->lambda_inf,
                                            100000, opt.seed);
        v["grid_samples"] = grid.samples_total;
        v["grid_feasible"] = grid.samples_feasible;
        v["grid_beats_exact"] = grid.beats_exact;
        if (!unique || grid.beats_exact)
            throw VerificationFailed("torus optimum failed verification");
    } else {
        v["semistable"] = true;
    }
    r.stage["verify"] = v;
}

Report run_check(const TorusProblem& p, const Options& opt) {
    TorusVerdict verdict = optimal_destabilizing(p.ws, p.tau, p.q, p.v);
    Report r = report_torus_base(p, verdict);
    if (opt.verify) attach_torus_verify(r, p, verdict, opt);
    return r;
}

Report run_destab(const TorusProblem& p, const Options& opt) {
    TorusVerdict verdict = optimal_destabilizing(p.ws, p.tau, p.q, p.v);
    Report r = report_torus_base(p, verdict);
    if (!verdict.semistable) {
        r.stage["certificate"] = certificate_json(verdict.optimal->certificate);
        r.stage["ray_class"] = hermitian_class_json(hermitian_class(verdict.optimal->ray.direction));
    }
    if (opt.verify) attach_torus_verify(r, p, verdict, opt);
    return r;
}

Report run_limit(const TorusProblem& p, const Options& opt) {
    TorusVerdict verdict = optimal_destabilizing(p.ws, p.tau, p.q, p.v);
    Report r = report_torus_base(p, verdict);
    if (verdict.semistable) {
        r.stage["note"] = "point is semistable; no reduction";
        return r;
    }
    LimitReport lim = verify_limit_semistable(p.ws, p.tau, p.q, p.v);
    r.stage["limit_support"] = support_json(lim.limit);
    json ind = json::object();
    json wts = json::array();
    for (const auto& w : lim.induced.weights.weights) {
        json e = json::object();
        e["label"] = w.label;
        e["chi"] = vec_json(w.chi);
        wts.push_back(e);
    }
    ind["weights"] = wts;
    ind["tau_prime"] = vec_json(lim.induced.tau_prime);
    ind["tau_prime_pairing"] = rat_str(lim.tau_prime_pairing);
    r.stage["induced"] = ind;
    r.stage["limit_semistable"] = lim.limit_semistable;
    if (opt.verify) {
        attach_torus_verify(r, p, verdict, opt);
        if (!lim.limit_semistable)
            throw VerificationFailed("limit point is not semistable for the induced problem");
    }
    return r;
}

Report run_strata(const TorusProblem& p, const Options& opt) {
    auto strata = enumerate_strata(p.ws, p.tau, p.q);
    // presentation order: lambda_inf descending (semistable first), then ray
    std::vector<const Stratum*> view;
    for (const auto& s : strata) view.push_back(&s);
    std::sort(view.begin(), view.end(), [](const Stratum* a, const Stratum* b) {
        if (!a->ray != !b->ray) return !a->ray;  // semistable stratum first
        if (!a->ray) return false;
        if (!(a->lambda_inf == b->lambda_inf)) return b->lambda_inf < a->lambda_inf;
        return lex_less(a->ray->primitive(), b->ray->primitive());
    });

    Report r;
    r.kind = "torus";
    r.verdict = std::nullopt;
    json arr = json::array();
    std::size_t total_supports = 0;
    for (const Stratum* s : view) {
        json e = json::object();
        if (s->ray) {
            e["ray"] = primitive_ll(s->ray->primitive());
            e["lambda_inf"] = signed_square_json(s->lambda_inf);
        } else {
            e["semistable"] = true;
        }
        json sup = json::array();
        for (const auto& labels : s->supports) sup.push_back(labels);
        e["supports"] = sup;
        total_supports += s->supports.size();
        arr.push_back(e);
    }
    r.stage["strata"] = arr;
    r.stage["stratum_count"] = view.size();
    if (opt.verify) {
        json v = json::object();
        v["support_subsets"] = total_supports;
        v["partition_complete"] =
            total_supports == (std::size_t(1) << p.ws.weights.size());
        if (total_supports != (std::size_t(1) << p.ws.weights.size()))
            throw VerificationFailed("strata do not partition the support subsets");
        r.stage["verify"] = v;
    }
    return r;
}

// ---- hom / chain ------------------------------------------------------

Report run_hom(const HomProblem& p, const Options& opt) {
    HomOptimal res = hom_optimal(p);
    Report r;
    r.kind = "hom";
    r.verdict = res.semistable ? "semistable" : "unstable";
    r.stage["kernel_dim"] = res.kernel_dim;
    if (!res.semistable) {
        Vec flat;
        for (std::size_t i = 0; i < res.neg_projector.rows(); ++i)
            for (std::size_t j = 0; j < res.neg_projector.cols(); ++j)
                flat.push_back(res.neg_projector.at(i, j));
        attach_optimal(r, flat, res.lambda_inf);
        r.stage["kernel_basis"] = mat_json(res.kernel);
        r.stage["neg_projector"] = mat_json(res.neg_projector);
    }
    if (opt.verify) {
        json v = json::object();
        bool ok = res.semistable || hom_cross_check(p);
        v["torus_cross_check"] = ok;
        if (!ok) throw VerificationFailed("hom cross-check failed");
        r.stage["verify"] = v;
    }
    return r;
}

Report run_chain(const ChainProblem& p, const Options& opt) {
    ChainInvariants inv = chain_invariants(p);
    bool ss = chain_semistable(p);
    Report r;
    r.kind = "chain";
    r.verdict = ss ? "semistable" : "unstable";
    json dims = json::array();
    for (std::size_t i = 0; i <= p.length(); ++i) dims.push_back(p.dim_v(i));
    r.stage["dims"] = dims;
    r.stage["rho"] = inv.rho;
    json kers = json::array();
    for (const auto& e : inv.e_bases) kers.push_back(e.cols());
    r.stage["kernel_dims"] = kers;
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < p.length(); ++i)
        if (p.dim_v(i) > p.dim_v(i + 1)) monotone = false;
    r.stage["monotone_dims"] = monotone;
    if (!ss) {
        ChainLimit lim = chain_limit(p);
        json maps = json::array();
        for (const auto& m : lim.induced_maps)
            maps.push_back(json::array({m.rows(), m.cols()}));
        r.stage["limit"] = json::object();
        r.stage["limit"]["induced_map_shapes"] = maps;
        r.stage["limit"]["stable"] = lim.stable;
    }
    if (opt.verify) {
        json v = json::object();
        bool consistent = true;
        for (std::size_t i = 0; i < p.length(); ++i)
            if ((inv.rho[i] == p.dim_v(i)) != (inv.e_bases[i].cols() == 0)) consistent = false;
        bool rank_iff = ss;
        for (std::size_t i = 0; i < p.length(); ++i)
            if (rank(p.maps[i]) != p.maps[i].cols()) rank_iff = false;
        v["kernel_rank_consistent"] = consistent;
        v["limit_stable"] = ss || chain_limit(p).stable;
        if (!consistent || !(ss || chain_limit(p).stable))
            throw VerificationFailed("chain verification failed");
        r.stage["verify"] = v;
    }
    return r;
}

// ---- bundle / pair ----------------------------------------------------

Report run_bundle(const SubobjectLattice& lattice, const Options& opt) {
    HNResult hn = hn_filtration(lattice);
    Report r;
    r.kind = "bundle";
    r.stage["chain"] = hn.chain;
    r.stage["type"] = type_json(hn.type);
    if (hn.type.size() == 1) {
        r.verdict = "semistable";
        return r;
    }
    r.verdict = "unstable";
    BundleOptimal opt_ray = bundle_optimal(hn.type);
    attach_optimal(r, opt_ray.ray, opt_ray.lambda_inf);
    LimitObject lim = limit_object(hn.type, std::nullopt, hn.type.size());
    json steps = json::array();
    for (const auto& s : lim.steps) steps.push_back(json::array({s.rank, s.degree}));
    r.stage["limit_object"] = steps;
    if (opt.verify) {
        json v = json::object();
        SphereMin solver = minimize_over_type_cone(hn.type, std::nullopt, hn.type.total_slope());
        bool match = !solver.infinite && solver.value == opt_ray.lambda_inf && solver.ray &&
                     solver.ray->primitive() == primitive_integer(opt_ray.ray);
        v["solver_matches"] = match;
        GlobalOptimal glob = global_optimal_over_lattice(lattice, std::nullopt);
        v["global_optimal_matches"] =
            !glob.semistable && glob.lambda_inf == opt_ray.lambda_inf && glob.chain == hn.chain;
        if (!match || glob.semistable || !(glob.lambda_inf == opt_ray.lambda_inf))
            throw VerificationFailed("bundle closed form disagrees with the cone solver");
        r.stage["verify"] = v;
    }
    return r;
}

Report run_pair(const PairProblem& p, const Options& opt) {
    Report r;
    r.kind = "pair";
    r.stage["tau"] = rat_str(p.tau);
    bool ss;
    try {
        ss = pair_semistable(p.lattice, p.tau);
    } catch (const TopologicalConditionViolated&) {
        throw;
    }
    if (ss) {
        r.verdict = "semistable";
        return r;
    }
    r.verdict = "unstable";
    PairHN hn = pair_hn(p.lattice, p.tau);
    r.stage["chain"] = hn.chain;
    r.stage["type"] = type_json(hn.type);
    r.stage["m"] = hn.m;
    r.stage["case"] = hn.which == PairCase::A ? "a" : (hn.which == PairCase::B ? "b" : "c");
    if (hn.phi_step)
        r.stage["phi_step"] = *hn.phi_step;
    else
        r.stage["phi_step"] = "none";
    PairOptimal opt_ray = pair_optimal(hn.type, hn.phi_step, hn.m, p.tau);
    attach_optimal(r, opt_ray.ray, opt_ray.lambda_inf);
    LimitObject lim = limit_object(hn.type, hn.phi_step, hn.m);
    json steps = json::array();
    for (const auto& s : lim.steps) steps.push_back(json::array({s.rank, s.degree}));
    r.stage["limit_object"] = steps;
    if (lim.phi_bar_step)
        r.stage["phi_bar_step"] = *lim.phi_bar_step;
    if (opt.verify) {
        json v = json::object();
        SphereMin solver = minimize_over_type_cone(hn.type, hn.phi_step, p.tau);
        bool match = !solver.infinite && solver.value == opt_ray.lambda_inf && solver.ray &&
                     solver.ray->primitive() == primitive_integer(opt_ray.ray);
        v["solver_matches"] = match;
        bool clamp = hn.phi_step && *hn.phi_step == hn.m + 1;
        if (clamp) {
            v["clamp_entry_zero"] = opt_ray.ray[hn.m] == 0;
            Rat expected_mult = Rat(hn.type.steps[hn.m].rank) *
                                (p.tau - hn.type.steps[hn.m].slope());
            v["clamp_multiplier"] = rat_str(expected_mult);
            if (opt_ray.ray[hn.m] != 0 || expected_mult < 0)
                throw VerificationFailed("pair clamp certificate failed");
        }
        GlobalOptimal glob = global_optimal_over_lattice(p.lattice, p.tau);
        v["global_optimal_matches"] =
            !glob.semistable && glob.lambda_inf == opt_ray.lambda_inf && glob.chain == hn.chain;
        if (!match || glob.semistable || !(glob.lambda_inf == opt_ray.lambda_inf))
            throw VerificationFailed("pair closed form disagrees with the cone solver");
        r.stage["verify"] = v;
    }
    return r;
}

Report run_class(const Vec& s) {
    Report r;
    r.kind = "vector";
    HermitianClass cls = hermitian_class(s);
    r.stage["class"] = hermitian_class_json(cls);
    return r;
}

Report dispatch(const Options& opt, const ProblemFile& problem) {
    auto need_kind = [&](const char* kind) {
        if (problem.kind != kind)
            throw InvalidInput("/kind: subcommand '" + opt.subcommand + "' needs kind '" +
                               kind + "', got '" + problem.kind + "'");
    };
    if (opt.subcommand == "check" || opt.subcommand == "destab" || opt.subcommand == "limit" ||
        opt.subcommand == "strata") {
        need_kind("torus");
        TorusProblem p = parse_torus(problem.payload);
        if (opt.subcommand == "check") return run_check(p, opt);
        if (opt.subcommand == "destab") return run_destab(p, opt);
        if (opt.subcommand == "limit") return run_limit(p, opt);
        return run_strata(p, opt);
    }
    if (opt.subcommand == "hom") {
        need_kind("hom");
        return run_hom(parse_hom(problem.payload), opt);
    }
    if (opt.subcommand == "chain") {
        need_kind("chain");
        return run_chain(parse_chain(problem.payload), opt);
    }
    if (opt.subcommand == "bundle-hn") {
        need_kind("bundle");
        return run_bundle(parse_lattice(problem.payload), opt);
    }
    if (opt.subcommand == "pair-hn") {
        need_kind("pair");
        return run_pair(parse_pair(problem.payload), opt);
    }
    if (opt.subcommand == "class") {
        need_kind("vector");
        return run_class(parse_vector_payload(problem.payload));
    }
    throw InvalidInput("unknown subcommand: " + opt.subcommand);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"exact destabilizing-vector computations", "destab"};
    app.require_subcommand(1);
    static const char* subs[] = {"check",  "destab",    "limit",   "strata", "hom",
                                 "chain",  "bundle-hn", "pair-hn", "class"};
    static const char* descs[] = {
        "semistability verdict of a torus instance",
        "optimal destabilizing ray with certificate",
        "limit point and induced problem of a torus instance",
        "stratification over all support subsets",
        "closed-form destabilizer of a linear map problem",
        "rank invariants and limit of a chain problem",
        "Harder-Narasimhan data of a bundle lattice",
        "tau-Harder-Narasimhan data of a pair lattice",
        "eigenvalue class data of a vector"};
    std::vector<CLI::App*> sub_apps;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* s = app.add_subcommand(subs[i], descs[i]);
        s->add_option("--input", opt.input, "problem JSON file")->required();
        s->add_option("--format", opt.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        s->add_flag("--verify", opt.verify, "run brute-force oracles");
        s->add_option("--seed", opt.seed, "seed for randomized self-tests");
        sub_apps.push_back(s);
    }

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }
    for (std::size_t i = 0; i < sub_apps.size(); ++i)
        if (sub_apps[i]->parsed()) opt.subcommand = subs[i];

    try {
        std::ifstream in(opt.input);
        if (!in)
            throw InvalidInput("cannot open input file: " + opt.input);
        json parsed;
        try {
            parsed = json::parse(in);
        } catch (const json::parse_error& e) {
            throw InvalidInput(std::string("input is not valid JSON: ") + e.what());
        }
        ProblemFile problem = parse_problem(parsed);
        Report report = dispatch(opt, problem);
        if (opt.format == "json")
            out << emit_report(report).dump(2) << "\n";
        else
            out << render_text(report);
        return 0;
    } catch (const CapacityExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const VerificationFailed& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace destab::cli
