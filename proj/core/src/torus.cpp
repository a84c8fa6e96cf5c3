#include "destab/torus.hpp"

#include <algorithm>

namespace destab {

void WeightSystem::validate() const {
    if (dim == 0)
        throw InvalidInput("weight system needs positive rank");
    for (const auto& w : weights) {
        if (w.chi.size() != dim)
            throw DimensionMismatch("weight covector has wrong length");
    }
    for (std::size_t i = 0; i < weights.size(); ++i)
        for (std::size_t j = i + 1; j < weights.size(); ++j) {
            if (weights[i].label == weights[j].label)
                throw InvalidInput("duplicate weight label: " + weights[i].label);
            if (weights[i].chi == weights[j].chi)
                throw InvalidInput("duplicate weight covector at labels " + weights[i].label +
                                   ", " + weights[j].label);
        }
}

const WeightSystem::Weight* WeightSystem::find(const std::string& label) const {
    for (const auto& w : weights)
        if (w.label == label) return &w;
    return nullptr;
}

std::vector<std::string> SupportVector::support() const {
    std::vector<std::string> out;
    for (const auto& [label, amp] : amp_sq)
        if (amp > 0) out.push_back(label);
    return out;
}

void SupportVector::validate(const WeightSystem& ws) const {
    for (const auto& [label, amp] : amp_sq) {
        if (amp < 0)
            throw InvalidInput("negative amplitude square at label " + label);
        if (!ws.find(label))
            throw InvalidInput("support label not in weight system: " + label);
    }
}

namespace {

void check_dims(const WeightSystem& ws, const StabilityParam& tau, const InnerProduct& q) {
    ws.validate();
    if (tau.tau.size() != ws.dim)
        throw DimensionMismatch("stability parameter has wrong length");
    if (q.dim() != ws.dim)
        throw DimensionMismatch("metric has wrong dimension");
}

} // namespace

ExtendedRat maximal_weight(const WeightSystem& ws, const StabilityParam& tau,
                           const InnerProduct& q, const SupportVector& v, const Vec& s) {
    check_dims(ws, tau, q);
    v.validate(ws);
    if (s.size() != ws.dim)
        throw DimensionMismatch("direction has wrong length");
    for (const auto& label : v.support()) {
        if (dot(ws.find(label)->chi, s) > 0)
            return ExtendedRat::infinity();
    }
    return ExtendedRat::finite(dot(tau.tau, s));
}

Rat initial_pairing(const WeightSystem& ws, const StabilityParam& tau, const InnerProduct& q,
                    const SupportVector& v, const Vec& s) {
    check_dims(ws, tau, q);
    v.validate(ws);
    if (s.size() != ws.dim)
        throw DimensionMismatch("direction has wrong length");
    Rat acc = dot(tau.tau, s);
    for (const auto& [label, amp] : v.amp_sq) {
        if (amp == 0) continue;
        acc += dot(ws.find(label)->chi, s) * amp / 2;
    }
    return acc;
}

PolyhedralCone support_cone(const WeightSystem& ws, const SupportVector& v) {
    std::vector<Vec> rows;
    for (const auto& label : v.support())
        rows.push_back(ws.find(label)->chi);
    return PolyhedralCone(ws.dim, rows);
}

TorusVerdict optimal_destabilizing(const WeightSystem& ws, const StabilityParam& tau,
                                   const InnerProduct& q, const SupportVector& v) {
    check_dims(ws, tau, q);
    v.validate(ws);
    PolyhedralCone cone = support_cone(ws, v);
    SphereMin min = min_linear_on_sphere_cone(q, cone, tau.tau);

    TorusVerdict verdict;
    verdict.min = min;
    verdict.semistable = min.infinite || min.value.sign >= 0;
    if (!verdict.semistable) {
        OptimalClass cls{*min.ray, min.value, *min.certificate};
        if (!check_kkt(q, cone, tau.tau, cls.ray))
            throw VerificationFailed("optimal ray fails its own KKT check");
        verdict.optimal = std::move(cls);
    }
    return verdict;
}

SupportVector limit_point(const WeightSystem& ws, const SupportVector& v, const Ray& ray) {
    ws.validate();
    v.validate(ws);
    SupportVector out;
    for (const auto& [label, amp] : v.amp_sq) {
        if (amp == 0) continue;
        Rat pairing = dot(ws.find(label)->chi, ray.direction);
        if (pairing > 0)
            throw DivergentFlow("supported weight " + label + " pairs positively with the ray");
        if (pairing == 0) out.amp_sq[label] = amp;
    }
    return out;
}

InducedProblem induced_problem(const WeightSystem& ws, const StabilityParam& tau,
                               const InnerProduct& q, const OptimalClass& optimal) {
    check_dims(ws, tau, q);
    if (optimal.ray.is_zero())
        throw ZeroRay("induced_problem: zero optimal ray");
    const Vec& p = optimal.ray.direction;

    InducedProblem out;
    out.weights.dim = ws.dim;
    for (const auto& w : ws.weights)
        if (dot(w.chi, p) == 0) out.weights.weights.push_back(w);

    // tau' = tau - (<tau,p>/<p,p>_Q) Q p; the sqrt normalization of the ray
    // cancels, so this stays rational.
    Rat scale = dot(tau.tau, p) / optimal.ray.norm_sq;
    out.tau_prime = vec_sub(tau.tau, vec_scale(scale, q.apply(p)));
    out.fixed_ray = optimal.ray;
    if (dot(out.tau_prime, p) != 0)
        throw VerificationFailed("tau' is not orthogonal to the optimal ray");
    return out;
}

LimitReport verify_limit_semistable(const WeightSystem& ws, const StabilityParam& tau,
                                    const InnerProduct& q, const SupportVector& v) {
    TorusVerdict verdict = optimal_destabilizing(ws, tau, q, v);
    if (verdict.semistable)
        throw NotDestabilizable("point is semistable, nothing to reduce");

    LimitReport report;
    report.optimal = *verdict.optimal;
    report.limit = limit_point(ws, v, report.optimal.ray);
    report.induced = induced_problem(ws, tau, q, report.optimal);
    report.tau_prime_pairing = dot(report.induced.tau_prime, report.optimal.ray.direction);

    StabilityParam tau_prime{report.induced.tau_prime};
    report.induced_verdict =
        optimal_destabilizing(report.induced.weights, tau_prime, q, report.limit);
    report.limit_semistable = report.induced_verdict.semistable;
    return report;
}

std::vector<Stratum> enumerate_strata(const WeightSystem& ws, const StabilityParam& tau,
                                      const InnerProduct& q) {
    check_dims(ws, tau, q);
    const std::size_t m = ws.weights.size();
    if (m > 16)
        throw CapacityExceeded("stratification cap is 16 weights");

    Stratum semistable_stratum;
    std::vector<Stratum> unstable;
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        SupportVector v;
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (std::size_t(1) << j)) {
                v.amp_sq[ws.weights[j].label] = 1;
                labels.push_back(ws.weights[j].label);
            }
        TorusVerdict verdict = optimal_destabilizing(ws, tau, q, v);
        if (verdict.semistable) {
            semistable_stratum.supports.push_back(labels);
            continue;
        }
        const OptimalClass& cls = *verdict.optimal;
        auto prim = cls.ray.primitive();
        auto it = std::find_if(unstable.begin(), unstable.end(), [&](const Stratum& s) {
            return s.ray->primitive() == prim;
        });
        if (it == unstable.end()) {
            Stratum s;
            s.ray = cls.ray;
            s.lambda_inf = cls.lambda_inf;
            s.supports.push_back(labels);
            unstable.push_back(std::move(s));
        } else {
            if (!(it->lambda_inf == cls.lambda_inf))
                throw VerificationFailed("equal rays with different optimal values");
            it->supports.push_back(labels);
        }
    }

    std::sort(unstable.begin(), unstable.end(), [](const Stratum& a, const Stratum& b) {
        return lex_less(a.ray->primitive(), b.ray->primitive());
    });
    std::vector<Stratum> out;
    if (!semistable_stratum.supports.empty())
        out.push_back(std::move(semistable_stratum));
    for (auto& s : unstable) out.push_back(std::move(s));
    return out;
}

HermitianClass hermitian_class(const Vec& s) {
    HermitianClass cls;
    if (s.empty()) return cls;
    Vec sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (const Rat& x : sorted) {
        if (cls.eigenvalues.empty() || cls.eigenvalues.back() != x) {
            cls.eigenvalues.push_back(x);
            cls.flag_dims.push_back(0);
        }
    }
    std::size_t cum = 0;
    std::size_t k = 0;
    for (const Rat& lam : cls.eigenvalues) {
        cum += std::count(sorted.begin(), sorted.end(), lam);
        cls.flag_dims[k++] = cum;
    }
    return cls;
}

} // namespace destab
