#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "destab/cone.hpp"

namespace destab {

// Linear torus action data: a finite set of weight covectors on Q^n.
struct WeightSystem {
    struct Weight {
        std::string label;
        Vec chi;
    };
    std::size_t dim = 0;
    std::vector<Weight> weights;

    void validate() const;  // distinct weights, unique labels, lengths
    const Weight* find(const std::string& label) const;
};

struct StabilityParam {
    Vec tau;
};

// Component data of a point: only |v_chi|^2 and the support ever enter the
// weight computations, so that is all we keep.
struct SupportVector {
    std::map<std::string, Rat> amp_sq;

    std::vector<std::string> support() const;  // labels with amp_sq > 0
    void validate(const WeightSystem& ws) const;
};

struct OptimalClass {
    Ray ray;
    SignedSquare lambda_inf;  // sign is always -1
    KktCertificate certificate;
};

struct TorusVerdict {
    bool semistable = true;
    SphereMin min;                        // raw solver outcome
    std::optional<OptimalClass> optimal;  // present iff !semistable
};

// Weight data of the reduced problem after flowing along an optimal ray:
// the weights orthogonal to the ray and the shifted stability parameter.
struct InducedProblem {
    WeightSystem weights;
    Vec tau_prime;
    Ray fixed_ray;
};

struct LimitReport {
    OptimalClass optimal;
    SupportVector limit;
    InducedProblem induced;
    Rat tau_prime_pairing;  // <tau', ray>, exactly zero
    TorusVerdict induced_verdict;
    bool limit_semistable = false;
};

struct Stratum {
    std::optional<Ray> ray;  // empty = the semistable stratum
    SignedSquare lambda_inf; // meaningful only when ray is set
    std::vector<std::vector<std::string>> supports;
};

struct HermitianClass {
    std::vector<Rat> eigenvalues;   // strictly increasing
    std::vector<std::size_t> flag_dims;  // cumulative dimensions
};

/// +infinity when some supported weight pairs positively with s, else <tau,s>.
ExtendedRat maximal_weight(const WeightSystem& ws, const StabilityParam& tau,
                           const InnerProduct& q, const SupportVector& v, const Vec& s);

/// The t=0 moment pairing: 1/2 sum <chi,s> |v_chi|^2 + <tau,s>.
Rat initial_pairing(const WeightSystem& ws, const StabilityParam& tau, const InnerProduct& q,
                    const SupportVector& v, const Vec& s);

/// The cone of descent directions of the supported weights.
PolyhedralCone support_cone(const WeightSystem& ws, const SupportVector& v);

/// Minimizes the maximal weight over the unit sphere; semistable iff the
/// minimum is >= 0 (including the empty-slice convention for cone {0}).
TorusVerdict optimal_destabilizing(const WeightSystem& ws, const StabilityParam& tau,
                                   const InnerProduct& q, const SupportVector& v);

/// Components fixed by the flow survive, decaying ones vanish; a supported
/// weight pairing positively with the ray is a DivergentFlow error.
SupportVector limit_point(const WeightSystem& ws, const SupportVector& v, const Ray& ray);

InducedProblem induced_problem(const WeightSystem& ws, const StabilityParam& tau,
                               const InnerProduct& q, const OptimalClass& optimal);

/// Full semistable-reduction pipeline for a non-semistable point; the limit
/// must be semistable for the induced problem.
LimitReport verify_limit_semistable(const WeightSystem& ws, const StabilityParam& tau,
                                    const InnerProduct& q, const SupportVector& v);

/// Optimal classes of all 2^|R| support subsets, grouped by primitive ray.
/// The semistable stratum comes first (when nonempty), then rays in
/// lexicographic order.
std::vector<Stratum> enumerate_strata(const WeightSystem& ws, const StabilityParam& tau,
                                      const InnerProduct& q);

/// Eigenvalue/flag class data of a torus Hermitian element.
HermitianClass hermitian_class(const Vec& s);

} // namespace destab
