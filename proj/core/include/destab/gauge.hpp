#pragma once

#include <optional>
#include <string>
#include <vector>

#include "destab/cone.hpp"

namespace destab {

// A declared finite lattice of subobjects carrying rank/degree/phi data.
// This is the combinatorial shadow of a sheaf with chosen subsheaves:
// saturation and torsion subtleties are the input author's responsibility.
struct LatticeNode {
    std::string label;
    long rank = 0;
    long degree = 0;
    bool contains_phi = false;  // node contains im(phi); 0 flagged <=> phi = 0
};

class SubobjectLattice {
public:
    SubobjectLattice(std::vector<LatticeNode> nodes,
                     const std::vector<std::pair<std::string, std::string>>& order_pairs);

    std::size_t size() const { return nodes_.size(); }
    const LatticeNode& node(std::size_t i) const { return nodes_[i]; }
    bool leq(std::size_t i, std::size_t j) const { return leq_[i * nodes_.size() + j]; }
    std::size_t bottom() const { return bottom_; }
    std::size_t top() const { return top_; }
    std::size_t index_of(const std::string& label) const;

    bool phi_zero() const { return nodes_[bottom_].contains_phi; }
    Rat slope() const;                                // deg(E)/rk(E)
    Rat step_slope(std::size_t lo, std::size_t hi) const;  // slope of hi/lo
    std::vector<std::size_t> strictly_between(std::size_t lo, std::size_t hi) const;
    std::vector<std::size_t> strictly_above(std::size_t lo) const;

    /// All chains bottom = X_0 < X_1 < ... < X_j = top, as node indices
    /// excluding the bottom. Deterministic order.
    std::vector<std::vector<std::size_t>> all_chains() const;

private:
    std::vector<LatticeNode> nodes_;
    std::vector<char> leq_;
    std::size_t bottom_ = 0, top_ = 0;
};

struct HNStep {
    long rank = 0;
    long degree = 0;

    Rat slope() const { return Rat(degree) / Rat(rank); }
    bool operator==(const HNStep&) const = default;
};

struct HNType {
    std::vector<HNStep> steps;

    std::size_t size() const { return steps.size(); }
    long total_rank() const;
    long total_degree() const;
    Rat total_slope() const { return Rat(total_degree()) / Rat(total_rank()); }
    bool slopes_strictly_decreasing() const;
};

struct HNResult {
    std::vector<std::string> chain;  // labels, bottom excluded, last = top
    HNType type;
};

/// Greedy Harder-Narasimhan chain within the lattice: repeatedly the
/// maximal-slope (then maximal-rank) subobject above the current one. The
/// result is verified against both characterizing conditions and, for
/// lattices of at most 12 nodes, against exhaustive chain enumeration.
HNResult hn_filtration(const SubobjectLattice& lattice);

/// sum_i (d_i - mu(E) r_i) lambda_i, the gauge maximal weight of a
/// filtration-compatible element with the given step eigenvalues.
Rat bundle_max_weight(const HNType& type, const std::vector<Rat>& lam);

struct BundleOptimal {
    Vec ray;                  // p_i = mu(E) - mu_i, strictly increasing
    SignedSquare lambda_inf;  // -sqrt(sum r_i (mu_i - mu(E))^2)
};

/// Closed-form optimal destabilizer of a non-semistable HN type.
BundleOptimal bundle_optimal(const HNType& type);

/// Solver route for the same minimum: metric diag(r_i), ordering cone
/// lambda_1 <= ... <= lambda_k, plus lambda_l <= 0 when a phi step is given.
SphereMin minimize_over_type_cone(const HNType& type, std::optional<std::size_t> phi_step,
                                  const Rat& trace_coef);

/// tau-semistability of a declared pair lattice (conditions over the
/// declared proper nodes). Requires mu(E) <= tau.
bool pair_semistable(const SubobjectLattice& lattice, const Rat& tau);

enum class PairCase { A, B, C };

struct PairHN {
    std::vector<std::string> chain;
    std::size_t m = 0;  // slopes cross tau between steps m and m+1
    PairCase which = PairCase::C;
    HNType type;
    std::optional<std::size_t> phi_step;  // 1-based minimal step containing im(phi)
};

/// The unique tau-Harder-Narasimhan filtration of a non-semistable pair,
/// found by exhaustive (chain, breakpoint) search and condition checking.
PairHN pair_hn(const SubobjectLattice& lattice, const Rat& tau);

/// Pair maximal weight: +infinity when the phi step has positive
/// eigenvalue, else sum (d_i - tau r_i) lambda_i.
ExtendedRat pair_max_weight(const HNType& type, std::optional<std::size_t> phi_step,
                            const Rat& tau, const std::vector<Rat>& lam);

struct PairOptimal {
    Vec ray;
    SignedSquare lambda_inf;
    PairCase which;
};

/// Closed-form optimal destabilizer of a tau-HN breakpoint type; when
/// im(phi) sits outside E_m the (m+1)-th entry is clamped to zero.
PairOptimal pair_optimal(const HNType& type, std::optional<std::size_t> phi_step, std::size_t m,
                         const Rat& tau);

struct LimitObject {
    std::vector<HNStep> steps;
    std::optional<std::size_t> phi_bar_step;  // step carrying the induced morphism
};

/// Quotient list the flow converges to, with the induced morphism attached
/// to step m+1 exactly when im(phi) is not contained in E_m.
LimitObject limit_object(const HNType& type, std::optional<std::size_t> phi_step, std::size_t m);

struct GlobalOptimal {
    bool semistable = false;
    std::vector<std::string> chain;  // the (tau-)HN chain
    Vec ray;
    SignedSquare lambda_inf;
};

/// Minimizes the weight form over the eigenvalue cone of every chain in the
/// lattice and verifies the minimum is attained exactly on the (tau-)HN
/// chain with the closed-form value. tau empty = bundle problem.
GlobalOptimal global_optimal_over_lattice(const SubobjectLattice& lattice,
                                          const std::optional<Rat>& tau);

} // namespace destab
