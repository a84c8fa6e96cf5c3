#include "destab/gauge.hpp"

#include <algorithm>

namespace destab {

SubobjectLattice::SubobjectLattice(std::vector<LatticeNode> nodes,
                                   const std::vector<std::pair<std::string, std::string>>& order_pairs)
    : nodes_(std::move(nodes)) {
    const std::size_t n = nodes_.size();
    if (n < 2)
        throw NotALattice("lattice needs at least bottom and top");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes_[i].label == nodes_[j].label)
                throw NotALattice("duplicate node label: " + nodes_[i].label);

    // bottom: the unique rank-0 node, with degree 0
    std::optional<std::size_t> bot;
    for (std::size_t i = 0; i < n; ++i) {
        if (nodes_[i].rank == 0) {
            if (bot)
                throw NotALattice("two rank-0 nodes");
            if (nodes_[i].degree != 0)
                throw NotALattice("bottom node must have degree 0");
            bot = i;
        } else if (nodes_[i].rank < 0) {
            throw NotALattice("negative rank at node " + nodes_[i].label);
        }
    }
    if (!bot)
        throw NotALattice("no rank-0 bottom node");
    bottom_ = *bot;

    // top: the unique node of maximal rank
    std::size_t top = bottom_;
    for (std::size_t i = 0; i < n; ++i)
        if (nodes_[i].rank > nodes_[top].rank) top = i;
    for (std::size_t i = 0; i < n; ++i)
        if (i != top && nodes_[i].rank == nodes_[top].rank)
            throw NotALattice("two nodes of maximal rank");
    top_ = top;

    leq_.assign(n * n, 0);
    auto set_leq = [&](std::size_t i, std::size_t j) { leq_[i * n + j] = 1; };
    for (std::size_t i = 0; i < n; ++i) {
        set_leq(i, i);
        set_leq(bottom_, i);
        set_leq(i, top_);
    }
    for (const auto& [a, b] : order_pairs)
        set_leq(index_of(a), index_of(b));
    // transitive closure
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq(i, k))
                for (std::size_t j = 0; j < n; ++j)
                    if (leq(k, j)) set_leq(i, j);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !leq(i, j)) continue;
            if (leq(j, i))
                throw NotALattice("containment cycle between " + nodes_[i].label + " and " +
                                  nodes_[j].label);
            if (nodes_[i].rank >= nodes_[j].rank)
                throw NotALattice("rank not strictly monotone: " + nodes_[i].label +
                                  " inside " + nodes_[j].label);
            if (nodes_[i].contains_phi && !nodes_[j].contains_phi)
                throw NotALattice("contains_phi not upward closed at " + nodes_[j].label);
        }
}

std::size_t SubobjectLattice::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].label == label) return i;
    throw NotALattice("unknown node label: " + label);
}

Rat SubobjectLattice::slope() const {
    return Rat(nodes_[top_].degree) / Rat(nodes_[top_].rank);
}

Rat SubobjectLattice::step_slope(std::size_t lo, std::size_t hi) const {
    long dr = nodes_[hi].rank - nodes_[lo].rank;
    long dd = nodes_[hi].degree - nodes_[lo].degree;
    if (dr <= 0)
        throw NotALattice("step with nonpositive rank");
    return Rat(dd) / Rat(dr);
}

std::vector<std::size_t> SubobjectLattice::strictly_between(std::size_t lo, std::size_t hi) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (i != lo && i != hi && leq(lo, i) && leq(i, hi)) out.push_back(i);
    return out;
}

std::vector<std::size_t> SubobjectLattice::strictly_above(std::size_t lo) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (i != lo && leq(lo, i)) out.push_back(i);
    return out;
}

std::vector<std::vector<std::size_t>> SubobjectLattice::all_chains() const {
    std::vector<std::vector<std::size_t>> chains;
    std::vector<std::size_t> cur;
    auto dfs = [&](auto&& self, std::size_t at) -> void {
        if (at == top_) {
            chains.push_back(cur);
            return;
        }
        for (std::size_t next : strictly_above(at)) {
            cur.push_back(next);
            self(self, next);
            cur.pop_back();
        }
    };
    dfs(dfs, bottom_);
    return chains;
}

long HNType::total_rank() const {
    long r = 0;
    for (const auto& s : steps) r += s.rank;
    return r;
}

long HNType::total_degree() const {
    long d = 0;
    for (const auto& s : steps) d += s.degree;
    return d;
}

bool HNType::slopes_strictly_decreasing() const {
    for (std::size_t i = 0; i + 1 < steps.size(); ++i)
        if (!(steps[i].slope() > steps[i + 1].slope())) return false;
    return true;
}

namespace {

HNType type_of_chain(const SubobjectLattice& l, const std::vector<std::size_t>& chain) {
    HNType type;
    std::size_t prev = l.bottom();
    for (std::size_t node : chain) {
        type.steps.push_back({l.node(node).rank - l.node(prev).rank,
                              l.node(node).degree - l.node(prev).degree});
        prev = node;
    }
    return type;
}

// Semistability of the quotient step (lo, hi) seen inside the lattice: no
// declared intermediate node destabilizes it.
bool step_semistable(const SubobjectLattice& l, std::size_t lo, std::size_t hi) {
    Rat mu = l.step_slope(lo, hi);
    for (std::size_t y : l.strictly_between(lo, hi))
        if (l.step_slope(lo, y) > mu) return false;
    return true;
}

bool chain_is_hn(const SubobjectLattice& l, const std::vector<std::size_t>& chain) {
    HNType type = type_of_chain(l, chain);
    if (!type.slopes_strictly_decreasing()) return false;
    std::size_t prev = l.bottom();
    for (std::size_t node : chain) {
        if (!step_semistable(l, prev, node)) return false;
        prev = node;
    }
    return true;
}

std::vector<std::string> chain_labels(const SubobjectLattice& l,
                                      const std::vector<std::size_t>& chain) {
    std::vector<std::string> out;
    for (std::size_t i : chain) out.push_back(l.node(i).label);
    return out;
}

// Minimal 1-based chain step containing im(phi); nullopt encodes phi = 0
// (the bottom node is flagged, so every step works).
std::optional<std::size_t> chain_phi_step(const SubobjectLattice& l,
                                          const std::vector<std::size_t>& chain) {
    if (l.phi_zero()) return std::nullopt;
    for (std::size_t i = 0; i < chain.size(); ++i)
        if (l.node(chain[i]).contains_phi) return i + 1;
    throw InvalidInput("no chain node contains im(phi); flag the top node");
}

} // namespace

HNResult hn_filtration(const SubobjectLattice& lattice) {
    std::vector<std::size_t> chain;
    std::size_t cur = lattice.bottom();
    while (cur != lattice.top()) {
        std::vector<std::size_t> cands = lattice.strictly_above(cur);
        std::optional<std::size_t> best;
        bool tie = false;
        for (std::size_t y : cands) {
            if (!best) {
                best = y;
                continue;
            }
            Rat sy = lattice.step_slope(cur, y);
            Rat sb = lattice.step_slope(cur, *best);
            if (sy > sb || (sy == sb && lattice.node(y).rank > lattice.node(*best).rank)) {
                best = y;
                tie = false;
            } else if (sy == sb && lattice.node(y).rank == lattice.node(*best).rank) {
                tie = true;
            }
        }
        if (!best)
            throw NotALattice("no node above " + lattice.node(cur).label);
        if (tie)
            throw AmbiguousLattice("greedy maximizer not unique above " +
                                   lattice.node(cur).label);
        chain.push_back(*best);
        cur = *best;
    }

    if (!chain_is_hn(lattice, chain))
        throw AmbiguousLattice("greedy chain violates the filtration conditions; "
                               "the lattice is not a faithful subobject model");
    if (lattice.size() <= 12) {
        std::size_t hits = 0;
        for (const auto& c : lattice.all_chains())
            if (chain_is_hn(lattice, c)) {
                ++hits;
                if (c != chain)
                    throw AmbiguousLattice("a second chain satisfies the filtration conditions");
            }
        if (hits != 1)
            throw AmbiguousLattice("filtration conditions select " + std::to_string(hits) +
                                   " chains");
    }
    return HNResult{chain_labels(lattice, chain), type_of_chain(lattice, chain)};
}

Rat bundle_max_weight(const HNType& type, const std::vector<Rat>& lam) {
    if (lam.size() != type.size())
        throw LengthMismatch("eigenvalue vector length differs from type length");
    Rat mu = type.total_slope();
    Rat acc = 0;
    for (std::size_t i = 0; i < lam.size(); ++i)
        acc += (Rat(type.steps[i].degree) - mu * Rat(type.steps[i].rank)) * lam[i];
    return acc;
}

BundleOptimal bundle_optimal(const HNType& type) {
    if (type.size() == 0)
        throw InvalidInput("empty type");
    if (type.size() == 1)
        throw SemistableType("one-step type has no destabilizer");
    if (!type.slopes_strictly_decreasing())
        throw InvalidInput("type slopes must be strictly decreasing");
    Rat mu = type.total_slope();
    BundleOptimal out;
    Rat sq = 0;
    for (const auto& s : type.steps) {
        Rat diff = mu - s.slope();
        out.ray.push_back(diff);
        sq += Rat(s.rank) * diff * diff;
    }
    out.lambda_inf = SignedSquare::neg_sqrt(sq);
    return out;
}

SphereMin minimize_over_type_cone(const HNType& type, std::optional<std::size_t> phi_step,
                                  const Rat& trace_coef) {
    const std::size_t k = type.size();
    if (k == 0)
        throw InvalidInput("empty type");
    Vec diag(k);
    for (std::size_t i = 0; i < k; ++i) diag[i] = Rat(type.steps[i].rank);
    InnerProduct q = InnerProduct::diagonal(diag);

    std::vector<Vec> rows;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        Vec a(k, Rat(0));
        a[i] = 1;
        a[i + 1] = -1;  // lambda_i <= lambda_{i+1}
        rows.push_back(a);
    }
    if (phi_step) {
        if (*phi_step < 1 || *phi_step > k)
            throw InvalidBreakpoint("phi step out of range");
        Vec a(k, Rat(0));
        a[*phi_step - 1] = 1;  // lambda_l <= 0
        rows.push_back(a);
    }
    PolyhedralCone cone(k, rows);

    Vec c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = Rat(type.steps[i].degree) - trace_coef * Rat(type.steps[i].rank);
    SphereMin min = min_linear_on_sphere_cone(q, cone, c);
    if (min.infinite)
        throw VerificationFailed("ordering cone cannot be trivial");
    return min;
}

bool pair_semistable(const SubobjectLattice& l, const Rat& tau) {
    if (!l.node(l.top()).contains_phi)
        throw InvalidInput("top node must contain im(phi)");
    if (l.slope() > tau)
        throw TopologicalConditionViolated("mu(E) > tau");
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i == l.bottom() || i == l.top()) continue;
        if (l.step_slope(l.bottom(), i) > tau) return false;
        if (l.node(i).contains_phi && l.step_slope(i, l.top()) < tau) return false;
    }
    return true;
}

namespace {

struct PairCandidate {
    std::vector<std::size_t> chain;
    std::size_t m;
    PairCase which;
    std::optional<std::size_t> phi_step;
};

// tau-semistability of the quotient pair on the interval (lo, hi): slope
// conditions relative to lo, with phi conditions on flagged nodes.
bool interval_pair_semistable(const SubobjectLattice& l, std::size_t lo, std::size_t hi,
                              const Rat& tau) {
    for (std::size_t y : l.strictly_between(lo, hi)) {
        if (l.step_slope(lo, y) > tau) return false;
        if (l.node(y).contains_phi && l.step_slope(y, hi) < tau) return false;
    }
    return true;
}

std::optional<PairCandidate> try_pair_chain(const SubobjectLattice& l,
                                            const std::vector<std::size_t>& chain,
                                            const Rat& tau) {
    HNType type = type_of_chain(l, chain);
    if (!type.slopes_strictly_decreasing()) return std::nullopt;
    const std::size_t k = chain.size();

    std::size_t m = 0;
    while (m < k && type.steps[m].slope() > tau) ++m;
    // slope chain mu_1 > ... > mu_m > tau >= mu_{m+1} > ... holds by choice of m

    std::optional<std::size_t> ell = chain_phi_step(l, chain);
    if (ell && *ell > m + 1) return std::nullopt;

    // quotient semistability away from the exempt step m+1
    std::size_t prev = l.bottom();
    for (std::size_t i = 0; i < k; ++i) {
        if (i != m && !step_semistable(l, prev, chain[i])) return std::nullopt;
        prev = chain[i];
    }

    std::size_t lo = m == 0 ? l.bottom() : chain[m - 1];
    PairCase which;
    if (!ell || *ell <= m) {
        which = PairCase::C;
        if (m < k && !step_semistable(l, lo, chain[m])) return std::nullopt;
    } else {
        // ell == m+1, so the breakpoint step exists
        Rat mu_next = type.steps[m].slope();
        if (tau > mu_next) {
            which = PairCase::A;
            if (!interval_pair_semistable(l, lo, chain[m], tau)) return std::nullopt;
        } else {
            which = PairCase::B;  // tau == mu_next by the slope chain
            if (!step_semistable(l, lo, chain[m])) return std::nullopt;
        }
    }
    return PairCandidate{chain, m, which, ell};
}

} // namespace

PairHN pair_hn(const SubobjectLattice& l, const Rat& tau) {
    if (pair_semistable(l, tau))
        throw AlreadySemistable("pair is tau-semistable");

    std::vector<PairCandidate> found;
    for (const auto& chain : l.all_chains()) {
        auto cand = try_pair_chain(l, chain, tau);
        if (cand) found.push_back(std::move(*cand));
    }
    if (found.empty())
        throw NoFiltrationFound("no (chain, breakpoint) satisfies the filtration conditions");
    if (found.size() > 1)
        throw MultipleFiltrationsFound("found " + std::to_string(found.size()) +
                                       " distinct filtrations; lattice is not faithful");
    const PairCandidate& c = found.front();
    return PairHN{chain_labels(l, c.chain), c.m, c.which, type_of_chain(l, c.chain), c.phi_step};
}

ExtendedRat pair_max_weight(const HNType& type, std::optional<std::size_t> phi_step,
                            const Rat& tau, const std::vector<Rat>& lam) {
    if (lam.size() != type.size())
        throw LengthMismatch("eigenvalue vector length differs from type length");
    if (phi_step && (*phi_step < 1 || *phi_step > type.size()))
        throw InvalidBreakpoint("phi step out of range");
    if (phi_step && lam[*phi_step - 1] > 0)
        return ExtendedRat::infinity();
    Rat acc = 0;
    for (std::size_t i = 0; i < lam.size(); ++i)
        acc += (Rat(type.steps[i].degree) - tau * Rat(type.steps[i].rank)) * lam[i];
    return ExtendedRat::finite(acc);
}

namespace {

void validate_breakpoint(const HNType& type, std::optional<std::size_t> phi_step, std::size_t m,
                         const Rat& tau) {
    const std::size_t k = type.size();
    if (k == 0)
        throw InvalidBreakpoint("empty type");
    if (!type.slopes_strictly_decreasing())
        throw InvalidBreakpoint("slopes not strictly decreasing");
    if (m > k)
        throw InvalidBreakpoint("breakpoint beyond the last step");
    if (m >= 1 && !(type.steps[m - 1].slope() > tau))
        throw InvalidBreakpoint("slope m does not exceed tau");
    if (m < k && !(tau >= type.steps[m].slope()))
        throw InvalidBreakpoint("tau below slope m+1");
    if (phi_step && (*phi_step < 1 || *phi_step > m + 1 || *phi_step > k))
        throw InvalidBreakpoint("phi step incompatible with the breakpoint");
}

} // namespace

PairOptimal pair_optimal(const HNType& type, std::optional<std::size_t> phi_step, std::size_t m,
                         const Rat& tau) {
    validate_breakpoint(type, phi_step, m, tau);
    const std::size_t k = type.size();
    const bool clamp = phi_step && *phi_step == m + 1;

    PairOptimal out;
    out.which = !clamp ? PairCase::C
                       : (m < k && tau > type.steps[m].slope() ? PairCase::A : PairCase::B);
    Rat sq = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (clamp && i == m) {
            out.ray.push_back(Rat(0));
            continue;
        }
        Rat diff = tau - type.steps[i].slope();
        out.ray.push_back(diff);
        sq += Rat(type.steps[i].rank) * diff * diff;
    }
    if (sq == 0)
        throw InvalidBreakpoint("type carries no destabilizing direction");
    out.lambda_inf = SignedSquare::neg_sqrt(sq);
    return out;
}

LimitObject limit_object(const HNType& type, std::optional<std::size_t> phi_step, std::size_t m) {
    const std::size_t k = type.size();
    if (k == 0 || m > k)
        throw InvalidBreakpoint("bad limit data");
    if (phi_step && (*phi_step < 1 || *phi_step > m + 1 || *phi_step > k))
        throw InvalidBreakpoint("phi step incompatible with the breakpoint");
    LimitObject out;
    out.steps = type.steps;
    if (phi_step && *phi_step == m + 1) out.phi_bar_step = m + 1;
    return out;
}

namespace {

// Merges adjacent equal eigenvalues of a chain-cone minimizer into the
// coarser filtration it actually selects.
struct MergedChain {
    std::vector<std::size_t> chain;  // node indices of the block boundaries
    Vec ray;                         // one eigenvalue per block
};

MergedChain merge_equal_eigenvalues(const std::vector<std::size_t>& chain, const Vec& lam) {
    MergedChain out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i + 1 < chain.size() && lam[i] == lam[i + 1]) continue;
        out.chain.push_back(chain[i]);
        out.ray.push_back(lam[i]);
    }
    return out;
}

} // namespace

GlobalOptimal global_optimal_over_lattice(const SubobjectLattice& l,
                                          const std::optional<Rat>& tau) {
    if (l.size() > 12)
        throw CapacityExceeded("global optimum cap is 12 lattice nodes");
    const bool pair_mode = tau.has_value();
    const Rat coef = pair_mode ? *tau : l.slope();

    struct ChainMin {
        std::vector<std::size_t> chain;
        SphereMin min;
    };
    std::vector<ChainMin> minima;
    bool have_best = false;
    SignedSquare best;
    for (const auto& chain : l.all_chains()) {
        HNType type = type_of_chain(l, chain);
        std::optional<std::size_t> ell = pair_mode ? chain_phi_step(l, chain) : std::nullopt;
        SphereMin min = minimize_over_type_cone(type, ell, coef);
        if (!have_best || min.value < best) {
            best = min.value;
            have_best = true;
        }
        minima.push_back(ChainMin{chain, std::move(min)});
    }
    if (!have_best)
        throw NotALattice("lattice has no chains");

    GlobalOptimal out;
    if (best.sign >= 0) {
        // must agree with the closed-form theory: the lattice is semistable
        if (pair_mode) {
            if (!pair_semistable(l, *tau))
                throw VerificationFailed("nonnegative global minimum on a non-semistable pair");
        } else {
            HNResult hn = hn_filtration(l);
            if (hn.type.size() != 1)
                throw VerificationFailed("nonnegative global minimum on a non-semistable lattice");
            out.chain = hn.chain;
        }
        out.semistable = true;
        out.lambda_inf = best;
        return out;
    }

    std::vector<std::string> expect_chain;
    Vec expect_ray;
    SignedSquare expect_value;
    if (pair_mode) {
        PairHN hn = pair_hn(l, *tau);
        PairOptimal opt = pair_optimal(hn.type, hn.phi_step, hn.m, *tau);
        expect_chain = hn.chain;
        expect_ray = opt.ray;
        expect_value = opt.lambda_inf;
    } else {
        HNResult hn = hn_filtration(l);
        BundleOptimal opt = bundle_optimal(hn.type);
        expect_chain = hn.chain;
        expect_ray = opt.ray;
        expect_value = opt.lambda_inf;
    }

    if (!(best == expect_value))
        throw VerificationFailed("global minimum differs from the closed-form value");
    for (const auto& cm : minima) {
        if (!(cm.min.value == best)) continue;
        MergedChain merged = merge_equal_eigenvalues(cm.chain, cm.min.ray->direction);
        if (chain_labels(l, merged.chain) != expect_chain ||
            primitive_integer(merged.ray) != primitive_integer(expect_ray))
            throw VerificationFailed("a minimizing chain does not reduce to the HN chain");
    }
    out.semistable = false;
    out.chain = expect_chain;
    out.ray = expect_ray;
    out.lambda_inf = expect_value;
    return out;
}

} // namespace destab
