#include "destab/gl.hpp"

#include <algorithm>

#include "destab/torus.hpp"

namespace destab {

namespace {

// Extends the columns of basis to a basis of Q^n by greedily adding
// standard vectors; returns the added complement columns.
Mat standard_complement(const Mat& basis, std::size_t n) {
    Mat cur = basis;
    std::size_t r = rank(cur);
    std::vector<std::size_t> added;
    for (std::size_t j = 0; j < n && r + added.size() < n; ++j) {
        Mat trial(n, cur.cols() + 1);
        for (std::size_t c = 0; c < cur.cols(); ++c) trial.set_col(c, cur.col(c));
        Vec e(n, Rat(0));
        e[j] = 1;
        trial.set_col(cur.cols(), e);
        if (rank(trial) == cur.cols() + 1) {
            cur = trial;
            added.push_back(j);
        }
    }
    Mat comp(n, added.size());
    for (std::size_t k = 0; k < added.size(); ++k) {
        Vec e(n, Rat(0));
        e[added[k]] = 1;
        comp.set_col(k, e);
    }
    return comp;
}

// Coordinates of the columns of target in the basis [prim | rest]; returns
// only the prim-block coordinates.
Mat coords_in_split_basis(const Mat& prim, const Mat& rest, const Mat& target) {
    const std::size_t n = prim.rows();
    Mat basis(n, prim.cols() + rest.cols());
    for (std::size_t j = 0; j < prim.cols(); ++j) basis.set_col(j, prim.col(j));
    for (std::size_t j = 0; j < rest.cols(); ++j) basis.set_col(prim.cols() + j, rest.col(j));
    auto inv = inverse(basis);
    if (!inv)
        throw VerificationFailed("split basis is singular");
    Mat all = *inv * target;
    Mat top(prim.cols(), target.cols());
    for (std::size_t i = 0; i < prim.cols(); ++i)
        for (std::size_t j = 0; j < target.cols(); ++j) top.at(i, j) = all.at(i, j);
    return top;
}

} // namespace

void HomProblem::validate() const {
    if (f.rows() == 0 || f.cols() == 0)
        throw InvalidInput("hom problem needs a nonempty matrix");
    if (t <= 0)
        throw InvalidInput("hom problem needs t > 0");
}

HomOptimal hom_optimal(const HomProblem& p) {
    p.validate();
    HomOptimal out;
    out.kernel = kernel_basis(p.f);
    out.kernel_dim = out.kernel.cols();
    if (out.kernel_dim == 0) {
        out.semistable = true;
        out.lambda_inf = SignedSquare(0, 0);
        return out;
    }
    const std::size_t r = p.f.cols();
    // Orthogonal projector onto ker f; rational because kernel and row
    // space are exact complements.
    Mat k = out.kernel;
    Mat gram = k.transposed() * k;
    auto gram_inv = inverse(gram);
    if (!gram_inv)
        throw VerificationFailed("kernel basis grammian is singular");
    Mat proj = k * (*gram_inv) * k.transposed();
    out.neg_projector = Mat(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) out.neg_projector.at(i, j) = -proj.at(i, j);
    out.lambda_inf = SignedSquare::neg_sqrt(p.t * p.t * Rat(static_cast<long>(out.kernel_dim)));
    out.semistable = false;
    return out;
}

bool hom_cross_check(const HomProblem& p) {
    p.validate();
    HomOptimal closed = hom_optimal(p);
    if (closed.semistable)
        throw NotDestabilizable("injective map has no destabilizer to cross-check");

    const std::size_t r = p.f.cols();
    const std::size_t k = closed.kernel_dim;

    // Diagonal torus in a basis adapted to ker f, kernel block last: the
    // supported weights are -e_j on the non-kernel columns.
    WeightSystem ws;
    ws.dim = r;
    SupportVector v;
    for (std::size_t j = 0; j < r; ++j) {
        Vec chi(r, Rat(0));
        chi[j] = -1;
        std::string label = "c" + std::to_string(j + 1);
        ws.weights.push_back({label, chi});
        if (j < r - k) v.amp_sq[label] = 1;
    }
    StabilityParam tau{Vec(r, p.t)};
    InnerProduct q = InnerProduct::identity(r);

    TorusVerdict verdict = optimal_destabilizing(ws, tau, q, v);
    if (verdict.semistable) return false;

    Vec expected(r, Rat(0));
    for (std::size_t j = r - k; j < r; ++j) expected[j] = -1;
    if (verdict.optimal->ray.primitive() != primitive_integer(expected)) return false;
    return verdict.optimal->lambda_inf == closed.lambda_inf;
}

void ChainProblem::validate() const {
    if (maps.empty())
        throw InvalidInput("chain needs at least one map");
    if (t.size() != maps.size())
        throw InvalidInput("chain needs one parameter per map");
    for (const auto& ti : t)
        if (ti <= 0)
            throw InvalidInput("chain parameters must be positive");
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
        if (maps[i + 1].cols() != maps[i].rows())
            throw DimensionMismatch("chain maps are not composable");
    for (const auto& m : maps)
        if (m.rows() == 0 || m.cols() == 0)
            throw InvalidInput("chain map has a zero dimension");
}

std::size_t ChainProblem::dim_v(std::size_t i) const {
    return i < maps.size() ? maps[i].cols() : maps.back().rows();
}

ChainInvariants chain_invariants(const ChainProblem& p) {
    p.validate();
    const std::size_t m = p.length();
    std::vector<Mat> suffix(m);  // suffix[i] = f_m ... f_{i+1}
    suffix[m - 1] = p.maps[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) suffix[i] = suffix[i + 1] * p.maps[i];

    ChainInvariants inv;
    inv.w_bases.resize(m);
    inv.rho.resize(m);
    inv.e_bases.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        inv.w_bases[i] = column_space_basis(suffix[i]);
        inv.rho[i] = inv.w_bases[i].cols();
        inv.e_bases[i] = kernel_basis(suffix[i]);
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (inv.rho[i] > p.dim_v(i))
            throw VerificationFailed("rank exceeds source dimension");
        if (!columns_contained(inv.w_bases[i + 1], inv.w_bases[i]))
            throw VerificationFailed("suffix images are not nested");
    }
    return inv;
}

bool chain_semistable(const ChainProblem& p) {
    p.validate();
    for (const auto& f : p.maps)
        if (rank(f) != f.cols()) return false;
    return true;
}

ChainLimit chain_limit(const ChainProblem& p) {
    if (chain_semistable(p))
        throw NotDestabilizable("chain is semistable, no limit reduction");
    ChainInvariants inv = chain_invariants(p);
    const std::size_t m = p.length();

    ChainLimit out;
    out.rho = inv.rho;
    out.flag_bases = inv.w_bases;
    out.stable = true;
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (p.dim_v(i) > p.dim_v(i + 1)) out.monotone_dims = false;

    // complements C_i of E_i inside V_i; E_{m+1} = 0 so C_{m+1} = Id
    std::vector<Mat> comp(m + 1);
    for (std::size_t i = 0; i < m; ++i) comp[i] = standard_complement(inv.e_bases[i], p.dim_v(i));
    comp[m] = Mat::identity(p.dim_v(m));

    for (std::size_t i = 0; i < m; ++i) {
        Mat image = p.maps[i] * comp[i];  // dim V_{i+1} x (d_i - dim E_i)
        Mat e_next = i + 1 < m ? inv.e_bases[i + 1] : Mat(p.dim_v(m), 0);
        Mat induced = coords_in_split_basis(comp[i + 1], e_next, image);
        if (rank(induced) != induced.cols()) out.stable = false;
        out.induced_maps.push_back(std::move(induced));
    }
    return out;
}

} // namespace destab
