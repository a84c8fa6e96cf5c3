#include "destab/cone.hpp"

#include <algorithm>

namespace destab {

namespace {

// Visits index subsets of {0..m-1} of the given size in lexicographic
// order; returns false from the visitor to stop early.
template <typename F>
bool for_each_subset_of_size(std::size_t m, std::size_t k, F&& visit) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (k > m) return true;
        if (!visit(idx)) return false;
        // next combination
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + m - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return true;
        }
        if (k == 0) return true;
    }
}

Mat rows_matrix(const PolyhedralCone& cone, const std::vector<std::size_t>& subset) {
    Mat m(subset.size(), cone.dim());
    for (std::size_t r = 0; r < subset.size(); ++r)
        for (std::size_t c = 0; c < cone.dim(); ++c) m.at(r, c) = cone.row(subset[r])[c];
    return m;
}

// Equality-constrained projection onto { z : a_j.z = 0, j in subset }.
// Returns (point, multipliers) or nullopt when the subset rows are
// linearly dependent.
std::optional<std::pair<Vec, std::vector<Rat>>> project_subspace(const InnerProduct& q,
                                                                 const PolyhedralCone& cone,
                                                                 const std::vector<std::size_t>& subset,
                                                                 const Vec& u) {
    const std::size_t n = q.dim();
    const std::size_t k = subset.size();
    Mat sys(n + k, n + k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sys.at(i, j) = q.gram().at(i, j);
    for (std::size_t r = 0; r < k; ++r) {
        const Vec& a = cone.row(subset[r]);
        for (std::size_t j = 0; j < n; ++j) {
            sys.at(j, n + r) = a[j];
            sys.at(n + r, j) = a[j];
        }
    }
    Vec rhs(n + k, Rat(0));
    Vec qu = q.apply(u);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = qu[i];
    auto sol = solve_unique(sys, rhs);
    if (!sol) return std::nullopt;  // dependent active rows
    Vec z(sol->begin(), sol->begin() + n);
    std::vector<Rat> nu(sol->begin() + n, sol->end());
    return std::make_pair(std::move(z), std::move(nu));
}

KktCertificate make_certificate(const InnerProduct& q, const PolyhedralCone& cone,
                                const std::vector<std::size_t>& subset, const Vec& z,
                                const std::vector<Rat>& nu, const Vec& u) {
    KktCertificate cert;
    cert.active_set = subset;
    cert.multipliers = nu;
    Vec res = q.apply(vec_sub(z, u));
    for (std::size_t r = 0; r < subset.size(); ++r)
        res = vec_add(res, vec_scale(nu[r], cone.row(subset[r])));
    if (!vec_is_zero(res))
        throw VerificationFailed("projection certificate has nonzero stationarity residual");
    cert.stationarity_residual = std::move(res);
    return cert;
}

void check_caps(const InnerProduct& q, const PolyhedralCone& cone) {
    if (q.dim() != cone.dim())
        throw DimensionMismatch("metric and cone dimensions differ");
    if (cone.dim() > kMaxConeDim)
        throw CapacityExceeded("cone dimension exceeds cap of 16");
    if (cone.num_constraints() > kMaxConeConstraints)
        throw CapacityExceeded("constraint count exceeds cap of 24");
}

} // namespace

InnerProduct::InnerProduct(Mat gram) : gram_(std::move(gram)) {
    if (gram_.rows() == 0)
        throw InvalidInput("inner product needs positive dimension");
    if (!is_symmetric(gram_))
        throw NotPositiveDefinite("gram matrix is not symmetric");
    if (!is_positive_definite(gram_))
        throw NotPositiveDefinite("gram matrix is not positive definite");
}

InnerProduct InnerProduct::identity(std::size_t dim) {
    return InnerProduct(Mat::identity(dim));
}

InnerProduct InnerProduct::diagonal(const Vec& d) {
    Mat g(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) g.at(i, i) = d[i];
    return InnerProduct(std::move(g));
}

Rat InnerProduct::pair(const Vec& x, const Vec& y) const {
    return dot(x, gram_.apply(y));
}

Vec InnerProduct::solve(const Vec& c) const {
    auto x = solve_unique(gram_, c);
    if (!x)
        throw NotPositiveDefinite("gram matrix is singular");
    return *x;
}

PolyhedralCone::PolyhedralCone(std::size_t dim, const std::vector<Vec>& rows) : dim_(dim) {
    if (dim == 0)
        throw InvalidInput("cone needs positive dimension");
    for (const Vec& r : rows) {
        if (r.size() != dim)
            throw DimensionMismatch("constraint covector has wrong length");
        auto prim = primitive_integer(r);
        if (std::all_of(prim.begin(), prim.end(), [](const Int& x) { return x == 0; }))
            continue;  // 0 <= 0, vacuous
        Vec canon(dim);
        for (std::size_t j = 0; j < dim; ++j) canon[j] = Rat(prim[j]);
        if (std::find(rows_.begin(), rows_.end(), canon) == rows_.end())
            rows_.push_back(std::move(canon));
    }
}

bool PolyhedralCone::contains(const Vec& z) const {
    for (const Vec& a : rows_)
        if (dot(a, z) > 0) return false;
    return true;
}

std::vector<std::size_t> PolyhedralCone::active_set(const Vec& z) const {
    std::vector<std::size_t> act;
    for (std::size_t j = 0; j < rows_.size(); ++j)
        if (dot(rows_[j], z) == 0) act.push_back(j);
    return act;
}

Ray make_ray(const InnerProduct& q, Vec direction) {
    if (direction.size() != q.dim())
        throw DimensionMismatch("ray direction has wrong length");
    Rat nsq = q.norm_sq(direction);
    return Ray{std::move(direction), std::move(nsq)};
}

ConeProjection project_cone(const InnerProduct& q, const PolyhedralCone& cone, const Vec& u) {
    check_caps(q, cone);
    if (u.size() != q.dim())
        throw DimensionMismatch("point to project has wrong length");

    const std::size_t m = cone.num_constraints();
    const std::size_t kmax = std::min(m, q.dim());
    ConeProjection result;
    bool found = false;
    for (std::size_t k = 0; k <= kmax && !found; ++k) {
        for_each_subset_of_size(m, k, [&](const std::vector<std::size_t>& subset) {
            auto sol = project_subspace(q, cone, subset, u);
            if (!sol) return true;
            const Vec& z = sol->first;
            const std::vector<Rat>& nu = sol->second;
            if (!cone.contains(z)) return true;
            if (std::any_of(nu.begin(), nu.end(), [](const Rat& v) { return v < 0; }))
                return true;
            result.point = make_ray(q, z);
            result.certificate = make_certificate(q, cone, subset, z, nu, u);
            found = true;
            return false;
        });
    }
    if (!found)
        throw VerificationFailed("no KKT-certified active set found; input violates caps or metric");
    return result;
}

std::vector<ConeProjection> enumerate_kkt_projections(const InnerProduct& q,
                                                      const PolyhedralCone& cone, const Vec& u) {
    check_caps(q, cone);
    std::vector<ConeProjection> hits;
    const std::size_t m = cone.num_constraints();
    const std::size_t kmax = std::min(m, q.dim());
    for (std::size_t k = 0; k <= kmax; ++k) {
        for_each_subset_of_size(m, k, [&](const std::vector<std::size_t>& subset) {
            auto sol = project_subspace(q, cone, subset, u);
            if (!sol) return true;
            const Vec& z = sol->first;
            const std::vector<Rat>& nu = sol->second;
            if (!cone.contains(z)) return true;
            if (std::any_of(nu.begin(), nu.end(), [](const Rat& v) { return v < 0; }))
                return true;
            hits.push_back(ConeProjection{make_ray(q, z),
                                          make_certificate(q, cone, subset, z, nu, u)});
            return true;
        });
    }
    return hits;
}

std::vector<Vec> extreme_rays(const PolyhedralCone& cone) {
    const std::size_t n = cone.dim();
    const std::size_t m = cone.num_constraints();
    std::vector<Vec> found;
    auto push_unique = [&](const Vec& g) {
        auto prim = primitive_integer(g);
        Vec canon(n);
        for (std::size_t j = 0; j < n; ++j) canon[j] = Rat(prim[j]);
        if (std::find(found.begin(), found.end(), canon) == found.end())
            found.push_back(std::move(canon));
    };

    if (n == 1) {
        for (int s : {1, -1}) {
            Vec g{Rat(s)};
            if (cone.contains(g)) push_unique(g);
        }
    } else if (m + 1 >= n) {
        for_each_subset_of_size(m, n - 1, [&](const std::vector<std::size_t>& subset) {
            Mat sub = rows_matrix(cone, subset);
            Mat ker = kernel_basis(sub);
            if (ker.cols() != 1) return true;  // rank < n-1
            Vec g = ker.col(0);
            if (cone.contains(g)) push_unique(g);
            Vec neg = vec_scale(Rat(-1), g);
            if (cone.contains(neg)) push_unique(neg);
            return true;
        });
    }
    std::sort(found.begin(), found.end(), [](const Vec& a, const Vec& b) {
        return lex_less(primitive_integer(a), primitive_integer(b));
    });
    return found;
}

bool cone_is_trivial(const PolyhedralCone& cone) {
    const std::size_t m = cone.num_constraints();
    if (m == 0) return false;
    std::vector<std::size_t> all(m);
    for (std::size_t j = 0; j < m; ++j) all[j] = j;
    if (kernel_basis(rows_matrix(cone, all)).cols() > 0)
        return false;  // lineality space
    return extreme_rays(cone).empty();
}

SphereMin min_linear_on_sphere_cone(const InnerProduct& q, const PolyhedralCone& cone,
                                    const Vec& c) {
    check_caps(q, cone);
    if (c.size() != q.dim())
        throw DimensionMismatch("functional has wrong length");

    SphereMin out;
    if (cone_is_trivial(cone)) {
        out.infinite = true;
        return out;
    }
    Vec w = vec_scale(Rat(-1), q.solve(c));
    ConeProjection proj = project_cone(q, cone, w);
    if (!proj.point.is_zero()) {
        out.value = SignedSquare::neg_sqrt(proj.point.norm_sq);
        out.ray = proj.point;
        out.certificate = proj.certificate;
        return out;
    }

    // -Q^{-1}c projects to 0: the minimum over the unit slice is >= 0.
    // A lineality direction z has <c,z> = <c,-z> >= 0, hence value 0;
    // otherwise the cone is pointed and the minimum sits on an extreme ray.
    const std::size_t m = cone.num_constraints();
    std::vector<std::size_t> all(m);
    for (std::size_t j = 0; j < m; ++j) all[j] = j;
    if (m == 0 || kernel_basis(rows_matrix(cone, all)).cols() > 0) {
        out.value = SignedSquare(0, 0);
        return out;
    }
    bool have = false;
    SignedSquare best;
    for (const Vec& g : extreme_rays(cone)) {
        Rat cg = dot(c, g);
        SignedSquare val = cg == 0 ? SignedSquare(0, 0)
                                   : SignedSquare(cg > 0 ? 1 : -1, cg * cg / q.norm_sq(g));
        if (!have || val < best) {
            best = val;
            have = true;
        }
    }
    if (!have)
        throw VerificationFailed("nontrivial pointed cone without extreme rays");
    if (best.sign < 0)
        throw VerificationFailed("negative extreme-ray value after zero projection");
    out.value = best;
    return out;
}

bool check_kkt(const InnerProduct& q, const PolyhedralCone& cone, const Vec& c, const Ray& ray) {
    check_caps(q, cone);
    if (ray.is_zero())
        throw ZeroRay("check_kkt: zero ray");
    const Vec& d = ray.direction;
    if (d.size() != q.dim() || c.size() != q.dim())
        throw DimensionMismatch("check_kkt: length mismatch");
    if (!cone.contains(d)) return false;

    // Dotting the stationarity identity with d pins theta exactly.
    Rat theta = -dot(c, d) / q.norm_sq(d);
    if (theta <= 0) return false;

    Vec qd = q.apply(d);
    Vec target = vec_scale(Rat(-1), vec_add(c, vec_scale(theta, qd)));
    std::vector<std::size_t> active = cone.active_set(d);

    // Need target = sum nu_j a_j with nu >= 0 supported on active rows.
    // By Caratheodory a nonnegative representation exists on some linearly
    // independent subfamily, so enumerating those is complete.
    const std::size_t a = active.size();
    const std::size_t kmax = std::min(a, q.dim());
    for (std::size_t k = 0; k <= kmax; ++k) {
        bool ok = !for_each_subset_of_size(a, k, [&](const std::vector<std::size_t>& pick) {
            std::vector<std::size_t> subset(pick.size());
            for (std::size_t i = 0; i < pick.size(); ++i) subset[i] = active[pick[i]];
            // solve A_B^T nu = target with A_B rows independent
            Mat cols(q.dim(), subset.size());
            for (std::size_t j = 0; j < subset.size(); ++j) cols.set_col(j, cone.row(subset[j]));
            if (rank(cols) != subset.size()) return true;
            // unique least-structure solve: [cols | target] consistency
            Mat aug(q.dim(), subset.size() + 1);
            for (std::size_t j = 0; j < subset.size(); ++j) aug.set_col(j, cols.col(j));
            aug.set_col(subset.size(), target);
            if (rank(aug) != subset.size()) return true;  // inconsistent
            // coordinates of target in the column basis
            Mat gramm = cols.transposed() * cols;
            auto nu = solve_unique(gramm, cols.transposed().apply(target));
            if (!nu) return true;
            if (std::any_of(nu->begin(), nu->end(), [](const Rat& v) { return v < 0; }))
                return true;
            return false;  // found a certificate
        });
        if (ok) return true;
    }
    return false;
}

} // namespace destab
