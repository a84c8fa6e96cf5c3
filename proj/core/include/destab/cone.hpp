#pragma once

#include <optional>
#include <vector>

#include "destab/linalg.hpp"
#include "destab/rational.hpp"
#include "destab/signed_square.hpp"

namespace destab {

// Hard caps for the exhaustive active-set search.
inline constexpr std::size_t kMaxConeDim = 16;
inline constexpr std::size_t kMaxConeConstraints = 24;

// A positive definite symmetric bilinear form on Q^dim, the metric in which
// projections and norms are taken.
class InnerProduct {
public:
    explicit InnerProduct(Mat gram);
    static InnerProduct identity(std::size_t dim);
    static InnerProduct diagonal(const Vec& d);

    std::size_t dim() const { return gram_.rows(); }
    const Mat& gram() const { return gram_; }

    Rat pair(const Vec& x, const Vec& y) const;   // x^T Q y
    Rat norm_sq(const Vec& x) const { return pair(x, x); }
    Vec apply(const Vec& x) const { return gram_.apply(x); }      // Q x
    Vec solve(const Vec& c) const;                                // Q^{-1} c

private:
    Mat gram_;
};

// Cone in facet form: { z : a_j . z <= 0 for every row a_j }. Rows are
// scaled to primitive integer form on construction, zero rows dropped and
// duplicates removed (first occurrence kept), so certificates are canonical.
class PolyhedralCone {
public:
    PolyhedralCone(std::size_t dim, const std::vector<Vec>& rows);

    std::size_t dim() const { return dim_; }
    std::size_t num_constraints() const { return rows_.size(); }
    const Vec& row(std::size_t j) const { return rows_[j]; }
    const std::vector<Vec>& rows() const { return rows_; }

    bool contains(const Vec& z) const;
    std::vector<std::size_t> active_set(const Vec& z) const;

private:
    std::size_t dim_;
    std::vector<Vec> rows_;
};

// Unnormalized rational direction with its cached Q-norm square. Stands for
// the normalized element direction/sqrt(norm_sq); equality is equality of
// primitive integer forms (positive rescaling only).
struct Ray {
    Vec direction;
    Rat norm_sq = 0;

    bool is_zero() const { return norm_sq == 0; }
    std::vector<Int> primitive() const { return primitive_integer(direction); }
    bool same_ray(const Ray& o) const { return primitive() == o.primitive(); }
};

Ray make_ray(const InnerProduct& q, Vec direction);

struct KktCertificate {
    std::vector<std::size_t> active_set;  // constraint indices, increasing
    std::vector<Rat> multipliers;         // one per active index, >= 0
    Vec stationarity_residual;            // always the zero vector
};

struct ConeProjection {
    Ray point;
    KktCertificate certificate;
};

/// Q-metric projection of u onto the cone, by exhaustive enumeration of
/// linearly independent active sets. Exact; the zero vector is a legal
/// result. Throws DimensionMismatch / NotPositiveDefinite / CapacityExceeded.
ConeProjection project_cone(const InnerProduct& q, const PolyhedralCone& cone, const Vec& u);

// Outcome of minimizing a linear functional over cone /\ unit sphere.
// infinite: the cone is {0}, so the sphere slice is empty (value +infinity).
// ray/certificate are present exactly when value.sign == -1; for
// nonnegative minima the optimal direction need not be unique.
struct SphereMin {
    bool infinite = false;
    SignedSquare value;
    std::optional<Ray> ray;
    std::optional<KktCertificate> certificate;
};

/// min { <c,z> : z in cone, ||z||_Q = 1 }, computed exactly. When the
/// projection of -Q^{-1}c is nonzero the minimum is -||p||_Q attained at p;
/// otherwise the minimum is >= 0 and its exact value is found on the
/// extreme rays of the cone.
SphereMin min_linear_on_sphere_cone(const InnerProduct& q, const PolyhedralCone& cone, const Vec& c);

/// First-order optimality test for min <c,z> on cone /\ sphere at the given
/// (unnormalized) ray: feasibility plus an exact multiplier certificate
/// c + theta Q r + sum nu_j a_j = 0 with theta > 0, nu >= 0 on the active
/// set. Independent of project_cone. Throws ZeroRay.
bool check_kkt(const InnerProduct& q, const PolyhedralCone& cone, const Vec& c, const Ray& ray);

/// All KKT-certified projection candidates over every linearly independent
/// active subset (no early exit). Used to certify uniqueness: every entry
/// must carry the same point.
std::vector<ConeProjection> enumerate_kkt_projections(const InnerProduct& q,
                                                      const PolyhedralCone& cone, const Vec& u);

/// Primitive generators of the 1-dimensional faces, deduplicated and sorted.
/// For a cone with lineality the list is a feasible generator set rather
/// than a face description.
std::vector<Vec> extreme_rays(const PolyhedralCone& cone);

bool cone_is_trivial(const PolyhedralCone& cone);  // cone == {0}?

} // namespace destab
