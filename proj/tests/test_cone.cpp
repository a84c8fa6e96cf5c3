#include <doctest.h>

#include "destab/cone.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace destab;

namespace {

PolyhedralCone orthant(std::size_t n) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i) {
        Vec a(n, Rat(0));
        a[i] = -1;
        rows.push_back(a);
    }
    return PolyhedralCone(n, rows);
}

// Random cone with at most max_rows primitive constraints.
PolyhedralCone random_cone(test::Rng& rng, std::size_t n, std::size_t max_rows) {
    std::uniform_int_distribution<std::size_t> rows_d(0, max_rows);
    std::size_t m = rows_d(rng);
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < m; ++j) {
        Vec a = test::random_vec(rng, n, -3, 3);
        if (!vec_is_zero(a)) rows.push_back(a);
    }
    return PolyhedralCone(n, rows);
}

} // namespace

TEST_CASE("signed square total order") {
    SignedSquare neg2(-1, Rat(4));   // -2
    SignedSquare neg_rt2(-1, Rat(2));
    SignedSquare zero(0, Rat(0));
    SignedSquare rt2(1, Rat(2));
    SignedSquare two(1, Rat(4));
    CHECK(neg2 < neg_rt2);
    CHECK(neg_rt2 < zero);
    CHECK(zero < rt2);
    CHECK(rt2 < two);
    CHECK(SignedSquare::from_rat(Rat(-5)) == SignedSquare(-1, Rat(25)));
    CHECK(neg2.scaled(Rat(3)) == SignedSquare(-1, Rat(36)));
    CHECK(neg2.scaled(Rat(-1)) == two);
}

TEST_CASE("projection: point already in the polar cone maps to zero") {
    auto q = InnerProduct::identity(2);
    PolyhedralCone c = orthant(2);
    auto p = project_cone(q, c, {Rat(-1), Rat(-1)});
    CHECK(p.point.is_zero());
    CHECK(p.certificate.active_set.size() == 2);
}

TEST_CASE("projection onto the whole space is the identity") {
    auto q = InnerProduct::identity(2);
    PolyhedralCone c(2, {});
    auto p = project_cone(q, c, {Rat(3), Rat(4)});
    CHECK(p.point.direction == Vec{Rat(3), Rat(4)});
    CHECK(p.point.norm_sq == Rat(25));
}

TEST_CASE("projection clips exactly the violated coordinate") {
    auto q = InnerProduct::identity(3);
    PolyhedralCone c(3, {{Rat(-1), Rat(0), Rat(0)}});
    auto p = project_cone(q, c, {Rat(-1), Rat(-1), Rat(-1)});
    CHECK(p.point.direction == Vec{Rat(0), Rat(-1), Rat(-1)});
    CHECK(p.point.norm_sq == Rat(2));
    // frozen via the subspace-basis oracle
    Vec oracle = test::project_subspace_by_basis(q, {{Rat(-1), Rat(0), Rat(0)}},
                                                 {Rat(-1), Rat(-1), Rat(-1)});
    CHECK(oracle == p.point.direction);
}

TEST_CASE("sphere minimum: strictly positive over the orthant") {
    auto q = InnerProduct::identity(3);
    auto m = min_linear_on_sphere_cone(q, orthant(3), {Rat(1), Rat(1), Rat(1)});
    CHECK_FALSE(m.infinite);
    CHECK(m.value.sign == 1);
    CHECK_FALSE(m.ray.has_value());
    // min over the unit slice is attained at a coordinate axis: value 1
    CHECK(m.value == SignedSquare(1, Rat(1)));
}

TEST_CASE("sphere minimum: half-space instance") {
    auto q = InnerProduct::identity(3);
    PolyhedralCone c(3, {{Rat(-1), Rat(0), Rat(0)}});
    auto m = min_linear_on_sphere_cone(q, c, {Rat(1), Rat(1), Rat(1)});
    REQUIRE(m.ray.has_value());
    CHECK(m.ray->primitive() == std::vector<Int>{Int(0), Int(-1), Int(-1)});
    CHECK(m.value == SignedSquare(-1, Rat(2)));
}

TEST_CASE("sphere minimum: unconstrained direction") {
    auto q = InnerProduct::identity(2);
    PolyhedralCone c(2, {});
    auto m = min_linear_on_sphere_cone(q, c, {Rat(3), Rat(4)});
    REQUIRE(m.ray.has_value());
    CHECK(m.ray->primitive() == std::vector<Int>{Int(-3), Int(-4)});
    CHECK(m.value == SignedSquare(-1, Rat(25)));
}

TEST_CASE("sphere minimum: trivial cone reports the empty slice") {
    auto q = InnerProduct::identity(1);
    PolyhedralCone c(1, {{Rat(1)}, {Rat(-1)}});
    auto m = min_linear_on_sphere_cone(q, c, {Rat(1)});
    CHECK(m.infinite);
}

TEST_CASE("check_kkt on the worked instances") {
    auto q3 = InnerProduct::identity(3);
    PolyhedralCone c(3, {{Rat(-1), Rat(0), Rat(0)}});
    Vec functional{Rat(1), Rat(1), Rat(1)};
    CHECK(check_kkt(q3, c, functional, make_ray(q3, {Rat(0), Rat(-1), Rat(-1)})));
    CHECK_FALSE(check_kkt(q3, c, functional, make_ray(q3, {Rat(-1), Rat(0), Rat(0)})));

    auto q2 = InnerProduct::identity(2);
    PolyhedralCone whole(2, {});
    CHECK(check_kkt(q2, whole, {Rat(3), Rat(4)}, make_ray(q2, {Rat(-3), Rat(-4)})));
    CHECK_THROWS_AS(check_kkt(q2, whole, {Rat(3), Rat(4)}, make_ray(q2, {Rat(0), Rat(0)})),
                    ZeroRay);
}

TEST_CASE("capacity and validation errors") {
    CHECK_THROWS_AS(project_cone(InnerProduct::identity(17), PolyhedralCone(17, {}),
                                 Vec(17, Rat(1))),
                    CapacityExceeded);
    std::vector<Vec> many;
    for (int j = 0; j < 25; ++j) {
        Vec a(2, Rat(0));
        a[0] = Rat(j + 1);
        a[1] = Rat(1);
        many.push_back(a);
    }
    CHECK_THROWS_AS(project_cone(InnerProduct::identity(2), PolyhedralCone(2, many),
                                 Vec(2, Rat(1))),
                    CapacityExceeded);
    Mat bad = Mat::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(1)}});
    CHECK_THROWS_AS(InnerProduct{bad}, NotPositiveDefinite);
    CHECK_THROWS_AS(project_cone(InnerProduct::identity(2), PolyhedralCone(3, {}),
                                 Vec(3, Rat(1))),
                    DimensionMismatch);
}

TEST_CASE("constraint rows are deduplicated and scaled") {
    PolyhedralCone c(2, {{Rat(2), Rat(4)}, {Rat(1), Rat(2)}, {Rat(0), Rat(0)}, {Rat(-1), Rat(-2)}});
    CHECK(c.num_constraints() == 2);  // (1,2) kept once, zero row dropped, (-1,-2) distinct
}

TEST_CASE("projection idempotence") {
    test::Rng rng(21);
    for (int it = 0; it < 120; ++it) {
        std::uniform_int_distribution<std::size_t> nd(1, 4);
        std::size_t n = nd(rng);
        auto q = InnerProduct::identity(n);
        PolyhedralCone c = random_cone(rng, n, 6);
        Vec u = test::random_vec(rng, n, -4, 4);
        auto p = project_cone(q, c, u);
        auto p2 = project_cone(q, c, p.point.direction);
        CHECK(p2.point.direction == p.point.direction);
    }
}

TEST_CASE("obtuseness of the projection residual") {
    test::Rng rng(22);
    for (int it = 0; it < 100; ++it) {
        std::uniform_int_distribution<std::size_t> nd(1, 4);
        std::size_t n = nd(rng);
        auto q = InnerProduct::identity(n);
        PolyhedralCone c = random_cone(rng, n, 6);
        Vec u = test::random_vec(rng, n, -4, 4);
        auto p = project_cone(q, c, u);
        Vec res = vec_sub(u, p.point.direction);
        CHECK(q.pair(res, p.point.direction) == 0);
        for (const Vec& z : extreme_rays(c)) CHECK(q.pair(res, z) <= 0);
    }
}

TEST_CASE("scale equivariance of the projection") {
    test::Rng rng(23);
    for (int it = 0; it < 100; ++it) {
        std::uniform_int_distribution<std::size_t> nd(1, 4);
        std::size_t n = nd(rng);
        auto q = InnerProduct::identity(n);
        PolyhedralCone c = random_cone(rng, n, 6);
        Vec u = test::random_vec(rng, n, -4, 4);
        Rat t = test::random_rat(rng, 0, 5) + Rat(1, 7);
        auto p = project_cone(q, c, u);
        auto pt = project_cone(q, c, vec_scale(t, u));
        CHECK(pt.point.direction == vec_scale(t, p.point.direction));
    }
}

TEST_CASE("oracle equivalence and uniqueness at desk scale") {
    test::Rng rng(24);
    int negative_seen = 0;
    for (int it = 0; it < 150; ++it) {
        std::uniform_int_distribution<std::size_t> nd(1, 4);
        std::size_t n = nd(rng);
        // occasionally a non-identity diagonal metric
        InnerProduct q = it % 3 == 0
                             ? InnerProduct::diagonal(Vec{test::random_vec(rng, n, 1, 4, 1)})
                             : InnerProduct::identity(n);
        PolyhedralCone c = random_cone(rng, n, 6);
        Vec functional = test::random_vec(rng, n, -3, 3);
        auto m = min_linear_on_sphere_cone(q, c, functional);
        if (m.infinite) {
            CHECK(cone_is_trivial(c));
            continue;
        }
        if (m.value.sign < 0) {
            ++negative_seen;
            test::ActiveSetMin oracle = test::active_set_minimum(q, c, functional);
            CHECK(oracle.value == m.value);
            REQUIRE(oracle.argmin_rays.size() == 1);
            CHECK(oracle.argmin_rays[0] == m.ray->primitive());
            CHECK(check_kkt(q, c, functional, *m.ray));
            // every exhaustive KKT candidate is the same point
            Vec w = vec_scale(Rat(-1), q.solve(functional));
            for (const auto& cand : enumerate_kkt_projections(q, c, w))
                CHECK(cand.point.primitive() == m.ray->primitive());
        }
        CHECK(test::rational_samples_never_beat(q, c, functional, m.value, 400, 1000 + it));
        CHECK(test::float_grid_never_beats(q, c, functional, m.value.to_double(), 2000,
                                           2000 + it));
    }
    CHECK(negative_seen > 30);
}
