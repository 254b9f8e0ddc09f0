#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "biaxial/errors.hpp"
#include "biaxial/manifold.hpp"
#include "biaxial/rng.hpp"

using namespace biaxial;

namespace {

Vec3 random_unit(SplitMix64& rng) {
    while (true) {
        Vec3 v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double r = norm(v);
        if (r > 0.2 && r < 1.0) return (1.0 / r) * v;
    }
}

}  // namespace

TEST_CASE("retract lands on the manifold") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        Vec3 n{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        Vec3 m{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        if (norm(n) < 0.6) continue;
        RetractResult r;
        try {
            r = retract(n, m);
        } catch (const DegenerateInput&) {
            continue;  // m nearly parallel to n
        }
        CHECK(std::fabs(norm(r.n) - 1.0) < 1e-14);
        CHECK(std::fabs(norm(r.m) - 1.0) < 1e-14);
        CHECK(std::fabs(dot(r.n, r.m)) < 1e-14);
    }
}

TEST_CASE("retract fixes points already on the manifold") {
    auto r = retract({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
    CHECK(r.n.z == 1.0);
    CHECK(r.m.x == 1.0);
}

TEST_CASE("retract rejects degenerate input") {
    CHECK_THROWS_AS(retract({0.1, 0.0, 0.0}, {1.0, 0.0, 0.0}), DegenerateInput);
    // m parallel to n leaves no Gram-Schmidt remainder.
    CHECK_THROWS_AS(retract({0.0, 0.0, 1.0}, {0.0, 0.0, 0.99}), DegenerateInput);
}

TEST_CASE("retract_field and constraint_residuals") {
    GridSpec g = GridSpec::periodic2d(8, 8, 0.5, 0.5);
    DirectorPairField f(g);
    SplitMix64 rng(3);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        Vec3 n = random_unit(rng);
        // Give m a unit-size component orthogonal to n so the
        // Gram-Schmidt remainder is never degenerate.
        Vec3 c;
        do {
            c = cross(n, random_unit(rng));
        } while (norm(c) < 0.2);
        f.n.set(i, 1.3 * n);
        f.m.set(i, (1.0 / norm(c)) * c + 0.5 * n);
    }
    retract_field(f);
    ConstraintResiduals res = constraint_residuals(f);
    CHECK(res.max_norm_err_n < 1e-13);
    CHECK(res.max_norm_err_m < 1e-13);
    CHECK(res.max_dot < 1e-13);
}

TEST_CASE("tangent_project splits forces exactly") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        Vec3 n = random_unit(rng);
        Vec3 raw = random_unit(rng);
        RetractResult base;
        try {
            base = retract(n, raw);
        } catch (const DegenerateInput&) {
            continue;
        }
        Vec3 fn{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        Vec3 fm{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        TangentSplit s = tangent_project(base.n, base.m, fn, fm);

        // Reconstruction: fn = fn_tan + lambda1 n + mu m (and symmetrically).
        Vec3 rn = s.fn_tan + s.lambda1 * base.n + s.mu * base.m;
        Vec3 rm = s.fm_tan + s.lambda2 * base.m + s.mu * base.n;
        CHECK(norm(rn - fn) < 1e-12);
        CHECK(norm(rm - fm) < 1e-12);

        // Tangency: no component along the constraint normals.
        CHECK(std::fabs(dot(s.fn_tan, base.n)) < 1e-12);
        CHECK(std::fabs(dot(s.fm_tan, base.m)) < 1e-12);
        CHECK(std::fabs(dot(s.fn_tan, base.m) + dot(s.fm_tan, base.n)) < 1e-12);
    }
}

TEST_CASE("tangent_project rejects off-manifold base points") {
    CHECK_THROWS_AS(
        tangent_project({0.0, 0.0, 2.0}, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}),
        ConstraintViolated);
}
