#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "biaxial/rng.hpp"
#include "biaxial/stencils.hpp"

using namespace biaxial;

namespace {

ScalarField sample(const GridSpec& g, const std::function<double(double, double, double)>& f) {
    ScalarField out(g);
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        auto c = g.coords(idx);
        out[idx] = f(g.coord(0, c[0]), g.coord(1, c[1]), g.coord(2, c[2]));
    }
    return out;
}

double max_err(const std::vector<double>& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("derivatives are exact on affine data (dirichlet box)") {
    GridSpec g = GridSpec::dirichlet2d(9, 7, 0.25, 0.5);
    ScalarField f = sample(g, [](double x, double y, double) { return 2.0 + 3.0 * x - 1.5 * y; });
    std::vector<double> dx, dy;
    apply_deriv(g, 0, f.values, dx);
    apply_deriv(g, 1, f.values, dy);
    for (double v : dx) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
    for (double v : dy) CHECK(v == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("second-order convergence of the first derivative") {
    auto err_at = [](int n, Bc bc) {
        GridSpec g;
        const double L = 2.0 * M_PI;
        if (bc == Bc::periodic) {
            g = GridSpec::periodic2d(n, 8, L / n, 1.0);
        } else {
            g = GridSpec::dirichlet2d(n + 1, 8, L / n, 1.0);
        }
        ScalarField f = sample(g, [](double x, double, double) { return std::sin(x); });
        ScalarField exact = sample(g, [](double x, double, double) { return std::cos(x); });
        std::vector<double> dx;
        apply_deriv(g, 0, f.values, dx);
        return max_err(dx, exact);
    };
    for (Bc bc : {Bc::periodic, Bc::dirichlet}) {
        const double e1 = err_at(32, bc), e2 = err_at(64, bc);
        CHECK(e1 / e2 > 3.5);
        CHECK(e1 / e2 < 4.7);
    }
}

TEST_CASE("second-order convergence of the laplacian including faces") {
    auto err_at = [](int n) {
        GridSpec g = GridSpec::dirichlet2d(n + 1, n + 1, M_PI / n, M_PI / n);
        ScalarField f =
            sample(g, [](double x, double y, double) { return std::sin(x) * std::sin(y); });
        std::vector<double> lap;
        laplacian(g, f.values, lap);
        double m = 0.0;
        for (std::size_t i = 0; i < lap.size(); ++i) m = std::max(m, std::fabs(lap[i] + 2.0 * f[i]));
        return m;
    };
    const double e1 = err_at(24), e2 = err_at(48);
    CHECK(e1 / e2 > 3.3);
    CHECK(e1 / e2 < 4.7);
}

TEST_CASE("adjoint is the exact transpose") {
    SplitMix64 rng(7);
    for (const GridSpec& g :
         {GridSpec::periodic2d(12, 9, 0.3, 0.4), GridSpec::dirichlet2d(10, 11, 0.2, 0.25),
          GridSpec::dirichlet3d(6, 5, 7, 0.3, 0.2, 0.4)}) {
        const std::size_t n = g.node_count();
        std::vector<double> x(n), y(n);
        for (auto& v : x) v = rng.uniform(-1.0, 1.0);
        for (auto& v : y) v = rng.uniform(-1.0, 1.0);
        for (int axis = 0; axis < g.ndim; ++axis) {
            std::vector<double> Dx, Dty(n, 0.0);
            apply_deriv(g, axis, x, Dx);
            apply_deriv_adjoint(g, axis, y, Dty);
            double lhs = 0.0, rhs = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                lhs += Dx[i] * y[i];
                rhs += x[i] * Dty[i];
            }
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("jacobian matches componentwise derivatives") {
    GridSpec g = GridSpec::periodic2d(16, 16, 2.0 * M_PI / 16, 2.0 * M_PI / 16);
    Vec3Field f(g);
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        auto c = g.coords(idx);
        const double x = g.coord(0, c[0]), y = g.coord(1, c[1]);
        f.set(idx, {std::sin(x), std::cos(y), std::sin(x + y)});
    }
    JacobianField J = jacobian(f);
    for (int comp = 0; comp < 3; ++comp) {
        for (int axis = 0; axis < 2; ++axis) {
            std::vector<double> d;
            apply_deriv(g, axis, f.comp[comp], d);
            for (std::size_t i = 0; i < d.size(); ++i) CHECK(J.d[comp][axis][i] == d[i]);
        }
    }
    // The z column of a 2-D field stays zero.
    for (std::size_t i = 0; i < g.node_count(); ++i)
        for (int comp = 0; comp < 3; ++comp) CHECK(J.d[comp][2][i] == 0.0);
}

TEST_CASE("divergence and curl conventions") {
    Mat3 J{};
    // f(x) = (a x, b y, c z) + rotation about z: f += w (-y, x, 0).
    J[0][0] = 1.0;
    J[1][1] = 2.0;
    J[2][2] = 3.0;
    J[0][1] = -0.5;  // d_y f^x
    J[1][0] = 0.5;   // d_x f^y
    auto [div, curl] = divergence_curl(J);
    CHECK(div == doctest::Approx(6.0));
    CHECK(curl.x == doctest::Approx(0.0));
    CHECK(curl.y == doctest::Approx(0.0));
    CHECK(curl.z == doctest::Approx(1.0));
}

TEST_CASE("deriv_stencil rows sum to zero and match apply_deriv") {
    GridSpec g = GridSpec::dirichlet2d(8, 8, 0.5, 0.5);
    for (int i : {0, 1, 4, 7}) {
        std::pair<int, double> entries[3];
        int cnt = deriv_stencil(g, 0, i, entries);
        double sum = 0.0;
        for (int e = 0; e < cnt; ++e) sum += entries[e].second;
        CHECK(sum == doctest::Approx(0.0).epsilon(1e-14));
    }
}
