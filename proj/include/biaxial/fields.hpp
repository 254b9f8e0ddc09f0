#pragma once

#include <array>
#include <vector>

#include "biaxial/geom.hpp"
#include "biaxial/grid.hpp"

namespace biaxial {

struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), values(g.node_count(), 0.0) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

// Component-major storage (SoA) so the stencil kernels stream over
// contiguous component planes.
struct Vec3Field {
    GridSpec grid;
    std::array<std::vector<double>, 3> comp;

    Vec3Field() = default;
    explicit Vec3Field(const GridSpec& g) : grid(g) {
        for (auto& c : comp) c.assign(g.node_count(), 0.0);
    }

    Vec3 at(std::size_t i) const { return {comp[0][i], comp[1][i], comp[2][i]}; }
    void set(std::size_t i, const Vec3& v) {
        comp[0][i] = v.x;
        comp[1][i] = v.y;
        comp[2][i] = v.z;
    }
};

struct VectorField2D {
    GridSpec grid;
    std::array<std::vector<double>, 2> comp;

    VectorField2D() = default;
    explicit VectorField2D(const GridSpec& g) : grid(g) {
        for (auto& c : comp) c.assign(g.node_count(), 0.0);
    }
};

struct DirectorPairField {
    GridSpec grid;
    Vec3Field n;
    Vec3Field m;

    DirectorPairField() = default;
    explicit DirectorPairField(const GridSpec& g) : grid(g), n(g), m(g) {}
};

// Per-node Jacobians of a 3-component field, stored per (component, axis).
struct JacobianField {
    GridSpec grid;
    std::array<std::array<std::vector<double>, 3>, 3> d;  // d[i][a] = d_a f^i

    JacobianField() = default;
    explicit JacobianField(const GridSpec& g) : grid(g) {
        for (auto& row : d)
            for (auto& v : row) v.assign(g.node_count(), 0.0);
    }

    Mat3 at(std::size_t idx) const {
        Mat3 J;
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 3; ++a) J[i][a] = d[i][a][idx];
        return J;
    }
};

}  // namespace biaxial
