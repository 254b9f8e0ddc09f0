#pragma once

#include <array>
#include <cstddef>

#include "biaxial/errors.hpp"

namespace biaxial {

enum class Bc { periodic, dirichlet };

// Collocated node lattice. Periodic axes have dims[a] nodes on
// [0, dims[a]*h[a]); dirichlet axes have dims[a] nodes on
// [0, (dims[a]-1)*h[a]] with the face nodes carrying boundary data.
struct GridSpec {
    int ndim = 2;
    std::array<int, 3> dims{1, 1, 1};
    std::array<double, 3> h{1.0, 1.0, 1.0};
    std::array<Bc, 3> bc{Bc::periodic, Bc::periodic, Bc::periodic};

    static GridSpec periodic2d(int nx, int ny, double hx, double hy) {
        GridSpec g;
        g.ndim = 2;
        g.dims = {nx, ny, 1};
        g.h = {hx, hy, 1.0};
        g.bc = {Bc::periodic, Bc::periodic, Bc::periodic};
        g.validate();
        return g;
    }

    static GridSpec dirichlet2d(int nx, int ny, double hx, double hy) {
        GridSpec g;
        g.ndim = 2;
        g.dims = {nx, ny, 1};
        g.h = {hx, hy, 1.0};
        g.bc = {Bc::dirichlet, Bc::dirichlet, Bc::periodic};
        g.validate();
        return g;
    }

    static GridSpec dirichlet3d(int nx, int ny, int nz, double hx, double hy, double hz) {
        GridSpec g;
        g.ndim = 3;
        g.dims = {nx, ny, nz};
        g.h = {hx, hy, hz};
        g.bc = {Bc::dirichlet, Bc::dirichlet, Bc::dirichlet};
        g.validate();
        return g;
    }

    static GridSpec periodic3d(int nx, int ny, int nz, double hx, double hy, double hz) {
        GridSpec g;
        g.ndim = 3;
        g.dims = {nx, ny, nz};
        g.h = {hx, hy, hz};
        g.bc = {Bc::periodic, Bc::periodic, Bc::periodic};
        g.validate();
        return g;
    }

    void validate() const {
        if (ndim != 2 && ndim != 3) throw ValidationError("ndim", "ndim must be 2 or 3");
        for (int a = 0; a < ndim; ++a) {
            if (dims[a] < 4) throw ValidationError("dims", "all dims must be >= 4");
            if (!(h[a] > 0.0)) throw ValidationError("h", "all spacings must be > 0");
        }
    }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (int a = 0; a < ndim; ++a) n *= static_cast<std::size_t>(dims[a]);
        return n;
    }

    // x fastest, then y, then z (matches the snapshot layout).
    std::size_t index(int x, int y, int z = 0) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims[1]) * z);
    }

    std::ptrdiff_t stride(int axis) const {
        if (axis == 0) return 1;
        if (axis == 1) return dims[0];
        return static_cast<std::ptrdiff_t>(dims[0]) * dims[1];
    }

    std::array<int, 3> coords(std::size_t idx) const {
        int x = static_cast<int>(idx % dims[0]);
        int y = static_cast<int>((idx / dims[0]) % dims[1]);
        int z = static_cast<int>(idx / (static_cast<std::size_t>(dims[0]) * dims[1]));
        return {x, y, z};
    }

    double coord(int axis, int i) const { return h[axis] * i; }

    bool on_dirichlet_face(int x, int y, int z = 0) const {
        std::array<int, 3> c{x, y, z};
        for (int a = 0; a < ndim; ++a)
            if (bc[a] == Bc::dirichlet && (c[a] == 0 || c[a] == dims[a] - 1)) return true;
        return false;
    }

    // Trapezoid weight along dirichlet axes, plain h along periodic ones.
    double axis_weight(int axis, int i) const {
        if (bc[axis] == Bc::dirichlet && (i == 0 || i == dims[axis] - 1)) return 0.5 * h[axis];
        return h[axis];
    }

    double node_weight(int x, int y, int z = 0) const {
        std::array<int, 3> c{x, y, z};
        double w = 1.0;
        for (int a = 0; a < ndim; ++a) w *= axis_weight(a, c[a]);
        return w;
    }

    // Domain extent along an axis.
    double length(int axis) const {
        return bc[axis] == Bc::periodic ? h[axis] * dims[axis] : h[axis] * (dims[axis] - 1);
    }

    bool operator==(const GridSpec&) const = default;
};

}  // namespace biaxial
