#include "biaxial/stencils.hpp"

#include "biaxial/kernels.hpp"
#include "biaxial/parallel.hpp"

namespace biaxial {

int deriv_stencil(const GridSpec& grid, int axis, int i, std::pair<int, double> out[3]) {
    const int L = grid.dims[axis];
    const double inv2h = 1.0 / (2.0 * grid.h[axis]);
    if (grid.bc[axis] == Bc::periodic) {
        out[0] = {(i + 1) % L, inv2h};
        out[1] = {(i + L - 1) % L, -inv2h};
        return 2;
    }
    if (i == 0) {
        out[0] = {0, -3.0 * inv2h};
        out[1] = {1, 4.0 * inv2h};
        out[2] = {2, -inv2h};
        return 3;
    }
    if (i == L - 1) {
        out[0] = {L - 1, 3.0 * inv2h};
        out[1] = {L - 2, -4.0 * inv2h};
        out[2] = {L - 3, inv2h};
        return 3;
    }
    out[0] = {i + 1, inv2h};
    out[1] = {i - 1, -inv2h};
    return 2;
}

namespace {

// Applies the stencil at one axis position to a whole x-line (or to a
// single node when axis == 0).
void apply_line_scalar(const GridSpec& g, int axis, int pos, const double* in_base,
                       double* out_base, std::size_t count, std::ptrdiff_t line_step) {
    std::pair<int, double> st[3];
    int nst = deriv_stencil(g, axis, pos, st);
    const std::ptrdiff_t s = g.stride(axis);
    for (std::size_t i = 0; i < count; ++i) {
        double acc = 0.0;
        for (int k = 0; k < nst; ++k)
            acc += st[k].second * in_base[i * line_step + (st[k].first - pos) * s];
        out_base[i * line_step] = acc;
    }
}

}  // namespace

void apply_deriv(const GridSpec& grid, int axis, const std::vector<double>& in,
                 std::vector<double>& out) {
    out.assign(grid.node_count(), 0.0);
    const int nx = grid.dims[0], ny = grid.dims[1], nz = grid.dims[2];
    const std::ptrdiff_t s = grid.stride(axis);
    const double inv2h = 1.0 / (2.0 * grid.h[axis]);
    const int L = grid.dims[axis];

    if (axis == 0) {
        parallel_for(static_cast<std::size_t>(ny) * nz, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t line = lo; line < hi; ++line) {
                std::size_t base = line * nx;
                kern::diff_central(out.data() + base + 1, in.data() + base + 1, nx - 2, 1, inv2h);
                apply_line_scalar(grid, 0, 0, in.data() + base, out.data() + base, 1, 1);
                apply_line_scalar(grid, 0, L - 1, in.data() + base + (L - 1),
                                  out.data() + base + (L - 1), 1, 1);
            }
        });
        return;
    }

    // axis 1 or 2: each (axis position, other index) pair owns a
    // contiguous x-line of length nx.
    const int other = (axis == 1) ? nz : ny;
    parallel_for(static_cast<std::size_t>(other), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t o = lo; o < hi; ++o) {
            for (int j = 0; j < L; ++j) {
                std::size_t base = (axis == 1) ? grid.index(0, j, static_cast<int>(o))
                                               : grid.index(0, static_cast<int>(o), j);
                if (j >= 1 && j <= L - 2) {
                    kern::diff_central(out.data() + base, in.data() + base, nx, s, inv2h);
                } else {
                    apply_line_scalar(grid, axis, j, in.data() + base, out.data() + base, nx, 1);
                }
            }
        }
    });
}

void apply_deriv_adjoint(const GridSpec& grid, int axis, const std::vector<double>& in,
                         std::vector<double>& out) {
    const std::ptrdiff_t s = grid.stride(axis);
    const std::size_t n = grid.node_count();
    std::pair<int, double> st[3];
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto c = grid.coords(idx);
        int pos = c[axis];
        int nst = deriv_stencil(grid, axis, pos, st);
        for (int k = 0; k < nst; ++k)
            out[idx + (st[k].first - pos) * s] += st[k].second * in[idx];
    }
}

void laplacian(const GridSpec& grid, const std::vector<double>& in, std::vector<double>& out) {
    out.assign(grid.node_count(), 0.0);
    const int nx = grid.dims[0];

    for (int axis = 0; axis < grid.ndim; ++axis) {
        const int L = grid.dims[axis];
        const std::ptrdiff_t s = grid.stride(axis);
        const double invh2 = 1.0 / (grid.h[axis] * grid.h[axis]);
        const bool periodic = grid.bc[axis] == Bc::periodic;

        auto one_sided = [&](std::size_t idx, int sign) {
            // f'' at a face, second order: (2f0 - 5f1 + 4f2 - f3)/h^2.
            out[idx] += invh2 * (2.0 * in[idx] - 5.0 * in[idx + sign * s] +
                                 4.0 * in[idx + 2 * sign * s] - in[idx + 3 * sign * s]);
        };
        auto wrap = [&](std::size_t idx, int j) {
            std::size_t up = idx + ((j + 1) % L - j) * s;
            std::size_t dn = idx + ((j + L - 1) % L - j) * s;
            out[idx] += invh2 * (in[dn] - 2.0 * in[idx] + in[up]);
        };

        if (axis == 0) {
            const int ny = grid.dims[1], nz = grid.dims[2];
            for (std::size_t line = 0; line < static_cast<std::size_t>(ny) * nz; ++line) {
                std::size_t base = line * nx;
                kern::second_central_acc(out.data() + base + 1, in.data() + base + 1, nx - 2, 1,
                                         invh2);
                if (periodic) {
                    wrap(base, 0);
                    wrap(base + (L - 1), L - 1);
                } else {
                    one_sided(base, +1);
                    one_sided(base + (L - 1), -1);
                }
            }
        } else {
            const int other = (axis == 1) ? grid.dims[2] : grid.dims[1];
            for (int o = 0; o < other; ++o) {
                for (int j = 0; j < L; ++j) {
                    std::size_t base =
                        (axis == 1) ? grid.index(0, j, o) : grid.index(0, o, j);
                    if (j >= 1 && j <= L - 2) {
                        kern::second_central_acc(out.data() + base, in.data() + base, nx, s, invh2);
                    } else if (periodic) {
                        for (int x = 0; x < nx; ++x) wrap(base + x, j);
                    } else {
                        for (int x = 0; x < nx; ++x) one_sided(base + x, j == 0 ? +1 : -1);
                    }
                }
            }
        }
    }
}

JacobianField jacobian(const Vec3Field& f) {
    JacobianField J(f.grid);
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < f.grid.ndim; ++a) apply_deriv(f.grid, a, f.comp[i], J.d[i][a]);
    return J;
}

}  // namespace biaxial
