#include "biaxial/poisson.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <fftw3.h>

#include "biaxial/errors.hpp"
#include "biaxial/kernels.hpp"
#include "biaxial/stencils.hpp"

namespace biaxial {

ScalarField divergence(const VectorField2D& u) {
    const GridSpec& g = u.grid;
    ScalarField div(g);
    std::vector<double> dx, dy;
    apply_deriv(g, 0, u.comp[0], dx);
    apply_deriv(g, 1, u.comp[1], dy);
    for (std::size_t i = 0; i < div.values.size(); ++i) div[i] = dx[i] + dy[i];
    return div;
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::fabs(v));
    return m;
}

namespace {

ScalarField solve_periodic(const ScalarField& rhs) {
    const GridSpec& g = rhs.grid;
    const int nx = g.dims[0], ny = g.dims[1];
    const int nxh = nx / 2 + 1;

    std::vector<double> in(rhs.values);
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(ny) * nxh);

    // Layout is x-fastest, so FFTW sees (ny, nx) row-major.
    fftw_plan fwd = fftw_plan_dft_r2c_2d(ny, nx, in.data(),
                                         reinterpret_cast<fftw_complex*>(spec.data()),
                                         FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);

    // Symbol of the wide Laplacian Dx^2 + Dy^2 built from central first
    // differences: -(sin^2(2 pi kx/nx)/hx^2 + sin^2(2 pi ky/ny)/hy^2).
    const double inv_hx_sq = 1.0 / (g.h[0] * g.h[0]);
    const double inv_hy_sq = 1.0 / (g.h[1] * g.h[1]);
    for (int ky = 0; ky < ny; ++ky) {
        const double sy = std::sin(2.0 * M_PI * ky / ny);
        for (int kx = 0; kx < nxh; ++kx) {
            const double sx = std::sin(2.0 * M_PI * kx / nx);
            const double lambda = -(sx * sx * inv_hx_sq + sy * sy * inv_hy_sq);
            std::complex<double>& c = spec[static_cast<std::size_t>(ky) * nxh + kx];
            // Null modes of the wide stencil (mean and Nyquist) carry no
            // correctable divergence; drop them.
            c = (lambda != 0.0) ? c / lambda : 0.0;
        }
    }

    ScalarField phi(g);
    fftw_plan bwd = fftw_plan_dft_c2r_2d(ny, nx, reinterpret_cast<fftw_complex*>(spec.data()),
                                         phi.values.data(), FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);
    kern::scale(phi.values.data(), 1.0 / (static_cast<double>(nx) * ny), phi.values.size());
    return phi;
}

void zero_walls(const GridSpec& g, std::vector<double>& vx, std::vector<double>& vy) {
    for (int y = 0; y < g.dims[1]; ++y)
        for (int x = 0; x < g.dims[0]; ++x)
            if (g.on_dirichlet_face(x, y)) {
                vx[g.index(x, y)] = 0.0;
                vy[g.index(x, y)] = 0.0;
            }
}

// The box correction is u <- u - Z grad(phi), where Z zeroes the wall
// rows so no-slip walls are preserved by construction. The matching
// operator L = div(Z grad .) uses the actual one-sided face closures of
// the divergence, so it removes exactly what `divergence` measures. L is
// not symmetric (face rows break the skew-symmetry of the derivative),
// so the box solve runs CG on the normal equations L^T L phi = L^T b.
void apply_L(const GridSpec& g, const std::vector<double>& x, std::vector<double>& out) {
    std::vector<double> gx, gy, dy;
    apply_deriv(g, 0, x, gx);
    apply_deriv(g, 1, x, gy);
    zero_walls(g, gx, gy);
    apply_deriv(g, 0, gx, out);
    apply_deriv(g, 1, gy, dy);
    kern::axpy(out.data(), 1.0, dy.data(), x.size());
}

void apply_Lt(const GridSpec& g, const std::vector<double>& x, std::vector<double>& out) {
    const std::size_t n = x.size();
    std::vector<double> gx(n, 0.0), gy(n, 0.0), t(n, 0.0);
    apply_deriv_adjoint(g, 0, x, gx);
    apply_deriv_adjoint(g, 1, x, gy);
    zero_walls(g, gx, gy);
    out.assign(n, 0.0);
    apply_deriv_adjoint(g, 0, gx, out);
    apply_deriv_adjoint(g, 1, gy, t);
    kern::axpy(out.data(), 1.0, t.data(), n);
}

ScalarField solve_box(const ScalarField& rhs, double tol, int max_iter) {
    const GridSpec& g = rhs.grid;
    const std::size_t n = g.node_count();
    const std::vector<double>& b = rhs.values;
    const double b_norm = std::sqrt(kern::sum_sq(b.data(), n));
    if (b_norm == 0.0) return ScalarField(g);

    std::vector<double> x(n, 0.0), r(b), z(n), p(n), w(n);
    apply_Lt(g, r, z);
    double zz = kern::sum_sq(z.data(), n);
    const double zz0 = zz;
    p = z;

    for (int it = 0; it < max_iter; ++it) {
        // Converged when the reachable part of the residual is exhausted.
        if (std::sqrt(zz) <= tol * std::sqrt(zz0) ||
            std::sqrt(kern::sum_sq(r.data(), n)) <= tol * b_norm) {
            ScalarField phi(g);
            phi.values = std::move(x);
            return phi;
        }
        apply_L(g, p, w);
        double ww = kern::sum_sq(w.data(), n);
        if (ww == 0.0) break;
        const double alpha = zz / ww;
        kern::axpy(x.data(), alpha, p.data(), n);
        if ((it + 1) % 500 == 0) {
            // Recompute the true residual to shed accumulated drift.
            apply_L(g, x, r);
            for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        } else {
            kern::axpy(r.data(), -alpha, w.data(), n);
        }
        apply_Lt(g, r, z);
        const double zz_new = kern::sum_sq(z.data(), n);
        const double beta = zz_new / zz;
        zz = zz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw PoissonNotConverged("box pressure solve did not reach tolerance");
}

}  // namespace

ScalarField project(VectorField2D& u, double tol, int max_iter) {
    const GridSpec& g = u.grid;
    ScalarField div = divergence(u);

    const bool periodic = g.bc[0] == Bc::periodic && g.bc[1] == Bc::periodic;
    ScalarField phi = periodic ? solve_periodic(div) : solve_box(div, tol, max_iter);

    std::vector<double> gx, gy;
    apply_deriv(g, 0, phi.values, gx);
    apply_deriv(g, 1, phi.values, gy);
    // The box correction is zeroed on the walls, matching the solve
    // operator, so no-slip data stays exact.
    if (!periodic) zero_walls(g, gx, gy);
    for (std::size_t i = 0; i < u.comp[0].size(); ++i) {
        u.comp[0][i] -= gx[i];
        u.comp[1][i] -= gy[i];
    }
    return phi;
}

}  // namespace biaxial
