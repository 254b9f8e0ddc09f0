#pragma once

#include <utility>
#include <vector>

#include "biaxial/fields.hpp"

namespace biaxial {

// Second-order central differences; one-sided second-order closures at
// dirichlet faces; periodic wrap otherwise. Interior lines go through
// the SIMD kernel layer.

// out = d in / d x_axis over the whole grid.
void apply_deriv(const GridSpec& grid, int axis, const std::vector<double>& in,
                 std::vector<double>& out);

// out[j] += sum_i c(i -> j) in[i], the exact transpose of apply_deriv.
// Used to differentiate the discrete energy.
void apply_deriv_adjoint(const GridSpec& grid, int axis, const std::vector<double>& in,
                         std::vector<double>& out);

// Standard 5-point (2-D) / 7-point (3-D) Laplacian; one-sided
// second-order second derivatives at dirichlet faces.
void laplacian(const GridSpec& grid, const std::vector<double>& in, std::vector<double>& out);

// Per-node Jacobians of a 3-component field; axes beyond grid.ndim stay
// zero (2-D directors are z-independent).
JacobianField jacobian(const Vec3Field& f);

// div = tr of the spatial block; curl_i = eps_{iab} d_a f^b.
inline std::pair<double, Vec3> divergence_curl(const Mat3& J) {
    return {J.trace(), curl_of(J)};
}

// Up to 3 entries of (absolute axis position, coefficient) for the
// first-derivative stencil at axis position i.
int deriv_stencil(const GridSpec& grid, int axis, int i, std::pair<int, double> out[3]);

}  // namespace biaxial
