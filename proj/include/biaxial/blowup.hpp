#pragma once

#include <array>

#include "biaxial/frank.hpp"

namespace biaxial {

// Quadratic form of the blow-up limit energy at a base point (p,q) of
// N, in the reduced variables U = (u1, u2, v1) with v2 = -u1. Stored as
// the symmetrized 9x9 matrix over xi = grad U flattened as (i*3 + a).
struct QuadraticForm {
    std::array<std::array<double, 9>, 9> a{};
    Vec3 p{0.0, 0.0, 1.0};
    Vec3 q{1.0, 0.0, 0.0};
    double legendre_min = 0.0;  // min eigenvalue of the symmetrized form
};

// Direct evaluation of the blow-up energy density at gradient xi
// (xi[i][a] = d_a U^i): reconstructs (grad u, grad v) with
// u = (u1,u2,0), v = (0,v1,-u1) and evaluates the limit density built
// from the elastic terms frozen at (p,q) plus the alpha/2
// null-Lagrangian terms.
double blowup_density(const Mat3& xi, const FrankConstants& fc, const Vec3& p = {0.0, 0.0, 1.0},
                      const Vec3& q = {1.0, 0.0, 0.0});

// Assembles the 9x9 form by polarization of blowup_density, records the
// Legendre minimum eigenvalue.
QuadraticForm blowup_form(const FrankConstants& fc, const Vec3& p = {0.0, 0.0, 1.0},
                          const Vec3& q = {1.0, 0.0, 0.0});

// xi^T A xi.
double evaluate(const QuadraticForm& form, const Mat3& xi);

struct EllipticityMargin {
    double lambda_min = 0.0;
    double threshold = 0.0;  // alpha3 / 2
    bool passes = false;     // lambda_min >= threshold - 1e-10
};

EllipticityMargin ellipticity_margin(const QuadraticForm& form, const FrankConstants& fc);

// Eigenvalues of a symmetric 9x9 matrix (cyclic Jacobi), ascending.
std::array<double, 9> symmetric_eigenvalues(const std::array<std::array<double, 9>, 9>& a);

}  // namespace biaxial
