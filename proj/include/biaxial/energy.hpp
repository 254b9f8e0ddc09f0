#pragma once

#include <array>
#include <utility>

#include "biaxial/fields.hpp"
#include "biaxial/frank.hpp"

namespace biaxial {

// Per-term decomposition of the total elastic energies over the grid.
struct EnergyBreakdown {
    std::array<double, 12> term{};  // k_i-weighted integral of term i
    double nl_n = 0.0;              // integral of (tr(grad n)^2 - (div n)^2)/2
    double nl_m = 0.0;
    double total = 0.0;           // E, sum of the twelve terms
    double total_modified = 0.0;  // E-tilde = E + alpha1*nl_n + alpha2*nl_m
    double dirichlet_n = 0.0;     // (1/2) integral |grad n|^2
    double dirichlet_m = 0.0;
};

// Quadrature: product of trapezoid weights along dirichlet axes, plain
// h along periodic ones (second order, matching the stencils).
EnergyBreakdown total_energy(const DirectorPairField& field, const FrankConstants& fc);

// Exact gradient of the DISCRETE modified energy with respect to the
// node values of n and m. Carries the quadrature weight: for every
// perturbation direction delta, <(Fn,Fm), delta> is the derivative of
// total_energy(...).total_modified along delta.
std::pair<Vec3Field, Vec3Field> variational_gradient(const DirectorPairField& field,
                                                     const FrankConstants& fc);

}  // namespace biaxial
