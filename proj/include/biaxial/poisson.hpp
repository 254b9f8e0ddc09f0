#pragma once

#include "biaxial/fields.hpp"

namespace biaxial {

// Discrete central-difference divergence of a 2-D velocity field.
ScalarField divergence(const VectorField2D& u);

double max_abs(const ScalarField& f);

// Helmholtz projection u <- u - grad(phi) with Laplacian(phi) = div u,
// where the Laplacian is the composition of the central first
// derivatives (so the projected field is discretely divergence-free).
// Periodic grids solve spectrally; dirichlet boxes run conjugate
// gradients on the Neumann problem to the given tolerance (throws
// PoissonNotConverged). Returns phi.
ScalarField project(VectorField2D& u, double tol = 1e-10, int max_iter = 20000);

}  // namespace biaxial
