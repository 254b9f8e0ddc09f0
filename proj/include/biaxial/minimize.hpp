#pragma once

#include <vector>

#include "biaxial/energy.hpp"
#include "biaxial/manifold.hpp"

namespace biaxial {

struct MinimizeConfig {
    GridSpec grid;  // ndim = 3, dirichlet
    FrankConstants k;
    double tau = 0.0;  // 0 = auto: h^2 / (12 max k)
    int max_iterations = 20000;
    double tolerance = 1e-6;  // on the projected-gradient norm
    double eps0_sq = 0.05;    // scaled-energy smallness threshold
    std::vector<double> scan_radii;
};

struct ScanEntry {
    std::array<int, 3> center{};
    double radius = 0.0;
    double value = 0.0;  // r^{-1} * ball integral of |grad n|^2 + |grad m|^2
    bool flagged = false;
};

struct MinimizeResult {
    DirectorPairField field;
    std::vector<double> energy_trace;  // modified energy per iteration
    double grad_norm = 0.0;
    ScalarField lambda1, lambda2, mu;
    std::vector<ScanEntry> singular_candidates;
    bool converged = false;
    int iterations = 0;
};

// One explicit projected-gradient step on the modified energy with
// backtracking: interior nodes move by -tau * (tangent gradient scaled
// by the inverse node weight), then retract; the step is accepted only
// if the energy does not increase beyond the roundoff of the energy sum
// (1e-12 relative), otherwise tau is halved (up to 30 times, then
// StepRejectedRepeatedly). Returns the accepted energy; tau is updated
// in place to the accepted value.
double flow_step(DirectorPairField& field, const FrankConstants& k, double& tau);

// Stable default step: h^2 / (12 max k_i).
double stability_step(const GridSpec& grid, const FrankConstants& k);

MinimizeResult minimize(const MinimizeConfig& config, const DirectorPairField& initial);

struct ElResidual {
    Vec3Field rn, rm;  // tangent part of the discrete-energy gradient
    ScalarField lambda1, lambda2, mu;
    double norm = 0.0;  // L2 norm of the volume-scaled residual
};

ElResidual el_residual(const DirectorPairField& field, const FrankConstants& k);

// |grad n|^2 + |grad m|^2 per node.
ScalarField gradient_energy_density(const DirectorPairField& field);

// r^{-1} * sum of w * density over nodes within distance r of the center.
double scaled_ball_energy(const ScalarField& density, const std::array<int, 3>& center, double r);

// Flags centers whose scaled energy exceeds eps0_sq at EVERY scanned
// radius; returns the per-radius entries of flagged centers.
std::vector<ScanEntry> scaled_energy_scan(const DirectorPairField& field,
                                          const std::vector<double>& radii, double eps0_sq);

}  // namespace biaxial
