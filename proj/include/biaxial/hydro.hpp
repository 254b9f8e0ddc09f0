#pragma once

#include <array>
#include <vector>

#include "biaxial/manifold.hpp"
#include "biaxial/poisson.hpp"

namespace biaxial {

// State of the simplified 2-D flow: velocity u, pressure P and the
// director pair, all on one periodic or no-slip box grid.
struct FlowState {
    double t = 0.0;
    VectorField2D u;
    ScalarField p;
    DirectorPairField directors;
    double nu = 1.0;

    FlowState() = default;
    explicit FlowState(const GridSpec& g, double viscosity = 1.0)
        : u(g), p(g), directors(g), nu(viscosity) {}
};

struct EnergyBudget {
    double kinetic = 0.0;      // (1/2) integral |u|^2
    double dirichlet_n = 0.0;  // (1/2) integral |grad n|^2
    double dirichlet_m = 0.0;
    double total = 0.0;
    double viscous_dissipation = 0.0;   // integral |grad u|^2
    double director_dissipation = 0.0;  // integral |n_t + u.grad n|^2 + |m_t + u.grad m|^2
    // Defect of the dissipation balance dE/dt + nu*viscous + director = 0.
    double residual = 0.0;
    // Same balance without the viscous term (the identity as printed,
    // which the derivation shows is missing it).
    double residual_no_viscous = 0.0;
};

// sigma_ij = <d_i n, d_j n> + <d_i m, d_j m>, stored as (s11, s12, s22).
struct StressField {
    ScalarField s11, s12, s22;
};

StressField ericksen_stress(const JacobianField& Jn, const JacobianField& Jm);

// Advection-diffusion predictor: uStar = u + dt(-u.grad u + nu Lap u - div sigma).
// Throws CFLViolated when dt exceeds min(h^2/8, h^2/(8 nu), h/(2 max|u|)).
VectorField2D velocity_step(const FlowState& state, double dt);

// Explicit director update n* = n + dt(-u.grad n + Lap n + |grad n|^2 n
// + <grad n, grad m> m), symmetric in m, then retraction (optional so
// the drift study can disable it). Dirichlet boundary nodes stay fixed.
struct DirectorStepResult {
    Vec3Field n, m;
};
DirectorStepResult director_step(const DirectorPairField& directors, const VectorField2D& u,
                                 double dt, bool retraction = true);

// One splitting step: velocity predictor, pressure projection, director
// update with the projected velocity; P accumulates phi/dt.
struct FlowStepResult {
    FlowState state;
    EnergyBudget budget;
};
FlowStepResult flow_step(const FlowState& state, double dt, bool retraction = true);

EnergyBudget energy_budget(const FlowState& prev, const FlowState& next, double dt);

double kinetic_energy(const VectorField2D& u);

// |u|^2 + |grad n|^2 + |grad m|^2 per node.
ScalarField local_energy_density(const FlowState& state);

struct ConcentrationReport {
    double radius = 0.0;
    double c0 = 0.0;
    double max_local = 0.0;  // max over centers of the disk integral
    std::array<int, 2> argmax{0, 0};
    bool fired = false;
    std::vector<std::array<int, 2>> firing_centers;
};

// Fires when the local energy integral over some disk B_r(center)
// reaches c0; scans all grid centers. Requires r >= 2h.
ConcentrationReport concentration_scan(const FlowState& state, double r, double c0);

// Space-time means over the parabolic cylinder B_r(x0) x [t0 - r^2, t0].
// The window must hold equally spaced states (spacing dt) covering that
// interval, with the last state at t0. Throws WindowTooShort otherwise.
struct YQuantities {
    double y1 = 0.0;  // (mean of |u - (u)|^4 + |grad n|^4 + |grad m|^4)^(1/4)
    double y2 = 0.0;  // r * (mean of |P - per-slice spatial mean|^(4/3))^(3/4)
};
YQuantities y_quantities(const std::vector<FlowState>& window, const std::array<int, 2>& center,
                         double r);

}  // namespace biaxial
