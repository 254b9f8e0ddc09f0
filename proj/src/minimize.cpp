#include "biaxial/minimize.hpp"

#include <algorithm>
#include <cmath>

#include "biaxial/errors.hpp"
#include "biaxial/stencils.hpp"

namespace biaxial {

double stability_step(const GridSpec& grid, const FrankConstants& k) {
    double hmin = grid.h[0];
    for (int a = 1; a < grid.ndim; ++a) hmin = std::min(hmin, grid.h[a]);
    return hmin * hmin / (12.0 * k.max_k());
}

namespace {

struct TangentGradient {
    Vec3Field fn_tan, fm_tan;
    double norm = 0.0;  // sqrt(sum_q |F_tan(q)|^2 / w_q), interior only
};

TangentGradient tangent_gradient(const DirectorPairField& field, const FrankConstants& k) {
    const GridSpec& g = field.grid;
    auto [fn, fm] = variational_gradient(field, k);
    TangentGradient out{Vec3Field(g), Vec3Field(g)};
    double acc = 0.0;
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        if (g.on_dirichlet_face(c[0], c[1], c[2])) continue;
        auto s = tangent_project(field.n.at(idx), field.m.at(idx), fn.at(idx), fm.at(idx));
        out.fn_tan.set(idx, s.fn_tan);
        out.fm_tan.set(idx, s.fm_tan);
        const double w = g.node_weight(c[0], c[1], c[2]);
        acc += (norm_sq(s.fn_tan) + norm_sq(s.fm_tan)) / w;
    }
    out.norm = std::sqrt(acc);
    return out;
}

DirectorPairField take_step(const DirectorPairField& field, const TangentGradient& grad,
                            double tau) {
    const GridSpec& g = field.grid;
    DirectorPairField next = field;
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        if (g.on_dirichlet_face(c[0], c[1], c[2])) continue;
        const double scale = tau / g.node_weight(c[0], c[1], c[2]);
        auto [n, m] = retract(field.n.at(idx) - scale * grad.fn_tan.at(idx),
                              field.m.at(idx) - scale * grad.fm_tan.at(idx));
        next.n.set(idx, n);
        next.m.set(idx, m);
    }
    return next;
}

}  // namespace

// Near a critical point the true decrement tau*|g|^2 drops below the
// roundoff noise of summing the energy, so acceptance allows that noise;
// genuine instability overshoots it by many orders.
double descent_slack(double e) { return 1e-12 * std::max(1.0, std::fabs(e)); }

double flow_step(DirectorPairField& field, const FrankConstants& k, double& tau) {
    const double e0 = total_energy(field, k).total_modified;
    TangentGradient grad = tangent_gradient(field, k);
    for (int halving = 0; halving <= 30; ++halving) {
        DirectorPairField trial = take_step(field, grad, tau);
        const double e1 = total_energy(trial, k).total_modified;
        if (e1 <= e0 + descent_slack(e0)) {
            field = std::move(trial);
            return e1;
        }
        tau *= 0.5;
    }
    throw StepRejectedRepeatedly("flow_step: 30 halvings without descent");
}

MinimizeResult minimize(const MinimizeConfig& config, const DirectorPairField& initial) {
    const GridSpec& g = initial.grid;
    const double tau0 = config.tau > 0.0 ? config.tau : stability_step(g, config.k);
    double tau = tau0;

    MinimizeResult result;
    result.field = initial;
    result.energy_trace.push_back(total_energy(result.field, config.k).total_modified);

    int iter = 0;
    for (; iter < config.max_iterations; ++iter) {
        TangentGradient grad = tangent_gradient(result.field, config.k);
        result.grad_norm = grad.norm;
        if (grad.norm <= config.tolerance) {
            result.converged = true;
            break;
        }
        const double e0 = result.energy_trace.back();
        bool accepted = false;
        for (int halving = 0; halving <= 30; ++halving) {
            DirectorPairField trial = take_step(result.field, grad, tau);
            const double e1 = total_energy(trial, config.k).total_modified;
            if (e1 <= e0 + descent_slack(e0)) {
                result.field = std::move(trial);
                result.energy_trace.push_back(e1);
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) throw StepRejectedRepeatedly("minimize: 30 halvings without descent");
        tau = std::min(tau0, 2.0 * tau);
    }
    result.iterations = iter;
    if (!result.converged) result.grad_norm = tangent_gradient(result.field, config.k).norm;

    ElResidual res = el_residual(result.field, config.k);
    result.lambda1 = std::move(res.lambda1);
    result.lambda2 = std::move(res.lambda2);
    result.mu = std::move(res.mu);
    result.singular_candidates =
        scaled_energy_scan(result.field, config.scan_radii, config.eps0_sq);
    return result;
}

ElResidual el_residual(const DirectorPairField& field, const FrankConstants& k) {
    const GridSpec& g = field.grid;
    auto [fn, fm] = variational_gradient(field, k);
    ElResidual out{Vec3Field(g), Vec3Field(g), ScalarField(g), ScalarField(g), ScalarField(g)};
    double acc = 0.0;
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        if (g.ndim == 3 && g.on_dirichlet_face(c[0], c[1], c[2])) continue;
        auto s = tangent_project(field.n.at(idx), field.m.at(idx), fn.at(idx), fm.at(idx));
        out.rn.set(idx, s.fn_tan);
        out.rm.set(idx, s.fm_tan);
        out.lambda1[idx] = s.lambda1;
        out.lambda2[idx] = s.lambda2;
        out.mu[idx] = s.mu;
        acc += (norm_sq(s.fn_tan) + norm_sq(s.fm_tan)) / g.node_weight(c[0], c[1], c[2]);
    }
    out.norm = std::sqrt(acc);
    return out;
}

ScalarField gradient_energy_density(const DirectorPairField& field) {
    JacobianField Jn = jacobian(field.n);
    JacobianField Jm = jacobian(field.m);
    ScalarField density(field.grid);
    const std::size_t count = field.grid.node_count();
    for (std::size_t idx = 0; idx < count; ++idx)
        density[idx] = Jn.at(idx).frobenius_sq() + Jm.at(idx).frobenius_sq();
    return density;
}

double scaled_ball_energy(const ScalarField& density, const std::array<int, 3>& center,
                          double r) {
    const GridSpec& g = density.grid;
    const double r_sq = r * r;
    std::array<int, 3> reach{0, 0, 0};
    for (int a = 0; a < g.ndim; ++a) reach[a] = static_cast<int>(r / g.h[a]) + 1;

    double sum = 0.0;
    for (int dz = -reach[2]; dz <= reach[2]; ++dz) {
        for (int dy = -reach[1]; dy <= reach[1]; ++dy) {
            for (int dx = -reach[0]; dx <= reach[0]; ++dx) {
                std::array<int, 3> p{center[0] + dx, center[1] + dy, center[2] + dz};
                bool inside_grid = true;
                for (int a = 0; a < g.ndim; ++a) {
                    if (g.bc[a] == Bc::periodic) {
                        p[a] = ((p[a] % g.dims[a]) + g.dims[a]) % g.dims[a];
                    } else if (p[a] < 0 || p[a] >= g.dims[a]) {
                        inside_grid = false;
                        break;
                    }
                }
                if (!inside_grid) continue;
                const double dist_sq = dx * dx * g.h[0] * g.h[0] + dy * dy * g.h[1] * g.h[1] +
                                       dz * dz * g.h[2] * g.h[2];
                if (dist_sq > r_sq) continue;
                sum += g.node_weight(p[0], p[1], p[2]) * density[g.index(p[0], p[1], p[2])];
            }
        }
    }
    return sum / r;
}

std::vector<ScanEntry> scaled_energy_scan(const DirectorPairField& field,
                                          const std::vector<double>& radii, double eps0_sq) {
    std::vector<ScanEntry> out;
    if (radii.empty()) return out;
    const GridSpec& g = field.grid;
    ScalarField density = gradient_energy_density(field);

    const std::size_t count = g.node_count();
    std::vector<double> values(radii.size());
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        bool all_above = true;
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            values[ri] = scaled_ball_energy(density, c, radii[ri]);
            if (values[ri] <= eps0_sq) {
                all_above = false;
                break;
            }
        }
        if (!all_above) continue;
        for (std::size_t ri = 0; ri < radii.size(); ++ri)
            out.push_back({c, radii[ri], values[ri], true});
    }
    return out;
}

}  // namespace biaxial
