#include "biaxial/hydro.hpp"

#include <cmath>

#include "biaxial/errors.hpp"
#include "biaxial/stencils.hpp"

namespace biaxial {

namespace {

double max_speed(const VectorField2D& u) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.comp[0].size(); ++i) {
        double s = u.comp[0][i] * u.comp[0][i] + u.comp[1][i] * u.comp[1][i];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

void check_cfl(const GridSpec& g, double dt, double nu, const VectorField2D& u) {
    const double h = std::min(g.h[0], g.h[1]);
    double bound = h * h / 8.0;
    if (nu > 1.0) bound = std::min(bound, h * h / (8.0 * nu));
    const double speed = max_speed(u);
    if (speed > 0.0) bound = std::min(bound, h / (2.0 * speed));
    if (dt > bound) throw CFLViolated("dt exceeds the CFL bound");
}

}  // namespace

StressField ericksen_stress(const JacobianField& Jn, const JacobianField& Jm) {
    const GridSpec& g = Jn.grid;
    StressField s{ScalarField(g), ScalarField(g), ScalarField(g)};
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        double s11 = 0.0, s12 = 0.0, s22 = 0.0;
        for (int c = 0; c < 3; ++c) {
            s11 += Jn.d[c][0][idx] * Jn.d[c][0][idx] + Jm.d[c][0][idx] * Jm.d[c][0][idx];
            s12 += Jn.d[c][0][idx] * Jn.d[c][1][idx] + Jm.d[c][0][idx] * Jm.d[c][1][idx];
            s22 += Jn.d[c][1][idx] * Jn.d[c][1][idx] + Jm.d[c][1][idx] * Jm.d[c][1][idx];
        }
        s.s11[idx] = s11;
        s.s12[idx] = s12;
        s.s22[idx] = s22;
    }
    return s;
}

VectorField2D velocity_step(const FlowState& state, double dt) {
    const GridSpec& g = state.u.grid;
    check_cfl(g, dt, state.nu, state.u);

    JacobianField Jn = jacobian(state.directors.n);
    JacobianField Jm = jacobian(state.directors.m);
    StressField sigma = ericksen_stress(Jn, Jm);

    std::vector<double> ds11_dx, ds12_dx, ds12_dy, ds22_dy;
    apply_deriv(g, 0, sigma.s11.values, ds11_dx);
    apply_deriv(g, 0, sigma.s12.values, ds12_dx);
    apply_deriv(g, 1, sigma.s12.values, ds12_dy);
    apply_deriv(g, 1, sigma.s22.values, ds22_dy);

    std::array<std::array<std::vector<double>, 2>, 2> du;  // du[c][a] = d_a u_c
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a) apply_deriv(g, a, state.u.comp[c], du[c][a]);

    std::array<std::vector<double>, 2> lap;
    for (int c = 0; c < 2; ++c) laplacian(g, state.u.comp[c], lap[c]);

    VectorField2D u_star(g);
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        const double ux = state.u.comp[0][idx], uy = state.u.comp[1][idx];
        const double rhs_x = -(ux * du[0][0][idx] + uy * du[0][1][idx]) +
                             state.nu * lap[0][idx] - (ds11_dx[idx] + ds12_dy[idx]);
        const double rhs_y = -(ux * du[1][0][idx] + uy * du[1][1][idx]) +
                             state.nu * lap[1][idx] - (ds12_dx[idx] + ds22_dy[idx]);
        u_star.comp[0][idx] = ux + dt * rhs_x;
        u_star.comp[1][idx] = uy + dt * rhs_y;
    }
    if (g.bc[0] == Bc::dirichlet || g.bc[1] == Bc::dirichlet) {
        for (int y = 0; y < g.dims[1]; ++y)
            for (int x = 0; x < g.dims[0]; ++x)
                if (g.on_dirichlet_face(x, y)) {
                    u_star.comp[0][g.index(x, y)] = 0.0;
                    u_star.comp[1][g.index(x, y)] = 0.0;
                }
    }
    return u_star;
}

DirectorStepResult director_step(const DirectorPairField& directors, const VectorField2D& u,
                                 double dt, bool retraction) {
    const GridSpec& g = directors.grid;
    check_cfl(g, dt, 1.0, u);

    JacobianField Jn = jacobian(directors.n);
    JacobianField Jm = jacobian(directors.m);

    std::array<std::vector<double>, 3> lap_n, lap_m;
    for (int c = 0; c < 3; ++c) {
        laplacian(g, directors.n.comp[c], lap_n[c]);
        laplacian(g, directors.m.comp[c], lap_m[c]);
    }

    DirectorStepResult out{Vec3Field(g), Vec3Field(g)};
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        Vec3 n = directors.n.at(idx), m = directors.m.at(idx);
        if (g.on_dirichlet_face(c[0], c[1])) {
            out.n.set(idx, n);
            out.m.set(idx, m);
            continue;
        }
        Mat3 Dn = Jn.at(idx), Dm = Jm.at(idx);
        const double ux = u.comp[0][idx], uy = u.comp[1][idx];
        Vec3 gn, gm;  // transport + diffusion part of the right-hand side
        for (int i = 0; i < 3; ++i) {
            gn[i] = -(ux * Dn[i][0] + uy * Dn[i][1]) + lap_n[i][idx];
            gm[i] = -(ux * Dm[i][0] + uy * Dm[i][1]) + lap_m[i][idx];
        }

        // Discrete Lagrange multipliers: the continuum ones are
        // lambda1 = |grad n|^2, lambda2 = |grad m|^2, mu = <grad n, grad m>,
        // exactly the values that make the right-hand side tangent to the
        // constraints. Solving for tangency directly keeps the per-step
        // constraint drift at O(dt^2) instead of picking up the O(h^2)
        // mismatch between |Dn|^2 and -n.(discrete laplacian n).
        const double nn = dot(n, n), mm = dot(m, m), nm = dot(n, m);
        const double b1 = -dot(n, gn), b2 = -dot(m, gm), b3 = -(dot(m, gn) + dot(n, gm));
        // [nn 0 nm; 0 mm nm; nm nm nn+mm] [l1 l2 mu]^T = [b1 b2 b3]^T
        const double s = nn + mm;
        const double det = nn * mm * s - nm * nm * (nn + mm);
        if (std::fabs(det) < 1e-12) throw DegenerateInput("director step: degenerate pair");
        const double l1 = (b1 * (mm * s - nm * nm) + b2 * nm * nm - b3 * mm * nm) / det;
        const double l2 = (b1 * nm * nm + b2 * (nn * s - nm * nm) - b3 * nn * nm) / det;
        const double mu = (-b1 * mm * nm - b2 * nn * nm + b3 * nn * mm) / det;

        Vec3 n_new, m_new;
        for (int i = 0; i < 3; ++i) {
            n_new[i] = n[i] + dt * (gn[i] + l1 * n[i] + mu * m[i]);
            m_new[i] = m[i] + dt * (gm[i] + l2 * m[i] + mu * n[i]);
        }
        if (retraction) {
            auto r = retract(n_new, m_new);
            n_new = r.n;
            m_new = r.m;
        }
        out.n.set(idx, n_new);
        out.m.set(idx, m_new);
    }
    return out;
}

FlowStepResult flow_step(const FlowState& state, double dt, bool retraction) {
    FlowStepResult out;
    out.state = state;
    out.state.t = state.t + dt;

    out.state.u = velocity_step(state, dt);
    ScalarField phi = project(out.state.u);
    for (std::size_t i = 0; i < phi.values.size(); ++i) out.state.p[i] = phi[i] / dt;

    DirectorStepResult dirs = director_step(state.directors, out.state.u, dt, retraction);
    out.state.directors.n = std::move(dirs.n);
    out.state.directors.m = std::move(dirs.m);

    out.budget = energy_budget(state, out.state, dt);
    return out;
}

double kinetic_energy(const VectorField2D& u) {
    const GridSpec& g = u.grid;
    double e = 0.0;
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        e += 0.5 * g.node_weight(c[0], c[1]) *
             (u.comp[0][idx] * u.comp[0][idx] + u.comp[1][idx] * u.comp[1][idx]);
    }
    return e;
}

namespace {

double dirichlet_energy(const Vec3Field& f) {
    JacobianField J = jacobian(f);
    const GridSpec& g = f.grid;
    double e = 0.0;
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        e += 0.5 * g.node_weight(c[0], c[1]) * J.at(idx).frobenius_sq();
    }
    return e;
}

}  // namespace

EnergyBudget energy_budget(const FlowState& prev, const FlowState& next, double dt) {
    const GridSpec& g = prev.u.grid;
    EnergyBudget b;
    b.kinetic = kinetic_energy(next.u);
    b.dirichlet_n = dirichlet_energy(next.directors.n);
    b.dirichlet_m = dirichlet_energy(next.directors.m);
    b.total = b.kinetic + b.dirichlet_n + b.dirichlet_m;

    const double e_prev = kinetic_energy(prev.u) + dirichlet_energy(prev.directors.n) +
                          dirichlet_energy(prev.directors.m);

    std::array<std::array<std::vector<double>, 2>, 2> du;
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 2; ++a) apply_deriv(g, a, next.u.comp[c], du[c][a]);

    JacobianField Jn = jacobian(prev.directors.n);
    JacobianField Jm = jacobian(prev.directors.m);

    const std::size_t count = g.node_count();
    double viscous = 0.0, director = 0.0;
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        const double w = g.node_weight(c[0], c[1]);
        for (int ci = 0; ci < 2; ++ci)
            for (int a = 0; a < 2; ++a) viscous += w * du[ci][a][idx] * du[ci][a][idx];

        // Discrete material derivative: (field' - field)/dt + u'.grad field.
        const double ux = next.u.comp[0][idx], uy = next.u.comp[1][idx];
        for (int i = 0; i < 3; ++i) {
            const double mat_n = (next.directors.n.comp[i][idx] - prev.directors.n.comp[i][idx]) / dt +
                                 ux * Jn.d[i][0][idx] + uy * Jn.d[i][1][idx];
            const double mat_m = (next.directors.m.comp[i][idx] - prev.directors.m.comp[i][idx]) / dt +
                                 ux * Jm.d[i][0][idx] + uy * Jm.d[i][1][idx];
            director += w * (mat_n * mat_n + mat_m * mat_m);
        }
    }
    b.viscous_dissipation = viscous;
    b.director_dissipation = director;
    b.residual = (b.total - e_prev) / dt + next.nu * viscous + director;
    b.residual_no_viscous = (b.total - e_prev) / dt + director;
    return b;
}

ScalarField local_energy_density(const FlowState& state) {
    const GridSpec& g = state.u.grid;
    JacobianField Jn = jacobian(state.directors.n);
    JacobianField Jm = jacobian(state.directors.m);
    ScalarField density(g);
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        density[idx] = state.u.comp[0][idx] * state.u.comp[0][idx] +
                       state.u.comp[1][idx] * state.u.comp[1][idx] +
                       Jn.at(idx).frobenius_sq() + Jm.at(idx).frobenius_sq();
    }
    return density;
}

namespace {

// Disk integral of a density around a center, with wrap/clipping.
double disk_integral(const ScalarField& density, const std::array<int, 2>& center, double r) {
    const GridSpec& g = density.grid;
    const double r_sq = r * r;
    const int rx = static_cast<int>(r / g.h[0]) + 1;
    const int ry = static_cast<int>(r / g.h[1]) + 1;
    double sum = 0.0;
    for (int dy = -ry; dy <= ry; ++dy) {
        for (int dx = -rx; dx <= rx; ++dx) {
            const double d_sq = dx * dx * g.h[0] * g.h[0] + dy * dy * g.h[1] * g.h[1];
            if (d_sq > r_sq) continue;
            int px = center[0] + dx, py = center[1] + dy;
            if (g.bc[0] == Bc::periodic) px = ((px % g.dims[0]) + g.dims[0]) % g.dims[0];
            else if (px < 0 || px >= g.dims[0]) continue;
            if (g.bc[1] == Bc::periodic) py = ((py % g.dims[1]) + g.dims[1]) % g.dims[1];
            else if (py < 0 || py >= g.dims[1]) continue;
            sum += g.node_weight(px, py) * density[g.index(px, py)];
        }
    }
    return sum;
}

}  // namespace

ConcentrationReport concentration_scan(const FlowState& state, double r, double c0) {
    const GridSpec& g = state.u.grid;
    ConcentrationReport report;
    report.radius = r;
    report.c0 = c0;
    ScalarField density = local_energy_density(state);
    for (int y = 0; y < g.dims[1]; ++y) {
        for (int x = 0; x < g.dims[0]; ++x) {
            const double local = disk_integral(density, {x, y}, r);
            if (local > report.max_local) {
                report.max_local = local;
                report.argmax = {x, y};
            }
            if (local >= c0) report.firing_centers.push_back({x, y});
        }
    }
    report.fired = !report.firing_centers.empty();
    return report;
}

YQuantities y_quantities(const std::vector<FlowState>& window, const std::array<int, 2>& center,
                         double r) {
    if (window.size() < 2) throw WindowTooShort("need at least two states");
    const GridSpec& g = window.front().u.grid;
    const double t0 = window.back().t;
    const double span = t0 - window.front().t;
    if (span + 1e-12 < r * r) throw WindowTooShort("window does not cover [t0 - r^2, t0]");

    // Slices inside [t0 - r^2, t0].
    std::vector<std::size_t> slices;
    for (std::size_t s = 0; s < window.size(); ++s)
        if (window[s].t >= t0 - r * r - 1e-12) slices.push_back(s);

    // Spatial mask.
    const double r_sq = r * r;
    const int rx = static_cast<int>(r / g.h[0]) + 1;
    const int ry = static_cast<int>(r / g.h[1]) + 1;
    std::vector<std::pair<std::size_t, double>> mask;  // (node index, weight)
    for (int dy = -ry; dy <= ry; ++dy) {
        for (int dx = -rx; dx <= rx; ++dx) {
            const double d_sq = dx * dx * g.h[0] * g.h[0] + dy * dy * g.h[1] * g.h[1];
            if (d_sq > r_sq) continue;
            int px = center[0] + dx, py = center[1] + dy;
            if (g.bc[0] == Bc::periodic) px = ((px % g.dims[0]) + g.dims[0]) % g.dims[0];
            else if (px < 0 || px >= g.dims[0]) continue;
            if (g.bc[1] == Bc::periodic) py = ((py % g.dims[1]) + g.dims[1]) % g.dims[1];
            else if (py < 0 || py >= g.dims[1]) continue;
            mask.emplace_back(g.index(px, py), g.node_weight(px, py));
        }
    }

    double measure = 0.0;
    for (auto& [idx, w] : mask) measure += w;
    measure *= static_cast<double>(slices.size());

    // Cylinder mean of u.
    double mean_ux = 0.0, mean_uy = 0.0;
    for (std::size_t s : slices) {
        for (auto& [idx, w] : mask) {
            mean_ux += w * window[s].u.comp[0][idx];
            mean_uy += w * window[s].u.comp[1][idx];
        }
    }
    mean_ux /= measure;
    mean_uy /= measure;

    double acc1 = 0.0, acc2 = 0.0;
    for (std::size_t s : slices) {
        const FlowState& st = window[s];
        JacobianField Jn = jacobian(st.directors.n);
        JacobianField Jm = jacobian(st.directors.m);

        // Per-slice spatial mean of P over the disk.
        double p_mean = 0.0, w_sum = 0.0;
        for (auto& [idx, w] : mask) {
            p_mean += w * st.p[idx];
            w_sum += w;
        }
        p_mean /= w_sum;

        for (auto& [idx, w] : mask) {
            const double dux = st.u.comp[0][idx] - mean_ux;
            const double duy = st.u.comp[1][idx] - mean_uy;
            const double u_sq = dux * dux + duy * duy;
            const double gn = Jn.at(idx).frobenius_sq();
            const double gm = Jm.at(idx).frobenius_sq();
            acc1 += w * (u_sq * u_sq + gn * gn + gm * gm);
            acc2 += w * std::pow(std::fabs(st.p[idx] - p_mean), 4.0 / 3.0);
        }
    }
    YQuantities y;
    y.y1 = std::pow(acc1 / measure, 0.25);
    y.y2 = r * std::pow(acc2 / measure, 0.75);
    return y;
}

}  // namespace biaxial
