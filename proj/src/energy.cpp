#include "biaxial/energy.hpp"

#include <vector>

#include "biaxial/dual.hpp"
#include "biaxial/parallel.hpp"
#include "biaxial/stencils.hpp"

namespace biaxial {

EnergyBreakdown total_energy(const DirectorPairField& field, const FrankConstants& fc) {
    const GridSpec& g = field.grid;
    JacobianField Jn = jacobian(field.n);
    JacobianField Jm = jacobian(field.m);

    EnergyBreakdown out;
    const std::size_t count = g.node_count();
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto c = g.coords(idx);
        const double w = g.node_weight(c[0], c[1], c[2]);
        Vec3 n = field.n.at(idx), m = field.m.at(idx);
        Mat3 Dn = Jn.at(idx), Dm = Jm.at(idx);
        auto terms = frank_terms_t(n, m, Dn, Dm);
        for (int t = 0; t < 12; ++t) out.term[t] += w * fc.k[t] * terms[t];
        out.nl_n += w * null_lagrangian_t(Dn);
        out.nl_m += w * null_lagrangian_t(Dm);
        out.dirichlet_n += w * 0.5 * Dn.frobenius_sq();
        out.dirichlet_m += w * 0.5 * Dm.frobenius_sq();
    }
    for (int t = 0; t < 12; ++t) out.total += out.term[t];
    out.total_modified = out.total + fc.alpha1() * out.nl_n + fc.alpha2() * out.nl_m;
    return out;
}

namespace {

// Dual slot layout: 0..2 n, 3..5 m, 6..14 Dn (i*3+a), 15..23 Dm.
constexpr std::size_t kSlots = 24;
using D = Dual<kSlots>;

}  // namespace

std::pair<Vec3Field, Vec3Field> variational_gradient(const DirectorPairField& field,
                                                     const FrankConstants& fc) {
    const GridSpec& g = field.grid;
    const std::size_t count = g.node_count();
    JacobianField Jn = jacobian(field.n);
    JacobianField Jm = jacobian(field.m);

    Vec3Field fn(g), fm(g);
    // Flux arrays: w_p * dW/d(Dn[i][a]) at p, scattered back through the
    // stencil transpose afterwards.
    JacobianField phi_n(g), phi_m(g);

    parallel_for(count, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            auto c = g.coords(idx);
            const double w = g.node_weight(c[0], c[1], c[2]);

            Vec3T<D> n, m;
            Mat3T<D> Dn, Dm;
            for (int i = 0; i < 3; ++i) {
                n[i] = D::seed(field.n.comp[i][idx], i);
                m[i] = D::seed(field.m.comp[i][idx], 3 + i);
                for (int a = 0; a < 3; ++a) {
                    Dn[i][a] = D::seed(Jn.d[i][a][idx], 6 + i * 3 + a);
                    Dm[i][a] = D::seed(Jm.d[i][a][idx], 15 + i * 3 + a);
                }
            }
            D wt = modified_density_t(n, m, Dn, Dm, fc);
            for (int i = 0; i < 3; ++i) {
                fn.comp[i][idx] = w * wt.d[i];
                fm.comp[i][idx] = w * wt.d[3 + i];
                for (int a = 0; a < 3; ++a) {
                    phi_n.d[i][a][idx] = w * wt.d[6 + i * 3 + a];
                    phi_m.d[i][a][idx] = w * wt.d[15 + i * 3 + a];
                }
            }
        }
    });

    for (int i = 0; i < 3; ++i) {
        for (int a = 0; a < g.ndim; ++a) {
            apply_deriv_adjoint(g, a, phi_n.d[i][a], fn.comp[i]);
            apply_deriv_adjoint(g, a, phi_m.d[i][a], fm.comp[i]);
        }
    }
    return {std::move(fn), std::move(fm)};
}

}  // namespace biaxial
