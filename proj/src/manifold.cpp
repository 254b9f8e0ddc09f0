#include "biaxial/manifold.hpp"

#include <cmath>

#include "biaxial/errors.hpp"

namespace biaxial {

RetractResult retract(const Vec3& n_raw, const Vec3& m_raw) {
    const double nn = norm(n_raw);
    if (nn < 0.5) throw DegenerateInput("retract: |n| < 0.5");
    Vec3 n = (1.0 / nn) * n_raw;
    Vec3 rem = m_raw - dot(m_raw, n) * n;
    const double rn = norm(rem);
    if (rn < 0.1) throw DegenerateInput("retract: Gram-Schmidt remainder < 0.1");
    return {n, (1.0 / rn) * rem};
}

void retract_field(DirectorPairField& field) {
    const std::size_t count = field.grid.node_count();
    for (std::size_t i = 0; i < count; ++i) {
        auto [n, m] = retract(field.n.at(i), field.m.at(i));
        field.n.set(i, n);
        field.m.set(i, m);
    }
}

ConstraintResiduals constraint_residuals(const DirectorPairField& field) {
    ConstraintResiduals r;
    const std::size_t count = field.grid.node_count();
    for (std::size_t i = 0; i < count; ++i) {
        Vec3 n = field.n.at(i), m = field.m.at(i);
        double en = std::fabs(norm(n) - 1.0);
        double em = std::fabs(norm(m) - 1.0);
        double ed = std::fabs(dot(n, m));
        if (en > r.max_norm_err_n) r.max_norm_err_n = en;
        if (em > r.max_norm_err_m) r.max_norm_err_m = em;
        if (ed > r.max_dot) r.max_dot = ed;
    }
    return r;
}

TangentSplit tangent_project(const Vec3& n, const Vec3& m, const Vec3& fn, const Vec3& fm) {
    constexpr double tol = 1e-8;
    if (std::fabs(norm(n) - 1.0) > tol || std::fabs(norm(m) - 1.0) > tol ||
        std::fabs(dot(n, m)) > tol)
        throw ConstraintViolated("tangent_project: (n,m) off N beyond 1e-8");
    TangentSplit s;
    s.lambda1 = dot(fn, n);
    s.lambda2 = dot(fm, m);
    s.mu = 0.5 * (dot(fn, m) + dot(fm, n));
    s.fn_tan = fn - s.lambda1 * n - s.mu * m;
    s.fm_tan = fm - s.lambda2 * m - s.mu * n;
    return s;
}

}  // namespace biaxial
