#include "biaxial/frank.hpp"

#include <cmath>

namespace biaxial {

namespace {
void check_on_manifold(const Vec3& n, const Vec3& m) {
    constexpr double tol = 1e-8;
    if (std::fabs(norm(n) - 1.0) > tol || std::fabs(norm(m) - 1.0) > tol ||
        std::fabs(dot(n, m)) > tol)
        throw ConstraintViolated("density: (n,m) off N beyond 1e-8");
}
}  // namespace

double frank_density(const Vec3& n, const Vec3& m, const Mat3& Dn, const Mat3& Dm,
                     const FrankConstants& fc) {
    check_on_manifold(n, m);
    return frank_density_t(n, m, Dn, Dm, fc);
}

double modified_density(const Vec3& n, const Vec3& m, const Mat3& Dn, const Mat3& Dm,
                        const FrankConstants& fc) {
    check_on_manifold(n, m);
    return modified_density_t(n, m, Dn, Dm, fc);
}

}  // namespace biaxial
