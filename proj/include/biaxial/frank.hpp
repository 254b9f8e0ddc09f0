#pragma once

#include <algorithm>
#include <array>

#include "biaxial/errors.hpp"
#include "biaxial/geom.hpp"

namespace biaxial {

// Elastic constants k1..k12 with the derived coercivity constants
// alpha1 = min(k1,k2,k3), alpha2 = min(k4,k5,k6), alpha3 = min(alpha1,alpha2).
struct FrankConstants {
    std::array<double, 12> k{};

    double alpha1() const { return std::min({k[0], k[1], k[2]}); }
    double alpha2() const { return std::min({k[3], k[4], k[5]}); }
    double alpha3() const { return std::min(alpha1(), alpha2()); }
    double max_k() const { return *std::max_element(k.begin(), k.end()); }

    // k1..k6 must be strictly positive (the coercivity bound needs
    // alpha1, alpha2 > 0); k7..k12 nonnegative.
    void validate() const {
        for (int i = 0; i < 6; ++i)
            if (!(k[i] > 0.0)) throw ValidationError("k" + std::to_string(i + 1),
                                                     "k1..k6 must be > 0");
        for (int i = 6; i < 12; ++i)
            if (k[i] < 0.0) throw ValidationError("k" + std::to_string(i + 1),
                                                  "k7..k12 must be >= 0");
    }

    static FrankConstants one_constant() {
        FrankConstants f;
        for (int i = 0; i < 6; ++i) f.k[i] = 1.0;
        return f;
    }

    bool operator==(const FrankConstants&) const = default;
};

// The twelve quadratic terms of the elastic density, each including its
// 1/2 but not its k_i, so callers can weight and decompose. Templated
// on the scalar so the discrete energy can be differentiated with dual
// numbers. Term 10 uses curl(m x n) = -curl(n x m), squared away.
template <typename T>
std::array<T, 12> frank_terms_t(const Vec3T<T>& n, const Vec3T<T>& m, const Mat3T<T>& Dn,
                                const Mat3T<T>& Dm) {
    const T div_n = Dn.trace();
    const T div_m = Dm.trace();
    const Vec3T<T> curl_n = curl_of(Dn);
    const Vec3T<T> curl_m = curl_of(Dm);

    // Jacobian of n x m: d_a (n x m) = (d_a n) x m + n x (d_a m).
    Mat3T<T> Dnm;
    for (int a = 0; a < 3; ++a) {
        Vec3T<T> col = cross(Dn.col(a), m) + cross(n, Dm.col(a));
        for (int i = 0; i < 3; ++i) Dnm[i][a] = col[i];
    }
    const T div_nm = Dnm.trace();
    const Vec3T<T> curl_nm = curl_of(Dnm);
    const Vec3T<T> n_x_curl_n = cross(n, curl_n);
    const Vec3T<T> m_x_curl_m = cross(m, curl_m);

    auto half_sq = [](const T& x) { return 0.5 * (x * x); };
    return {half_sq(div_n),
            half_sq(dot(n, curl_n)),
            0.5 * norm_sq(n_x_curl_n),
            half_sq(div_m),
            half_sq(dot(m, curl_m)),
            0.5 * norm_sq(m_x_curl_m),
            half_sq(dot(n, m_x_curl_m)),
            half_sq(dot(m, n_x_curl_n)),
            half_sq(dot(m, curl_nm)),
            half_sq(dot(n, curl_nm)),
            0.5 * norm_sq(curl_nm),
            half_sq(div_nm)};
}

template <typename T>
T frank_density_t(const Vec3T<T>& n, const Vec3T<T>& m, const Mat3T<T>& Dn, const Mat3T<T>& Dm,
                  const FrankConstants& fc) {
    auto terms = frank_terms_t(n, m, Dn, Dm);
    T w = fc.k[0] * terms[0];
    for (int t = 1; t < 12; ++t) w = w + fc.k[t] * terms[t];
    return w;
}

// Null-Lagrangian integrand for one director, normalized so that the
// modified density adds alpha * this (and the one-constant case reduces
// exactly to the Dirichlet density): (tr(grad f)^2 - (div f)^2)/2.
template <typename T>
T null_lagrangian_t(const Mat3T<T>& J) {
    T tr = J.trace();
    return 0.5 * (grad_sq_trace(J) - tr * tr);
}

template <typename T>
T modified_density_t(const Vec3T<T>& n, const Vec3T<T>& m, const Mat3T<T>& Dn, const Mat3T<T>& Dm,
                     const FrankConstants& fc) {
    return frank_density_t(n, m, Dn, Dm, fc) + fc.alpha1() * null_lagrangian_t(Dn) +
           fc.alpha2() * null_lagrangian_t(Dm);
}

// Checked double-precision entry points (precondition: (n,m) on N to 1e-8).
double frank_density(const Vec3& n, const Vec3& m, const Mat3& Dn, const Mat3& Dm,
                     const FrankConstants& fc);
double modified_density(const Vec3& n, const Vec3& m, const Mat3& Dn, const Mat3& Dm,
                        const FrankConstants& fc);

}  // namespace biaxial
