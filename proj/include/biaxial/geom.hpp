#pragma once

#include <array>
#include <cmath>

namespace biaxial {

// Small fixed-size vector/matrix types, templated on the scalar so the
// energy densities can be evaluated on dual numbers as well as doubles.

template <typename T>
struct Vec3T {
    T x{}, y{}, z{};

    T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

template <typename T>
Vec3T<T> operator+(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
template <typename T>
Vec3T<T> operator-(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
template <typename T, typename S>
Vec3T<T> operator*(const S& s, const Vec3T<T>& a) {
    return {s * a.x, s * a.y, s * a.z};
}

template <typename T>
T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename T>
T norm_sq(const Vec3T<T>& a) {
    return dot(a, a);
}

// Jacobian of a 3-component field: m[i][a] = d f^i / d x_a. 2-D fields
// use a = 0,1 and keep the a = 2 column zero.
template <typename T>
struct Mat3T {
    std::array<std::array<T, 3>, 3> m{};

    std::array<T, 3>& operator[](int i) { return m[i]; }
    const std::array<T, 3>& operator[](int i) const { return m[i]; }

    // d_a f^i as a column vector.
    Vec3T<T> col(int a) const { return {m[0][a], m[1][a], m[2][a]}; }

    T trace() const { return m[0][0] + m[1][1] + m[2][2]; }

    // sum_ia m[i][a]^2
    T frobenius_sq() const {
        T s{};
        for (int i = 0; i < 3; ++i)
            for (int a = 0; a < 3; ++a) s = s + m[i][a] * m[i][a];
        return s;
    }
};

// curl_i = eps_{iab} d_a f^b with d_a f^b = J[b][a].
template <typename T>
Vec3T<T> curl_of(const Mat3T<T>& J) {
    return {J[2][1] - J[1][2], J[0][2] - J[2][0], J[1][0] - J[0][1]};
}

// tr((grad f)^2) = sum_{a,b} d_a f^b d_b f^a.
template <typename T>
T grad_sq_trace(const Mat3T<T>& J) {
    T s{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s = s + J[b][a] * J[a][b];
    return s;
}

using Vec3 = Vec3T<double>;
using Mat3 = Mat3T<double>;

inline double norm(const Vec3& a) { return std::sqrt(norm_sq(a)); }

}  // namespace biaxial
