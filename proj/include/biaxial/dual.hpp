#pragma once

#include <array>
#include <cstddef>

namespace biaxial {

// Forward-mode dual number with N partials. The energy densities are
// polynomial in their inputs, so +,-,* are all that is needed.
template <std::size_t N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    Dual() = default;
    Dual(double value) : v(value) {}  // NOLINT: implicit by design

    static Dual seed(double value, std::size_t slot) {
        Dual r(value);
        r.d[slot] = 1.0;
        return r;
    }
};

template <std::size_t N>
Dual<N> operator+(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.v + b.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
    return r;
}

template <std::size_t N>
Dual<N> operator-(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.v - b.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
    return r;
}

template <std::size_t N>
Dual<N> operator-(const Dual<N>& a) {
    Dual<N> r(-a.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
    return r;
}

template <std::size_t N>
Dual<N> operator*(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.v * b.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.v * b.d[i] + a.d[i] * b.v;
    return r;
}

template <std::size_t N>
Dual<N> operator*(double s, const Dual<N>& a) {
    Dual<N> r(s * a.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = s * a.d[i];
    return r;
}

template <std::size_t N>
Dual<N> operator*(const Dual<N>& a, double s) {
    return s * a;
}

template <std::size_t N>
Dual<N> operator+(const Dual<N>& a, double s) {
    Dual<N> r = a;
    r.v += s;
    return r;
}

template <std::size_t N>
Dual<N> operator-(const Dual<N>& a, double s) {
    Dual<N> r = a;
    r.v -= s;
    return r;
}

}  // namespace biaxial
