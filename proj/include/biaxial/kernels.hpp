#pragma once

#include <cstddef>

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and an AVX2 variant; the active one is picked at load
// time from cpuid and can be overridden with BIAXIAL_SIMD=scalar|avx2
// or force() (tests use the latter to check equivalence).
//
// Elementwise kernels (axpy, scale, diff_central, second_central_acc)
// produce bit-identical results in both variants. Reductions (dot,
// sum_sq) may reassociate; they are deterministic per variant.

namespace biaxial::kern {

enum class Isa { scalar, avx2 };

Isa active();
void force(Isa isa);
bool avx2_available();

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t count);

// sum_i a[i]^2
double sum_sq(const double* a, std::size_t count);

// y[i] += a*x[i]
void axpy(double* y, double a, const double* x, std::size_t count);

// y[i] *= a
void scale(double* y, double a, std::size_t count);

// out[i] = c*(in[i+stride] - in[i-stride]); caller guarantees the
// stride-offset reads stay in bounds.
void diff_central(double* out, const double* in, std::size_t count, std::ptrdiff_t stride,
                  double c);

// out[i] += c*(in[i-stride] - 2*in[i] + in[i+stride])
void second_central_acc(double* out, const double* in, std::size_t count, std::ptrdiff_t stride,
                        double c);

namespace detail {
struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_sq)(const double*, std::size_t);
    void (*axpy)(double*, double, const double*, std::size_t);
    void (*scale)(double*, double, std::size_t);
    void (*diff_central)(double*, const double*, std::size_t, std::ptrdiff_t, double);
    void (*second_central_acc)(double*, const double*, std::size_t, std::ptrdiff_t, double);
};
extern const Ops scalar_ops;
extern const Ops avx2_ops;
}  // namespace detail

}  // namespace biaxial::kern
