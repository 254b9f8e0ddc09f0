#include "biaxial/kernels.hpp"

namespace biaxial::kern::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t count) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_sq_scalar(const double* a, std::size_t count) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += a[i] * a[i];
    return acc;
}

void axpy_scalar(double* y, double a, const double* x, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) y[i] += a * x[i];
}

void scale_scalar(double* y, double a, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) y[i] *= a;
}

void diff_central_scalar(double* out, const double* in, std::size_t count, std::ptrdiff_t stride,
                         double c) {
    for (std::size_t i = 0; i < count; ++i) out[i] = c * (in[i + stride] - in[i - stride]);
}

void second_central_acc_scalar(double* out, const double* in, std::size_t count,
                               std::ptrdiff_t stride, double c) {
    for (std::size_t i = 0; i < count; ++i)
        out[i] += c * (in[i - stride] - 2.0 * in[i] + in[i + stride]);
}

}  // namespace

const Ops scalar_ops = {dot_scalar,  sum_sq_scalar,      axpy_scalar,
                        scale_scalar, diff_central_scalar, second_central_acc_scalar};

}  // namespace biaxial::kern::detail
