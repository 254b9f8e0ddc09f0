#include "biaxial/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace biaxial::kern {

namespace {

Isa pick_initial() {
    const char* env = std::getenv("BIAXIAL_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0) return Isa::avx2;
    }
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

Isa g_isa = pick_initial();

const detail::Ops& ops() {
    return g_isa == Isa::avx2 ? detail::avx2_ops : detail::scalar_ops;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Isa active() { return g_isa; }

void force(Isa isa) { g_isa = isa; }

double dot(const double* a, const double* b, std::size_t count) { return ops().dot(a, b, count); }

double sum_sq(const double* a, std::size_t count) { return ops().sum_sq(a, count); }

void axpy(double* y, double a, const double* x, std::size_t count) { ops().axpy(y, a, x, count); }

void scale(double* y, double a, std::size_t count) { ops().scale(y, a, count); }

void diff_central(double* out, const double* in, std::size_t count, std::ptrdiff_t stride,
                  double c) {
    ops().diff_central(out, in, count, stride, c);
}

void second_central_acc(double* out, const double* in, std::size_t count, std::ptrdiff_t stride,
                        double c) {
    ops().second_central_acc(out, in, count, stride, c);
}

}  // namespace biaxial::kern
