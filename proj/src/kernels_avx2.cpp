#include "biaxial/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define BIAXIAL_HAVE_AVX2_BUILD 1
#endif

namespace biaxial::kern::detail {

#ifdef BIAXIAL_HAVE_AVX2_BUILD

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sw = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

double dot_avx2(const double* a, const double* b, std::size_t count) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double s = hsum(acc);
    for (; i < count; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_avx2(const double* a, std::size_t count) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double s = hsum(acc);
    for (; i < count; ++i) s += a[i] * a[i];
    return s;
}

// No FMA in the elementwise kernels: mul then add keeps them
// bit-identical to the scalar reference.
void axpy_avx2(double* y, double a, const double* x, std::size_t count) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(y + i),
                                  _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, v);
    }
    for (; i < count; ++i) y[i] += a * x[i];
}

void scale_avx2(double* y, double a, std::size_t count) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4)
        _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(y + i)));
    for (; i < count; ++i) y[i] *= a;
}

void diff_central_avx2(double* out, const double* in, std::size_t count, std::ptrdiff_t stride,
                       double c) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(in + i + stride),
                                  _mm256_loadu_pd(in + i - stride));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vc, d));
    }
    for (; i < count; ++i) out[i] = c * (in[i + stride] - in[i - stride]);
}

void second_central_acc_avx2(double* out, const double* in, std::size_t count,
                             std::ptrdiff_t stride, double c) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d mid = _mm256_loadu_pd(in + i);
        __m256d lap = _mm256_sub_pd(_mm256_loadu_pd(in + i - stride),
                                    _mm256_mul_pd(two, mid));
        lap = _mm256_add_pd(lap, _mm256_loadu_pd(in + i + stride));
        __m256d v = _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_mul_pd(vc, lap));
        _mm256_storeu_pd(out + i, v);
    }
    for (; i < count; ++i) out[i] += c * (in[i - stride] - 2.0 * in[i] + in[i + stride]);
}

}  // namespace

const Ops avx2_ops = {dot_avx2,  sum_sq_avx2,      axpy_avx2,
                      scale_avx2, diff_central_avx2, second_central_acc_avx2};

#else

// Non-x86 build: the avx2 slot falls back to the scalar reference.
const Ops avx2_ops = scalar_ops;

#endif

}  // namespace biaxial::kern::detail
