// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace openres::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// (re, im) pair sums of a [re, im, re, im] accumulator
inline __m128d pair_sum(__m256d v) {
    return _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
}

}  // namespace

void real_matvec(const double* basis, std::size_t rows, std::size_t cols, const double* coeff,
                 double* out) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = basis + i * cols;
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 4 <= cols; j += 4) {
            __m256d b = _mm256_loadu_pd(row + j);
            __m256d b01 = _mm256_permute4x64_pd(b, 0x50);
            __m256d b23 = _mm256_permute4x64_pd(b, 0xFA);
            acc0 = _mm256_fmadd_pd(b01, _mm256_loadu_pd(coeff + 2 * j), acc0);
            acc1 = _mm256_fmadd_pd(b23, _mm256_loadu_pd(coeff + 2 * j + 4), acc1);
        }
        __m128d s = pair_sum(_mm256_add_pd(acc0, acc1));
        for (; j < cols; ++j) {
            __m128d c = _mm_loadu_pd(coeff + 2 * j);
            s = _mm_add_pd(s, _mm_mul_pd(_mm_set1_pd(row[j]), c));
        }
        _mm_storeu_pd(out + 2 * i, s);
    }
}

double inverse_square_sum(const double* q2, const double* w, std::size_t n, double k2) {
    const __m256d kk = _mm256_set1_pd(k2);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d d = _mm256_sub_pd(kk, _mm256_loadu_pd(q2 + j));
        acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(w + j), _mm256_mul_pd(d, d)));
    }
    double s = hsum(acc);
    for (; j < n; ++j) {
        double d = k2 - q2[j];
        s += w[j] / (d * d);
    }
    return s;
}

double norm_sq(const double* c, std::size_t n) {
    const std::size_t m = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
        __m256d v = _mm256_loadu_pd(c + j);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; j < m; ++j) s += c[j] * c[j];
    return s;
}

double weighted_diff_norm_sq(const double* w, const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + 2 * j), _mm256_loadu_pd(b + 2 * j));
        __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + j)), 0x50);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(ww, d), d, acc);
    }
    double s = hsum(acc);
    for (; j < n; ++j) {
        double dr = a[2 * j] - b[2 * j], di = a[2 * j + 1] - b[2 * j + 1];
        s += w[j] * (dr * dr + di * di);
    }
    return s;
}

}  // namespace openres::kernels::avx2
