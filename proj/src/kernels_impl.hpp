#pragma once

#include <cstddef>

// Complex data is passed as interleaved (re, im) doubles.
namespace openres::kernels {

namespace scalar {
void real_matvec(const double* basis, std::size_t rows, std::size_t cols, const double* coeff,
                 double* out);
double inverse_square_sum(const double* q2, const double* w, std::size_t n, double k2);
double norm_sq(const double* c, std::size_t n);
double weighted_diff_norm_sq(const double* w, const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
void real_matvec(const double* basis, std::size_t rows, std::size_t cols, const double* coeff,
                 double* out);
double inverse_square_sum(const double* q2, const double* w, std::size_t n, double k2);
double norm_sq(const double* c, std::size_t n);
double weighted_diff_norm_sq(const double* w, const double* a, const double* b, std::size_t n);
}  // namespace avx2

}  // namespace openres::kernels
