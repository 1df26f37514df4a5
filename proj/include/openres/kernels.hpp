#pragma once

#include <cstddef>

#include "openres/errors.hpp"

// Hot loops with a scalar reference path and an AVX2/FMA path chosen at runtime.
// OPENRES_ISA=scalar in the environment pins the scalar path.
namespace openres::kernels {

enum class Isa { Scalar, Avx2 };

Isa detected_isa();
Isa active_isa();
void force_isa(Isa isa);  // throws DomainError if the CPU lacks it
const char* isa_name(Isa isa);

// out[i] = sum_j basis[i*cols + j] * coeff[j]
void real_matvec(const double* basis, std::size_t rows, std::size_t cols, const cplx* coeff,
                 cplx* out);
// sum_j w[j] / (k2 - q2[j])^2
double inverse_square_sum(const double* q2, const double* w, std::size_t n, double k2);
// sum_j |c_j|^2
double norm_sq(const cplx* c, std::size_t n);
// sum_j w_j |a_j - b_j|^2
double weighted_diff_norm_sq(const double* w, const cplx* a, const cplx* b, std::size_t n);

}  // namespace openres::kernels
