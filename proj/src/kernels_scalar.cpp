#include "kernels_impl.hpp"

namespace openres::kernels::scalar {

void real_matvec(const double* basis, std::size_t rows, std::size_t cols, const double* coeff,
                 double* out) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* row = basis + i * cols;
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            re += row[j] * coeff[2 * j];
            im += row[j] * coeff[2 * j + 1];
        }
        out[2 * i] = re;
        out[2 * i + 1] = im;
    }
}

double inverse_square_sum(const double* q2, const double* w, std::size_t n, double k2) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = k2 - q2[j];
        s += w[j] / (d * d);
    }
    return s;
}

double norm_sq(const double* c, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) s += c[j] * c[j];
    return s;
}

double weighted_diff_norm_sq(const double* w, const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double dr = a[2 * j] - b[2 * j], di = a[2 * j + 1] - b[2 * j + 1];
        s += w[j] * (dr * dr + di * di);
    }
    return s;
}

}  // namespace openres::kernels::scalar
