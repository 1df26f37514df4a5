#include "openres/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace openres::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(OPENRES_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa initial_isa() {
    const char* env = std::getenv("OPENRES_ISA");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return detected_isa();
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

const double* flat(const cplx* p) { return reinterpret_cast<const double*>(p); }
double* flat(cplx* p) { return reinterpret_cast<double*>(p); }

}  // namespace

Isa detected_isa() {
    static const Isa isa = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    return isa;
}

Isa active_isa() { return current().load(); }

void force_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2)
        throw DomainError("AVX2/FMA kernels not available on this CPU");
    current().store(isa);
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

#if defined(OPENRES_HAVE_AVX2_TU)
#define OPENRES_DISPATCH(fn, ...) \
    (active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define OPENRES_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void real_matvec(const double* basis, std::size_t rows, std::size_t cols, const cplx* coeff,
                 cplx* out) {
    OPENRES_DISPATCH(real_matvec, basis, rows, cols, flat(coeff), flat(out));
}

double inverse_square_sum(const double* q2, const double* w, std::size_t n, double k2) {
    return OPENRES_DISPATCH(inverse_square_sum, q2, w, n, k2);
}

double norm_sq(const cplx* c, std::size_t n) { return OPENRES_DISPATCH(norm_sq, flat(c), n); }

double weighted_diff_norm_sq(const double* w, const cplx* a, const cplx* b, std::size_t n) {
    return OPENRES_DISPATCH(weighted_diff_norm_sq, w, flat(a), flat(b), n);
}

}  // namespace openres::kernels
