#pragma once

#include <utility>

#include "openres/types.hpp"

// Dielectric disk of index n and radius R, TM polarization, one channel per angular momentum m.
// Radial functions omit the angular factor; the (r, phi) overloads include it.
namespace openres::disk {

struct DiskParams {
    double n = 3.3;
    double R = 1.0;
    void validate() const;
};

// largest |m| the model accepts
inline constexpr int kMaxM = 59;

cplx s_matrix(const DiskParams& p, int m, double k);
cplx mode_strength(const DiskParams& p, int m, double k);
// J_m(nkR) H1'_m(kR) - n J'_m(nkR) H1_m(kR)
cplx s_denominator(const DiskParams& p, int m, cplx k);
// -H2'_m(kR) / H1'_m(kR)
cplx channel_s(const DiskParams& p, int m, double k);
double channel_threshold(const DiskParams& p, int m);

cplx exact_field(const DiskParams& p, int m, double k, double r);
cplx exact_field(const DiskParams& p, int m, double k, double r, double phi);
cplx exact_field_dr(const DiskParams& p, int m, double k, double r, Side side);

// lambda-th zero of J_m over nR, lambda >= 1
double cavity_eigen_k(const DiskParams& p, int m, int lambda);
double cavity_mode(const DiskParams& p, int m, int lambda, double r);
cplx cavity_mode(const DiskParams& p, int m, int lambda, double r, double phi);

cplx channel_mode(const DiskParams& p, int m, double k, double r);
cplx channel_mode(const DiskParams& p, int m, double k, double r, double phi);
cplx channel_mode_dr(const DiskParams& p, int m, double k, double r);

cplx coupling_w(const DiskParams& p, int m, int lambda, int m_channel, double k);
cplx coupling_v(const DiskParams& p, int m, int lambda, int m_channel, double k);

cplx alpha(const DiskParams& p, int m, int lambda, double k);
// |alpha|^2 with the zero continued to real lambda by McMahon's expansion (series tails)
double alpha_sq(const DiskParams& p, int m, double lambda, double k);

cplx resonance_condition(const DiskParams& p, int m, cplx kc);
// xi(R) - H1/(k H1') xi'(R) for xi = J_m(n k r), scaled by H1'
cplx boundary_residual(const DiskParams& p, int m, cplx kc);

// J_m^2 - J_{m+1} J_{m-1} at x
double bessel_product(int m, double x);
double ldos_m(const DiskParams& p, int m, double k);
double ldos_disk(const DiskParams& p, double k, int m_max);
double ldos_free(const DiskParams& p, double k);
double gain_per_m(const DiskParams& p, int m, double k);
// m_max < 0 picks the truncation adaptively (relative contribution below 1e-12)
double gain_total(const DiskParams& p, double k, int m_max = -1);
int adaptive_m_max(const DiskParams& p, double k);

struct SumIdentity {
    double lhs, rhs;
};
SumIdentity radial_sum_identity(const DiskParams& p, int m, double k, int lambda_max);
// sum over lambda of |alpha_{m lambda}(k)|^2 from the truncated zero sum plus tail
double alpha_sq_sum(const DiskParams& p, int m, double k, int lambda_max);

cplx channel_green(const DiskParams& p, int m, double k, double r, double rp);

}  // namespace openres::disk
