#pragma once

#include "openres/types.hpp"

// Dielectric slab of index n on [-l, 0] backed by a perfect mirror at x = -l.
namespace openres::slab {

struct SlabParams {
    double n = 1.5;
    double l = 1.0;
    void validate() const;
};

enum class Bc { Neumann, Dirichlet };

const char* bc_name(Bc bc);
int first_index(Bc bc);

cplx s_matrix(const SlabParams& p, double k);
cplx mode_strength(const SlabParams& p, double k);
// n cos(nkl) - i sin(nkl), the S-matrix denominator
cplx s_denominator(const SlabParams& p, cplx k);

cplx exact_field(const SlabParams& p, double k, double x);
cplx exact_field_dx(const SlabParams& p, double k, double x, Side side);

double cavity_eigen_k(const SlabParams& p, Bc bc, int lambda);
double cavity_eigen_k_continuous(const SlabParams& p, Bc bc, double lambda);
double cavity_mode(const SlabParams& p, Bc bc, int lambda, double x);
double cavity_mode_dx(const SlabParams& p, Bc bc, int lambda, double x);
double channel_mode(const SlabParams& p, Bc bc, double k, double x);

double coupling_w(const SlabParams& p, Bc bc, int lambda, double k);
double coupling_v(const SlabParams& p, Bc bc, int lambda, double k);

cplx alpha(const SlabParams& p, Bc bc, int lambda, double k);
// |alpha|^2 with lambda continued to real values (series tails)
double alpha_sq(const SlabParams& p, Bc bc, double lambda, double k);
BetaKernel beta_kernel(const SlabParams& p, Bc bc, double k);

// tan(n kc l) + i n
cplx resonance_condition(const SlabParams& p, cplx kc);
cplx analytic_resonance(const SlabParams& p, int j);
// index n at which neighbouring resonances start to overlap, |r| = exp(-pi)
double overlap_onset_index();

double gain_closed(const SlabParams& p, double k);
double ldos_cavity(const SlabParams& p, Bc bc, double k);
double ldos_free(const SlabParams& p, double k);

cplx siegert_residual(const SlabParams& p, Bc bc, cplx kc);

// secular function of the effective operator, F(sigma; k) = 0
cplx sigma_secular(const SlabParams& p, cplx sigma, cplx k, double coupling_scale = 1.0);

cplx channel_green(const SlabParams& p, Bc bc, double k, double x, double xp);

}  // namespace openres::slab
