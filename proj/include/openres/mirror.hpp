#pragma once

#include "openres/types.hpp"

// Cavity on [-l, 0] between a perfect mirror and a thin semitransparent mirror at x = 0.
namespace openres::mirror {

struct MirrorParams {
    double eta = 0.0453;  // transparency length
    double l = 1.0;
    void validate() const;
};

struct MirrorRT {
    cplx r, t;
};

MirrorRT mirror_rt(const MirrorParams& p, double k);

cplx s_matrix(const MirrorParams& p, double k);
cplx mode_strength(const MirrorParams& p, double k);
// (i + eta k) sin(kl) - cos(kl)
cplx s_denominator(const MirrorParams& p, cplx k);
// S_c = (i - eta k)/(i + eta k), channel reflection off the mirror seen from outside
cplx channel_s(const MirrorParams& p, double k);

cplx exact_field(const MirrorParams& p, double k, double x);
cplx exact_field_dx(const MirrorParams& p, double k, double x, Side side);

double cavity_eigen_k(const MirrorParams& p, int lambda);
double cavity_mode(const MirrorParams& p, int lambda, double x);
double cavity_mode_dx(const MirrorParams& p, int lambda, double x);
cplx channel_mode(const MirrorParams& p, double k, double x);

cplx coupling_w(const MirrorParams& p, int lambda, double k);
cplx coupling_v(const MirrorParams& p, int lambda, double k);

cplx alpha(const MirrorParams& p, int lambda, double k);
double alpha_sq(const MirrorParams& p, double lambda, double k);
BetaKernel beta_kernel(const MirrorParams& p, double k);

cplx resonance_condition(const MirrorParams& p, cplx kc);
cplx siegert_residual(const MirrorParams& p, cplx kc);

// t sigma cos(sigma l) - k (i + eta k) sin(sigma l); t = 0 is the closed cavity
cplx sigma_secular(const MirrorParams& p, cplx sigma, cplx k, double t = 1.0);

double gain_closed(const MirrorParams& p, double k);
double ldos_cavity(const MirrorParams& p, double k);
double ldos_free(const MirrorParams& p, double k);

cplx channel_green(const MirrorParams& p, double k, double x, double xp);

}  // namespace openres::mirror
