#include "openres/slab.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace openres::slab {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

double parity(int lambda) { return (lambda % 2) ? -1.0 : 1.0; }

void check_k(double k) {
    if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
}

void check_index(Bc bc, int lambda) {
    if (lambda < first_index(bc))
        throw DomainError("cavity mode index " + std::to_string(lambda) + " out of range for " +
                          bc_name(bc) + " variant");
}

// sin(n delta l) / delta with the delta -> 0 limit
double sinc_ratio(double a, double delta) {
    double t = a * delta;
    if (std::abs(t) < 1e-4) return a * (1.0 - t * t / 6.0);
    return std::sin(t) / delta;
}

}  // namespace

void SlabParams::validate() const {
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("slab index n must be positive");
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("slab length l must be positive");
}

const char* bc_name(Bc bc) { return bc == Bc::Neumann ? "neumann" : "dirichlet"; }
int first_index(Bc bc) { return bc == Bc::Neumann ? 0 : 1; }

cplx s_denominator(const SlabParams& p, cplx k) {
    cplx a = p.n * k * p.l;
    return p.n * std::cos(a) - kI * std::sin(a);
}

cplx s_matrix(const SlabParams& p, double k) {
    check_k(k);
    double a = p.n * k * p.l;
    double c = std::cos(a), s = std::sin(a);
    return -(p.n * c + kI * s) / (p.n * c - kI * s);
}

cplx mode_strength(const SlabParams& p, double k) {
    check_k(k);
    return -2.0 * kI * p.n / s_denominator(p, k);
}

cplx exact_field(const SlabParams& p, double k, double x) {
    if (x < -p.l) throw DomainError("slab field requested left of the mirror");
    if (x < 0.0) return kInvSqrt2Pi * mode_strength(p, k) / p.n * std::sin(p.n * k * (x + p.l));
    return kInvSqrt2Pi * (std::exp(-kI * k * x) + s_matrix(p, k) * std::exp(kI * k * x));
}

cplx exact_field_dx(const SlabParams& p, double k, double x, Side side) {
    if (x < -p.l) throw DomainError("slab field requested left of the mirror");
    bool inside = x < 0.0 || (x == 0.0 && side == Side::Interior);
    if (inside) return kInvSqrt2Pi * mode_strength(p, k) * k * std::cos(p.n * k * (x + p.l));
    return kInvSqrt2Pi * kI * k * (-std::exp(-kI * k * x) + s_matrix(p, k) * std::exp(kI * k * x));
}

double cavity_eigen_k_continuous(const SlabParams& p, Bc bc, double lambda) {
    if (bc == Bc::Neumann) return (2.0 * lambda + 1.0) * kPi / (2.0 * p.n * p.l);
    return lambda * kPi / (p.n * p.l);
}

double cavity_eigen_k(const SlabParams& p, Bc bc, int lambda) {
    check_index(bc, lambda);
    return cavity_eigen_k_continuous(p, bc, lambda);
}

double cavity_mode(const SlabParams& p, Bc bc, int lambda, double x) {
    if (x < -p.l || x > 0.0) throw DomainError("cavity mode evaluated outside [-l, 0]");
    double kl = cavity_eigen_k(p, bc, lambda);
    return std::sqrt(2.0 / p.l) * std::sin(p.n * kl * (x + p.l));
}

double cavity_mode_dx(const SlabParams& p, Bc bc, int lambda, double x) {
    if (x < -p.l || x > 0.0) throw DomainError("cavity mode evaluated outside [-l, 0]");
    double kl = cavity_eigen_k(p, bc, lambda);
    return std::sqrt(2.0 / p.l) * p.n * kl * std::cos(p.n * kl * (x + p.l));
}

double channel_mode(const SlabParams& p, Bc bc, double k, double x) {
    (void)p;
    if (x < 0.0) throw DomainError("channel mode evaluated inside the cavity");
    check_k(k);
    const double a = std::sqrt(2.0 / kPi);
    return bc == Bc::Neumann ? a * std::sin(k * x) : a * std::cos(k * x);
}

double coupling_w(const SlabParams& p, Bc bc, int lambda, double k) {
    check_k(k);
    double kl = cavity_eigen_k(p, bc, lambda);
    if (bc == Bc::Neumann) return -parity(lambda) / p.n * std::sqrt(k / (kPi * kl * p.l));
    return parity(lambda) * std::sqrt(kl / (kPi * k * p.l));
}

double coupling_v(const SlabParams& p, Bc bc, int lambda, double k) {
    return coupling_w(p, bc, lambda, k);
}

cplx alpha(const SlabParams& p, Bc bc, int lambda, double k) {
    check_k(k);
    const double kl = cavity_eigen_k(p, bc, lambda);
    const cplx I = mode_strength(p, k);
    const double pre = p.n * std::sqrt(kPi * p.l);
    const double delta = k - kl;
    // near k_lambda the trigonometric numerator is rewritten as sin(n delta l)
    if (std::abs(p.n * delta * p.l) < 1.0) {
        double r = sinc_ratio(p.n * p.l, delta) / (k + kl);
        return bc == Bc::Neumann ? I * k * r / pre : I * kl * r / pre;
    }
    double d = (k - kl) * (k + kl);
    if (bc == Bc::Neumann) return -parity(lambda) * I * k * std::cos(p.n * k * p.l) / (pre * d);
    return parity(lambda) * I * kl * std::sin(p.n * k * p.l) / (pre * d);
}

double alpha_sq(const SlabParams& p, Bc bc, double lambda, double k) {
    const double kl = cavity_eigen_k_continuous(p, bc, lambda);
    const double I2 = std::norm(mode_strength(p, k));
    const double d = (k - kl) * (k + kl);
    double num = bc == Bc::Neumann ? k * std::cos(p.n * k * p.l) : kl * std::sin(p.n * k * p.l);
    return I2 * num * num / (p.n * p.n * kPi * p.l * d * d);
}

BetaKernel beta_kernel(const SlabParams& p, Bc bc, double k) {
    const cplx S = s_matrix(p, k);
    BetaKernel b;
    b.k = k;
    if (bc == Bc::Neumann) {
        b.delta_coeff = -kI * (1.0 - S) / 2.0;
        b.pv_part = [S](double kp) { return 2.0 * kp * (1.0 + S) / (2.0 * kPi); };
    } else {
        b.delta_coeff = (1.0 + S) / 2.0;
        b.pv_part = [S, k](double) { return kI / (2.0 * kPi) * 2.0 * k * (1.0 - S); };
    }
    return b;
}

cplx resonance_condition(const SlabParams& p, cplx kc) {
    cplx a = p.n * kc * p.l;
    return std::sin(a) / std::cos(a) + kI * p.n;
}

cplx analytic_resonance(const SlabParams& p, int j) {
    if (p.n == 1.0) throw DomainError("no resonances for n = 1");
    const double r = (p.n - 1.0) / (p.n + 1.0);
    const double im = 0.5 * std::log(std::abs(r));
    if (p.n > 1.0) {
        if (j < 0) throw DomainError("resonance index j >= 0 required for n > 1");
        return cplx((2.0 * j + 1.0) * kPi / 2.0, im) / (p.n * p.l);
    }
    if (j < 1) throw DomainError("resonance index j >= 1 required for n < 1");
    return cplx(j * kPi, im) / (p.n * p.l);
}

double overlap_onset_index() {
    const double e = std::exp(-kPi);
    return (1.0 + e) / (1.0 - e);
}

double gain_closed(const SlabParams& p, double k) {
    check_k(k);
    const double a = p.n * k * p.l, b = k * p.l;
    const double c = std::cos(a), s = std::sin(a);
    const double num = p.n * p.n * (1.0 - std::sin(2.0 * a) / (2.0 * a));
    const double den = (p.n * p.n * c * c + s * s) * (1.0 - std::sin(2.0 * b) / (2.0 * b));
    return num / den;
}

double ldos_cavity(const SlabParams& p, Bc bc, double k) {
    (void)bc;
    const double a = p.n * k * p.l;
    return p.l * std::norm(mode_strength(p, k)) / (4.0 * kPi) * (1.0 - std::sin(2.0 * a) / (2.0 * a));
}

double ldos_free(const SlabParams& p, double k) {
    check_k(k);
    const double b = k * p.l;
    return p.l / kPi * (1.0 - std::sin(2.0 * b) / (2.0 * b));
}

cplx siegert_residual(const SlabParams& p, Bc bc, cplx kc) {
    const cplx a = p.n * kc * p.l;
    const cplx xi = std::sin(a);
    const cplx dxi = p.n * kc * std::cos(a);
    if (bc == Bc::Neumann) return dxi - kI * kc * xi;
    // interchanged split: xi(0) + (i/k) xi'(0) = 0, scaled by -ik
    return -kI * kc * (xi + kI / kc * dxi);
}

cplx sigma_secular(const SlabParams& p, cplx sigma, cplx k, double coupling_scale) {
    const cplx a = p.n * sigma * p.l;
    return sigma * std::cos(a) - coupling_scale * (kI / p.n) * k * std::sin(a);
}

cplx channel_green(const SlabParams& p, Bc bc, double k, double x, double xp) {
    (void)p;
    if (x < 0.0 || xp < 0.0) throw DomainError("channel Green function needs x, x' >= 0");
    check_k(k);
    const cplx sum = std::exp(kI * k * (x + xp));
    const cplx diff = std::exp(kI * k * std::abs(x - xp));
    // Neumann cavity split -> Dirichlet channel, and vice versa
    if (bc == Bc::Neumann) return kI / (2.0 * k) * (sum - diff);
    return -kI / (2.0 * k) * (sum + diff);
}

}  // namespace openres::slab
