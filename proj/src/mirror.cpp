#include "openres/mirror.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace openres::mirror {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

double parity(int lambda) { return (lambda % 2) ? -1.0 : 1.0; }

void check_k(double k) {
    if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
}

void check_index(int lambda) {
    if (lambda < 1) throw DomainError("cavity mode index " + std::to_string(lambda) + " out of range");
}

}  // namespace

void MirrorParams::validate() const {
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("mirror eta must be >= 0");
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("cavity length l must be positive");
}

MirrorRT mirror_rt(const MirrorParams& p, double k) {
    check_k(k);
    const cplx d = 2.0 - kI * k * p.eta;
    return {kI * k * p.eta / d, 2.0 / d};
}

cplx s_denominator(const MirrorParams& p, cplx k) {
    return (kI + p.eta * k) * std::sin(k * p.l) - std::cos(k * p.l);
}

cplx s_matrix(const MirrorParams& p, double k) {
    check_k(k);
    const double s = std::sin(k * p.l), c = std::cos(k * p.l), ek = p.eta * k;
    return ((kI - ek) * s + c) / ((kI + ek) * s - c);
}

cplx mode_strength(const MirrorParams& p, double k) {
    check_k(k);
    return 2.0 * kI / s_denominator(p, k);
}

cplx channel_s(const MirrorParams& p, double k) {
    const double ek = p.eta * k;
    return (kI - ek) / (kI + ek);
}

cplx exact_field(const MirrorParams& p, double k, double x) {
    if (x < -p.l) throw DomainError("field requested left of the mirror");
    if (x < 0.0) return kInvSqrt2Pi * mode_strength(p, k) * std::sin(k * (x + p.l));
    return kInvSqrt2Pi * (std::exp(-kI * k * x) + s_matrix(p, k) * std::exp(kI * k * x));
}

cplx exact_field_dx(const MirrorParams& p, double k, double x, Side side) {
    if (x < -p.l) throw DomainError("field requested left of the mirror");
    bool inside = x < 0.0 || (x == 0.0 && side == Side::Interior);
    if (inside) return kInvSqrt2Pi * mode_strength(p, k) * k * std::cos(k * (x + p.l));
    return kInvSqrt2Pi * kI * k * (-std::exp(-kI * k * x) + s_matrix(p, k) * std::exp(kI * k * x));
}

double cavity_eigen_k(const MirrorParams& p, int lambda) {
    check_index(lambda);
    return lambda * kPi / p.l;
}

double cavity_mode(const MirrorParams& p, int lambda, double x) {
    if (x < -p.l || x > 0.0) throw DomainError("cavity mode evaluated outside [-l, 0]");
    return std::sqrt(2.0 / p.l) * std::sin(cavity_eigen_k(p, lambda) * (x + p.l));
}

double cavity_mode_dx(const MirrorParams& p, int lambda, double x) {
    if (x < -p.l || x > 0.0) throw DomainError("cavity mode evaluated outside [-l, 0]");
    const double kl = cavity_eigen_k(p, lambda);
    return std::sqrt(2.0 / p.l) * kl * std::cos(kl * (x + p.l));
}

cplx channel_mode(const MirrorParams& p, double k, double x) {
    if (x < 0.0) throw DomainError("channel mode evaluated inside the cavity");
    check_k(k);
    return kInvSqrt2Pi * (std::exp(-kI * k * x) + channel_s(p, k) * std::exp(kI * k * x));
}

cplx coupling_w(const MirrorParams& p, int lambda, double k) {
    check_k(k);
    const double kl = cavity_eigen_k(p, lambda);
    return parity(lambda) / (1.0 - kI * p.eta * k) * std::sqrt(kl / (kPi * k * p.l));
}

cplx coupling_v(const MirrorParams& p, int lambda, double k) { return coupling_w(p, lambda, k); }

cplx alpha(const MirrorParams& p, int lambda, double k) {
    check_k(k);
    const double kl = cavity_eigen_k(p, lambda);
    const cplx I = mode_strength(p, k);
    const double pre = std::sqrt(kPi * p.l);
    const double delta = k - kl;
    if (std::abs(delta * p.l) < 1.0) {
        const double t = delta * p.l;
        const double r = std::abs(t) < 1e-4 ? p.l * (1.0 - t * t / 6.0) : std::sin(t) / delta;
        return I * kl * r / (pre * (k + kl));
    }
    return parity(lambda) * I * kl * std::sin(k * p.l) / (pre * delta * (k + kl));
}

double alpha_sq(const MirrorParams& p, double lambda, double k) {
    const double kl = lambda * kPi / p.l;
    const double d = (k - kl) * (k + kl);
    const double num = kl * std::sin(k * p.l);
    return std::norm(mode_strength(p, k)) * num * num / (kPi * p.l * d * d);
}

BetaKernel beta_kernel(const MirrorParams& p, double k) {
    const cplx S = s_matrix(p, k);
    const cplx sck = std::conj(channel_s(p, k));
    BetaKernel b;
    b.k = k;
    b.delta_coeff = (1.0 + sck * S) / 2.0;
    b.pv_part = [p, S, k](double kp) {
        const cplx sc = std::conj(channel_s(p, kp));
        return kI / (2.0 * kPi) * ((1.0 - sc * S) * (kp + k) + (S - sc) * (kp - k));
    };
    return b;
}

cplx resonance_condition(const MirrorParams& p, cplx kc) { return s_denominator(p, kc); }

cplx siegert_residual(const MirrorParams& p, cplx kc) {
    return std::sin(kc * p.l) - std::cos(kc * p.l) / (kI + p.eta * kc);
}

cplx sigma_secular(const MirrorParams& p, cplx sigma, cplx k, double t) {
    return t * sigma * std::cos(sigma * p.l) - k * (kI + p.eta * k) * std::sin(sigma * p.l);
}

double gain_closed(const MirrorParams& p, double k) {
    check_k(k);
    const double ek = p.eta * k, s = std::sin(k * p.l);
    return 1.0 / (1.0 - ek * std::sin(2.0 * k * p.l) + ek * ek * s * s);
}

double ldos_cavity(const MirrorParams& p, double k) {
    const double b = k * p.l;
    return p.l * std::norm(mode_strength(p, k)) / (4.0 * kPi) * (1.0 - std::sin(2.0 * b) / (2.0 * b));
}

double ldos_free(const MirrorParams& p, double k) {
    check_k(k);
    const double b = k * p.l;
    return p.l / kPi * (1.0 - std::sin(2.0 * b) / (2.0 * b));
}

cplx channel_green(const MirrorParams& p, double k, double x, double xp) {
    if (x < 0.0 || xp < 0.0) throw DomainError("channel Green function needs x, x' >= 0");
    check_k(k);
    return -kI / (2.0 * k) *
           (std::exp(kI * k * std::abs(x - xp)) + channel_s(p, k) * std::exp(kI * k * (x + xp)));
}

}  // namespace openres::mirror
