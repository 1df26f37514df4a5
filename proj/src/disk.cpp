#include "openres/disk.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "openres/kernels.hpp"
#include "openres/numerics.hpp"
#include "openres/specfun.hpp"

namespace openres::disk {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
using specfun::Cyl;

void check_k(double k) {
    if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
}

void check_m(int m) {
    if (std::abs(m) > kMaxM) throw DomainError("angular momentum |m| > " + std::to_string(kMaxM));
}

// zeros of J_|m|, extended on demand
class ZeroCache {
public:
    double get(int m, int lambda) {
        std::lock_guard<std::mutex> lock(mu_);
        auto& v = zeros_[std::abs(m)];
        if (static_cast<int>(v.size()) < lambda) {
            int want = std::max(lambda, std::max(64, 2 * static_cast<int>(v.size())));
            v = specfun::bessel_j_zeros(std::abs(m), want);
        }
        return v[lambda - 1];
    }
    std::vector<double> first(int m, int count) {
        get(m, count);
        std::lock_guard<std::mutex> lock(mu_);
        const auto& v = zeros_[std::abs(m)];
        return {v.begin(), v.begin() + count};
    }

private:
    std::mutex mu_;
    std::map<int, std::vector<double>> zeros_;
};

ZeroCache& zero_cache() {
    static ZeroCache cache;
    return cache;
}

double zero_continuous(int m, double lambda) {
    double r = std::round(lambda);
    if (r == lambda && lambda >= 1.0) return zero_cache().get(m, static_cast<int>(r));
    return specfun::mcmahon_zero(std::abs(m), lambda);
}

double bessel_jr(int m, double x) { return specfun::bessel_j(m, x); }

}  // namespace

void DiskParams::validate() const {
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("disk index n must be positive");
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("disk radius R must be positive");
}

double channel_threshold(const DiskParams& p, int m) { return std::abs(m) / (p.n * p.R); }

cplx s_denominator(const DiskParams& p, int m, cplx k) {
    check_m(m);
    auto j = specfun::cyl_with_deriv(Cyl::J, m, p.n * k * p.R);
    auto h = specfun::cyl_with_deriv(Cyl::H1, m, k * p.R);
    return j.value * h.deriv - p.n * j.deriv * h.value;
}

cplx s_matrix(const DiskParams& p, int m, double k) {
    check_k(k);
    check_m(m);
    auto j = specfun::cyl_with_deriv(Cyl::J, m, p.n * k * p.R);
    auto h1 = specfun::cyl_with_deriv(Cyl::H1, m, k * p.R);
    auto h2 = specfun::cyl_with_deriv(Cyl::H2, m, k * p.R);
    return -(j.value * h2.deriv - p.n * j.deriv * h2.value) / (j.value * h1.deriv - p.n * j.deriv * h1.value);
}

cplx mode_strength(const DiskParams& p, int m, double k) {
    check_k(k);
    return 4.0 * kI / (kPi * k * p.R * s_denominator(p, m, k));
}

cplx channel_s(const DiskParams& p, int m, double k) {
    check_k(k);
    check_m(m);
    return -specfun::cyl_deriv(Cyl::H2, m, k * p.R) / specfun::cyl_deriv(Cyl::H1, m, k * p.R);
}

cplx exact_field(const DiskParams& p, int m, double k, double r) {
    if (r < 0.0) throw DomainError("negative radius");
    const double pre = std::sqrt(k / (8.0 * kPi));
    if (r < p.R) return pre * mode_strength(p, m, k) * bessel_jr(m, p.n * k * r);
    return pre * (specfun::hankel2(m, k * r) + s_matrix(p, m, k) * specfun::hankel1(m, k * r));
}

cplx exact_field(const DiskParams& p, int m, double k, double r, double phi) {
    return std::exp(-kI * static_cast<double>(m) * phi) * exact_field(p, m, k, r);
}

cplx exact_field_dr(const DiskParams& p, int m, double k, double r, Side side) {
    if (r < 0.0) throw DomainError("negative radius");
    const double pre = std::sqrt(k / (8.0 * kPi));
    bool inside = r < p.R || (r == p.R && side == Side::Interior);
    if (inside) return pre * mode_strength(p, m, k) * p.n * k * specfun::cyl_deriv(Cyl::J, m, p.n * k * r);
    return pre * k *
           (specfun::cyl_deriv(Cyl::H2, m, k * r) + s_matrix(p, m, k) * specfun::cyl_deriv(Cyl::H1, m, k * r));
}

double cavity_eigen_k(const DiskParams& p, int m, int lambda) {
    check_m(m);
    if (lambda < 1) throw DomainError("radial index lambda must be >= 1");
    return zero_cache().get(m, lambda) / (p.n * p.R);
}

double cavity_mode(const DiskParams& p, int m, int lambda, double r) {
    if (r < 0.0 || r > p.R) throw DomainError("cavity mode evaluated outside the disk");
    const double x = cavity_eigen_k(p, m, lambda) * p.n * p.R;
    // J_{m+1}(x) = -J'_m(x) at a zero of J_m
    const double norm = -std::sqrt(kPi) * p.R * specfun::cyl_deriv(Cyl::J, std::abs(m), x).real();
    return bessel_jr(std::abs(m), x * r / p.R) / norm;
}

cplx cavity_mode(const DiskParams& p, int m, int lambda, double r, double phi) {
    return std::exp(kI * static_cast<double>(m) * phi) * cavity_mode(p, m, lambda, r);
}

cplx channel_mode(const DiskParams& p, int m, double k, double r) {
    if (r < p.R) throw DomainError("channel mode evaluated inside the disk");
    return std::sqrt(k / (8.0 * kPi)) *
           (specfun::hankel2(m, k * r) + channel_s(p, m, k) * specfun::hankel1(m, k * r));
}

cplx channel_mode(const DiskParams& p, int m, double k, double r, double phi) {
    return std::exp(kI * static_cast<double>(m) * phi) * channel_mode(p, m, k, r);
}

cplx channel_mode_dr(const DiskParams& p, int m, double k, double r) {
    if (r < p.R) throw DomainError("channel mode evaluated inside the disk");
    return std::sqrt(k / (8.0 * kPi)) * k *
           (specfun::cyl_deriv(Cyl::H2, m, k * r) + channel_s(p, m, k) * specfun::cyl_deriv(Cyl::H1, m, k * r));
}

namespace {
cplx coupling_amplitude(const DiskParams& p, int m, int lambda, double k) {
    check_k(k);
    const double kl = cavity_eigen_k(p, m, lambda);
    return -kI * std::sqrt(2.0 * kl) / (kPi * k * p.R * specfun::cyl_deriv(Cyl::H1, m, k * p.R));
}
}  // namespace

cplx coupling_w(const DiskParams& p, int m, int lambda, int m_channel, double k) {
    if (m_channel != m) return 0.0;
    return coupling_amplitude(p, m, lambda, k);
}

cplx coupling_v(const DiskParams& p, int m, int lambda, int m_channel, double k) {
    if (m_channel != -m) return 0.0;
    return coupling_amplitude(p, m, lambda, k);
}

cplx alpha(const DiskParams& p, int m, int lambda, double k) {
    check_k(k);
    const double kl = cavity_eigen_k(p, m, lambda);
    const cplx I = mode_strength(p, m, k);
    const double pre = -std::sqrt(k / 2.0) * kl;
    const double x = kl * p.n * p.R;
    const double eps = p.n * p.R * (k - kl);
    if (std::abs(eps) < 1e-3) {
        // Taylor expansion of J_m around its zero x
        const double mm = static_cast<double>(m) * m;
        const double d1 = specfun::cyl_deriv(Cyl::J, m, x).real();
        const double d2 = -d1 / x;
        const double d3 = d1 * (2.0 / (x * x) - 1.0 + mm / (x * x));
        const double d4 = -d3 / x + d2 * (2.0 / (x * x) - 1.0 + mm / (x * x)) - d1 * (2.0 + 4.0 * mm) / (x * x * x);
        const double ratio = p.n * p.R * (d1 + eps * (d2 / 2.0 + eps * (d3 / 6.0 + eps * d4 / 24.0)));
        return pre * I * ratio / (k + kl);
    }
    return pre * I * bessel_jr(m, p.n * k * p.R) / ((k - kl) * (k + kl));
}

double alpha_sq(const DiskParams& p, int m, double lambda, double k) {
    check_m(m);
    const double kl = zero_continuous(m, lambda) / (p.n * p.R);
    const double j = bessel_jr(m, p.n * k * p.R);
    const double d = (k - kl) * (k + kl);
    return 0.5 * k * kl * kl * std::norm(mode_strength(p, m, k)) * j * j / (d * d);
}

cplx resonance_condition(const DiskParams& p, int m, cplx kc) { return s_denominator(p, m, kc); }

cplx boundary_residual(const DiskParams& p, int m, cplx kc) {
    return s_denominator(p, m, kc) / specfun::cyl_deriv(Cyl::H1, m, kc * p.R);
}

double bessel_product(int m, double x) {
    const int ma = std::abs(m);
    const double j = bessel_jr(ma, x);
    if (ma < specfun::kMaxOrder) return j * j - bessel_jr(ma + 1, x) * bessel_jr(ma - 1, x);
    const double d = specfun::cyl_deriv(Cyl::J, ma, x).real();
    return d * d + (1.0 - static_cast<double>(ma) * ma / (x * x)) * j * j;
}

double ldos_m(const DiskParams& p, int m, double k) {
    const double nkr = p.n * k * p.R;
    return p.n * p.n * k * p.R * p.R * std::norm(mode_strength(p, m, k)) / 8.0 * bessel_product(m, nkr);
}

double ldos_free(const DiskParams& p, double k) {
    check_k(k);
    return k * p.R * p.R / 2.0;
}

double ldos_disk(const DiskParams& p, double k, int m_max) {
    check_m(m_max);
    numerics::KahanSum s;
    for (int m = 0; m <= m_max; ++m) s.add((m == 0 ? 1.0 : 2.0) * ldos_m(p, m, k));
    return s.value();
}

double gain_per_m(const DiskParams& p, int m, double k) {
    check_k(k);
    const double kr = kPi * k * p.R;
    return 4.0 * p.n * p.n * bessel_product(m, p.n * k * p.R) / (kr * kr * std::norm(s_denominator(p, m, k)));
}

int adaptive_m_max(const DiskParams& p, double k) {
    check_k(k);
    numerics::KahanSum s;
    const int floor_m = static_cast<int>(std::ceil(p.n * k * p.R));
    for (int m = 0; m <= kMaxM; ++m) {
        double t = (m == 0 ? 1.0 : 2.0) * gain_per_m(p, m, k);
        s.add(t);
        if (m > floor_m && t < 1e-12 * s.value()) return m;
    }
    throw ToleranceError("disk m truncation not reached below |m| = " + std::to_string(kMaxM), 0.0);
}

double gain_total(const DiskParams& p, double k, int m_max) {
    if (m_max < 0) m_max = adaptive_m_max(p, k);
    check_m(m_max);
    numerics::KahanSum s;
    for (int m = 0; m <= m_max; ++m) s.add((m == 0 ? 1.0 : 2.0) * gain_per_m(p, m, k));
    return s.value();
}

SumIdentity radial_sum_identity(const DiskParams& p, int m, double k, int lambda_max) {
    check_k(k);
    if (lambda_max < 100) throw DomainError("radial_sum_identity needs lambda_max >= 100");
    const double nr = p.n * p.R;
    const auto zeros = zero_cache().first(m, lambda_max);
    std::vector<double> q2(lambda_max - 1);
    for (int i = 0; i + 1 < lambda_max; ++i) q2[i] = (zeros[i] / nr) * (zeros[i] / nr);
    const double k2 = k * k;
    double head = kernels::inverse_square_sum(q2.data(), q2.data(), q2.size(), k2);
    auto term = [&](double lam) {
        double kl = (lam <= lambda_max ? zero_continuous(m, lam) : specfun::mcmahon_zero(std::abs(m), lam)) / nr;
        double d = k2 - kl * kl;
        return kl * kl / (d * d);
    };
    auto tail = numerics::series_sum_tail(term, 2, lambda_max, lambda_max);
    const double x = p.n * k * p.R;
    const double j = bessel_jr(m, x);
    return {head + tail.value, nr * nr * bessel_product(m, x) / (4.0 * j * j)};
}

double alpha_sq_sum(const DiskParams& p, int m, double k, int lambda_max) {
    const double j = bessel_jr(m, p.n * k * p.R);
    return 0.5 * k * std::norm(mode_strength(p, m, k)) * j * j * radial_sum_identity(p, m, k, lambda_max).lhs;
}

cplx channel_green(const DiskParams& p, int m, double k, double r, double rp) {
    if (r < p.R || rp < p.R) throw DomainError("channel Green function needs r, r' >= R");
    check_k(k);
    const double lo = std::min(r, rp), hi = std::max(r, rp);
    const cplx inner = specfun::hankel2(m, k * lo) + channel_s(p, m, k) * specfun::hankel1(m, k * lo);
    return -kI / 8.0 * inner * specfun::hankel1(m, k * hi);
}

}  // namespace openres::disk
