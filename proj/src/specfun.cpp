#include "openres/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace openres::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kMaxImag = 10.0;
constexpr double kMaxComplexAbs = 200.0;
constexpr double kMaxRealAbs = 1.0e5;
constexpr double kSmallArg = 2.0;
const cplx kI{0.0, 1.0};

void check_order(int m) {
    if (std::abs(m) > kMaxOrder)
        throw DomainError("cylinder function order |m| > 60: " + std::to_string(m));
}

void check_arg(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("non-finite cylinder function argument");
    if (std::abs(z.imag()) > kMaxImag)
        throw DomainError("cylinder function argument outside |Im z| <= 10");
    double lim = z.imag() == 0.0 ? kMaxRealAbs : kMaxComplexAbs;
    if (std::abs(z) > lim) throw DomainError("cylinder function argument too large");
}

double asym_threshold(int order) { return std::max(25.0, 0.5 * order * order); }

bool use_asymptotic(int order, cplx z) {
    return z.real() > 0.0 && std::abs(z) >= asym_threshold(order);
}

// Hankel asymptotic expansion for H1_m and H2_m, |arg z| small.
std::array<cplx, 2> hankel_asym(int m, cplx z) {
    const double mu = 4.0 * m * m;
    cplx s1 = 1.0, s2 = 1.0;
    cplx t = 1.0;  // a_k / z^k
    double last = 1.0;
    cplx ik = 1.0;
    for (int k = 1; k < 400; ++k) {
        double odd = 2.0 * k - 1.0;
        t *= (mu - odd * odd) / (8.0 * k) / z;
        double mag = std::abs(t);
        if (mag > last) break;
        ik *= kI;
        s1 += ik * t;
        s2 += std::conj(ik) * t;
        last = mag;
        if (mag < 1e-17 * std::abs(s1) && mag < 1e-17 * std::abs(s2)) break;
        if (mag == 0.0) break;
    }
    // phase z - m pi/2 - pi/4, reduced in the order term exactly
    double shift = std::fmod(0.5 * m + 0.25, 2.0) * kPi;
    cplx e1 = std::exp(kI * z) * std::exp(cplx(0.0, -shift));
    cplx e2 = std::exp(-kI * z) * std::exp(cplx(0.0, shift));
    cplx pre = std::sqrt(2.0 / (kPi * z));
    return {pre * e1 * s1, pre * e2 * s2};
}

int miller_start(int mmax, double az, double aim) {
    int n = std::max(mmax, static_cast<int>(std::ceil(az)));
    n += 20 + static_cast<int>(std::ceil(8.0 * std::cbrt(az) + 2.0 * aim));
    if (n % 2) ++n;
    return n;
}

// J_0 .. J_mmax for real x > 0 by backward recurrence.
void j_miller_real(double x, int mmax, double* out) {
    const int n0 = miller_start(mmax, x, 0.0);
    double fk1 = 0.0, fk = 1e-30, norm = 0.0;
    for (int i = 0; i <= mmax; ++i) out[i] = 0.0;
    for (int k = n0; k >= 1; --k) {
        if (k <= mmax) out[k] = fk;
        if (k % 2 == 0) norm += 2.0 * fk;
        double fm = (2.0 * k / x) * fk - fk1;
        fk1 = fk;
        fk = fm;
        if (std::abs(fk) > 1e250) {
            fk *= 1e-250;
            fk1 *= 1e-250;
            norm *= 1e-250;
            for (int i = 0; i <= mmax; ++i) out[i] *= 1e-250;
        }
    }
    out[0] = fk;
    norm += fk;
    for (int i = 0; i <= mmax; ++i) out[i] /= norm;
}

// Complex version, normalized with exp(+-iz) = J_0 + 2 sum (+-i)^k J_k.
void j_miller_complex(cplx z, int mmax, cplx* out) {
    const int n0 = miller_start(mmax, std::abs(z), std::abs(z.imag()));
    const cplx c = z.imag() > 0.0 ? -kI : kI;
    std::vector<cplx> cpow(n0 + 1);
    cpow[0] = 1.0;
    for (int k = 1; k <= n0; ++k) cpow[k] = cpow[k - 1] * c;
    cplx fk1 = 0.0, fk = 1e-30, norm = 0.0;
    for (int i = 0; i <= mmax; ++i) out[i] = 0.0;
    for (int k = n0; k >= 1; --k) {
        if (k <= mmax) out[k] = fk;
        norm += 2.0 * cpow[k] * fk;
        cplx fm = (2.0 * k) / z * fk - fk1;
        fk1 = fk;
        fk = fm;
        if (std::abs(fk) > 1e250) {
            fk *= 1e-250;
            fk1 *= 1e-250;
            norm *= 1e-250;
            for (int i = 0; i <= mmax; ++i) out[i] *= 1e-250;
        }
    }
    out[0] = fk;
    norm += fk;
    cplx target = std::exp(c * z);
    cplx scale = target / norm;
    for (int i = 0; i <= mmax; ++i) out[i] *= scale;
}

void j_run(cplx z, int mmax, cplx* out) {
    if (z.imag() == 0.0 && z.real() > 0.0) {
        std::vector<double> tmp(mmax + 1);
        j_miller_real(z.real(), mmax, tmp.data());
        for (int i = 0; i <= mmax; ++i) out[i] = tmp[i];
    } else {
        j_miller_complex(z, mmax, out);
    }
}

// H1_0'/H1_0 by Steed's continued fraction (modified Lentz), Im z >= 0.
cplx h1_log_deriv0(cplx z) {
    const double tiny = 1e-300;
    cplx f = tiny, C = tiny, D = 0.0;
    for (int j = 1; j < 100000; ++j) {
        double a = (j - 0.5) * (j - 0.5);
        cplx b = 2.0 * (z + cplx(0.0, j));
        D = b + a * D;
        if (D == 0.0) D = tiny;
        C = b + a / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return -1.0 / (2.0 * z) + kI + (kI / z) * f;
    }
    throw ConvergenceError("Hankel continued fraction did not converge", z, 0.0);
}

void upward(cplx z, int mmax, cplx* v) {
    for (int k = 1; k < mmax; ++k) v[k + 1] = (2.0 * k) / z * v[k] - v[k - 1];
}

// H1_0 .. H1_mmax for Im z >= 0, |z| >= kSmallArg.
void h1_run_upper(cplx z, const cplx* j, int mmax, cplx* out) {
    cplx r0 = h1_log_deriv0(z);
    cplx h0 = 2.0 * kI / (kPi * z * (j[0] * r0 + j[1]));
    out[0] = h0;
    if (mmax >= 1) out[1] = -r0 * h0;
    upward(z, mmax, out);
}

// Y_0 .. Y_mmax from the Neumann series, small |z|.
void y_run_small(cplx z, int mmax, cplx* out) {
    const int kmax = 40;
    std::vector<cplx> j(2 * kmax + 2);
    j_run(z, 2 * kmax + 1, j.data());
    cplx L = std::log(z / 2.0) + kEulerGamma;
    cplx s0 = 0.0, s1 = 0.0;
    for (int k = kmax; k >= 1; --k) {
        double sg = (k % 2) ? -1.0 : 1.0;
        s0 += sg * j[2 * k] / double(k);
        s1 += sg * (j[2 * k - 1] - j[2 * k + 1]) / double(k);
    }
    out[0] = (2.0 / kPi) * (L * j[0]) - (4.0 / kPi) * s0;
    if (mmax >= 1) out[1] = (2.0 / kPi) * (L * j[1] - j[0] / z) + (2.0 / kPi) * s1;
    upward(z, mmax, out);
}

// Values of the requested kind at orders 0..mmax (mmax >= 1).
void kind_run(Cyl f, cplx z, int mmax, cplx* out) {
    std::vector<cplx> j(mmax + 2);
    j_run(z, mmax + 1, j.data());
    if (f == Cyl::J) {
        std::copy(j.begin(), j.begin() + mmax + 1, out);
        return;
    }
    if (std::abs(z) < kSmallArg) {
        std::vector<cplx> y(mmax + 1);
        y_run_small(z, mmax, y.data());
        for (int i = 0; i <= mmax; ++i) {
            if (f == Cyl::Y) out[i] = y[i];
            else if (f == Cyl::H1) out[i] = j[i] + kI * y[i];
            else out[i] = j[i] - kI * y[i];
        }
        return;
    }
    std::vector<cplx> h1(mmax + 1);
    if (f == Cyl::H2) {
        cplx w = std::conj(z);
        std::vector<cplx> jw(mmax + 2);
        if (w.imag() >= 0.0) {
            for (int i = 0; i <= mmax + 1; ++i) jw[i] = std::conj(j[i]);
            h1_run_upper(w, jw.data(), mmax, h1.data());
            for (int i = 0; i <= mmax; ++i) out[i] = std::conj(h1[i]);
        } else {
            h1_run_upper(z, j.data(), mmax, h1.data());
            for (int i = 0; i <= mmax; ++i) out[i] = 2.0 * j[i] - h1[i];
        }
        return;
    }
    if (z.imag() >= 0.0) {
        h1_run_upper(z, j.data(), mmax, h1.data());
    } else {
        cplx w = std::conj(z);
        std::vector<cplx> jw(mmax + 2);
        for (int i = 0; i <= mmax + 1; ++i) jw[i] = std::conj(j[i]);
        h1_run_upper(w, jw.data(), mmax, h1.data());
        for (int i = 0; i <= mmax; ++i) h1[i] = std::conj(2.0 * jw[i] - h1[i]);
    }
    for (int i = 0; i <= mmax; ++i) out[i] = (f == Cyl::H1) ? h1[i] : (h1[i] - j[i]) / kI;
}

cplx from_asym(Cyl f, int order, cplx z) {
    auto h = hankel_asym(order, z);
    switch (f) {
        case Cyl::J: return 0.5 * (h[0] + h[1]);
        case Cyl::Y: return (h[0] - h[1]) / (2.0 * kI);
        case Cyl::H1: return h[0];
        case Cyl::H2: return h[1];
    }
    return 0.0;
}

// C_{m-1}, C_m, C_{m+1} for m >= 0 (C_{-1} = -C_1).
std::array<cplx, 3> triple(Cyl f, int m, cplx z) {
    check_arg(z);
    if (z == 0.0) {
        if (f != Cyl::J) throw DomainError("Y/Hankel functions are singular at z = 0");
        auto j0 = [](int k) { return k == 0 ? 1.0 : 0.0; };
        return {m == 1 ? 1.0 : 0.0, j0(m), 0.0};
    }
    if (use_asymptotic(m + 1, z)) {
        cplx c0 = from_asym(f, m, z);
        cplx c1 = from_asym(f, m + 1, z);
        cplx cm = m == 0 ? -c1 : from_asym(f, m - 1, z);
        return {cm, c0, c1};
    }
    std::vector<cplx> v(m + 2);
    kind_run(f, z, m + 1, v.data());
    for (const cplx& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("cylinder function overflow");
    return {m == 0 ? -v[1] : v[m - 1], v[m], v[m + 1]};
}

double sign_for(int m) { return (m < 0 && (-m) % 2) ? -1.0 : 1.0; }

// Real-argument J_m and J_m' for m >= 0, x > 0.
std::array<double, 2> j_real_with_deriv(int m, double x) {
    if (use_asymptotic(m + 1, cplx(x, 0.0))) {
        double c0 = from_asym(Cyl::J, m, x).real();
        double c1 = from_asym(Cyl::J, m + 1, x).real();
        double cm = m == 0 ? -c1 : from_asym(Cyl::J, m - 1, x).real();
        return {c0, 0.5 * (cm - c1)};
    }
    std::vector<double> v(m + 2);
    j_miller_real(x, m + 1, v.data());
    double cm = m == 0 ? -v[1] : v[m - 1];
    return {v[m], 0.5 * (cm - v[m + 1])};
}

}  // namespace

CylValue cyl_with_deriv(Cyl f, int m, cplx z) {
    check_order(m);
    int ma = std::abs(m);
    auto t = triple(f, ma, z);
    double s = sign_for(m);
    return {s * t[1], s * 0.5 * (t[0] - t[2])};
}

cplx cyl(Cyl f, int m, cplx z) { return cyl_with_deriv(f, m, z).value; }
cplx cyl_deriv(Cyl f, int m, cplx z) { return cyl_with_deriv(f, m, z).deriv; }

cplx bessel_j(int m, cplx z) { return cyl(Cyl::J, m, z); }

double bessel_j(int m, double x) {
    check_order(m);
    check_arg(x);
    if (x == 0.0) return m == 0 ? 1.0 : 0.0;
    int ma = std::abs(m);
    double s = sign_for(m) * ((x < 0.0 && ma % 2) ? -1.0 : 1.0);
    return s * j_real_with_deriv(ma, std::abs(x))[0];
}

double bessel_y(int m, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_y requires x > 0");
    return cyl(Cyl::Y, m, x).real();
}

cplx bessel_y(int m, cplx z) { return cyl(Cyl::Y, m, z); }
cplx hankel1(int m, cplx z) { return cyl(Cyl::H1, m, z); }
cplx hankel2(int m, cplx z) { return cyl(Cyl::H2, m, z); }

cplx hankel(int kind, int m, cplx z) {
    if (kind == 1) return hankel1(m, z);
    if (kind == 2) return hankel2(m, z);
    throw DomainError("Hankel kind must be 1 or 2");
}

double mcmahon_zero(int m, double lambda) {
    const double mu = 4.0 * m * m;
    const double b = (lambda + 0.5 * m - 0.25) * kPi;
    const double e = 8.0 * b;
    const double e2 = e * e;
    double x = b - (mu - 1.0) / e;
    x -= 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e2);
    x -= 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e * e2 * e2);
    x -= 64.0 * (mu - 1.0) *
         (6949.0 * mu * mu * mu - 153855.0 * mu * mu + 1585743.0 * mu - 6277237.0) /
         (105.0 * e * e2 * e2 * e2);
    return x;
}

namespace {

bool mcmahon_trusted(int m, int lambda) {
    return (lambda + 0.5 * m - 0.25) * kPi >= 3.0 * m + 1.0;
}

// Newton on J_m inside [a, b] where J_m changes sign; bisection safeguard.
double polish_bracket(int m, double a, double b) {
    double fa = j_real_with_deriv(m, a)[0];
    double x = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        auto [f, d] = j_real_with_deriv(m, x);
        if (f == 0.0) return x;
        if ((f > 0.0) == (fa > 0.0)) {
            a = x;
            fa = f;
        } else {
            b = x;
        }
        double xn = x - f / d;
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        if (std::abs(xn - x) <= 4e-16 * x) return xn;
        x = xn;
        if (b - a <= 4e-16 * x) return x;
    }
    return x;
}

double newton_zero(int m, double seed) {
    double x = seed;
    for (int it = 0; it < 60; ++it) {
        auto [f, d] = j_real_with_deriv(m, x);
        double dx = -f / d;
        dx = std::clamp(dx, -1.0, 1.0);
        x += dx;
        if (std::abs(dx) <= 4e-16 * x) break;
    }
    return x;
}

// Next zero strictly above `from` by scanning for a sign change.
double scan_next(int m, double from) {
    const double step = 1.0;
    double a = from;
    double fa = j_real_with_deriv(m, a)[0];
    for (int it = 0; it < 1000000; ++it) {
        double b = a + step;
        double fb = j_real_with_deriv(m, b)[0];
        if (fb == 0.0) return b;
        if ((fa > 0.0) != (fb > 0.0)) return polish_bracket(m, a, b);
        a = b;
        fa = fb;
    }
    throw ConvergenceError("Bessel zero scan failed", from, 0.0);
}

double first_scan_start(int m) { return m == 0 ? 0.5 : static_cast<double>(m); }

}  // namespace

std::vector<double> bessel_j_zeros(int m, int count) {
    check_order(m);
    const int ma = std::abs(m);
    std::vector<double> xs;
    xs.reserve(std::max(count, 0));
    double prev = first_scan_start(ma);
    for (int lam = 1; lam <= count; ++lam) {
        double x;
        bool ok = false;
        if (mcmahon_trusted(ma, lam)) {
            x = newton_zero(ma, mcmahon_zero(ma, lam));
            double seed = mcmahon_zero(ma, lam);
            ok = std::abs(x - seed) < 0.5 && (lam == 1 || (x - prev > 3.0 && x - prev < 6.0));
        }
        if (!ok) x = scan_next(ma, lam == 1 ? prev : prev + 0.5);
        if (lam > 1 && !(x > prev))
            throw ConvergenceError("Bessel zeros not increasing", x, prev);
        xs.push_back(x);
        prev = x;
    }
    return xs;
}

BesselZero bessel_j_zero(int m, int lambda) {
    check_order(m);
    if (lambda < 1) throw DomainError("Bessel zero index must be >= 1");
    const int ma = std::abs(m);
    if (mcmahon_trusted(ma, lambda)) {
        double seed = mcmahon_zero(ma, lambda);
        double x = newton_zero(ma, seed);
        if (std::abs(x - seed) < 0.5) return {m, lambda, x};
    }
    auto xs = bessel_j_zeros(ma, lambda);
    return {m, lambda, xs.back()};
}

}  // namespace openres::specfun
