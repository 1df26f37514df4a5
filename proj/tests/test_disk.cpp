#include <doctest.h>

#include <cmath>
#include <numbers>

#include "openres/disk.hpp"
#include "openres/numerics.hpp"
#include "openres/specfun.hpp"

using namespace openres;
using namespace openres::disk;
namespace nm = openres::numerics;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
const DiskParams kDisk{3.3, 1.0};

// reference values from tests/data/gen_disk_values.py (mpmath, 40 digits)
const cplx kRefS(-9.058248821553562e-3, -0.99995897322254518);
const cplx kRefI(6.7658656910243322, -6.8274326935085474);
const cplx kRefAlpha(1.421738862268288e-1, -0.14346761867826215);
const cplx kRefW(-1.6661107060665937e-1, -0.0098331137331199453);
const cplx kRefRes13(10.493059049293833, -0.0063553561341791144);
const cplx kRefRes5(10.122736127097963, -0.084078121122342917);
const cplx kRefSc0(-6.6148117575428601e-1, -0.74996176844071684);
const cplx kRefG0(1.2838244279176471e-2, -0.010069899119169979);

cplx overlap_alpha(const DiskParams& p, int m, int lambda, double k) {
    static const auto rule = nm::gauss_legendre(24);
    int panels = 8 + static_cast<int>((k + cavity_eigen_k(p, m, lambda)) * p.n * p.R);
    return 2.0 * kPi * nm::composite_gauss(
                           [&](double r) { return p.n * cavity_mode(p, m, lambda, r) * exact_field(p, m, k, r) * r; },
                           0.0, p.R, panels, rule);
}
}  // namespace

TEST_CASE("disk reference values") {
    CHECK(std::abs(s_matrix(kDisk, 13, 10.5) - kRefS) < 1e-12);
    CHECK(std::abs(mode_strength(kDisk, 13, 10.5) - kRefI) < 1e-11);
    CHECK(std::abs(alpha(kDisk, 13, 1, 10.5) - kRefAlpha) < 1e-12);
    CHECK(std::abs(coupling_w(kDisk, 13, 1, 13, 10.5) - kRefW) < 1e-13);
    CHECK(std::abs(channel_s(kDisk, 0, 5.0) - kRefSc0) < 1e-13);
    CHECK(std::abs(channel_green(kDisk, 0, 5.0, 1.2, 1.2) - kRefG0) < 1e-13);
    CHECK(cavity_eigen_k(kDisk, 0, 1) * 3.3 == doctest::Approx(2.404825557695773).epsilon(1e-15));
}

TEST_CASE("disk null case n = 1") {
    DiskParams free{1.0, 1.0};
    for (int m : {0, 3, -7, 20})
        for (double k : {0.5, 4.0, 10.5, 30.0}) {
            CHECK(std::abs(s_matrix(free, m, k) - 1.0) < 1e-10);
            CHECK(std::abs(mode_strength(free, m, k) - 2.0) < 1e-10);
        }
    for (double k : {0.5, 4.0, 10.5}) CHECK(std::abs(gain_total(free, k) - 1.0) < 1e-10);
}

TEST_CASE("disk unitarity") {
    double worst = 0.0, worst_c = 0.0;
    for (int m = -40; m <= 40; m += 3)
        for (int i = 1; i <= 200; ++i) {
            double k = 0.06 * i;
            worst = std::max(worst, std::abs(std::abs(s_matrix(kDisk, m, k)) - 1.0));
            worst_c = std::max(worst_c, std::abs(std::abs(channel_s(kDisk, m, k)) - 1.0));
        }
    CHECK(worst < 1e-12);
    CHECK(worst_c < 1e-12);
}

TEST_CASE("disk exact field matching") {
    for (int m : {0, 5, 13, -13}) {
        const double k = 10.5;
        cplx in = exact_field(kDisk, m, k, std::nextafter(1.0, 0.0));
        cplx out = exact_field(kDisk, m, k, 1.0);
        CHECK(std::abs(in - out) < 1e-10);
        cplx din = exact_field_dr(kDisk, m, k, 1.0, Side::Interior);
        cplx dout = exact_field_dr(kDisk, m, k, 1.0, Side::Exterior);
        CHECK(std::abs(din - dout) < 1e-10 * k);
    }
    CHECK(std::abs(exact_field(kDisk, 13, 10.5, 0.3, 0.7) - std::exp(-13.0 * kI * 0.7) * exact_field(kDisk, 13, 10.5, 0.3)) < 1e-15);
    CHECK_THROWS_AS(exact_field(kDisk, 0, 1.0, -0.1), DomainError);
}

TEST_CASE("disk cavity modes") {
    for (int m : {0, 4, 13})
        for (int lam = 1; lam < 4; ++lam) CHECK(std::abs(cavity_mode(kDisk, m, lam, 1.0)) < 1e-13);
    auto rule = nm::gauss_legendre(24);
    double worst = 0.0;
    for (int m : {0, 1, 5, 13, -13, 40})
        for (int a = 1; a <= 6; ++a)
            for (int b = a; b <= 6; ++b) {
                double v = 2.0 * kPi * nm::composite_gauss(
                                           [&](double r) { return cavity_mode(kDisk, m, a, r) * cavity_mode(kDisk, m, b, r) * r; },
                                           0.0, 1.0, 16, rule);
                worst = std::max(worst, std::abs(v - (a == b ? 1.0 : 0.0)));
            }
    CHECK(worst < 1e-9);
    CHECK(std::abs(cavity_mode(kDisk, 2, 1, 0.4, 0.3) * std::conj(cavity_mode(kDisk, 2, 1, 0.4, 0.3)) -
                   std::pow(cavity_mode(kDisk, 2, 1, 0.4), 2)) < 1e-15);
    CHECK_THROWS_AS(cavity_eigen_k(kDisk, 0, 0), DomainError);
    CHECK_THROWS_AS(cavity_eigen_k(kDisk, 60, 1), DomainError);
}

TEST_CASE("disk channel modes") {
    for (int m : {0, 2, 13})
        for (double k : {1.0, 5.0, 10.5}) CHECK(std::abs(channel_mode_dr(kDisk, m, k, 1.0)) < 1e-10 * k);
    CHECK_THROWS_AS(channel_mode(kDisk, 0, 1.0, 0.5), DomainError);
    CHECK(channel_threshold(kDisk, 13) == doctest::Approx(13.0 / 3.3));
}

TEST_CASE("disk coupling selection rules") {
    CHECK(coupling_w(kDisk, 2, 1, 3, 4.0) == cplx(0.0));
    CHECK(std::abs(coupling_v(kDisk, 2, 1, -2, 4.0)) > 0.0);
    CHECK(coupling_v(kDisk, 2, 1, 2, 4.0) == cplx(0.0));
    CHECK(std::abs(coupling_w(kDisk, 2, 1, 2, 4.0)) == std::abs(coupling_v(kDisk, 2, 1, -2, 4.0)));
}

TEST_CASE("disk alpha matches overlap quadrature") {
    double worst = 0.0;
    for (int m : {0, 5, 13, -13})
        for (int lam = 1; lam <= 12; ++lam)
            for (double k : {2.0, 7.3, 10.5}) {
                cplx a = alpha(kDisk, m, lam, k);
                worst = std::max(worst, std::abs(a - overlap_alpha(kDisk, m, lam, k)));
            }
    MESSAGE("worst disk alpha error ", worst);
    CHECK(worst < 1e-7);
    for (int m : {0, 13}) {
        double kl = cavity_eigen_k(kDisk, m, 3);
        for (double d : {0.0, 1e-12, 1e-8, 1e-5, 2e-4, 1e-3, 0.05}) {
            cplx a = alpha(kDisk, m, 3, kl + d);
            CHECK(std::abs(a - overlap_alpha(kDisk, m, 3, kl + d)) < 1e-9);
        }
    }
    DiskParams free{1.0, 1.0};
    double kl = cavity_eigen_k(free, 3, 2);
    CHECK(std::isfinite(std::abs(alpha(free, 3, 2, kl))));
    for (int lam = 1; lam < 20; lam += 3)
        CHECK(alpha_sq(kDisk, 13, lam, 10.5) == doctest::Approx(std::norm(alpha(kDisk, 13, lam, 10.5))).epsilon(1e-12));
}

TEST_CASE("disk resonances") {
    auto r13 = nm::newton_complex([](cplx z) { return resonance_condition(kDisk, 13, z); }, {}, cplx(10.5, -0.001), 1e-13);
    CHECK(std::abs(r13.root - kRefRes13) < 1e-10);
    auto r5 = nm::newton_complex([](cplx z) { return resonance_condition(kDisk, 5, z); }, {}, cplx(10.1, -0.05), 1e-13);
    CHECK(std::abs(r5.root - kRefRes5) < 1e-10);
    CHECK(std::abs(r5.root.imag()) > 10.0 * std::abs(r13.root.imag()));
    CHECK(std::abs(boundary_residual(kDisk, 13, r13.root)) < 1e-8);
    DiskParams free{1.0, 1.0};
    for (double k : {2.0, 7.0}) {
        cplx d = s_denominator(free, 4, cplx(k, -0.2));
        CHECK(std::abs(d - 2.0 * kI / (kPi * cplx(k, -0.2))) < 1e-12);
    }
}

TEST_CASE("disk LDOS and gain") {
    const double k = 10.5;
    int mmax = adaptive_m_max(kDisk, k);
    double sum = 0.0;
    for (int m = -mmax; m <= mmax; ++m) sum += gain_per_m(kDisk, m, k);
    CHECK(std::abs(gain_total(kDisk, k, mmax) - sum) < 1e-12 * sum);
    CHECK(std::abs(ldos_disk(kDisk, k, mmax) / ldos_free(kDisk, k) - gain_total(kDisk, k, mmax)) < 1e-12 * sum);
    for (int m : {0, 7, 13}) {
        double s = alpha_sq_sum(kDisk, m, k, 500);
        CHECK(std::abs(s - ldos_m(kDisk, m, k)) < 1e-8 * ldos_m(kDisk, m, k));
        double direct = 0.0;
        for (int lam = 1; lam <= 60; ++lam) direct += std::norm(alpha(kDisk, m, lam, k));
        CHECK(direct < s);
        CHECK(direct > 0.99 * s);
    }
}

TEST_CASE("disk Bessel-zero sum identity") {
    for (auto [m, x] : {std::pair{0, 5.0}, std::pair{13, 34.65}, std::pair{3, 1.1}}) {
        auto id = radial_sum_identity(kDisk, m, x / 3.3, 500);
        CHECK(std::abs(id.lhs - id.rhs) < 1e-6 * std::abs(id.rhs));
    }
    CHECK_THROWS_AS(radial_sum_identity(kDisk, 0, 1.0, 50), DomainError);
}

TEST_CASE("disk channel Green function") {
    for (int m : {0, 5}) {
        CHECK(std::abs(channel_green(kDisk, m, 3.0, 1.3, 2.1) - channel_green(kDisk, m, 3.0, 2.1, 1.3)) < 1e-15);
        double h = 1e-6;
        cplx d = (channel_green(kDisk, m, 3.0, 1.0 + h, 2.1) - channel_green(kDisk, m, 3.0, 1.0, 2.1)) / h;
        CHECK(std::abs(d) < 1e-5);
    }
    CHECK_THROWS_AS(channel_green(kDisk, 0, 3.0, 0.5, 2.1), DomainError);
}
