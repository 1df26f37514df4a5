#include <doctest.h>

#include <cmath>
#include <numbers>

#include "openres/mirror.hpp"
#include "openres/numerics.hpp"
#include "openres/slab.hpp"

using namespace openres;
using namespace openres::mirror;
namespace nm = openres::numerics;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
const MirrorParams kMirror{0.0453, 1.0};

cplx overlap_alpha(const MirrorParams& p, int lambda, double k) {
    static const auto rule = nm::gauss_legendre(20);
    int panels = 8 + static_cast<int>((k + cavity_eigen_k(p, lambda)) * p.l);
    return nm::composite_gauss([&](double x) { return cavity_mode(p, lambda, x) * exact_field(p, k, x); },
                               -p.l, 0.0, panels, rule);
}
}  // namespace

TEST_CASE("mirror reflection and transmission") {
    MirrorParams open{0.0, 1.0};
    auto rt0 = mirror_rt(open, 3.0);
    CHECK(std::abs(rt0.r) == 0.0);
    CHECK(std::abs(rt0.t - 1.0) == 0.0);
    for (double k : {0.5, 10.0, 28.9, 400.0}) {
        auto rt = mirror_rt(kMirror, k);
        CHECK(std::abs(std::norm(rt.r) + std::norm(rt.t) - 1.0) < 1e-14);
        CHECK(std::abs(rt.r * std::conj(rt.t) + std::conj(rt.r) * rt.t) < 1e-14);
    }
    CHECK(std::norm(mirror_rt(kMirror, 28.9).r) == doctest::Approx(0.300).epsilon(2e-3 / 0.3));
    CHECK(std::abs(mirror_rt(kMirror, 1e7).r) > 0.9999);
}

TEST_CASE("mirror S-matrix") {
    MirrorParams open{0.0, 1.0};
    for (double k : {0.4, 3.3, 28.9}) CHECK(std::abs(s_matrix(open, k) + std::exp(2.0 * kI * k)) < 1e-14);
    double worst = 0.0;
    for (int i = 1; i <= 10000; ++i) worst = std::max(worst, std::abs(std::abs(s_matrix(kMirror, i * 0.01)) - 1.0));
    CHECK(worst < 1e-12);
    for (double k = 25.0; k < 31.0; k += 0.113) {
        double ek = kMirror.eta * k;
        double ref = 4.0 / (1.0 - ek * std::sin(2 * k) + ek * ek * std::pow(std::sin(k), 2));
        CHECK(std::norm(mode_strength(kMirror, k)) == doctest::Approx(ref).epsilon(1e-13));
    }
    CHECK(std::abs(s_matrix(kMirror, 3 * kPi)) == doctest::Approx(1.0));
}

TEST_CASE("mirror exact field matching and jump") {
    const double k = 28.9;
    CHECK(std::abs(exact_field(kMirror, k, -1.0)) < 1e-15);
    cplx f0 = exact_field(kMirror, k, 0.0);
    CHECK(std::abs(exact_field(kMirror, k, -1e-300) - f0) < 1e-12);
    for (double eta : {0.0, 0.0453, 0.3, 2.0})
        for (double kk : {1.1, 9.7, 28.9}) {
            MirrorParams p{eta, 1.0};
            cplx jump = exact_field_dx(p, kk, 0.0, Side::Exterior) - exact_field_dx(p, kk, 0.0, Side::Interior);
            CHECK(std::abs(jump + eta * kk * kk * exact_field(p, kk, 0.0)) < 1e-10);
        }
    CHECK_THROWS_AS(exact_field(kMirror, k, -1.01), DomainError);
}

TEST_CASE("mirror cavity and channel modes") {
    CHECK(cavity_eigen_k(kMirror, 1) == doctest::Approx(kPi));
    CHECK_THROWS_AS(cavity_eigen_k(kMirror, 0), DomainError);
    for (int lam = 1; lam < 6; ++lam) CHECK(std::abs(cavity_mode(kMirror, lam, 0.0)) < 1e-13);
    auto rule = nm::gauss_legendre(20);
    double worst = 0.0;
    for (int a = 1; a <= 10; ++a)
        for (int b = a; b <= 10; ++b) {
            double v = nm::composite_gauss([&](double x) { return cavity_mode(kMirror, a, x) * cavity_mode(kMirror, b, x); },
                                           -1.0, 0.0, 8, rule);
            worst = std::max(worst, std::abs(v - (a == b ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-10);
    MirrorParams open{0.0, 1.0};
    CHECK(std::abs(channel_s(open, 4.0) - 1.0) < 1e-15);
    CHECK(std::abs(channel_mode(open, 2.0, 0.3) - std::sqrt(2 / kPi) * std::cos(0.6)) < 1e-15);
    MirrorParams unit{1.0, 1.0};
    CHECK(std::abs(channel_s(unit, 1.0) - kI) < 1e-15);
    for (double k : {0.1, 5.0, 300.0}) CHECK(std::abs(std::abs(channel_s(kMirror, k)) - 1.0) < 1e-14);
    CHECK_THROWS_AS(channel_mode(kMirror, 1.0, -0.5), DomainError);
}

TEST_CASE("mirror couplings") {
    MirrorParams open{0.0, 1.0};
    slab::SlabParams free{1.0, 1.0};
    for (int lam = 1; lam < 6; ++lam)
        CHECK(std::abs(coupling_w(open, lam, 4.4) - slab::coupling_w(free, slab::Bc::Dirichlet, lam, 4.4)) < 1e-15);
    // boundary term mu'(0-) nu(0+) / (2 sqrt(k k_lambda)) with the mirror-channel mode at 0+
    const double k = 28.9;
    for (int lam : {1, 7, 29, 40}) {
        double kl = cavity_eigen_k(kMirror, lam);
        cplx ref = cavity_mode_dx(kMirror, lam, 0.0) * channel_mode(kMirror, k, 0.0) / (2.0 * std::sqrt(k * kl));
        CHECK(std::abs(coupling_w(kMirror, lam, k) - ref) < 1e-14);
    }
    auto scaled = [](double k) { return std::abs(coupling_w(kMirror, 3, k)) * std::sqrt(k) * std::abs(1.0 - kI * 0.0453 * k); };
    CHECK(scaled(10.0) == doctest::Approx(scaled(40.0)).epsilon(1e-14));
}

TEST_CASE("mirror alpha matches overlap quadrature") {
    double worst = 0.0;
    for (int lam = 1; lam <= 40; ++lam)
        for (double k : {3.0, 12.2, 28.9, 29.5}) worst = std::max(worst, std::abs(alpha(kMirror, lam, k) - overlap_alpha(kMirror, lam, k)));
    MESSAGE("worst mirror alpha error ", worst);
    CHECK(worst < 1e-8);
    double kl = cavity_eigen_k(kMirror, 9);
    for (double d : {0.0, 1e-11, 1e-7, 1e-3})
        CHECK(std::abs(alpha(kMirror, 9, kl + d) - overlap_alpha(kMirror, 9, kl + d)) < 1e-10);
    MirrorParams open{0.0, 1.0};
    slab::SlabParams free{1.0, 1.0};
    for (int lam = 1; lam < 10; ++lam)
        CHECK(std::abs(alpha(open, lam, 7.7) - slab::alpha(free, slab::Bc::Dirichlet, lam, 7.7)) < 1e-14);
    for (int lam = 1; lam < 30; lam += 4)
        CHECK(alpha_sq(kMirror, lam, 27.0) == doctest::Approx(std::norm(alpha(kMirror, lam, 27.0))).epsilon(1e-12));
}

TEST_CASE("mirror beta kernel reproduces the exterior field") {
    const double k = 28.9, x = 0.7;
    auto b = beta_kernel(kMirror, k);
    nm::PvIntegrand g;
    g.regular = [&](double kp) { return b.pv_part(kp) * channel_mode(kMirror, kp, x); };
    g.pole = k;
    g.cutoff = std::max(20.0 * k, 300.0 / x);
    g.tail = nm::PvTail::Taper;
    g.frequency = x;
    auto pv = nm::pv_integral(g, 1e-10);
    cplx rec = b.delta_coeff * channel_mode(kMirror, k, x) + pv.value;
    CHECK(std::abs(rec - exact_field(kMirror, k, x)) < 1e-6);
}

TEST_CASE("mirror resonances") {
    auto f = [](cplx z) { return resonance_condition(kMirror, z); };
    auto res = nm::newton_complex(f, {}, cplx(28.9, -0.3), 1e-13);
    CHECK(std::abs(resonance_condition(kMirror, res.root)) < 1e-10);
    CHECK(std::abs(siegert_residual(kMirror, res.root)) < 1e-8);
    CHECK(res.root.imag() < 0.0);
    MirrorParams opaque{1e6, 1.0};
    auto r2 = nm::newton_complex([&](cplx z) { return resonance_condition(opaque, z) / (opaque.eta * z); }, {},
                                 cplx(9.3, -0.01), 1e-12);
    CHECK(std::abs(r2.root - 3 * kPi) < 1e-4);
    MirrorParams open{0.0, 1.0};
    slab::SlabParams free{1.0, 1.0};
    cplx z(4.0, -0.7);
    CHECK(std::abs(slab::siegert_residual(free, slab::Bc::Neumann, z) + kI * z * siegert_residual(open, z)) < 1e-13);
}

TEST_CASE("mirror gain") {
    MirrorParams open{0.0, 1.0};
    for (double k : {0.3, 5.0, 28.9}) CHECK(std::abs(gain_closed(open, k) - 1.0) < 1e-12);
    for (double k = 25.0; k <= 31.0; k += 0.21)
        CHECK(std::abs(ldos_cavity(kMirror, k) / ldos_free(kMirror, k) - gain_closed(kMirror, k)) < 1e-12);
    auto sum = nm::series_sum_tail([&](double lam) { return alpha_sq(kMirror, lam, 28.9); }, 2, 400, 1);
    CHECK(std::abs(sum.value - ldos_cavity(kMirror, 28.9)) < 1e-6 * ldos_cavity(kMirror, 28.9));
}

TEST_CASE("mirror channel Green function") {
    MirrorParams open{0.0, 1.0};
    slab::SlabParams free{1.0, 1.0};
    CHECK(std::abs(channel_green(open, 2.0, 0.3, 1.2) - slab::channel_green(free, slab::Bc::Dirichlet, 2.0, 0.3, 1.2)) < 1e-15);
    CHECK(std::abs(channel_green(kMirror, 2.0, 0.3, 1.2) - channel_green(kMirror, 2.0, 1.2, 0.3)) < 1e-15);
    CHECK_THROWS_AS(channel_green(kMirror, 2.0, -0.3, 1.2), DomainError);
}
