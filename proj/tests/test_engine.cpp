#include <doctest.h>

#include <cmath>
#include <numbers>

#include "openres/engine.hpp"

using namespace openres;
using namespace openres::engine;
namespace nm = openres::numerics;

namespace {
constexpr double kPi = std::numbers::pi;
const slab::SlabParams kSlab{1.5, 1.0};
const mirror::MirrorParams kMirror{0.0453, 1.0};
const disk::DiskParams kDisk{3.3, 1.0};

double interior_error(const Resonator& m, int channel, double k, int count, int points = 2000) {
    auto grid = interior_grid(m, points);
    return l2_error(exact_samples(m, channel, k, grid), reconstruct_interior(m, channel, k, {k, count}, grid));
}
}  // namespace

TEST_CASE("mode window selection") {
    auto m = make_slab(kSlab, slab::Bc::Neumann);
    auto modes = select_modes(*m, 0, {18.0, 11});
    REQUIRE(modes.size() == 11);
    for (std::size_t i = 1; i < modes.size(); ++i) CHECK(modes[i] == modes[i - 1] + 1);
    double lo = m->cavity_k(0, modes.front()), hi = m->cavity_k(0, modes.back());
    CHECK(lo < 18.0);
    CHECK(hi > 18.0);
    CHECK(std::abs((18.0 - lo) - (hi - 18.0)) < 2 * kPi / 1.5);
    auto low = select_modes(*m, 0, {0.1, 5});
    CHECK(low.front() == 0);
    CHECK(low.back() == 4);
    CHECK_THROWS_AS(select_modes(*m, 0, {18.0, 0}), DomainError);
}

TEST_CASE("interior reconstruction converges with the window") {
    auto neu = make_slab(kSlab, slab::Bc::Neumann);
    auto dir = make_slab(kSlab, slab::Bc::Dirichlet);
    const double k = 18.0;
    std::vector<double> en, ed;
    for (int c : {5, 11, 25, 51}) {
        en.push_back(interior_error(*neu, 0, k, c));
        ed.push_back(interior_error(*dir, 0, k, c));
    }
    MESSAGE("neumann ", en[0], " ", en[1], " ", en[2], " ", en[3]);
    MESSAGE("dirichlet ", ed[0], " ", ed[1], " ", ed[2], " ", ed[3]);
    CHECK(en[1] <= 5e-2);
    for (int i = 1; i < 4; ++i) {
        CHECK(en[i] < en[i - 1]);
        CHECK(ed[i] < ed[i - 1]);
    }
    CHECK(ed[1] > en[1]);
}

TEST_CASE("exterior reconstruction") {
    auto neu = make_slab(kSlab, slab::Bc::Neumann);
    auto grid = exterior_grid(*neu, 6, 1.2);
    auto rec = reconstruct_exterior(*neu, 18.0, 1e-10, grid);
    auto ex = exact_samples(*neu, 0, 18.0, grid);
    CHECK(ex.region == Side::Exterior);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(rec.values[i] - ex.values[i]));
    CHECK(worst < 1e-6);
    auto d = make_disk(kDisk);
    CHECK_THROWS_AS(reconstruct_exterior(*d, 10.5, 1e-8, exterior_grid(*d, 3, 1.0)), DomainError);
}

TEST_CASE("disk interior reconstruction") {
    auto d = make_disk(kDisk);
    const double k = 10.5;
    double e11 = interior_error(*d, 13, k, 11, 800), e25 = interior_error(*d, 13, k, 25, 800);
    CHECK(e25 < e11);
    CHECK(e11 < 0.2);
}

TEST_CASE("l2 error edge cases") {
    auto m = make_slab(kSlab, slab::Bc::Neumann);
    auto grid = interior_grid(*m, 100);
    auto a = exact_samples(*m, 0, 5.0, grid);
    CHECK(l2_error(a, a) == 0.0);
    auto b = exact_samples(*m, 0, 5.0, interior_grid(*m, 50));
    CHECK_THROWS_AS(l2_error(a, b), DomainError);
    CHECK_THROWS_AS(l2_error(a, a, 2.0), DomainError);
}

TEST_CASE("resonance search matches the closed-form ladder") {
    auto m = make_slab(kSlab, slab::Bc::Neumann);
    auto res = find_resonances(*m, 0, {0.5, 41.9, -1.5, 0.0});
    CHECK(res.audit_ok);
    REQUIRE(res.roots.size() == 20);
    for (int j = 0; j < 20; ++j) {
        CHECK(std::abs(res.roots[j].kc - slab::analytic_resonance(kSlab, j)) < 1e-10);
        CHECK(res.roots[j].secular_residual < 1e-8);
        CHECK(res.roots[j].s_pole_residual < 1e-8);
    }
    CHECK_THROWS_AS(find_resonances(*m, 0, {0.5, 4.0, -1.0, 0.5}), DomainError);
}

TEST_CASE("resonance search for the mirror and disk") {
    auto mr = make_mirror(kMirror);
    auto rm = find_resonances(*mr, 0, {27.5, 30.5, -2.0, 0.0});
    CHECK(rm.audit_ok);
    REQUIRE(rm.roots.size() == 1);
    CHECK(rm.roots[0].secular_residual < 1e-8);
    auto d = make_disk(kDisk);
    auto rd = find_resonances(*d, 13, {10.2, 10.8, -0.1, 0.0});
    CHECK(rd.audit_ok);
    REQUIRE(rd.roots.size() == 1);
    CHECK(std::abs(rd.roots[0].kc - cplx(10.493059049293833, -0.0063553561341791144)) < 1e-9);
}

TEST_CASE("sigma branch fixed points reproduce resonances") {
    auto m = make_slab(kSlab, slab::Bc::Neumann);
    for (int j : {0, 3, 8}) {
        cplx k = sigma_fixed_point(*m, j, m->sigma_seed(j));
        CHECK(std::abs(k - slab::analytic_resonance(kSlab, j)) < 1e-9);
    }
    cplx s0 = sigma_eigenvalue(*m, 2, 5.0);
    CHECK(std::abs(m->sigma_secular(s0, 5.0, 1.0)) < 1e-10 * 5.0);
    auto mr = make_mirror(kMirror);
    cplx km = sigma_fixed_point(*mr, 9, 9 * kPi);
    CHECK(std::abs(mr->s_pole(0, km)) < 1e-8);
    auto d = make_disk(kDisk);
    CHECK_FALSE(d->has_sigma());
    CHECK_THROWS_AS(sigma_eigenvalue(*d, 1, 3.0), DomainError);
    auto dir = make_slab(kSlab, slab::Bc::Dirichlet);
    CHECK_THROWS_AS(sigma_eigenvalue(*dir, 1, 3.0), DomainError);
}

TEST_CASE("resonance eigenfunction normalization") {
    auto m = make_slab(kSlab, slab::Bc::Neumann);
    auto f = resonance_eigenfunction(*m, 0, slab::analytic_resonance(kSlab, 5), interior_grid(*m, 400));
    double mx = 0.0;
    for (auto v : f.values) mx = std::max(mx, std::abs(v));
    CHECK(mx == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(f.values.front()) < 1e-14);
}

TEST_CASE("gain via the mode expansion") {
    for (auto bc : {slab::Bc::Neumann, slab::Bc::Dirichlet}) {
        auto m = make_slab(kSlab, bc);
        for (double k : {15.0, 18.0, 20.7}) CHECK(std::abs(gain_via_alpha(*m, k) - m->gain_closed(k)) < 1e-6 * m->gain_closed(k));
    }
    auto mr = make_mirror(kMirror);
    for (double k : {27.1, 28.9}) CHECK(std::abs(gain_via_alpha(*mr, k) - mr->gain_closed(k)) < 1e-6 * mr->gain_closed(k));
    auto d = make_disk(kDisk);
    for (double k : {4.0, 10.5}) CHECK(std::abs(gain_via_alpha(*d, k, 500) - d->gain_closed(k)) < 1e-8 * d->gain_closed(k));
}

TEST_CASE("oracle closure through the common interface") {
    auto m = make_slab(kSlab, slab::Bc::Dirichlet);
    CHECK(std::abs(oracle_alpha(*m, 0, 4, 7.0) - m->alpha(0, 4, 7.0)) < 1e-10);
    CHECK(std::abs(oracle_mode_overlap(*m, 0, 3, 3) - 1.0) < 1e-12);
    auto d = make_disk(kDisk);
    CHECK(std::abs(oracle_alpha(*d, 5, 2, 7.0) - d->alpha(5, 2, 7.0)) < 1e-9);
    CHECK(std::abs(oracle_mode_overlap(*d, -5, 2, 3)) < 1e-10);
}

TEST_CASE("Hamiltonian tables") {
    auto d = make_disk(kDisk);
    auto t = hamiltonian_tables(*d, {5.0, 6.0}, {0, 2}, 3);
    CHECK(t.omega_lambda.size() == 6);
    CHECK(t.thresholds[1] == doctest::Approx(2.0 / 3.3));
    REQUIRE(t.v.size() == 6);
    CHECK(t.v[3].coupled_channel == -2);
    CHECK(t.w[3].values[1] == d->coupling_w(2, 1, 6.0));
    CHECK_THROWS_AS(hamiltonian_tables(*d, {0.1}, {2}, 1), DomainError);
}

TEST_CASE("channel Green functions match the spectral integral") {
    std::vector<GreenSpec> specs;
    specs.push_back({GreenChannel::Dirichlet});
    specs.push_back({GreenChannel::Neumann});
    specs.push_back({GreenChannel::Mirror, 0.0453});
    specs.push_back({GreenChannel::Disk, 0.0, kDisk, 0});
    specs.push_back({GreenChannel::Disk, 0.0, kDisk, 5});
    const double triples[3][3] = {{2.0, 0.3, 1.1}, {7.5, 1.7, 0.6}, {4.2, 1.25, 1.25}};
    for (const auto& g : specs)
        for (const auto& t : triples) {
            double off = g.type == GreenChannel::Disk ? 1.0 : 0.0;
            cplx c = greens_closed(g, t[0], t[1] + off, t[2] + off);
            cplx n = greens_numeric(g, t[0], t[1] + off, t[2] + off, 1e-9);
            INFO(green_name(g.type), " k=", t[0]);
            CHECK(std::abs(c - n) < 1e-6);
        }
}
