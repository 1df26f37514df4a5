// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the openres CLI binary.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "openres/engine.hpp"
#include "openres/oracle_grid.hpp"
#include "openres/specfun.hpp"

using namespace openres;
using namespace openres::engine;

namespace {

constexpr double kPi = std::numbers::pi;
const slab::SlabParams kSlab{1.5, 1.0};
const mirror::MirrorParams kMirror{0.0453, 1.0};
const disk::DiskParams kDisk{3.3, 1.0};

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.ok) ++failures;
    std::printf("%s %2d %s:%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
}

double audit_worst(const ResonanceSearch& s, Outcome& o, const std::string& label) {
    o.require(s.audit_ok, label + " winding audit");
    double worst = 0.0;
    for (const auto& r : s.roots) worst = std::max(worst, r.s_pole_residual);
    return worst;
}

std::vector<double> errors_over(const Resonator& m, int channel, double k, const std::vector<int>& counts, int points) {
    auto grid = interior_grid(m, points);
    auto ex = exact_samples(m, channel, k, grid);
    std::vector<double> e;
    for (int n : counts) e.push_back(l2_error(ex, reconstruct_interior(m, channel, k, {k, n}, grid)));
    return e;
}

bool strictly_decreasing(const std::vector<double>& e) {
    for (std::size_t i = 1; i < e.size(); ++i)
        if (!(e[i] < e[i - 1])) return false;
    return true;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    criterion(1, "slab resonance ladder", [](Outcome& o) {
        auto m = make_slab(kSlab, slab::Bc::Neumann);
        auto s = find_resonances(*m, 0, {0.5, 41.9, -1.5, 0.0});
        o.require(s.roots.size() == 20, "20 roots in window");
        const double r = (kSlab.n - 1.0) / (kSlab.n + 1.0);
        double err = 0.0, spacing = 0.0, im = 0.0;
        for (std::size_t j = 0; j < s.roots.size(); ++j) {
            const cplx closed = (cplx((2.0 * j + 1.0) * kPi / 2.0, 0.5 * std::log(r))) / (kSlab.n * kSlab.l);
            err = std::max(err, std::abs(s.roots[j].kc - closed));
            im = std::max(im, std::abs(s.roots[j].kc.imag() - s.roots[0].kc.imag()));
            if (j > 0) spacing = std::max(spacing, std::abs((s.roots[j].kc - s.roots[j - 1].kc).real() - kPi / 1.5));
        }
        o.detail << " max|k-k_closed|=" << err << " spacing dev=" << spacing << " Im spread=" << im;
        o.require(err < 1e-10, "closed form");
        o.require(spacing < 1e-10, "spacing");
        o.require(im < 1e-10, "equal imaginary parts");
    });

    criterion(2, "resonance / S-pole equivalence", [](Outcome& o) {
        auto sl = make_slab(kSlab, slab::Bc::Neumann);
        auto mr = make_mirror(kMirror);
        auto dk = make_disk(kDisk);
        double w = audit_worst(find_resonances(*sl, 0, {0.5, 41.9, -1.5, 0.0}), o, "slab");
        auto sm = find_resonances(*mr, 0, {27.5, 30.5, -2.0, 0.0});
        o.require(!sm.roots.empty(), "mirror root found");
        w = std::max(w, audit_worst(sm, o, "mirror"));
        for (int m : {5, 13}) {
            auto sd = find_resonances(*dk, m, {9.5, 11.5, -0.5, 0.0});
            o.require(!sd.roots.empty(), "disk root found");
            w = std::max(w, audit_worst(sd, o, "disk"));
        }
        o.detail << " max|denominator|=" << w;
        o.require(w < 1e-8, "denominator residual");
    });

    criterion(3, "unitarity", [](Outcome& o) {
        double ws = 0.0, wm = 0.0, wd = 0.0;
        for (int i = 1; i <= 10000; ++i) {
            ws = std::max(ws, std::abs(std::abs(slab::s_matrix(kSlab, 0.01 * i)) - 1.0));
            wm = std::max(wm, std::abs(std::abs(mirror::s_matrix(kMirror, 0.01 * i)) - 1.0));
        }
        for (int m = -40; m <= 40; ++m)
            for (int i = 1; i <= 10000; ++i) wd = std::max(wd, std::abs(std::abs(disk::s_matrix(kDisk, m, 0.002 * i)) - 1.0));
        o.detail << " slab=" << ws << " mirror=" << wm << " disk=" << wd;
        o.require(std::max({ws, wm, wd}) < 1e-12, "|S| = 1");
    });

    criterion(4, "reconstruction at n=1.5, kl=18", [](Outcome& o) {
        auto m = make_slab(kSlab, slab::Bc::Neumann);
        auto e = errors_over(*m, 0, 18.0, {11, 25}, 2000);
        auto grid = exterior_grid(*m, 6, 1.2);
        auto rec = reconstruct_exterior(*m, 18.0, 1e-10, grid);
        auto ex = exact_samples(*m, 0, 18.0, grid);
        double ext = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) ext = std::max(ext, std::abs(rec.values[i] - ex.values[i]));
        o.detail << " L2(11)=" << e[0] << " L2(25)=" << e[1] << " exterior=" << ext;
        o.require(e[0] <= 5e-2, "11-mode error");
        o.require(e[1] < e[0], "25 modes better");
        o.require(ext <= 1e-6, "exterior");
    });

    criterion(5, "Neumann vs Dirichlet cavity convergence", [](Outcome& o) {
        const std::vector<int> counts{5, 11, 25, 51};
        auto en = errors_over(*make_slab(kSlab, slab::Bc::Neumann), 0, 18.0, counts, 2000);
        auto ed = errors_over(*make_slab(kSlab, slab::Bc::Dirichlet), 0, 18.0, counts, 2000);
        o.detail << " neumann=";
        for (double v : en) o.detail << v << " ";
        o.detail << "dirichlet=";
        for (double v : ed) o.detail << v << " ";
        o.require(ed[1] > en[1], "Dirichlet 11 > Neumann 11");
        o.require(strictly_decreasing(en) && strictly_decreasing(ed), "monotone");
    });

    criterion(6, "boundary-condition independence of the LDOS", [](Outcome& o) {
        auto n = make_slab(kSlab, slab::Bc::Neumann);
        auto d = make_slab(kSlab, slab::Bc::Dirichlet);
        double worst = 0.0;
        for (int i = 0; i <= 60; ++i) {
            const double k = 15.0 + 0.1 * i;
            const double a = n->alpha_sq_sum(0, k, 400), b = d->alpha_sq_sum(0, k, 400);
            worst = std::max(worst, std::abs(a - b) / std::max(a, b));
        }
        o.detail << " max rel diff=" << worst;
        o.require(worst < 1e-8, "agreement");
    });

    criterion(7, "gain equivalence", [](Outcome& o) {
        double ws = 0.0, wm = 0.0, wd = 0.0, null = 0.0;
        auto sl = make_slab(kSlab, slab::Bc::Neumann);
        auto mr = make_mirror(kMirror);
        auto dk = make_disk(kDisk);
        for (int i = 0; i <= 30; ++i) {
            const double k = 15.0 + 0.2 * i, g = sl->gain_closed(k);
            ws = std::max(ws, std::abs(gain_via_alpha(*sl, k) - g) / g);
            const double km = 26.0 + 0.1 * i, gm = mr->gain_closed(km);
            wm = std::max(wm, std::abs(gain_via_alpha(*mr, km) - gm) / gm);
        }
        for (int i = 0; i <= 8; ++i) {
            const double k = 8.0 + 0.5 * i, g = dk->gain_closed(k);
            wd = std::max(wd, std::abs(gain_via_alpha(*dk, k, 500) - g) / g);
        }
        for (int i = 1; i <= 200; ++i) {
            null = std::max(null, std::abs(slab::gain_closed({1.0, 1.0}, 0.15 * i) - 1.0));
            null = std::max(null, std::abs(mirror::gain_closed({0.0, 1.0}, 0.15 * i) - 1.0));
        }
        const double r2 = std::norm(mirror::mirror_rt(kMirror, 28.9).r);
        o.detail << " slab=" << ws << " mirror=" << wm << " disk=" << wd << " null=" << null << " |r|^2=" << r2;
        o.require(ws < 1e-6 && wm < 1e-6, "1D alpha sums");
        o.require(wd < 1e-8, "disk alpha sum");
        o.require(null < 1e-12, "G = 1 without a resonator");
        o.require(std::abs(r2 - 0.300) < 2e-3, "|r|^2");
    });

    criterion(8, "channel Green functions", [](Outcome& o) {
        const double triples[5][3] = {{2.0, 0.3, 1.1}, {7.5, 1.7, 0.6}, {4.2, 1.25, 1.25}, {3.1, 0.0, 0.0}, {12.0, 0.45, 2.3}};
        std::vector<GreenSpec> specs = {{GreenChannel::Dirichlet},
                                        {GreenChannel::Neumann},
                                        {GreenChannel::Mirror, kMirror.eta},
                                        {GreenChannel::Disk, 0.0, kDisk, 0},
                                        {GreenChannel::Disk, 0.0, kDisk, 5}};
        for (const auto& g : specs) {
            const double off = g.type == GreenChannel::Disk ? kDisk.R : 0.0;
            double worst = 0.0;
            for (const auto& t : triples)
                worst = std::max(worst, std::abs(greens_numeric(g, t[0], t[1] + off, t[2] + off, 1e-9) -
                                                 greens_closed(g, t[0], t[1] + off, t[2] + off)));
            o.detail << " " << green_name(g.type) << (g.type == GreenChannel::Disk ? std::to_string(g.m) : "") << "=" << worst;
            o.require(worst < 1e-6, green_name(g.type));
        }
    });

    criterion(9, "Bessel-zero sum identity", [](Outcome& o) {
        double worst = 0.0;
        for (int m : {0, 1, 5, 13, 30})
            for (double x : {0.7, 3.1, 10.5, 22.0, 40.0}) {
                auto id = disk::radial_sum_identity(kDisk, m, x / kDisk.n, 500);
                worst = std::max(worst, std::abs(id.lhs - id.rhs) / std::abs(id.rhs));
            }
        o.detail << " max rel diff=" << worst;
        o.require(worst < 1e-6, "identity");
    });

    criterion(10, "disk null case and whispering-gallery widths", [](Outcome& o) {
        const disk::DiskParams free{1.0, 1.0};
        double w = 0.0;
        for (int m : {0, 1, 3, -7, 20, 40})
            for (double k : {0.5, 4.0, 10.5, 30.0}) {
                w = std::max(w, std::abs(disk::s_matrix(free, m, k) - 1.0));
                w = std::max(w, std::abs(disk::mode_strength(free, m, k) - 2.0));
            }
        for (double k : {0.5, 4.0, 10.5}) w = std::max(w, std::abs(disk::gain_total(free, k) - 1.0));
        auto d = make_disk(kDisk);
        auto s13 = find_resonances(*d, 13, {10.0, 11.0, -0.5, 0.0});
        auto s5 = find_resonances(*d, 5, {9.0, 12.0, -0.5, 0.0});
        o.require(!s13.roots.empty() && !s5.roots.empty(), "resonances found");
        const Resonance* sharp = &s13.roots.front();
        for (const auto& r : s13.roots)
            if (std::abs(r.kc.real() - 10.5) < std::abs(sharp->kc.real() - 10.5)) sharp = &r;
        const Resonance* broad = &s5.roots.front();
        for (const auto& r : s5.roots)
            if (std::abs(r.kc.real() - sharp->kc.real()) < std::abs(broad->kc.real() - sharp->kc.real())) broad = &r;
        const double ratio = broad->kc.imag() / sharp->kc.imag();
        o.detail << " null dev=" << w << " k13=" << sharp->kc.real() << sharp->kc.imag() << "i k5=" << broad->kc.real()
                 << broad->kc.imag() << "i ratio=" << ratio;
        o.require(w < 1e-10, "n = 1");
        o.require(ratio >= 10.0, "width ratio");
    });

    criterion(11, "oracle closure of coefficients and modes", [](Outcome& o) {
        double a1 = 0.0, n1 = 0.0;
        std::vector<std::unique_ptr<Resonator>> ms;
        ms.push_back(make_slab(kSlab, slab::Bc::Neumann));
        ms.push_back(make_slab(kSlab, slab::Bc::Dirichlet));
        ms.push_back(make_mirror(kMirror));
        for (const auto& m : ms) {
            const int f = m->first_mode_index();
            for (int lam = f; lam <= 30; ++lam)
                for (int i = 0; i < 8; ++i) {
                    const double k = 2.0 + 3.7 * i;
                    a1 = std::max(a1, std::abs(m->alpha(0, lam, k) - oracle_alpha(*m, 0, lam, k)));
                }
            for (int a = f; a <= 20; ++a)
                for (int b = a; b <= 20; ++b) n1 = std::max(n1, std::abs(oracle_mode_overlap(*m, 0, a, b) - (a == b)));
        }
        auto d = make_disk(kDisk);
        double a2 = 0.0, n2 = 0.0;
        for (int m : {0, 5, 13, -13})
            for (int lam = 1; lam <= 12; ++lam)
                for (double k : {2.0, 7.3, 10.5}) a2 = std::max(a2, std::abs(d->alpha(m, lam, k) - oracle_alpha(*d, m, lam, k)));
        for (int m : {0, 1, 5, 13, 40})
            for (int a = 1; a <= 8; ++a)
                for (int b = a; b <= 8; ++b) n2 = std::max(n2, std::abs(oracle_mode_overlap(*d, m, a, b) - (a == b)));
        o.detail << " alpha 1D=" << a1 << " disk=" << a2 << " orthonormality 1D=" << n1 << " disk=" << n2;
        o.require(a1 < 1e-8 && a2 < 1e-7, "alpha");
        o.require(n1 < 1e-10 && n2 < 1e-9, "orthonormality");
    });

    criterion(12, "special functions", [](Outcome& o) {
        auto recs = oracle::load_cylinder_oracle(OPENRES_DATA_DIR "/cylinder_oracle.txt");
        o.require(recs.size() > 1000, "oracle grid loaded");
        const double worst = oracle::compare_oracle(recs).worst;
        double wr = 0.0;
        for (int m : {0, 1, 3, 13, 25, 40, 59})
            for (double x : {0.1, 0.7, 1.7, 5.0, 10.5, 33.0, 64.0, 100.0}) {
                const double ref = 2.0 / (kPi * x);
                auto j = specfun::cyl_with_deriv(specfun::Cyl::J, m, x);
                auto y = specfun::cyl_with_deriv(specfun::Cyl::Y, m, x);
                wr = std::max(wr, std::abs(j.value * y.deriv - j.deriv * y.value - ref) / ref);
            }
        o.detail << " records=" << recs.size() << " max rel err=" << worst << " Wronskian=" << wr;
        o.require(worst <= 1e-11, "oracle grid");
        o.require(wr < 1e-10, "Wronskian");
    });

    criterion(13, "deterministic command output", [&cli](Outcome& o) {
        o.require(!cli.empty(), "CLI path argument");
        if (cli.empty()) return;
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "openres_acceptance";
        fs::create_directories(dir);
        const std::vector<std::pair<std::string, std::string>> runs = {
            {"validate", "validate"},
            {"scatter_slab", "scatter --model slab --grid 2001"},
            {"scatter_mirror", "scatter --model mirror --grid 2001"},
            {"scatter_disk", "scatter --model disk --m 13 --grid 2001"},
            {"reconstruct_neumann", "reconstruct --model slab --windows 5,11,25,51 --exterior-points 4"},
            {"reconstruct_dirichlet", "reconstruct --model slab --bc dirichlet --windows 11,25"},
            {"reconstruct_disk", "reconstruct --model disk --grid 800 --windows 11,25"},
            {"resonances_slab", "resonances --model slab"},
            {"resonances_mirror", "resonances --model mirror"},
            {"resonances_disk", "resonances --model disk --m-min 10 --m-max 18"},
            {"gain_slab", "gain --model slab --grid 61"},
            {"gain_mirror", "gain --model mirror --grid 41"},
            {"gain_disk", "gain --model disk --grid 17"},
        };
        int same = 0;
        for (const auto& [name, args] : runs) {
            std::string text[2];
            bool ran = true;
            for (int rep = 0; rep < 2; ++rep) {
                const fs::path out = dir / (name + "_" + std::to_string(rep) + ".out");
                const std::string cmd = "\"" + cli + "\" " + args + " --out \"" + out.string() + "\" 2>/dev/null";
                ran = ran && std::system(cmd.c_str()) == 0;
                text[rep] = slurp(out);
            }
            o.require(ran, name + " exit status");
            o.require(!text[0].empty() && text[0] == text[1], name + " identical");
            if (ran && !text[0].empty() && text[0] == text[1]) ++same;
        }
        o.detail << " " << same << "/" << runs.size() << " outputs bit-identical";
    });

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
