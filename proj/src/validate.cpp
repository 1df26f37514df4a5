#include "openres/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>

#include <json.hpp>

#include "openres/engine.hpp"
#include "openres/oracle_grid.hpp"
#include "openres/specfun.hpp"

#ifndef OPENRES_DATA_DIR
#define OPENRES_DATA_DIR "data"
#endif

namespace openres::validate {
namespace {

constexpr double kPi = std::numbers::pi;
using engine::Resonator;
using CheckList = std::vector<std::pair<std::string, Check>>;

const slab::SlabParams kSlab{1.5, 1.0};
const mirror::MirrorParams kMirror{0.0453, 1.0};
const disk::DiskParams kDisk{3.3, 1.0};

struct Collector {
    std::string group;
    CheckList out;

    void add(const std::string& model, const std::string& what, double measured, double tol,
             const std::string& relation = "<=", const std::string& note = {}) {
        Check c;
        c.group = group;
        c.model = model;
        c.measured = measured;
        c.tolerance = tol;
        c.relation = relation;
        c.note = note;
        out.emplace_back(group + "." + model + "." + what, c);
    }
    // runs f and records a failure entry if it throws
    void guarded(const std::string& model, const std::string& what, const std::function<void()>& f) {
        try {
            f();
        } catch (const std::exception& e) {
            add(model, what, std::numeric_limits<double>::infinity(), 0.0, "<=", e.what());
        }
    }
};

std::vector<std::unique_ptr<Resonator>> one_d_models() {
    std::vector<std::unique_ptr<Resonator>> v;
    v.push_back(engine::make_slab(kSlab, slab::Bc::Neumann));
    v.push_back(engine::make_slab(kSlab, slab::Bc::Dirichlet));
    v.push_back(engine::make_mirror(kMirror));
    return v;
}

std::string model_of(const Resonator& m) { return m.name() == "mirror" ? "mirror" : m.radial() ? "disk" : "slab"; }
std::string variant(const Resonator& m) { return m.name() == "mirror" || m.radial() ? "" : m.name().substr(5) + "_"; }

// ---- groups -------------------------------------------------------------

void run_specfun(Collector& c, const std::string& oracle_path) {
    c.guarded("specfun", "oracle_grid", [&] {
        auto recs = oracle::load_cylinder_oracle(oracle_path);
        if (recs.empty()) throw DomainError("no records in " + oracle_path);
        c.add("specfun", "oracle_grid", oracle::compare_oracle(recs).worst, 1e-11, "<=",
              std::to_string(recs.size()) + " records");
    });
    double wy = 0.0, wh = 0.0;
    for (int m : {0, 1, 3, 13, 25, 40, 59})
        for (double x : {0.1, 0.7, 1.7, 5.0, 10.5, 33.0, 64.0, 100.0}) {
            const double ref = 2.0 / (kPi * x);
            auto j = specfun::cyl_with_deriv(specfun::Cyl::J, m, x);
            auto y = specfun::cyl_with_deriv(specfun::Cyl::Y, m, x);
            auto h = specfun::cyl_with_deriv(specfun::Cyl::H1, m, x);
            wy = std::max(wy, std::abs(j.value * y.deriv - j.deriv * y.value - ref) / ref);
            wh = std::max(wh, std::abs(j.value * h.deriv - j.deriv * h.value - cplx(0.0, ref)) / ref);
        }
    for (int m : {0, 5, 13})
        for (cplx z : {cplx(10.5, -0.3), cplx(3.0, -2.0), cplx(25.0, -0.01)}) {
            const cplx ref = 2.0 / (kPi * z);
            auto j = specfun::cyl_with_deriv(specfun::Cyl::J, m, z);
            auto h = specfun::cyl_with_deriv(specfun::Cyl::H1, m, z);
            wh = std::max(wh, std::abs(j.value * h.deriv - j.deriv * h.value - cplx(0.0, 1.0) * ref) / std::abs(ref));
        }
    c.add("specfun", "wronskian_jy", wy, 1e-10);
    c.add("specfun", "wronskian_jh1", wh, 1e-10);
}

void run_unitarity(Collector& c) {
    for (auto& m : one_d_models()) {
        if (m->name() == "slab-dirichlet") continue;
        double worst = 0.0;
        for (int i = 1; i <= 10000; ++i) worst = std::max(worst, std::abs(std::abs(m->s_matrix(0, 0.01 * i)) - 1.0));
        c.add(model_of(*m), "s_modulus", worst, 1e-12);
    }
    double worst = 0.0;
    for (int m = -40; m <= 40; ++m)
        for (int i = 1; i <= 10000; ++i) worst = std::max(worst, std::abs(std::abs(disk::s_matrix(kDisk, m, 0.002 * i)) - 1.0));
    c.add("disk", "s_modulus", worst, 1e-12, "<=", "|m| <= 40");
}

void run_orthonormality(Collector& c) {
    for (auto& m : one_d_models()) {
        double worst = 0.0;
        const int f = m->first_mode_index();
        for (int a = f; a <= 20; ++a)
            for (int b = a; b <= 20; ++b)
                worst = std::max(worst, std::abs(engine::oracle_mode_overlap(*m, 0, a, b) - (a == b ? 1.0 : 0.0)));
        c.add(model_of(*m), variant(*m) + "modes", worst, 1e-10);
    }
    auto d = engine::make_disk(kDisk);
    double worst = 0.0;
    for (int m : {0, 1, 5, 13, -13, 40})
        for (int a = 1; a <= 8; ++a)
            for (int b = a; b <= 8; ++b)
                worst = std::max(worst, std::abs(engine::oracle_mode_overlap(*d, m, a, b) - (a == b ? 1.0 : 0.0)));
    c.add("disk", "modes", worst, 1e-9);
}

void run_alpha(Collector& c) {
    for (auto& m : one_d_models()) {
        double worst = 0.0;
        for (int lam = m->first_mode_index(); lam <= 30; ++lam)
            for (int i = 0; i < 8; ++i) {
                const double k = 2.0 + 3.7 * i;
                worst = std::max(worst, std::abs(m->alpha(0, lam, k) - engine::oracle_alpha(*m, 0, lam, k)));
            }
        for (int lam : {3, 12}) {
            const double kl = m->cavity_k(0, lam);
            for (double d : {0.0, 1e-10, 1e-6, 1e-3})
                worst = std::max(worst, std::abs(m->alpha(0, lam, kl + d) - engine::oracle_alpha(*m, 0, lam, kl + d)));
        }
        c.add(model_of(*m), variant(*m) + "overlap", worst, 1e-8);
    }
    auto d = engine::make_disk(kDisk);
    double worst = 0.0;
    for (int m : {0, 5, 13, -13})
        for (int lam = 1; lam <= 12; ++lam)
            for (double k : {2.0, 7.3, 10.5})
                worst = std::max(worst, std::abs(d->alpha(m, lam, k) - engine::oracle_alpha(*d, m, lam, k)));
    c.add("disk", "overlap", worst, 1e-7);
}

void audit(Collector& c, const std::string& model, const std::string& what, const engine::ResonanceSearch& s) {
    double sp = 0.0, sec = 0.0;
    for (const auto& r : s.roots) {
        sp = std::max(sp, r.s_pole_residual);
        sec = std::max(sec, r.secular_residual);
    }
    c.add(model, what + "_s_pole", sp, 1e-8);
    c.add(model, what + "_secular", sec, 1e-8);
    c.add(model, what + "_missed_roots", std::abs(s.winding - static_cast<int>(s.roots.size())), 0.0, "<=",
          std::to_string(s.roots.size()) + " roots");
}

void run_resonances(Collector& c) {
    c.guarded("slab", "ladder", [&] {
        auto m = engine::make_slab(kSlab, slab::Bc::Neumann);
        auto s = engine::find_resonances(*m, 0, {0.5, 41.9, -1.5, 0.0});
        audit(c, "slab", "ladder", s);
        if (s.roots.size() != 20) throw ToleranceError("expected 20 roots", static_cast<double>(s.roots.size()));
        double err = 0.0, spacing = 0.0, im = 0.0;
        for (int j = 0; j < 20; ++j) {
            err = std::max(err, std::abs(s.roots[j].kc - slab::analytic_resonance(kSlab, j)));
            im = std::max(im, std::abs(s.roots[j].kc.imag() - s.roots[0].kc.imag()));
            if (j > 0) spacing = std::max(spacing, std::abs((s.roots[j].kc - s.roots[j - 1].kc).real() - kPi / 1.5));
        }
        c.add("slab", "ladder_closed_form", err, 1e-10);
        c.add("slab", "ladder_spacing", spacing, 1e-10);
        c.add("slab", "ladder_imag_spread", im, 1e-10);
    });
    c.guarded("mirror", "window", [&] {
        auto m = engine::make_mirror(kMirror);
        audit(c, "mirror", "window", engine::find_resonances(*m, 0, {27.5, 30.5, -2.0, 0.0}));
    });
    c.guarded("disk", "whispering", [&] {
        auto d = engine::make_disk(kDisk);
        auto s13 = engine::find_resonances(*d, 13, {9.5, 11.5, -0.5, 0.0});
        auto s5 = engine::find_resonances(*d, 5, {9.5, 11.5, -0.5, 0.0});
        audit(c, "disk", "m13", s13);
        audit(c, "disk", "m5", s5);
        const engine::Resonance* sharp = nullptr;
        for (const auto& r : s13.roots)
            if (!sharp || std::abs(r.kc.real() - 10.5) < std::abs(sharp->kc.real() - 10.5)) sharp = &r;
        if (!sharp || s5.roots.empty()) throw ToleranceError("no resonance near kR = 10.5", 0.0);
        const engine::Resonance* broad = &s5.roots.front();
        for (const auto& r : s5.roots)
            if (std::abs(r.kc.real() - sharp->kc.real()) < std::abs(broad->kc.real() - sharp->kc.real())) broad = &r;
        c.add("disk", "width_ratio", 10.0 * std::abs(sharp->kc.imag()) / std::abs(broad->kc.imag()), 1.0, "<=",
              "10 |Im k(m=13)| / |Im k(m=5)|");
    });
}

void run_sigma(Collector& c) {
    c.guarded("slab", "fixed_point", [&] {
        auto m = engine::make_slab(kSlab, slab::Bc::Neumann);
        double worst = 0.0;
        for (int j : {0, 1, 4, 9}) {
            cplx k = engine::sigma_fixed_point(*m, j, m->sigma_seed(j));
            worst = std::max(worst, std::abs(k - slab::analytic_resonance(kSlab, j)));
        }
        c.add("slab", "fixed_point", worst, 1e-9);
    });
    c.guarded("mirror", "fixed_point", [&] {
        auto m = engine::make_mirror(kMirror);
        cplx k = engine::sigma_fixed_point(*m, 9, 9 * kPi);
        c.add("mirror", "fixed_point", std::abs(m->s_pole(0, k)), 1e-8);
    });
}

void run_gain(Collector& c) {
    for (auto& m : one_d_models()) {
        const bool mir = m->name() == "mirror";
        double worst = 0.0;
        for (int i = 0; i <= 30; ++i) {
            const double k = mir ? 26.0 + 0.1 * i : 15.0 + 0.2 * i;
            const double g = m->gain_closed(k);
            worst = std::max(worst, std::abs(engine::gain_via_alpha(*m, k) - g) / g);
        }
        c.add(model_of(*m), variant(*m) + "alpha_sum", worst, 1e-6);
    }
    auto d = engine::make_disk(kDisk);
    double worst = 0.0;
    for (int i = 0; i <= 8; ++i) {
        const double k = 8.0 + 0.5 * i;
        const double g = d->gain_closed(k);
        worst = std::max(worst, std::abs(engine::gain_via_alpha(*d, k, 500) - g) / g);
    }
    c.add("disk", "alpha_sum", worst, 1e-8);
    double sn = 0.0, mn = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double k = 0.15 * i;
        sn = std::max(sn, std::abs(slab::gain_closed({1.0, 1.0}, k) - 1.0));
        mn = std::max(mn, std::abs(mirror::gain_closed({0.0, 1.0}, k) - 1.0));
    }
    c.add("slab", "null_index", sn, 1e-12);
    c.add("mirror", "null_eta", mn, 1e-12);
    c.add("mirror", "reflectance", std::abs(std::norm(mirror::mirror_rt(kMirror, 28.9).r) - 0.300), 2e-3);
}

void run_greens(Collector& c) {
    using engine::GreenChannel;
    struct Case {
        std::string model, what;
        engine::GreenSpec spec;
        double offset;
    };
    const std::vector<Case> cases = {
        {"slab", "dirichlet", {GreenChannel::Dirichlet}, 0.0},
        {"slab", "neumann", {GreenChannel::Neumann}, 0.0},
        {"mirror", "channel", {GreenChannel::Mirror, kMirror.eta}, 0.0},
        {"disk", "m0", {GreenChannel::Disk, 0.0, kDisk, 0}, kDisk.R},
        {"disk", "m5", {GreenChannel::Disk, 0.0, kDisk, 5}, kDisk.R},
    };
    const double triples[5][3] = {{2.0, 0.3, 1.1}, {7.5, 1.7, 0.6}, {4.2, 1.25, 1.25}, {3.1, 0.0, 0.0}, {12.0, 0.45, 2.3}};
    for (const auto& cs : cases)
        c.guarded(cs.model, cs.what, [&] {
            double worst = 0.0;
            for (const auto& t : triples) {
                const double x = t[1] + cs.offset, xp = t[2] + cs.offset;
                worst = std::max(worst, std::abs(engine::greens_numeric(cs.spec, t[0], x, xp, 1e-9) -
                                                 engine::greens_closed(cs.spec, t[0], x, xp)));
            }
            c.add(cs.model, cs.what, worst, 1e-6);
        });
}

void run_bessel_sum(Collector& c) {
    double worst = 0.0;
    for (int m : {0, 1, 5, 13, 30})
        for (double x : {0.7, 3.1, 10.5, 22.0, 40.0}) {
            auto id = disk::radial_sum_identity(kDisk, m, x / (kDisk.n * kDisk.R), 500);
            worst = std::max(worst, std::abs(id.lhs - id.rhs) / std::abs(id.rhs));
        }
    c.add("disk", "zero_sum", worst, 1e-6, "<=", "500 zeros + tail, 5x5 (m, nkR)");
}

void run_bc_independence(Collector& c) {
    auto n = engine::make_slab(kSlab, slab::Bc::Neumann);
    auto d = engine::make_slab(kSlab, slab::Bc::Dirichlet);
    double worst = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double k = 15.0 + 0.1 * i;
        const double a = n->alpha_sq_sum(0, k, 400), b = d->alpha_sq_sum(0, k, 400);
        worst = std::max(worst, std::abs(a - b) / std::max(a, b));
    }
    c.add("slab", "ldos", worst, 1e-8);
}

std::vector<double> errors_over(const Resonator& m, int channel, double k, const std::vector<int>& counts, int points) {
    auto grid = engine::interior_grid(m, points);
    auto ex = engine::exact_samples(m, channel, k, grid);
    std::vector<double> e;
    for (int n : counts) e.push_back(engine::l2_error(ex, engine::reconstruct_interior(m, channel, k, {k, n}, grid)));
    return e;
}

double worst_ratio(const std::vector<double>& e) {
    double r = 0.0;
    for (std::size_t i = 1; i < e.size(); ++i) r = std::max(r, e[i] / e[i - 1]);
    return r;
}

double exterior_error(const Resonator& m, double k) {
    auto grid = engine::exterior_grid(m, 6, 1.2 * m.extent());
    auto rec = engine::reconstruct_exterior(m, k, 1e-10, grid);
    auto ex = engine::exact_samples(m, 0, k, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(rec.values[i] - ex.values[i]));
    return worst;
}

void run_reconstruction(Collector& c) {
    const std::vector<int> counts{5, 11, 25, 51};
    c.guarded("slab", "window", [&] {
        auto n = engine::make_slab(kSlab, slab::Bc::Neumann);
        auto d = engine::make_slab(kSlab, slab::Bc::Dirichlet);
        auto en = errors_over(*n, 0, 18.0, counts, 2000), ed = errors_over(*d, 0, 18.0, counts, 2000);
        c.add("slab", "neumann_11_error", en[1], 5e-2);
        c.add("slab", "neumann_25_over_11", en[2] / en[1], 1.0, "<");
        c.add("slab", "neumann_monotone", worst_ratio(en), 1.0, "<");
        c.add("slab", "dirichlet_monotone", worst_ratio(ed), 1.0, "<");
        c.add("slab", "neumann_over_dirichlet_11", en[1] / ed[1], 1.0, "<");
        c.add("slab", "neumann_exterior", exterior_error(*n, 18.0), 1e-6);
    });
    c.guarded("mirror", "window", [&] {
        auto m = engine::make_mirror(kMirror);
        c.add("mirror", "monotone", worst_ratio(errors_over(*m, 0, 28.9, counts, 2000)), 1.0, "<=");
        c.add("mirror", "exterior", exterior_error(*m, 28.9), 1e-6);
    });
    c.guarded("disk", "window", [&] {
        auto d = engine::make_disk(kDisk);
        c.add("disk", "monotone", worst_ratio(errors_over(*d, 13, 10.5, counts, 800)), 1.0, "<=");
    });
}

void run_null(Collector& c) {
    const disk::DiskParams free{1.0, 1.0};
    double s = 0.0, i2 = 0.0, g = 0.0;
    for (int m : {0, 1, 3, -7, 20, 40})
        for (double k : {0.5, 4.0, 10.5, 30.0}) {
            s = std::max(s, std::abs(disk::s_matrix(free, m, k) - 1.0));
            i2 = std::max(i2, std::abs(disk::mode_strength(free, m, k) - 2.0));
        }
    for (double k : {0.5, 4.0, 10.5}) g = std::max(g, std::abs(disk::gain_total(free, k) - 1.0));
    c.add("disk", "free_s", s, 1e-10);
    c.add("disk", "free_strength", i2, 1e-10);
    c.add("disk", "free_gain", g, 1e-10);
}

void run_tables(Collector& c) {
    const std::vector<double> grid{5.0, 9.5, 18.0, 28.9};
    for (auto& m : one_d_models()) {
        auto t = engine::hamiltonian_tables(*m, grid, {0}, 12);
        double wv = 0.0, row = 0.0;
        for (std::size_t i = 0; i < t.w.size(); ++i)
            for (std::size_t j = 0; j < grid.size(); ++j) wv = std::max(wv, std::abs(t.w[i].values[j] - t.v[i].values[j]));
        for (int lam = m->first_mode_index(); lam < m->first_mode_index() + 12; ++lam) {
            const double kl = m->cavity_k(0, lam);
            auto one = engine::hamiltonian_tables(*m, {kl}, {0}, lam - m->first_mode_index() + 1);
            row = std::max(row, std::abs(one.w.back().values[0] - m->coupling_w(0, lam, kl)));
        }
        c.add(model_of(*m), variant(*m) + "w_equals_v", wv, 0.0);
        c.add(model_of(*m), variant(*m) + "row_at_mode", row, 0.0);
    }
    double leak = 0.0;
    for (int m : {0, 3, -5})
        for (int mc : {-6, -3, 0, 3, 5})
            for (int lam : {1, 2}) {
                if (mc != m) leak = std::max(leak, std::abs(disk::coupling_w(kDisk, m, lam, mc, 9.5)));
                if (mc != -m) leak = std::max(leak, std::abs(disk::coupling_v(kDisk, m, lam, mc, 9.5)));
            }
    c.add("disk", "selection_rules", leak, 0.0);
}

struct Group {
    const char* name;
    std::function<void(Collector&, const ValidateConfig&)> run;
};

const std::vector<Group>& groups() {
    static const std::vector<Group> g = {
        {"alpha", [](Collector& c, const ValidateConfig&) { run_alpha(c); }},
        {"bc_independence", [](Collector& c, const ValidateConfig&) { run_bc_independence(c); }},
        {"bessel_sum", [](Collector& c, const ValidateConfig&) { run_bessel_sum(c); }},
        {"gain", [](Collector& c, const ValidateConfig&) { run_gain(c); }},
        {"greens", [](Collector& c, const ValidateConfig&) { run_greens(c); }},
        {"null", [](Collector& c, const ValidateConfig&) { run_null(c); }},
        {"orthonormality", [](Collector& c, const ValidateConfig&) { run_orthonormality(c); }},
        {"reconstruction", [](Collector& c, const ValidateConfig&) { run_reconstruction(c); }},
        {"resonances", [](Collector& c, const ValidateConfig&) { run_resonances(c); }},
        {"sigma", [](Collector& c, const ValidateConfig&) { run_sigma(c); }},
        {"specfun",
         [](Collector& c, const ValidateConfig& cfg) {
             run_specfun(c, cfg.oracle_grid.empty() ? default_oracle_grid() : cfg.oracle_grid);
         }},
        {"tables", [](Collector& c, const ValidateConfig&) { run_tables(c); }},
        {"unitarity", [](Collector& c, const ValidateConfig&) { run_unitarity(c); }},
    };
    return g;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return v.empty() || std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

const std::vector<std::string>& group_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& g : groups()) n.push_back(g.name);
        return n;
    }();
    return names;
}

const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names{"disk", "mirror", "slab", "specfun"};
    return names;
}

std::string default_oracle_grid() { return OPENRES_DATA_DIR "/cylinder_oracle.txt"; }

bool ValidationReport::all_passed() const { return failures() == 0; }

std::size_t ValidationReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const auto& kv) { return !kv.second.passed; }));
}

std::string ValidationReport::to_json() const {
    nlohmann::json j;
    j["tolerance_scale"] = tolerance_scale;
    j["checks_total"] = checks.size();
    j["checks_failed"] = failures();
    j["status"] = all_passed() ? "pass" : "fail";
    auto& cs = j["checks"];
    cs = nlohmann::json::object();
    for (const auto& [name, c] : checks) {
        nlohmann::json e;
        e["status"] = c.passed ? "pass" : "fail";
        e["group"] = c.group;
        e["model"] = c.model;
        if (std::isfinite(c.measured)) e["measured"] = c.measured;
        else e["measured"] = nullptr;
        e["tolerance"] = c.tolerance;
        e["relation"] = c.relation;
        if (!c.note.empty()) e["note"] = c.note;
        cs[name] = e;
    }
    return j.dump(2) + "\n";
}

ValidationReport validate_all(const ValidateConfig& cfg) {
    for (const auto& g : cfg.only)
        if (std::find(group_names().begin(), group_names().end(), g) == group_names().end())
            throw DomainError("unknown validation group '" + g + "'");
    for (const auto& m : cfg.models)
        if (std::find(model_names().begin(), model_names().end(), m) == model_names().end())
            throw DomainError("unknown model '" + m + "'");
    if (!(cfg.tolerance_scale >= 0.0)) throw DomainError("tolerance scale must be >= 0");

    std::vector<std::future<CheckList>> jobs;
    for (const auto& g : groups()) {
        if (!contains(cfg.only, g.name)) continue;
        jobs.push_back(std::async(std::launch::async, [&g, &cfg] {
            Collector c{g.name, {}};
            try {
                g.run(c, cfg);
            } catch (const std::exception& e) {
                c.add("all", "run", std::numeric_limits<double>::infinity(), 0.0, "<=", e.what());
            }
            return c.out;
        }));
    }
    ValidationReport rep;
    rep.tolerance_scale = cfg.tolerance_scale;
    for (auto& j : jobs)
        for (auto& [name, c] : j.get()) {
            if (!contains(cfg.models, c.model) && c.model != "all") continue;
            const double lim = c.tolerance * cfg.tolerance_scale;
            c.passed = std::isfinite(c.measured) && (c.relation == "<" ? c.measured < lim : c.measured <= lim);
            rep.checks[name] = c;
        }
    return rep;
}

}  // namespace openres::validate
