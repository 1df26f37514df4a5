// openres: scattering fields, mode reconstructions, resonances, gain curves and the
// validation report for the slab, mirror and disk resonators.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "openres/engine.hpp"
#include "openres/validate.hpp"

using namespace openres;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Config = std::map<std::string, std::string>;

std::string num(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string shortest(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Config read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    Config c;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(no) + ": expected key=value");
        c[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return c;
}

// FNV-1a over the canonical key=value listing
std::string config_hash(const Config& c) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [k, v] : c)
        for (char ch : k + "=" + v + "\n") {
            h ^= static_cast<unsigned char>(ch);
            h *= 1099511628211ull;
        }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct Settings {
    std::string command;
    std::string out = "-";
    Config cfg;
    std::set<std::string> used;

    bool has(const std::string& k) const { return cfg.count(k) > 0; }
    std::string str(const std::string& k, const std::string& def) {
        used.insert(k);
        auto it = cfg.find(k);
        if (it == cfg.end()) cfg[k] = def;
        return cfg[k];
    }
    double real(const std::string& k, double def) {
        const std::string s = str(k, shortest(def));
        double v = 0.0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw UsageError(k + ": not a number: " + s);
        return v;
    }
    int integer(const std::string& k, int def) {
        const std::string s = str(k, std::to_string(def));
        int v = 0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw UsageError(k + ": not an integer: " + s);
        return v;
    }
    std::vector<std::string> list(const std::string& k, const std::string& def) {
        std::vector<std::string> out;
        std::stringstream ss(str(k, def));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!trim(item).empty()) out.push_back(trim(item));
        return out;
    }
    std::vector<int> int_list(const std::string& k, const std::string& def) {
        std::vector<int> out;
        for (const auto& s : list(k, def)) {
            int v = 0;
            auto r = std::from_chars(s.data(), s.data() + s.size(), v);
            if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw UsageError(k + ": not an integer list");
            out.push_back(v);
        }
        return out;
    }
    // keys meant for other commands are dropped; anything else is an error
    void check_unused() {
        static const std::set<std::string> known{
            "model", "bc", "n", "l", "eta", "R", "m", "k", "grid", "tol", "span", "windows", "exclusion",
            "exterior_points", "re_min", "re_max", "im_min", "im_max", "m_min", "m_max", "k_min", "k_max",
            "lambda_max", "only", "models", "tolerance_scale", "oracle_grid"};
        for (auto it = cfg.begin(); it != cfg.end();) {
            if (used.count(it->first)) {
                ++it;
            } else if (known.count(it->first)) {
                it = cfg.erase(it);
            } else {
                throw UsageError("unknown setting '" + it->first + "'");
            }
        }
    }
};

struct Model {
    std::unique_ptr<engine::Resonator> res;
    std::string kind;
    int channel = 0;
};

Model make_model(Settings& s) {
    Model m;
    m.kind = s.str("model", "slab");
    if (m.kind == "slab") {
        const std::string bc = s.str("bc", "neumann");
        if (bc != "neumann" && bc != "dirichlet") throw UsageError("bc must be neumann or dirichlet");
        m.res = engine::make_slab({s.real("n", 1.5), s.real("l", 1.0)},
                                  bc == "neumann" ? slab::Bc::Neumann : slab::Bc::Dirichlet);
    } else if (m.kind == "mirror") {
        m.res = engine::make_mirror({s.real("eta", 0.0453), s.real("l", 1.0)});
    } else if (m.kind == "disk") {
        m.res = engine::make_disk({s.real("n", 3.3), s.real("R", 1.0)});
        m.channel = s.integer("m", 13);
    } else {
        throw UsageError("model must be slab, mirror or disk");
    }
    return m;
}

double default_k(const std::string& kind) { return kind == "mirror" ? 28.9 : kind == "disk" ? 10.5 : 18.0; }

std::string header(Settings& s, const Model* m, const std::string& extra) {
    s.check_unused();
    std::ostringstream os;
    os << "# openres " << s.command << "\n";
    if (m) os << "# model=" << m->res->name() << ", " << extra << ", params=" << m->res->describe() << "\n";
    os << "# config:\n";
    for (const auto& [k, v] : s.cfg) os << "#   " << k << "=" << v << "\n";
    os << "# config_hash=" << config_hash(s.cfg) << "\n";
    return os.str();
}

void emit(Settings& s, const std::string& text) {
    const std::string& out = s.out;
    if (out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
}

// ---- commands -----------------------------------------------------------

int cmd_scatter(Settings& s) {
    Model m = make_model(s);
    const double k = s.real("k", default_k(m.kind));
    const int points = s.integer("grid", 2001);
    const double span = s.real("span", 1.0);
    if (points < 2 || !(span >= 0.0) || !(k > 0.0)) throw UsageError("need grid >= 2, span >= 0, k > 0");
    const double ext = m.res->extent();
    const double lo = m.res->radial() ? 0.0 : -ext, hi = m.res->surface() + span * ext;
    std::ostringstream os;
    os << header(s, &m, "k=" + shortest(k) + (m.kind == "disk" ? ", m=" + std::to_string(m.channel) : ""));
    os << "position,re,im\n";
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        const cplx f = m.res->exact_field(m.channel, k, x);
        os << num(x) << "," << num(f.real()) << "," << num(f.imag()) << "\n";
    }
    emit(s, os.str());
    return 0;
}

int cmd_reconstruct(Settings& s) {
    Model m = make_model(s);
    const double k = s.real("k", default_k(m.kind));
    const int points = s.integer("grid", 2000);
    const auto windows = s.int_list("windows", "11,25");
    const double exclusion = s.real("exclusion", 0.02);
    const int ext_points = m.res->radial() ? 0 : s.integer("exterior_points", 0);
    const double span = ext_points > 0 ? s.real("span", 1.0) : 0.0;
    const double tol = ext_points > 0 ? s.real("tol", 1e-10) : 0.0;
    if (windows.empty()) throw UsageError("windows must list at least one mode count");

    auto grid = engine::interior_grid(*m.res, points);
    auto exact = engine::exact_samples(*m.res, m.channel, k, grid);
    std::vector<engine::FieldSamples> rec;
    for (int w : windows) rec.push_back(engine::reconstruct_interior(*m.res, m.channel, k, {k, w}, grid));

    std::ostringstream os;
    os << header(s, &m, "k=" + shortest(k) + (m.kind == "disk" ? ", m=" + std::to_string(m.channel) : ""));
    os << "position,exact_re,exact_im";
    for (int w : windows) os << ",n" << w << "_re,n" << w << "_im";
    os << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << num(grid[i]) << "," << num(exact.values[i].real()) << "," << num(exact.values[i].imag());
        for (const auto& r : rec) os << "," << num(r.values[i].real()) << "," << num(r.values[i].imag());
        os << "\n";
    }
    double ext_err = 0.0;
    if (ext_points > 0) {
        auto eg = engine::exterior_grid(*m.res, ext_points, span * m.res->extent());
        auto ee = engine::exact_samples(*m.res, 0, k, eg);
        auto er = engine::reconstruct_exterior(*m.res, k, tol, eg);
        for (std::size_t i = 0; i < eg.size(); ++i) {
            ext_err = std::max(ext_err, std::abs(ee.values[i] - er.values[i]));
            os << num(eg[i]) << "," << num(ee.values[i].real()) << "," << num(ee.values[i].imag());
            for (std::size_t w = 0; w < windows.size(); ++w)
                os << "," << num(er.values[i].real()) << "," << num(er.values[i].imag());
            os << "\n";
        }
    }
    for (std::size_t w = 0; w < windows.size(); ++w)
        os << "# l2_error window=" << windows[w] << " value=" << num(engine::l2_error(exact, rec[w], exclusion)) << "\n";
    if (ext_points > 0) os << "# exterior_max_error value=" << num(ext_err) << "\n";
    emit(s, os.str());
    return 0;
}

int cmd_resonances(Settings& s) {
    Model m = make_model(s);
    numerics::SearchRegion r;
    if (m.kind == "slab") r = {0.5, 41.9, -1.5, 0.0};
    else if (m.kind == "mirror") r = {27.5, 30.5, -2.0, 0.0};
    else r = {8.0, 12.0, -0.5, 0.0};
    r.re_min = s.real("re_min", r.re_min);
    r.re_max = s.real("re_max", r.re_max);
    r.im_min = s.real("im_min", r.im_min);
    r.im_max = s.real("im_max", r.im_max);
    std::vector<int> channels{m.channel};
    if (m.kind == "disk") {
        const int lo = s.integer("m_min", m.channel), hi = s.integer("m_max", m.channel);
        if (hi < lo) throw UsageError("m_max < m_min");
        channels.clear();
        for (int c = lo; c <= hi; ++c) channels.push_back(c);
    }
    std::ostringstream os, foot;
    os << header(s, &m, "region=[" + shortest(r.re_min) + "," + shortest(r.re_max) + "]x[" + shortest(r.im_min) + "," + shortest(r.im_max) + "]");
    os << "channel,re_k,im_k,secular_residual,s_pole_residual\n";
    bool ok = true;
    for (int c : channels) {
        engine::ResonanceSearch found;
        try {
            found = engine::find_resonances(*m.res, c, r);
        } catch (const numerics::UnresolvedRegionError& e) {
            foot << "# audit channel=" << c << " failed: " << e.what() << "\n";
            ok = false;
            continue;
        }
        for (const auto& z : found.roots)
            os << z.channel << "," << num(z.kc.real()) << "," << num(z.kc.imag()) << "," << num(z.secular_residual)
               << "," << num(z.s_pole_residual) << "\n";
        foot << "# audit channel=" << c << " winding=" << found.winding << " roots=" << found.roots.size()
             << (found.audit_ok ? " ok" : " MISMATCH") << "\n";
        ok = ok && found.audit_ok;
    }
    emit(s, os.str() + foot.str());
    return ok ? 0 : 1;
}

int cmd_gain(Settings& s) {
    Model m = make_model(s);
    double lo = 15.0, hi = 21.0;
    if (m.kind == "mirror") lo = 26.0, hi = 30.0;
    if (m.kind == "disk") lo = 8.0, hi = 12.0;
    lo = s.real("k_min", lo);
    hi = s.real("k_max", hi);
    const int points = s.integer("grid", 121);
    const int lambda_max = s.integer("lambda_max", m.kind == "disk" ? 500 : 400);
    if (!(lo > 0.0 && hi > lo) || points < 2) throw UsageError("need 0 < k_min < k_max and grid >= 2");
    std::ostringstream os;
    os << header(s, &m, "k=[" + shortest(lo) + "," + shortest(hi) + "]");
    os << "k,gain_closed,gain_alpha,rel_diff\n";
    for (int i = 0; i < points; ++i) {
        const double k = lo + (hi - lo) * i / (points - 1);
        const double g = m.res->gain_closed(k), a = engine::gain_via_alpha(*m.res, k, lambda_max);
        os << num(k) << "," << num(g) << "," << num(a) << "," << num(std::abs(a - g) / g) << "\n";
    }
    emit(s, os.str());
    return 0;
}

int cmd_validate(Settings& s) {
    validate::ValidateConfig vc;
    vc.only = s.list("only", "");
    vc.models = s.list("models", s.has("model") ? s.cfg.at("model") : "");
    s.used.insert("model");
    vc.tolerance_scale = s.real("tolerance_scale", 1.0);
    vc.oracle_grid = s.str("oracle_grid", validate::default_oracle_grid());
    s.check_unused();
    validate::ValidationReport rep;
    try {
        rep = validate::validate_all(vc);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    emit(s, rep.to_json());
    std::cerr << rep.checks.size() - rep.failures() << "/" << rep.checks.size() << " checks passed\n";
    return rep.all_passed() ? 0 : 1;
}

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

const std::vector<Flag>& common_flags() {
    static const std::vector<Flag> f = {
        {"--model", "model", "slab | mirror | disk"},
        {"--out", "out", "output file, - for stdout"},
        {"--grid", "grid", "number of grid points"},
        {"--tol", "tol", "quadrature tolerance"},
        {"--k", "k", "wavenumber (k l or k R)"},
        {"--n", "n", "refractive index"},
        {"--l", "l", "cavity length"},
        {"--eta", "eta", "mirror strength"},
        {"--R", "R", "disk radius"},
        {"--m", "m", "disk angular momentum"},
        {"--bc", "bc", "slab cavity variant: neumann | dirichlet"},
    };
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"openres: open-resonator mode expansions, resonances and gain"};
    app.require_subcommand(1);
    Config overrides;
    std::string config_file;
    std::vector<std::string> sets;

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(Settings&);
        std::vector<Flag> extra;
    };
    const std::vector<Sub> subs = {
        {"scatter", "exact scattering field on a grid", cmd_scatter, {{"--span", "span", "exterior span in units of the cavity size"}}},
        {"reconstruct", "cavity-mode reconstruction of the interior field", cmd_reconstruct,
         {{"--windows", "windows", "comma-separated mode counts"},
          {"--exterior-points", "exterior_points", "exterior samples from the channel expansion (1D)"},
          {"--span", "span", "exterior span in units of the cavity size"}}},
        {"resonances", "complex resonances in a search window", cmd_resonances,
         {{"--re-min", "re_min", ""}, {"--re-max", "re_max", ""}, {"--im-min", "im_min", ""}, {"--im-max", "im_max", ""},
          {"--m-min", "m_min", "first disk channel"}, {"--m-max", "m_max", "last disk channel"}}},
        {"gain", "cavity gain factor, closed form against the mode sum", cmd_gain,
         {{"--k-min", "k_min", ""}, {"--k-max", "k_max", ""}, {"--lambda-max", "lambda_max", "explicit modes before the tail"}}},
        {"validate", "run the invariant and oracle suite", cmd_validate,
         {{"--only", "only", "comma-separated check groups"},
          {"--tolerance-scale", "tolerance_scale", "multiply every tolerance"},
          {"--oracle-grid", "oracle_grid", "cylinder-function reference file"}}},
    };

    std::map<std::string, CLI::App*> apps;
    for (const auto& sub : subs) {
        auto* sc = app.add_subcommand(sub.name, sub.help);
        apps[sub.name] = sc;
        sc->add_option("--config", config_file, "key=value settings file");
        sc->add_option("--set", sets, "extra key=value setting");
        auto flags = common_flags();
        flags.insert(flags.end(), sub.extra.begin(), sub.extra.end());
        for (const auto& f : flags) {
            std::string key = f.key;
            sc->add_option_function<std::string>(f.name, [&overrides, key](const std::string& v) { overrides[key] = v; },
                                                 f.help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (const auto& sub : subs) {
        if (!apps[sub.name]->parsed()) continue;
        Settings s;
        s.command = sub.name;
        try {
            if (!config_file.empty()) s.cfg = read_config_file(config_file);
            for (const auto& kv : sets) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw UsageError("--set expects key=value");
                s.cfg[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
            }
            for (const auto& [k, v] : overrides) s.cfg[k] = v;
            if (auto it = s.cfg.find("out"); it != s.cfg.end()) {
                s.out = it->second;
                s.cfg.erase(it);
            }
            return sub.run(s);
        } catch (const UsageError& e) {
            std::cerr << "openres " << sub.name << ": " << e.what() << "\n";
            return 2;
        } catch (const DomainError& e) {
            std::cerr << "openres " << sub.name << ": invalid input: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "openres " << sub.name << ": numeric failure: " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}
