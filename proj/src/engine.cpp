#include "openres/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "openres/kernels.hpp"
#include "openres/specfun.hpp"

namespace openres::engine {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
namespace nm = numerics;

std::string fmt(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// ---- slab ---------------------------------------------------------------

class SlabModel final : public Resonator {
public:
    SlabModel(const slab::SlabParams& p, slab::Bc bc) : p_(p), bc_(bc) { p_.validate(); }

    std::string name() const override { return std::string("slab-") + slab::bc_name(bc_); }
    std::string describe() const override {
        return "n=" + fmt(p_.n) + " l=" + fmt(p_.l) + " bc=" + slab::bc_name(bc_);
    }
    double extent() const override { return p_.l; }
    double surface() const override { return 0.0; }
    bool radial() const override { return false; }
    int first_mode_index() const override { return slab::first_index(bc_); }
    double interior_index() const override { return p_.n; }

    cplx s_matrix(int, double k) const override { return slab::s_matrix(p_, k); }
    cplx mode_strength(int, double k) const override { return slab::mode_strength(p_, k); }
    cplx exact_field(int, double k, double x) const override { return slab::exact_field(p_, k, x); }
    double cavity_k(int, int lambda) const override { return slab::cavity_eigen_k(p_, bc_, lambda); }
    double cavity_mode(int, int lambda, double x) const override { return slab::cavity_mode(p_, bc_, lambda, x); }
    cplx channel_mode(int, double k, double x) const override { return slab::channel_mode(p_, bc_, k, x); }
    cplx coupling_w(int, int lambda, double k) const override { return slab::coupling_w(p_, bc_, lambda, k); }
    cplx coupling_v(int, int lambda, double k) const override { return slab::coupling_v(p_, bc_, lambda, k); }
    cplx alpha(int, int lambda, double k) const override { return slab::alpha(p_, bc_, lambda, k); }
    double alpha_sq_sum(int, double k, int lambda_max) const override {
        int order = bc_ == slab::Bc::Neumann ? 4 : 2;
        return nm::series_sum_tail([&](double lam) { return slab::alpha_sq(p_, bc_, lam, k); }, order,
                                   lambda_max, first_mode_index())
            .value;
    }
    std::optional<BetaKernel> beta(double k) const override { return slab::beta_kernel(p_, bc_, k); }
    cplx secular(int, cplx k) const override { return slab::resonance_condition(p_, k); }
    cplx s_pole(int, cplx k) const override { return slab::s_denominator(p_, k); }
    cplx resonance_shape(int, cplx k, double x) const override { return std::sin(p_.n * k * (x + p_.l)); }
    double gain_closed(double k) const override { return slab::gain_closed(p_, k); }
    double ldos_cavity(double k) const override { return slab::ldos_cavity(p_, bc_, k); }
    double ldos_free(double k) const override { return slab::ldos_free(p_, k); }

    bool has_sigma() const override { return bc_ == slab::Bc::Neumann; }
    cplx sigma_secular(cplx sigma, cplx k, double t) const override {
        return slab::sigma_secular(p_, sigma, k, t);
    }
    double sigma_seed(int j) const override { return slab::cavity_eigen_k(p_, slab::Bc::Neumann, j); }
    double sigma_spacing() const override { return kPi / (p_.n * p_.l); }

private:
    slab::SlabParams p_;
    slab::Bc bc_;
};

// ---- mirror -------------------------------------------------------------

class MirrorModel final : public Resonator {
public:
    explicit MirrorModel(const mirror::MirrorParams& p) : p_(p) { p_.validate(); }

    std::string name() const override { return "mirror"; }
    std::string describe() const override { return "eta=" + fmt(p_.eta) + " l=" + fmt(p_.l); }
    double extent() const override { return p_.l; }
    double surface() const override { return 0.0; }
    bool radial() const override { return false; }
    int first_mode_index() const override { return 1; }
    double interior_index() const override { return 1.0; }

    cplx s_matrix(int, double k) const override { return mirror::s_matrix(p_, k); }
    cplx mode_strength(int, double k) const override { return mirror::mode_strength(p_, k); }
    cplx exact_field(int, double k, double x) const override { return mirror::exact_field(p_, k, x); }
    double cavity_k(int, int lambda) const override { return mirror::cavity_eigen_k(p_, lambda); }
    double cavity_mode(int, int lambda, double x) const override { return mirror::cavity_mode(p_, lambda, x); }
    cplx channel_mode(int, double k, double x) const override { return mirror::channel_mode(p_, k, x); }
    cplx coupling_w(int, int lambda, double k) const override { return mirror::coupling_w(p_, lambda, k); }
    cplx coupling_v(int, int lambda, double k) const override { return mirror::coupling_v(p_, lambda, k); }
    cplx alpha(int, int lambda, double k) const override { return mirror::alpha(p_, lambda, k); }
    double alpha_sq_sum(int, double k, int lambda_max) const override {
        return nm::series_sum_tail([&](double lam) { return mirror::alpha_sq(p_, lam, k); }, 2, lambda_max, 1)
            .value;
    }
    std::optional<BetaKernel> beta(double k) const override { return mirror::beta_kernel(p_, k); }
    cplx secular(int, cplx k) const override { return mirror::resonance_condition(p_, k); }
    cplx s_pole(int, cplx k) const override { return mirror::s_denominator(p_, k); }
    cplx resonance_shape(int, cplx k, double x) const override { return std::sin(k * (x + p_.l)); }
    double gain_closed(double k) const override { return mirror::gain_closed(p_, k); }
    double ldos_cavity(double k) const override { return mirror::ldos_cavity(p_, k); }
    double ldos_free(double k) const override { return mirror::ldos_free(p_, k); }

    bool has_sigma() const override { return true; }
    cplx sigma_secular(cplx sigma, cplx k, double t) const override {
        return mirror::sigma_secular(p_, sigma, k, t);
    }
    double sigma_seed(int j) const override { return mirror::cavity_eigen_k(p_, j); }
    double sigma_spacing() const override { return kPi / p_.l; }

private:
    mirror::MirrorParams p_;
};

// ---- disk ---------------------------------------------------------------

class DiskModel final : public Resonator {
public:
    explicit DiskModel(const disk::DiskParams& p) : p_(p) { p_.validate(); }

    std::string name() const override { return "disk"; }
    std::string describe() const override { return "n=" + fmt(p_.n) + " R=" + fmt(p_.R); }
    double extent() const override { return p_.R; }
    double surface() const override { return p_.R; }
    bool radial() const override { return true; }
    std::vector<int> channels(double k) const override {
        int mm = disk::adaptive_m_max(p_, k);
        std::vector<int> out{0};
        for (int m = 1; m <= mm; ++m) {
            out.push_back(-m);
            out.push_back(m);
        }
        return out;
    }
    double threshold(int channel) const override { return disk::channel_threshold(p_, channel); }
    int first_mode_index() const override { return 1; }
    double interior_index() const override { return p_.n; }

    cplx s_matrix(int m, double k) const override { return disk::s_matrix(p_, m, k); }
    cplx mode_strength(int m, double k) const override { return disk::mode_strength(p_, m, k); }
    cplx exact_field(int m, double k, double r) const override { return disk::exact_field(p_, m, k, r); }
    double cavity_k(int m, int lambda) const override { return disk::cavity_eigen_k(p_, m, lambda); }
    double cavity_mode(int m, int lambda, double r) const override { return disk::cavity_mode(p_, m, lambda, r); }
    cplx channel_mode(int m, double k, double r) const override { return disk::channel_mode(p_, m, k, r); }
    cplx coupling_w(int m, int lambda, double k) const override { return disk::coupling_w(p_, m, lambda, m, k); }
    cplx coupling_v(int m, int lambda, double k) const override { return disk::coupling_v(p_, m, lambda, -m, k); }
    cplx alpha(int m, int lambda, double k) const override { return disk::alpha(p_, m, lambda, k); }
    double alpha_sq_sum(int m, double k, int lambda_max) const override {
        return disk::alpha_sq_sum(p_, m, k, std::max(lambda_max, 100));
    }
    std::optional<BetaKernel> beta(double) const override { return std::nullopt; }
    cplx secular(int m, cplx k) const override { return disk::boundary_residual(p_, m, k); }
    cplx s_pole(int m, cplx k) const override { return disk::s_denominator(p_, m, k); }
    cplx resonance_shape(int m, cplx k, double r) const override {
        return specfun::bessel_j(m, p_.n * k * r);
    }
    double gain_closed(double k) const override { return disk::gain_total(p_, k); }
    double ldos_cavity(double k) const override {
        return disk::ldos_disk(p_, k, disk::adaptive_m_max(p_, k));
    }
    double ldos_free(double k) const override { return disk::ldos_free(p_, k); }

private:
    disk::DiskParams p_;
};

}  // namespace

std::vector<int> Resonator::channels(double) const { return {0}; }
double Resonator::threshold(int) const { return 0.0; }
cplx Resonator::sigma_secular(cplx, cplx, double) const {
    throw DomainError(name() + ": no effective-operator secular function");
}
double Resonator::sigma_seed(int) const { throw DomainError(name() + ": no sigma branches"); }
double Resonator::sigma_spacing() const { throw DomainError(name() + ": no sigma branches"); }

std::unique_ptr<Resonator> make_slab(const slab::SlabParams& p, slab::Bc bc) {
    return std::make_unique<SlabModel>(p, bc);
}
std::unique_ptr<Resonator> make_mirror(const mirror::MirrorParams& p) { return std::make_unique<MirrorModel>(p); }
std::unique_ptr<Resonator> make_disk(const disk::DiskParams& p) { return std::make_unique<DiskModel>(p); }

// ---- reconstruction -----------------------------------------------------

std::vector<int> select_modes(const Resonator& model, int channel, const ModeWindow& w) {
    if (w.count < 1) throw DomainError("mode window must hold at least one mode");
    struct Cand {
        double dist, k;
        int lambda;
    };
    std::vector<Cand> cands;
    int above = 0;
    for (int lam = model.first_mode_index(); above < w.count; ++lam) {
        double kl = model.cavity_k(channel, lam);
        cands.push_back({std::abs(kl - w.center_k), kl, lam});
        if (kl >= w.center_k) ++above;
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.k < b.k;
    });
    std::vector<int> out;
    for (int i = 0; i < w.count && i < static_cast<int>(cands.size()); ++i) out.push_back(cands[i].lambda);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> interior_grid(const Resonator& model, int points) {
    if (points < 2) throw DomainError("grid needs at least two points");
    std::vector<double> g(points);
    const double L = model.extent();
    for (int i = 0; i < points; ++i) {
        double t = static_cast<double>(i) / points;
        g[i] = model.radial() ? L * t : -L + L * t;
    }
    return g;
}

std::vector<double> exterior_grid(const Resonator& model, int points, double span) {
    if (points < 1 || !(span > 0.0)) throw DomainError("exterior grid needs points >= 1, span > 0");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = model.surface() + span * (i + 1) / points;
    return g;
}

namespace {
FieldSamples blank(const Resonator& model, const std::vector<double>& grid) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly increasing");
    FieldSamples s;
    s.grid = grid;
    s.values.assign(grid.size(), 0.0);
    s.surface = model.surface();
    s.extent = model.extent();
    s.radial = model.radial();
    s.region = (!grid.empty() && grid.front() >= model.surface()) ? Side::Exterior : Side::Interior;
    for (double x : grid)
        if (x == model.surface()) throw DomainError("grid must exclude the separating surface");
    return s;
}
}  // namespace

FieldSamples exact_samples(const Resonator& model, int channel, double k, const std::vector<double>& grid) {
    FieldSamples s = blank(model, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) s.values[i] = model.exact_field(channel, k, grid[i]);
    return s;
}

FieldSamples reconstruct_interior(const Resonator& model, int channel, double k, const ModeWindow& w,
                                  const std::vector<double>& grid) {
    FieldSamples s = blank(model, grid);
    for (double x : grid)
        if (x > model.surface()) throw DomainError("interior reconstruction grid leaves the cavity");
    const auto modes = select_modes(model, channel, w);
    const std::size_t rows = grid.size(), cols = modes.size();
    std::vector<double> basis(rows * cols);
    std::vector<cplx> coeff(cols);
    const double n = model.interior_index();
    for (std::size_t j = 0; j < cols; ++j) coeff[j] = model.alpha(channel, modes[j], k);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) basis[i * cols + j] = model.cavity_mode(channel, modes[j], grid[i]) / n;
    kernels::real_matvec(basis.data(), rows, cols, coeff.data(), s.values.data());
    return s;
}

FieldSamples reconstruct_exterior(const Resonator& model, double k, double quad_tol, const std::vector<double>& grid) {
    auto b = model.beta(k);
    if (!b) throw DomainError(model.name() + ": exterior reconstruction needs a beta kernel");
    FieldSamples s = blank(model, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        if (!(x > model.surface())) throw DomainError("exterior reconstruction grid enters the cavity");
        nm::PvIntegrand g;
        g.regular = [&](double kp) { return b->pv_part(kp) * model.channel_mode(0, kp, x); };
        g.pole = k;
        g.cutoff = std::max(20.0 * k, 300.0 / x);
        g.tail = nm::PvTail::Taper;
        g.frequency = x;
        auto pv = nm::pv_integral(g, quad_tol);
        s.values[i] = b->delta_coeff * model.channel_mode(0, k, x) + pv.value;
    }
    return s;
}

double l2_error(const FieldSamples& a, const FieldSamples& b, double exclusion) {
    if (a.grid != b.grid || a.values.size() != b.values.size() || a.values.size() != a.grid.size())
        throw DomainError("l2_error: grids differ");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < a.grid.size(); ++i)
        if (std::abs(a.grid[i] - a.surface) >= exclusion * a.extent) keep.push_back(i);
    if (keep.size() < 2) throw DomainError("l2_error: exclusion layer removes the whole grid");
    const std::size_t n = keep.size();
    std::vector<double> w(n);
    std::vector<cplx> va(n), vb(n), zero(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double lo = a.grid[keep[j > 0 ? j - 1 : j]], hi = a.grid[keep[j + 1 < n ? j + 1 : j]];
        w[j] = 0.5 * (hi - lo);
        if (a.radial) w[j] *= std::abs(a.grid[keep[j]]);
        va[j] = a.values[keep[j]];
        vb[j] = b.values[keep[j]];
    }
    const double den = kernels::weighted_diff_norm_sq(w.data(), va.data(), zero.data(), n);
    if (!(den > 0.0)) throw DomainError("l2_error: reference field vanishes");
    return std::sqrt(kernels::weighted_diff_norm_sq(w.data(), va.data(), vb.data(), n) / den);
}

// ---- resonances ---------------------------------------------------------

ResonanceSearch find_resonances(const Resonator& model, int channel, const nm::SearchRegion& region, int max_roots) {
    if (region.im_max > 0.0) throw DomainError("resonance search region must lie in the lower half-plane");
    auto f = [&](cplx z) { return model.s_pole(channel, z); };
    auto rr = nm::roots_in_region(f, region, max_roots);
    ResonanceSearch out;
    out.winding = rr.winding;
    for (cplx z : rr.roots)
        out.roots.push_back({z, std::abs(model.secular(channel, z)), std::abs(model.s_pole(channel, z)), channel});
    out.audit_ok = static_cast<int>(out.roots.size()) == out.winding;
    return out;
}

namespace {
cplx solve_sigma(const Resonator& model, cplx seed, cplx k, double t) {
    const double scale = std::max(1.0, std::abs(k));
    auto f = [&](cplx s) { return model.sigma_secular(s, k, t) / scale; };
    return nm::newton_complex(f, {}, seed, 1e-14).root;
}
}  // namespace

cplx sigma_eigenvalue(const Resonator& model, int j, cplx k) {
    if (!model.has_sigma()) throw DomainError(model.name() + ": no sigma branches");
    const double limit = 0.25 * model.sigma_spacing();
    cplx sigma = model.sigma_seed(j);
    double t = 0.0, dt = 1.0 / 32.0;
    while (t < 1.0) {
        double tn = std::min(1.0, t + dt);
        cplx next;
        bool ok = true;
        try {
            next = solve_sigma(model, sigma, k, tn);
        } catch (const ConvergenceError&) {
            ok = false;
        }
        if (ok && std::abs(next - sigma) <= limit) {
            sigma = next;
            t = tn;
            dt = std::min(2.0 * dt, 1.0 / 8.0);
            continue;
        }
        dt *= 0.5;
        if (dt < 1.0 / 65536.0)
            throw BranchJumpError(model.name() + ": sigma branch " + std::to_string(j) + " jumps near t = " + fmt(t));
    }
    return sigma;
}

cplx sigma_fixed_point(const Resonator& model, int j, double k_real, double tol) {
    auto g = [&](cplx k) { return sigma_eigenvalue(model, j, k) - k; };
    cplx k0 = k_real, k1 = sigma_eigenvalue(model, j, k_real);
    cplx g0 = g(k0), g1 = g(k1);
    for (int it = 0; it < 60; ++it) {
        if (std::abs(g1) < tol * std::max(1.0, std::abs(k1))) return k1;
        cplx d = g1 - g0;
        if (d == 0.0) break;
        cplx k2 = k1 - g1 * (k1 - k0) / d;
        k0 = k1;
        g0 = g1;
        k1 = k2;
        g1 = g(k1);
    }
    throw ConvergenceError("sigma fixed point did not converge", k1, std::abs(g1));
}

FieldSamples resonance_eigenfunction(const Resonator& model, int channel, cplx kc, const std::vector<double>& grid) {
    FieldSamples s = blank(model, grid);
    std::size_t imax = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s.values[i] = model.resonance_shape(channel, kc, grid[i]);
        if (std::abs(s.values[i]) > std::abs(s.values[imax])) imax = i;
    }
    const cplx ref = s.values[imax];
    if (ref == 0.0) throw DomainError("resonance eigenfunction vanishes on the grid");
    for (auto& v : s.values) v /= ref;
    return s;
}

// ---- gain ---------------------------------------------------------------

double gain_via_alpha(const Resonator& model, double k, int lambda_max) {
    nm::KahanSum s;
    for (int c : model.channels(k)) s.add(model.alpha_sq_sum(c, k, lambda_max));
    return s.value() / model.ldos_free(k);
}

// ---- tables -------------------------------------------------------------

HamiltonianTables hamiltonian_tables(const Resonator& model, const std::vector<double>& k_grid,
                                     const std::vector<int>& channels, int modes_per_channel) {
    HamiltonianTables t;
    t.k_grid = k_grid;
    for (int c : channels) {
        t.thresholds.push_back(model.threshold(c));
        for (double k : k_grid)
            if (k <= model.threshold(c)) throw DomainError("table grid must lie above the channel threshold");
        const int partner = model.radial() ? -c : c;
        for (int i = 0; i < modes_per_channel; ++i) {
            const int lam = model.first_mode_index() + i;
            t.omega_lambda.push_back(model.cavity_k(c, lam));
            CouplingRow w{lam, c, c, {}}, v{lam, c, partner, {}};
            for (double k : k_grid) {
                w.values.push_back(model.coupling_w(c, lam, k));
                v.values.push_back(model.coupling_v(c, lam, k));
            }
            t.w.push_back(std::move(w));
            t.v.push_back(std::move(v));
        }
    }
    return t;
}

// ---- oracles ------------------------------------------------------------

namespace {
const nm::GaussRule& oracle_rule() {
    static const nm::GaussRule rule = nm::gauss_legendre(24);
    return rule;
}

template <class F>
auto cavity_integral(const Resonator& model, F&& f, double kmax) {
    const double L = model.extent();
    const int panels = 8 + static_cast<int>(kmax * model.interior_index() * L);
    if (model.radial())
        return 2.0 * kPi * nm::composite_gauss([&](double r) { return f(r) * r; }, 0.0, L, panels, oracle_rule());
    return nm::composite_gauss(f, -L, 0.0, panels, oracle_rule());
}
}  // namespace

cplx oracle_alpha(const Resonator& model, int channel, int lambda, double k) {
    const double n = model.interior_index();
    auto f = [&](double x) -> cplx {
        return n * model.cavity_mode(channel, lambda, x) * model.exact_field(channel, k, x);
    };
    return cavity_integral(model, f, k + model.cavity_k(channel, lambda));
}

double oracle_mode_overlap(const Resonator& model, int channel, int a, int b) {
    auto f = [&](double x) { return model.cavity_mode(channel, a, x) * model.cavity_mode(channel, b, x); };
    return cavity_integral(model, f, model.cavity_k(channel, a) + model.cavity_k(channel, b));
}

const char* green_name(GreenChannel g) {
    switch (g) {
        case GreenChannel::Dirichlet: return "dirichlet";
        case GreenChannel::Neumann: return "neumann";
        case GreenChannel::Mirror: return "mirror";
        case GreenChannel::Disk: return "disk";
    }
    return "?";
}

cplx greens_closed(const GreenSpec& g, double k, double x, double xp) {
    const slab::SlabParams unit{1.0, 1.0};
    switch (g.type) {
        // the Neumann-cavity split carries the Dirichlet channel and vice versa
        case GreenChannel::Dirichlet: return slab::channel_green(unit, slab::Bc::Neumann, k, x, xp);
        case GreenChannel::Neumann: return slab::channel_green(unit, slab::Bc::Dirichlet, k, x, xp);
        case GreenChannel::Mirror: return mirror::channel_green({g.eta, 1.0}, k, x, xp);
        case GreenChannel::Disk: return disk::channel_green(g.disk, g.m, k, x, xp);
    }
    throw DomainError("unknown Green channel");
}

namespace {
// PV of h(k') / (k'^2 - k^2) over [0, inf); h oscillates as cos(k' frequency)
cplx pv_part(const std::function<double(double)>& h, double frequency, double k, double quad_tol) {
    nm::PvIntegrand pv;
    pv.regular = [&](double kp) { return cplx(h(kp), 0.0); };
    pv.pole = k;
    if (frequency > 0.0) {
        pv.cutoff = std::max(20.0 * k, 300.0 / frequency);
        pv.tail = nm::PvTail::Taper;
        pv.frequency = frequency;
    } else {
        pv.cutoff = 20.0 * k;
        pv.tail = nm::PvTail::Algebraic;
    }
    return nm::pv_integral(pv, quad_tol).value;
}

cplx disk_spectral(const disk::DiskParams& p, int m, double k, double r, double rp, double quad_tol) {
    // below k0 the direct product avoids cancelling Hankel terms; above it the two
    // Hankel products carry one oscillation frequency each
    const double k0 = std::max((std::abs(m) + 10.0) / p.R, k);
    auto on = [k0](double kp) { return 1.0 - nm::smooth_taper(kp / k0); };
    auto full = [&](double kp) {
        return std::real(disk::channel_mode(p, m, kp, r) * std::conj(disk::channel_mode(p, m, kp, rp)));
    };
    nm::PvIntegrand low;
    low.regular = [&](double kp) { return cplx(full(kp) * (1.0 - on(kp)), 0.0); };
    low.pole = k;
    low.cutoff = 2.0 * k0;
    low.tail = nm::PvTail::None;
    low.frequency = std::max(std::abs(r - rp), r + rp - 2.0 * p.R);
    cplx total = nm::pv_integral(low, quad_tol).value;
    auto direct = [&](double kp) {
        const double s = on(kp);
        if (s == 0.0) return 0.0;
        return s * kp / (4.0 * kPi) *
               std::real(specfun::hankel1(m, kp * r) * std::conj(specfun::hankel1(m, kp * rp)));
    };
    auto scattered = [&](double kp) {
        const double s = on(kp);
        if (s == 0.0) return 0.0;
        return s * kp / (4.0 * kPi) *
               std::real(disk::channel_s(p, m, kp) * specfun::hankel1(m, kp * r) * specfun::hankel1(m, kp * rp));
    };
    total += pv_part(direct, std::abs(r - rp), k, quad_tol);
    total += pv_part(scattered, r + rp - 2.0 * p.R, k, quad_tol);
    return total;
}
}  // namespace

cplx greens_numeric(const GreenSpec& g, double k, double x, double xp, double quad_tol) {
    if (!(k > 0.0)) throw DomainError("wavenumber must be positive");
    const double a = std::abs(x - xp), b = x + xp;
    const double tol = quad_tol / 4.0;
    cplx pv = 0.0;
    double on_shell = 0.0;
    switch (g.type) {
        case GreenChannel::Dirichlet:
        case GreenChannel::Neumann: {
            if (x < 0.0 || xp < 0.0) throw DomainError("channel positions must be >= 0");
            const double sign = g.type == GreenChannel::Dirichlet ? -1.0 : 1.0;
            pv += pv_part([a](double kp) { return std::cos(kp * a) / kPi; }, a, k, tol);
            pv += pv_part([b, sign](double kp) { return sign * std::cos(kp * b) / kPi; }, b, k, tol);
            on_shell = (std::cos(k * a) + sign * std::cos(k * b)) / kPi;
            break;
        }
        case GreenChannel::Mirror: {
            if (x < 0.0 || xp < 0.0) throw DomainError("channel positions must be >= 0");
            const mirror::MirrorParams mp{g.eta, 1.0};
            auto refl = [mp, b](double kp) {
                return std::real(mirror::channel_s(mp, kp) * std::exp(kI * kp * b)) / kPi;
            };
            pv += pv_part([a](double kp) { return std::cos(kp * a) / kPi; }, a, k, tol);
            pv += pv_part(refl, b, k, tol);
            on_shell = std::cos(k * a) / kPi + refl(k);
            break;
        }
        case GreenChannel::Disk: {
            const auto& p = g.disk;
            if (x < p.R || xp < p.R) throw DomainError("disk channel positions must be >= R");
            pv = disk_spectral(p, g.m, k, x, xp, tol);
            on_shell = std::real(disk::channel_mode(p, g.m, k, x) * std::conj(disk::channel_mode(p, g.m, k, xp)));
            break;
        }
    }
    return -(pv + kI * kPi * on_shell / (2.0 * k));
}

}  // namespace openres::engine
