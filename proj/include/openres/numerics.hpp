#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <type_traits>
#include <vector>

#include "openres/errors.hpp"

namespace openres::numerics {

using ComplexFn = std::function<cplx(cplx)>;
using RealFn = std::function<double(double)>;

// ---- root finding -------------------------------------------------------

struct NewtonResult {
    cplx root;
    double residual;
    int iterations;
};

// df may be empty; the derivative then comes from a Cauchy-circle difference.
NewtonResult newton_complex(const ComplexFn& f, const ComplexFn& df, cplx seed, double tol);

struct SearchRegion {
    double re_min, re_max, im_min, im_max;
};

class UnresolvedRegionError : public std::runtime_error {
public:
    UnresolvedRegionError(const std::string& what, SearchRegion cell)
        : std::runtime_error(what), cell_(cell) {}
    SearchRegion cell() const { return cell_; }

private:
    SearchRegion cell_;
};

struct RootSearchOptions {
    double polish_tol = 1e-10;
    double dedupe_tol = 1e-8;
    int max_depth = 16;
};

struct RegionRoots {
    std::vector<cplx> roots;  // sorted by (Re, Im)
    int winding = 0;
};

// Argument-principle winding number of f around the rectangle boundary.
int winding_number(const ComplexFn& f, const SearchRegion& r);

RegionRoots roots_in_region(const ComplexFn& f, const SearchRegion& region, int max_roots,
                            const ComplexFn& df = {}, const RootSearchOptions& opt = {});

// ---- quadrature ---------------------------------------------------------

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 20000;
    int initial_panels = 1;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    bool converged = false;
};

namespace detail {
// Gauss-Kronrod 7/15 nodes on [-1, 1]
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

template <class F, class T>
void gk15(F& f, double a, double b, T& result, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T kr = fc * kWgk[7];
    T gr = fc * kWg[3];
    double resabs = magnitude(fc) * kWgk[7];
    std::array<T, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        double dx = h * kXgk[j];
        f1[j] = f(c - dx);
        f2[j] = f(c + dx);
        kr += (f1[j] + f2[j]) * kWgk[j];
        resabs += (magnitude(f1[j]) + magnitude(f2[j])) * kWgk[j];
        if (j % 2 == 1) gr += (f1[j] + f2[j]) * kWg[j / 2];
    }
    T mean = kr * 0.5;
    double resasc = magnitude(fc - mean) * kWgk[7];
    for (int j = 0; j < 7; ++j)
        resasc += (magnitude(f1[j] - mean) + magnitude(f2[j] - mean)) * kWgk[j];
    result = kr * h;
    err = magnitude((kr - gr) * h);
    resasc *= std::abs(h);
    resabs *= std::abs(h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = 50.0 * 2.220446049250313e-16;
    if (resabs > 1e-290 / eps) err = std::max(eps * resabs, err);
}
}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) on [a, b].
template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& opt = {})
    -> QuadResult<std::decay_t<std::invoke_result_t<F&, double>>> {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    struct Piece {
        double a, b;
        T value;
        double err;
    };
    auto cmp = [](const Piece& x, const Piece& y) {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;
    };
    std::priority_queue<Piece, std::vector<Piece>, decltype(cmp)> heap(cmp);
    QuadResult<T> out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    const int np = std::max(1, opt.initial_panels);
    T total{};
    double total_err = 0.0;
    for (int i = 0; i < np; ++i) {
        double lo = a + (b - a) * i / np;
        double hi = (i + 1 == np) ? b : a + (b - a) * (i + 1) / np;
        Piece p{lo, hi, T{}, 0.0};
        detail::gk15(f, lo, hi, p.value, p.err);
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }
    int count = np;
    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total)); };
    while (total_err > target() && count < opt.max_intervals) {
        Piece p = heap.top();
        heap.pop();
        double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) {
            heap.push(p);
            break;
        }
        Piece l{p.a, mid, T{}, 0.0}, r{mid, p.b, T{}, 0.0};
        detail::gk15(f, l.a, l.b, l.value, l.err);
        detail::gk15(f, r.a, r.b, r.value, r.err);
        total += l.value + r.value - p.value;
        total_err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        ++count;
    }
    // re-sum in position order so the result does not depend on refinement history
    std::vector<Piece> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    T sum{};
    double err = 0.0;
    for (const auto& p : all) {
        sum += p.value;
        err += p.err;
    }
    out.value = sum;
    out.error = err;
    out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(sum));
    return out;
}

// Integral over [a, inf) through k = a / t.
template <class F>
auto integrate_to_infinity(F&& f, double a, const QuadOptions& opt = {}) {
    if (!(a > 0.0)) throw DomainError("integrate_to_infinity needs a > 0");
    auto g = [&](double t) { return f(a / t) * (a / (t * t)); };
    return integrate(g, 0.0, 1.0, opt);
}

struct GaussRule {
    std::vector<double> nodes, weights;  // on [-1, 1]
};
GaussRule gauss_legendre(int n);

// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
template <class F>
auto composite_gauss(F&& f, double a, double b, int panels, const GaussRule& rule) {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    T sum{};
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        T part{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            part += f(c + 0.5 * h * rule.nodes[i]) * rule.weights[i];
        sum += part * (0.5 * h);
    }
    return sum;
}

// ---- principal value ----------------------------------------------------

enum class PvTail {
    None,       // integrate [lower, cutoff] only
    Algebraic,  // add the [cutoff, inf) tail by the 1/t map (non-oscillatory integrands)
    Taper,      // smooth window from cutoff to 2*cutoff (oscillatory integrands)
};

// PV integral of regular(k') / (k'^2 - pole^2) over [lower, cutoff] (+ tail).
struct PvIntegrand {
    std::function<cplx(double)> regular;
    double pole = 1.0;
    double lower = 0.0;
    double cutoff = 0.0;
    PvTail tail = PvTail::None;
    // largest oscillation frequency of `regular`, used for the initial panelling
    double frequency = 0.0;
};

struct PvResult {
    cplx value;
    double error;
};

PvResult pv_integral(const PvIntegrand& g, double quad_tol);

// C-infinity step: 1 for t <= 1, 0 for t >= 2.
double smooth_taper(double t);

// ---- series -------------------------------------------------------------

struct SeriesResult {
    double value;
    double error;
};

// sum_{lambda=first}^{inf} term(lambda), term ~ c / lambda^p, with the tail beyond
// lambda_max from Euler-Maclaurin. term must accept real lambda beyond lambda_max.
SeriesResult series_sum_tail(const RealFn& term, int tail_order, long lambda_max, long first = 0);

// Compensated (Neumaier) running sum.
class KahanSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
        else comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0, comp_ = 0.0;
};

}  // namespace openres::numerics
