#include "openres/numerics.hpp"

#include <numbers>
#include <string>

namespace openres::numerics {
namespace {

constexpr double kPi = std::numbers::pi;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx circle_derivative(const ComplexFn& f, cplx z) {
    constexpr int n = 8;
    const double h = 1e-4 * std::max(1.0, std::abs(z));
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
        cplx w = std::polar(1.0, 2.0 * kPi * j / n);
        acc += f(z + h * w) / w;
    }
    return acc / (n * h);
}

}  // namespace

NewtonResult newton_complex(const ComplexFn& f, const ComplexFn& df, cplx seed, double tol) {
    cplx z = seed;
    cplx fz = f(z);
    if (!finite(fz)) throw ConvergenceError("newton: non-finite residual at seed", z, INFINITY);
    int it = 0;
    while (it < 60 && std::abs(fz) != 0.0) {
        ++it;
        cplx d = df ? df(z) : circle_derivative(f, z);
        if (d == 0.0 || !finite(d)) break;
        cplx step = fz / d;
        cplx zn = z - step;
        cplx fn = f(zn);
        if (std::abs(fz) > tol) {
            for (int k = 0; k < 8 && (!finite(fn) || std::abs(fn) > std::abs(fz)); ++k) {
                step *= 0.5;
                zn = z - step;
                fn = f(zn);
            }
        }
        if (!finite(fn)) break;
        z = zn;
        fz = fn;
        if (std::abs(fz) <= tol && std::abs(step) <= 4e-16 * std::max(1.0, std::abs(z))) break;
    }
    double res = std::abs(fz);
    if (!(res <= tol))
        throw ConvergenceError("newton: no convergence after " + std::to_string(it) + " steps", z,
                               res);
    return {z, res, it};
}

// ---- winding numbers ----------------------------------------------------

namespace {

class BoundaryHit : public std::runtime_error {
public:
    BoundaryHit() : std::runtime_error("root on or near the contour") {}
};

cplx eval_checked(const ComplexFn& f, cplx z) {
    cplx v = f(z);
    if (v == 0.0 || !finite(v)) throw BoundaryHit();
    return v;
}

double segment_phase(const ComplexFn& f, cplx z0, cplx f0, cplx z1, cplx f1, int depth) {
    double d = std::arg(f1 / f0);
    if (std::abs(d) < kPi / 4.0) return d;
    if (depth > 48) throw BoundaryHit();
    cplx zm = 0.5 * (z0 + z1);
    cplx fm = eval_checked(f, zm);
    return segment_phase(f, z0, f0, zm, fm, depth + 1) + segment_phase(f, zm, fm, z1, f1, depth + 1);
}

int winding_impl(const ComplexFn& f, const SearchRegion& r) {
    const cplx corners[4] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max},
                             {r.re_min, r.im_max}};
    constexpr int per_edge = 32;
    double total = 0.0;
    cplx zprev = corners[0];
    cplx fprev = eval_checked(f, zprev);
    const cplx f_first = fprev;
    for (int e = 0; e < 4; ++e) {
        cplx a = corners[e], b = corners[(e + 1) % 4];
        for (int i = 1; i <= per_edge; ++i) {
            cplx z = (i == per_edge) ? b : a + (b - a) * (double(i) / per_edge);
            cplx fz = (e == 3 && i == per_edge) ? f_first : eval_checked(f, z);
            total += segment_phase(f, zprev, fprev, z, fz, 0);
            zprev = z;
            fprev = fz;
        }
    }
    double w = total / (2.0 * kPi);
    return static_cast<int>(std::lround(w));
}

std::string describe(const SearchRegion& r) {
    return "[" + std::to_string(r.re_min) + ", " + std::to_string(r.re_max) + "] x [" +
           std::to_string(r.im_min) + ", " + std::to_string(r.im_max) + "]";
}

struct Search {
    const ComplexFn& f;
    const ComplexFn& df;
    const RootSearchOptions& opt;
    std::vector<cplx> roots;

    bool inside(const SearchRegion& c, cplx z) const {
        double mr = 1e-9 * (c.re_max - c.re_min), mi = 1e-9 * (c.im_max - c.im_min);
        return z.real() >= c.re_min - mr && z.real() <= c.re_max + mr && z.imag() >= c.im_min - mi &&
               z.imag() <= c.im_max + mi;
    }

    bool try_newton(const SearchRegion& c, cplx seed) {
        try {
            auto res = newton_complex(f, df, seed, opt.polish_tol);
            if (inside(c, res.root)) {
                roots.push_back(res.root);
                return true;
            }
        } catch (const ConvergenceError&) {
        }
        return false;
    }

    void process(const SearchRegion& c, int w, int depth) {
        if (w == 0) return;
        if (w < 0)
            throw UnresolvedRegionError("negative winding number (pole inside) in " + describe(c), c);
        if (w == 1) {
            cplx centre(0.5 * (c.re_min + c.re_max), 0.5 * (c.im_min + c.im_max));
            if (try_newton(c, centre)) return;
            if (depth >= opt.max_depth) {
                double dr = 0.25 * (c.re_max - c.re_min), di = 0.25 * (c.im_max - c.im_min);
                for (cplx off : {cplx(-dr, -di), cplx(dr, -di), cplx(-dr, di), cplx(dr, di)})
                    if (try_newton(c, centre + off)) return;
                throw UnresolvedRegionError("Newton polish failed in " + describe(c), c);
            }
        }
        if (depth >= opt.max_depth)
            throw UnresolvedRegionError("winding " + std::to_string(w) + " unresolved in " + describe(c),
                                        c);
        static constexpr double fractions[] = {0.5137, 0.4629, 0.5581, 0.4213};
        for (double s : fractions) {
            double xr = c.re_min + s * (c.re_max - c.re_min);
            double yi = c.im_min + (1.0 - s) * (c.im_max - c.im_min);
            SearchRegion kids[4] = {{c.re_min, xr, c.im_min, yi},
                                    {c.re_min, xr, yi, c.im_max},
                                    {xr, c.re_max, c.im_min, yi},
                                    {xr, c.re_max, yi, c.im_max}};
            int ws[4];
            try {
                for (int i = 0; i < 4; ++i) ws[i] = winding_impl(f, kids[i]);
            } catch (const BoundaryHit&) {
                continue;
            }
            if (ws[0] + ws[1] + ws[2] + ws[3] != w) continue;
            for (int i = 0; i < 4; ++i) process(kids[i], ws[i], depth + 1);
            return;
        }
        throw UnresolvedRegionError("could not subdivide " + describe(c), c);
    }
};

}  // namespace

int winding_number(const ComplexFn& f, const SearchRegion& r) {
    if (!(r.re_min < r.re_max && r.im_min < r.im_max)) throw DomainError("degenerate search region");
    try {
        return winding_impl(f, r);
    } catch (const BoundaryHit&) {
        throw UnresolvedRegionError("root on the boundary of " + describe(r) + "; perturb the region", r);
    }
}

RegionRoots roots_in_region(const ComplexFn& f, const SearchRegion& region, int max_roots,
                            const ComplexFn& df, const RootSearchOptions& opt) {
    int w = winding_number(f, region);
    if (w > max_roots)
        throw UnresolvedRegionError(
            "region holds " + std::to_string(w) + " roots, more than max_roots", region);
    Search s{f, df, opt, {}};
    s.process(region, w, 0);
    auto& rs = s.roots;
    std::sort(rs.begin(), rs.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<cplx> uniq;
    for (cplx z : rs) {
        bool dup = false;
        for (cplx u : uniq)
            if (std::abs(u - z) <= opt.dedupe_tol) dup = true;
        if (!dup) uniq.push_back(z);
    }
    if (static_cast<int>(uniq.size()) != w)
        throw UnresolvedRegionError("winding number " + std::to_string(w) + " but " +
                                        std::to_string(uniq.size()) + " distinct roots",
                                    region);
    return {uniq, w};
}

// ---- Gauss-Legendre -----------------------------------------------------

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n >= 1");
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2) r.nodes[n / 2] = 0.0;
    return r;
}

// ---- principal value ----------------------------------------------------

double smooth_taper(double t) {
    if (t <= 1.0) return 1.0;
    if (t >= 2.0) return 0.0;
    double s = t - 1.0;
    double e1 = std::exp(-1.0 / s), e2 = std::exp(-1.0 / (1.0 - s));
    return e2 / (e1 + e2);
}

PvResult pv_integral(const PvIntegrand& g, double quad_tol) {
    const double k = g.pole, a = g.lower;
    const double upper = g.tail == PvTail::Taper ? 2.0 * g.cutoff : g.cutoff;
    if (!(k > a && k < g.cutoff)) throw DomainError("pv_integral: pole must lie inside (lower, cutoff)");
    if (!(quad_tol > 0.0)) throw DomainError("pv_integral: quad_tol must be positive");
    const cplx gk = g.regular(k);
    const bool taper = g.tail == PvTail::Taper;
    auto h = [&](double x) -> cplx {
        cplx gx = g.regular(x);
        if (taper) gx *= smooth_taper(x / g.cutoff);
        double den = (x - k) * (x + k);
        if (den == 0.0) return 0.0;
        return (gx - gk) / den;
    };
    auto panels = [&](double lo, double hi) {
        int n = 1;
        if (g.frequency > 0.0) n = static_cast<int>(std::ceil((hi - lo) * g.frequency / kPi)) + 1;
        return n;
    };
    QuadOptions opt;
    opt.abs_tol = 0.2 * quad_tol;
    opt.rel_tol = 0.0;
    opt.max_intervals = 400000;
    opt.initial_panels = panels(a, k);
    auto left = integrate(h, a, k, opt);
    opt.initial_panels = panels(k, upper);
    auto right = integrate(h, k, upper, opt);
    double kern = std::log(std::abs((upper - k) / (upper + k)));
    if (a > 0.0) kern -= std::log(std::abs((a - k) / (a + k)));
    kern /= 2.0 * k;
    cplx value = left.value + right.value + gk * kern;
    double err = left.error + right.error;
    bool ok = left.converged && right.converged;
    if (g.tail == PvTail::Algebraic) {
        QuadOptions to;
        to.abs_tol = 0.2 * quad_tol;
        to.rel_tol = 0.0;
        to.max_intervals = 20000;
        auto tail = integrate_to_infinity(
            [&](double x) -> cplx { return g.regular(x) / ((x - k) * (x + k)); }, g.cutoff, to);
        value += tail.value;
        err += tail.error;
        ok = ok && tail.converged;
    }
    if (!ok || err > quad_tol)
        throw ToleranceError("pv_integral: tolerance not met, estimate " + std::to_string(err), err);
    return {value, err};
}

// ---- series -------------------------------------------------------------

SeriesResult series_sum_tail(const RealFn& term, int tail_order, long lambda_max, long first) {
    if (tail_order < 2) throw DomainError("series_sum_tail: tail order must be >= 2");
    if (lambda_max < first) throw DomainError("series_sum_tail: lambda_max < first");
    KahanSum s;
    for (long l = first; l <= lambda_max; ++l) s.add(term(static_cast<double>(l)));
    const double a = static_cast<double>(lambda_max + 1);
    const double p = tail_order;
    QuadOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-14;
    opt.max_intervals = 2000;
    auto mapped = [&](double u) {
        double lam = a * std::pow(u, -1.0 / (p - 1.0));
        return term(lam) * (a / (p - 1.0)) * std::pow(u, -p / (p - 1.0));
    };
    auto integral = integrate(mapped, 0.0, 1.0, opt);
    const double h = std::min(0.25, a / 8.0);
    double t0 = term(a);
    double tp1 = term(a + h), tm1 = term(a - h), tp2 = term(a + 2 * h), tm2 = term(a - 2 * h);
    double tp3 = term(a + 3 * h), tm3 = term(a - 3 * h);
    double d1 = (tm2 - 8 * tm1 + 8 * tp1 - tp2) / (12 * h);
    double d3 = (-tp3 + 8 * tp2 - 13 * tp1 + 13 * tm1 - 8 * tm2 + tm3) / (8 * h * h * h);
    double d5 = (tp3 - 4 * tp2 + 5 * tp1 - 5 * tm1 + 4 * tm2 - tm3) / (2 * std::pow(h, 5));
    double tail = integral.value + 0.5 * t0 - d1 / 12.0 + d3 / 720.0;
    s.add(tail);
    return {s.value(), std::abs(d5) / 30240.0 + integral.error};
}

}  // namespace openres::numerics
