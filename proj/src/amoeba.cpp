#include "ghk/tropical.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ghk {

namespace {

struct Term {
    double logc, a, g1, g2;
};

// W_t on the positive locus: sum c t^(a + <x,g>), handled in log form
struct PositiveW {
    std::vector<Term> terms;
    double ell;  // log t

    PositiveW(const LaurentPoly& W, double t) : ell(std::log(t)) {
        if (!(t > 0 && t < 1)) throw std::invalid_argument("t must lie in (0,1)");
        for (const auto& [n, s] : W.terms())
            for (const auto& [e, c] : s.terms()) {
                if (c <= 0) throw std::invalid_argument("W has a non-positive coefficient");
                terms.push_back({std::log(to_double(c)), to_double(e), double(n.a), double(n.b)});
            }
        if (terms.empty()) throw std::invalid_argument("W is zero");
    }

    double operator()(double x1, double x2) const {
        double mx = -std::numeric_limits<double>::infinity();
        for (const auto& k : terms) mx = std::max(mx, k.logc + ell * (k.a + k.g1 * x1 + k.g2 * x2));
        double s = 0;
        for (const auto& k : terms) s += std::exp(k.logc + ell * (k.a + k.g1 * x1 + k.g2 * x2) - mx);
        return mx + std::log(s);
    }
};

struct Box {
    double x0, x1, y0, y1;
};

Box bbox(const Polygon& P, double pad) {
    Box b{1e300, -1e300, 1e300, -1e300};
    for (const auto& v : P.vertices) {
        double x = to_double(v.x), y = to_double(v.y);
        b.x0 = std::min(b.x0, x);
        b.x1 = std::max(b.x1, x);
        b.y0 = std::min(b.y0, y);
        b.y1 = std::max(b.y1, y);
    }
    double w = std::max(b.x1 - b.x0, b.y1 - b.y0) * pad + 1;
    return {b.x0 - w, b.x1 + w, b.y0 - w, b.y1 + w};
}

constexpr int kBits = std::numeric_limits<double>::digits / 2;

std::pair<double, double> minimise(const std::function<double(double)>& f, double lo, double hi) {
    auto r = boost::math::tools::brent_find_minima(f, lo, hi, kBits + 8);
    return r;
}

double root(const std::function<double(double)>& f, double lo, double hi) {
    std::uintmax_t it = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 4);
    auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
    return 0.5 * (r.first + r.second);
}

// the convex set {log W <= level} cut by vertical lines
struct Slicer {
    const PositiveW& f;
    double level;
    Box box;

    // min over x2 at fixed x1, and the minimiser
    std::pair<double, double> column_min(double x1) const {
        auto g = [&](double y) { return f(x1, y); };
        return minimise(g, box.y0, box.y1);
    }

    double width(double x1) const {
        auto [ym, v] = column_min(x1);
        if (v >= level) return 0;
        auto g = [&](double y) { return f(x1, y) - level; };
        double lo = root(g, box.y0, ym);
        double hi = root(g, ym, box.y1);
        return hi - lo;
    }
};

}  // namespace

double log_w(const LaurentPoly& W, double t, double x1, double x2) { return PositiveW(W, t)(x1, x2); }

double amoeba_volume(const LaurentPoly& W, double delta, double t) {
    PositiveW f(W, t);
    double level = delta * f.ell;
    Polygon P = polytope(tropicalize(W), Rat(0));
    Slicer s{f, level, bbox(P, 2.0)};
    auto h = [&](double x1) { return s.column_min(x1).second; };
    auto [xm, vm] = minimise(h, s.box.x0, s.box.x1);
    if (vm >= level) return 0;
    auto hl = [&](double x1) { return h(x1) - level; };
    double a = root(hl, s.box.x0, xm);
    double b = root(hl, xm, s.box.x1);
    boost::math::quadrature::tanh_sinh<double> q;
    auto wfun = [&](double x1) { return s.width(x1); };
    return q.integrate(wfun, a, b, 1e-11);
}

double corner_defect(const LaurentPoly& W, const Rat& eps, double t) {
    double ell = std::log(t);
    double vp = to_double(volume(polytope(tropicalize(W), eps)));
    return (vp - amoeba_volume(W, to_double(eps), t)) * ell * ell;
}

double hausdorff_gap(const LaurentPoly& W, const Rat& delta, double t, int directions) {
    PositiveW f(W, t);
    double level = to_double(delta) * f.ell;
    TropicalForm T = tropicalize(W);
    Polygon P = polytope(T, delta);
    Point c = centroid(P);
    double cx = to_double(c.x), cy = to_double(c.y);
    double d = to_double(delta);
    double gap = 0;
    bool inside = f(cx, cy) < level;
    for (int k = 0; k < directions; ++k) {
        double th = 2 * M_PI * k / directions;
        double ux = std::cos(th), uy = std::sin(th);
        double rp = std::numeric_limits<double>::infinity();
        for (const auto& fm : T.forms) {
            double du = ux * fm.n.a + uy * fm.n.b;
            if (du >= 0) continue;
            double val = to_double(fm.c) + cx * fm.n.a + cy * fm.n.b - d;
            rp = std::min(rp, val / -du);
        }
        double ra = 0;
        if (inside) {
            auto g = [&](double r) { return f(cx + r * ux, cy + r * uy) - level; };
            double hi = std::max(rp, 1e-3) * 2;
            while (g(hi) < 0) hi *= 2;
            ra = root(g, 0, hi);
        }
        gap = std::max(gap, std::abs(rp - ra));
    }
    return gap;
}

}  // namespace ghk
