#include "ghk/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace ghk {

std::string kind_name(PieceKind k) {
    switch (k) {
        case PieceKind::RealLocus: return "real-locus";
        case PieceKind::Tube: return "tube";
        case PieceKind::Center: return "center";
        case PieceKind::Sing: return "sing";
    }
    return "?";
}

std::string CyclePiece::label() const {
    std::string s = kind_name(kind);
    if (kind == PieceKind::Tube) {
        s += "[" + std::to_string(ray + 1);
        if (wall >= 0) s += "." + std::to_string(wall + 1);
        s += "]";
    } else if (kind == PieceKind::Sing) {
        s += "[" + std::to_string(ray + 1) + "." + std::to_string(wall + 1) + ",k=" + std::to_string(k) + "]";
    }
    return s + "x" + std::to_string(multiplicity);
}

std::complex<double> SingLoop::at(double s) const {
    return std::polar(radius * std::exp(bump * std::sin(M_PI * s)), theta_end * s);
}

std::complex<double> SingLoop::dlog(double s) const {
    return {bump * M_PI * std::cos(M_PI * s), theta_end};
}

std::vector<Point> twisted_polytope(const ToricModel& m, const DivisorClass& L) {
    if (!L.is_toric()) throw std::invalid_argument("twisted_polytope needs a toric class");
    auto k = pl_kinks(m, L);
    std::vector<Point> v;
    Point cur{0, 0};
    for (int i = 0; i < m.n(); ++i) {
        v.push_back(cur);
        MVec d = dual_of(m.ray(i));
        cur = cur + Point{Rat(d.a), Rat(d.b)} * k[static_cast<std::size_t>(i)];
    }
    if (!(cur == Point{0, 0})) throw std::logic_error("twisted polytope does not close");
    return v;
}

Rat signed_area(const std::vector<Point>& chain) {
    Rat s = 0;
    for (std::size_t k = 0; k < chain.size(); ++k) s += rwedge(chain[k], chain[(k + 1) % chain.size()]);
    return s / 2;
}

LatticeVec adapted_partner(const LatticeVec& n) {
    // extended Euclid: n.a x + n.b y = 1, then gamma = (-y, x)
    std::int64_t r0 = n.a, r1 = n.b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    if (r0 < 0) {
        r0 = -r0;
        x0 = -x0;
        y0 = -y0;
    }
    if (r0 != 1) throw std::invalid_argument("adapted_partner: vector is not primitive");
    LatticeVec g{-y0, x0};
    if (wedge(n, g) != 1) throw std::logic_error("adapted_partner failed");
    return g;
}

SingLoop sing_loop(const ToricModel& m, const KahlerClass& w, int i, int j, int k, double t, double A,
                   const EpsChoice& eps, bool conjugate) {
    require_valid(m, w);
    if (!(t > 0 && t < 1)) throw std::invalid_argument("t must lie in (0,1)");
    const auto& cs = w.c.at(static_cast<std::size_t>(m.idx(i)));
    if (j < 0 || j >= static_cast<int>(cs.size())) throw std::invalid_argument("sing_loop: no such wall");
    if (k < 1) throw std::invalid_argument("sing_loop: k must be positive");
    SingLoop p;
    double c = to_double(cs[static_cast<std::size_t>(j)]);
    double ell = std::log(t);
    p.radius = std::exp(-c * ell);
    p.theta_end = (conjugate ? 1.0 : -1.0) * (2 * k - 1) * M_PI;
    p.k = k;
    p.A = A;
    p.bump = 0.5 * A * to_double(eps.eps_prime - eps.eps) * std::abs(ell);
    return p;
}

double default_A(const LaurentPoly& W, const LatticeVec& n_i) {
    LatticeVec g = adapted_partner(n_i);
    std::int64_t mx = 0;
    for (const auto& [n, s] : W.terms()) mx = std::max(mx, std::abs(wedge(n, g)));
    return mx == 0 ? 0.5 : 1.0 / (2.0 * static_cast<double>(mx));
}

namespace {

Point mid(const Point& a, const Point& b) { return (a + b) * Rat(1, 2); }

Rat pair_x(const Point& x, const LatticeVec& n) { return x.x * n.a + x.y * n.b; }

// midpoint of {<x, n> = h} inside the polygon
Point chord_midpoint(const Polygon& P, const LatticeVec& n, const Rat& h) {
    std::vector<Point> hits;
    std::size_t N = P.size();
    for (std::size_t k = 0; k < N; ++k) {
        const Point& a = P.vertices[k];
        const Point& b = P.vertices[(k + 1) % N];
        Rat fa = pair_x(a, n) - h, fb = pair_x(b, n) - h;
        if (fa == 0) hits.push_back(a);
        if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) hits.push_back(a + (b - a) * (fa / (fa - fb)));
    }
    if (hits.size() < 2) throw std::invalid_argument("wall line misses P(eps')");
    std::sort(hits.begin(), hits.end());
    return mid(hits.front(), hits.back());
}

}  // namespace

bool path_in_region(const PathSpec& p, const TropicalForm& beta, int ray_form, double beta_cut) {
    // beta_v - beta_i is affine along the ray, so its two ends decide
    const AffineForm& fi = beta.forms[static_cast<std::size_t>(ray_form)];
    double ep = to_double(p.eps_prime);
    double rmax = ep - beta_cut;
    for (std::size_t v = 0; v < beta.forms.size(); ++v) {
        if (static_cast<int>(v) == ray_form) continue;
        const AffineForm& fv = beta.forms[v];
        for (double r : {1e-9, rmax}) {
            double x = to_double(p.foot.x) + r * to_double(p.u.x);
            double y = to_double(p.foot.y) + r * to_double(p.u.y);
            double bi = to_double(fi.c) + x * fi.n.a + y * fi.n.b;
            double bv = to_double(fv.c) + x * fv.n.a + y * fv.n.b;
            if (!(bi < bv - ep)) return false;
        }
    }
    return true;
}

DefaultPaths default_paths(const ToricModel& m, const KahlerClass& w, const Rat& eps_prime) {
    require_valid(m, w);
    if (eps_prime <= 0) throw std::invalid_argument("eps' must be positive");
    TropicalForm beta = beta_forms(m, w);
    Polygon P = polytope(beta, eps_prime);
    DefaultPaths out;
    std::vector<Point> feet(static_cast<std::size_t>(m.n()));
    std::vector<bool> found(static_cast<std::size_t>(m.n()), false);
    for (std::size_t k = 0; k < P.size(); ++k) {
        int f = P.facets[k];
        if (f < m.n()) {
            feet[static_cast<std::size_t>(f)] = mid(P.vertices[k], P.vertices[(k + 1) % P.size()]);
            found[static_cast<std::size_t>(f)] = true;
        }
    }
    for (int i = 0; i < m.n(); ++i) {
        auto ui = static_cast<std::size_t>(i);
        if (!found[ui]) throw std::invalid_argument("facet F_" + std::to_string(i + 1) + " of P(eps') is empty");
        const LatticeVec& n = m.ray(i);
        Rat nn = Rat(n.a * n.a + n.b * n.b);
        PathSpec p;
        p.ray = i;
        p.anchor = {0, 0};
        p.foot = feet[ui];
        p.u = {Rat(-n.a) / nn, Rat(-n.b) / nn};
        p.eps_prime = eps_prime;
        out.rays.push_back(p);
    }
    for (int i = 0; i < m.n(); ++i) {
        std::vector<PathSpec> row;
        for (const auto& c : w.c[static_cast<std::size_t>(i)]) {
            PathSpec p = out.rays[static_cast<std::size_t>(i)];
            p.anchor = chord_midpoint(P, m.ray(i), -c);
            row.push_back(p);
        }
        out.walls.push_back(row);
    }
    return out;
}

MirrorCycle build_cycle(const ToricModel& m, const KahlerClass& w, const DivisorClass& L,
                        const Rat& eps_prime) {
    if (L.a.size() != static_cast<std::size_t>(m.n()) || L.b.size() != static_cast<std::size_t>(m.n()))
        throw std::invalid_argument("divisor does not match the model");
    for (int i = 0; i < m.n(); ++i)
        if (L.b[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(m.blowups[static_cast<std::size_t>(i)]))
            throw std::invalid_argument("divisor does not match the model");
    if (!L.is_integral()) throw std::invalid_argument("divisor is not integral");
    DefaultPaths paths = default_paths(m, w, eps_prime);
    MirrorCycle C;
    C.divisor = L;
    C.pieces.push_back(CyclePiece{});
    DivisorClass T = L.toric_part();
    auto kinks = pl_kinks(m, T);
    for (int i = 0; i < m.n(); ++i) {
        const Rat& k = kinks[static_cast<std::size_t>(i)];
        if (k == 0) continue;
        CyclePiece p;
        p.kind = PieceKind::Tube;
        p.multiplicity = static_cast<int>(k.get_num().get_si());
        p.ray = i;
        p.path = paths.rays[static_cast<std::size_t>(i)];
        p.circle = dual_of(m.ray(i));
        C.pieces.push_back(p);
    }
    if (T.a != DivisorClass::zero(m).a) {
        CyclePiece p;
        p.kind = PieceKind::Center;
        p.sigma = twisted_polytope(m, T);
        C.pieces.push_back(p);
    }
    for (int i = 0; i < m.n(); ++i) {
        const auto& bs = L.b[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < bs.size(); ++j) {
            int b = static_cast<int>(bs[j].get_num().get_si());
            if (b == 0) continue;
            CyclePiece p;
            p.kind = PieceKind::Tube;
            p.multiplicity = b;
            p.ray = i;
            p.wall = static_cast<int>(j);
            p.path = paths.walls[static_cast<std::size_t>(i)][j];
            p.circle = dual_of(m.ray(i));
            C.pieces.push_back(p);
            for (int k = 1; k <= std::abs(b); ++k) {
                CyclePiece s;
                s.kind = PieceKind::Sing;
                s.multiplicity = b > 0 ? 1 : -1;
                s.ray = i;
                s.wall = static_cast<int>(j);
                s.k = k;
                s.circle = dual_of(m.ray(i));
                C.pieces.push_back(s);
            }
        }
    }
    return C;
}

std::map<std::pair<int, int>, long> tube_multiplicities(const MirrorCycle& c) {
    std::map<std::pair<int, int>, long> t;
    for (const auto& p : c.pieces)
        if (p.kind == PieceKind::Tube) t[{p.ray, p.wall}] += p.multiplicity;
    std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
    return t;
}

}  // namespace ghk
