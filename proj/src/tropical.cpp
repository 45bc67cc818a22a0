#include "ghk/tropical.hpp"

#include <algorithm>
#include <set>

namespace ghk {

TropicalForm tropicalize(const LaurentPoly& W) {
    TropicalForm T;
    for (const auto& [n, s] : W.terms()) T.forms.push_back({s.valuation(), n, vec_str(n)});
    return T;
}

TropicalForm tropicalize_terms(const LaurentPoly& W) {
    TropicalForm T;
    for (const auto& [n, s] : W.terms())
        for (const auto& [e, c] : s.terms()) T.forms.push_back({e, n, vec_str(n) + "@" + rat_str(e)});
    return T;
}

TropicalForm beta_forms(const ToricModel& m, const KahlerClass& w) {
    TropicalForm T;
    for (int i = 0; i < m.n(); ++i) {
        auto ui = static_cast<std::size_t>(i);
        T.forms.push_back({w.lambdas[ui], m.ray(i), std::to_string(i + 1)});
    }
    for (int i = 0; i < m.n(); ++i) {
        auto c = sorted_c(w, i);
        Rat acc = w.lambdas[static_cast<std::size_t>(m.idx(i - 1))];
        for (std::size_t j = 0; j < c.size(); ++j) {
            acc += c[j];
            T.forms.push_back({acc, m.ray(i - 1) + m.ray(i) * static_cast<std::int64_t>(j + 1),
                               std::to_string(i + 1) + "." + std::to_string(j + 1)});
        }
    }
    return T;
}

namespace {

int half(const Point& p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; }

// all normals inside one closed half plane means the region is unbounded
bool normals_span(const std::vector<LatticeVec>& ns) {
    for (const auto& n : ns) {
        for (int sgn : {1, -1}) {
            LatticeVec u{-n.b * sgn, n.a * sgn};
            bool all = true;
            for (const auto& k : ns)
                if (u.a * k.a + u.b * k.b < 0) {
                    all = false;
                    break;
                }
            if (all) return false;
        }
    }
    return !ns.empty();
}

}  // namespace

Polygon polytope(const TropicalForm& T, const Rat& delta) {
    std::vector<LatticeVec> ns;
    for (const auto& f : T.forms) {
        if (f.n.is_zero()) {
            if (f.c < delta) throw std::invalid_argument("polytope is empty");
            continue;
        }
        ns.push_back(f.n);
    }
    if (!normals_span(ns)) throw std::invalid_argument("polytope is unbounded");
    const auto& F = T.forms;
    std::set<Point> pts;
    for (std::size_t k = 0; k < F.size(); ++k) {
        for (std::size_t l = k + 1; l < F.size(); ++l) {
            std::int64_t det = wedge(F[k].n, F[l].n);
            if (det == 0) continue;
            Rat rk = delta - F[k].c, rl = delta - F[l].c;
            Point x{(rk * F[l].n.b - rl * F[k].n.b) / det, (rl * F[k].n.a - rk * F[l].n.a) / det};
            bool ok = true;
            for (const auto& f : F)
                if (f.eval(x) < delta) {
                    ok = false;
                    break;
                }
            if (ok) pts.insert(x);
        }
    }
    if (pts.empty()) throw std::invalid_argument("polytope is empty");
    Polygon P;
    P.vertices.assign(pts.begin(), pts.end());
    if (P.vertices.size() == 1) return P;
    Point o{0, 0};
    for (const auto& v : P.vertices) o = o + v;
    o = o * Rat(1, static_cast<long>(P.vertices.size()));
    std::sort(P.vertices.begin(), P.vertices.end(), [&](const Point& a, const Point& b) {
        Point da = a - o, db = b - o;
        int ha = half(da), hb = half(db);
        if (ha != hb) return ha < hb;
        return rwedge(da, db) > 0;
    });
    std::size_t N = P.vertices.size();
    for (std::size_t k = 0; k < N; ++k) {
        const Point& a = P.vertices[k];
        const Point& b = P.vertices[(k + 1) % N];
        int facet = -1;
        for (std::size_t f = 0; f < F.size(); ++f)
            if (!F[f].n.is_zero() && F[f].eval(a) == delta && F[f].eval(b) == delta) {
                facet = static_cast<int>(f);
                break;
            }
        if (facet < 0) throw std::logic_error("polytope edge without a tight form");
        P.facets.push_back(facet);
    }
    return P;
}

bool is_nonsingular(const Polygon& P, const TropicalForm& T) {
    std::size_t N = P.facets.size();
    if (N < 3) return false;
    for (std::size_t k = 0; k < N; ++k) {
        const auto& a = T.forms[static_cast<std::size_t>(P.facets[k])].n;
        const auto& b = T.forms[static_cast<std::size_t>(P.facets[(k + 1) % N])].n;
        if (std::abs(wedge(a, b)) != 1) return false;
    }
    return true;
}

Rat volume(const Polygon& P) {
    Rat s = 0;
    std::size_t N = P.vertices.size();
    for (std::size_t k = 0; k < N; ++k) s += rwedge(P.vertices[k], P.vertices[(k + 1) % N]);
    return abs(s) / 2;
}

Rat lattice_length(const Point& a, const Point& b) {
    Point e = b - a;
    mpz_class L;
    mpz_lcm(L.get_mpz_t(), e.x.get_den_mpz_t(), e.y.get_den_mpz_t());
    mpz_class ix = e.x.get_num() * (L / e.x.get_den());
    mpz_class iy = e.y.get_num() * (L / e.y.get_den());
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), ix.get_mpz_t(), iy.get_mpz_t());
    Rat r(g, L);
    r.canonicalize();
    return r;
}

Rat affine_perimeter(const Polygon& P) {
    std::size_t N = P.vertices.size();
    if (N < 2) return 0;
    Rat s = 0;
    for (std::size_t k = 0; k < N; ++k) s += lattice_length(P.vertices[k], P.vertices[(k + 1) % N]);
    return s;
}

Point centroid(const Polygon& P) {
    std::size_t N = P.vertices.size();
    Rat A2 = 0;
    Point c{0, 0};
    for (std::size_t k = 0; k < N; ++k) {
        const Point& a = P.vertices[k];
        const Point& b = P.vertices[(k + 1) % N];
        Rat w = rwedge(a, b);
        A2 += w;
        c = c + (a + b) * w;
    }
    if (A2 == 0) {
        Point o{0, 0};
        for (const auto& v : P.vertices) o = o + v;
        return o * Rat(1, static_cast<long>(std::max<std::size_t>(N, 1)));
    }
    return c * (Rat(1) / (A2 * 3));
}

VolumeCheck v_of_delta(const ToricModel& m, const KahlerClass& w, const Rat& eps) {
    require_valid(m, w);
    VolumeCheck r;
    DivisorClass om = omega_divisor(m, w);
    DivisorClass c1 = chern(m).c1;
    r.exact = {intersect(m, om, om) / 2, -intersect(m, om, c1), intersect(m, c1, c1) / 2};
    TropicalForm T = beta_forms(m, w);
    Rat h = eps / 2;
    Rat v0 = volume(polytope(T, 0)), v1 = volume(polytope(T, h)), v2 = volume(polytope(T, eps));
    Rat a2 = (v0 - 2 * v1 + v2) / (2 * h * h);
    r.interpolated = {v0, (v1 - v0) / h - a2 * h, a2};
    return r;
}

std::optional<Rat> dominance_margin(const AffineForm& alpha, const TropicalForm& beta) {
    // dual LP: maximise sum mu_v a_v with sum mu_v = 1, sum mu_v g_v = 0, mu >= 0
    std::vector<Rat> a;
    std::vector<LatticeVec> g;
    for (const auto& b : beta.forms) {
        a.push_back(alpha.c - b.c);
        g.push_back(alpha.n - b.n);
    }
    std::optional<Rat> best;
    auto take = [&](const Rat& v) {
        if (!best || v > *best) best = v;
    };
    std::size_t V = a.size();
    for (std::size_t u = 0; u < V; ++u) {
        if (g[u].is_zero()) take(a[u]);
        for (std::size_t v = u + 1; v < V; ++v) {
            if (wedge(g[u], g[v]) != 0) continue;
            LatticeVec d = g[u] - g[v];
            if (d.is_zero()) continue;
            Rat mu = d.a != 0 ? ratio(-g[v].a, d.a) : ratio(-g[v].b, d.b);
            if (mu < 0 || mu > 1) continue;
            if (mu * g[u].a + (1 - mu) * g[v].a != 0 || mu * g[u].b + (1 - mu) * g[v].b != 0) continue;
            take(mu * a[u] + (1 - mu) * a[v]);
        }
    }
    for (std::size_t u = 0; u < V; ++u)
        for (std::size_t v = u + 1; v < V; ++v)
            for (std::size_t x = v + 1; x < V; ++x) {
                LatticeVec p = g[v] - g[u], q = g[x] - g[u];
                std::int64_t det = wedge(p, q);
                if (det == 0) continue;
                // barycentric coordinates of the origin in the triangle g_u g_v g_x
                Rat mv = ratio(wedge(-g[u], q), det);
                Rat mx = ratio(wedge(p, -g[u]), det);
                Rat mu = 1 - mv - mx;
                if (mu < 0 || mv < 0 || mx < 0) continue;
                take(mu * a[u] + mv * a[v] + mx * a[x]);
            }
    return best;
}

std::optional<Rat> DominanceReport::min_margin() const {
    std::optional<Rat> r;
    for (const auto& m : margins) {
        if (!m) return std::nullopt;
        if (!r || *m < *r) r = *m;
    }
    return r;
}

bool DominanceReport::strictly_dominated(const Rat& eps_prime) const {
    for (const auto& m : margins)
        if (!m || *m < eps_prime) return false;
    return true;
}

DominanceReport dominance(const LaurentPoly& W, const TropicalForm& beta) {
    DominanceReport r;
    for (const auto& f : tropicalize_terms(W).forms) {
        bool is_beta = false;
        for (const auto& b : beta.forms)
            if (b.c == f.c && b.n == f.n) is_beta = true;
        if (is_beta) continue;
        r.extras.push_back(f);
        r.margins.push_back(dominance_margin(f, beta));
    }
    return r;
}

bool xi_equals_xi_star(const ToricModel& m, const KahlerClass& w, const LaurentPoly& W,
                       const LaurentPoly& Wstar) {
    Polygon a = polytope(tropicalize(W), 0);
    Polygon b = polytope(tropicalize(Wstar), 0);
    if (a.vertices != b.vertices) return false;
    auto rep = dominance(W, beta_forms(m, w));
    for (const auto& mg : rep.margins)
        if (!mg || *mg <= 0) return false;
    return true;
}

namespace {

EpsChoice eps_rule(const ToricModel& m, const KahlerClass& w, const LaurentPoly* W) {
    require_valid(m, w);
    std::optional<Rat> gap;
    auto take = [&](const Rat& v) {
        if (v > 0 && (!gap || v < *gap)) gap = v;
    };
    TropicalForm beta = beta_forms(m, w);
    if (W) {
        auto rep = dominance(*W, beta);
        for (const auto& mg : rep.margins) {
            if (!mg || *mg <= 0) throw std::invalid_argument("W has a monomial not dominated by W*");
            take(*mg);
        }
    }
    for (int i = 0; i < m.n(); ++i) {
        auto ui = static_cast<std::size_t>(i);
        take(w.lambdas[ui]);
        const auto& cs = w.c[ui];
        for (std::size_t j = 0; j < cs.size(); ++j) {
            take(cs[j]);
            take(w.lambdas[ui] - cs[j]);
            for (std::size_t k = j + 1; k < cs.size(); ++k) take(abs(cs[j] - cs[k]));
        }
    }
    Rat ep = *gap / 2;
    std::size_t facets = beta.forms.size();
    for (int it = 0; it < 64; ++it) {
        Polygon P = polytope(beta, ep);
        if (P.facets.size() == facets && is_nonsingular(P, beta)) return {ep, ep / 2};
        ep /= 2;
    }
    throw std::logic_error("no admissible eps found");
}

}  // namespace

EpsChoice choose_eps(const ToricModel& m, const KahlerClass& w, const LaurentPoly& W) {
    return eps_rule(m, w, &W);
}

EpsChoice choose_eps(const ToricModel& m, const KahlerClass& w) { return eps_rule(m, w, nullptr); }

Rat default_spacing(const ToricModel& m, const KahlerClass& w) {
    Polygon P = polytope(beta_forms(m, w), 0);
    std::optional<Rat> best;
    for (std::size_t k = 0; k < P.size(); ++k) {
        Rat l = lattice_length(P.vertices[k], P.vertices[(k + 1) % P.size()]);
        if (!best || l < *best) best = l;
    }
    return *best / 16;
}

}  // namespace ghk
