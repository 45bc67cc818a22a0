#include "ghk/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace ghk {

int BrokenLine::bends() const {
    int k = 0;
    for (const auto& s : segments)
        if (s.bend_wall >= 0) ++k;
    return k;
}

namespace {

// minimal valuation needed to realise each lattice shift as a sum of wall terms
std::map<LatticeVec, Rat> reachable_shifts(const ScatteringDiagram& d, const Rat& budget) {
    std::map<LatticeVec, Rat> atoms;
    for (const auto& w : d.walls) {
        LaurentPoly nc = w.fn.nonconstant();
        for (const auto& [n, s] : nc.terms()) {
            Rat v = s.valuation();
            auto it = atoms.find(n);
            if (it == atoms.end() || v < it->second) atoms[n] = v;
        }
    }
    std::map<LatticeVec, Rat> best;
    using Item = std::pair<Rat, LatticeVec>;
    std::set<Item> pq;
    best[{0, 0}] = 0;
    pq.insert({Rat(0), LatticeVec{0, 0}});
    while (!pq.empty()) {
        auto [v, m] = *pq.begin();
        pq.erase(pq.begin());
        if (best[m] < v) continue;
        for (const auto& [a, av] : atoms) {
            Rat nv = v + av;
            if (nv > budget) continue;
            LatticeVec nm = m + a;
            auto it = best.find(nm);
            if (it != best.end() && it->second <= nv) continue;
            if (it != best.end()) pq.erase({it->second, nm});
            best[nm] = nv;
            pq.insert({nv, nm});
        }
    }
    return best;
}

struct Bend {
    Point at;
    int wall;
    LatticeVec before, after;
    Rat coeff, texp;
};

struct Tracer {
    const ScatteringDiagram& d;
    LatticeVec q;
    Rat budget;
    Rat prefactor;
    Point S;
    std::map<LatticeVec, Rat> shifts;
    std::vector<BrokenLine> out;
    std::vector<Bend> stack;
    std::map<std::pair<int, std::int64_t>, LaurentPoly> pow_cache;
    std::vector<std::pair<Rat, int>> by_val;  // walls sorted by minimal valuation
    struct WallD {
        double bx, by, sx, sy;
        bool ray;
    };
    std::vector<WallD> approx;  // parallel to by_val

    const LaurentPoly& wall_pow(int id, std::int64_t k) {
        auto key = std::make_pair(id, k);
        auto it = pow_cache.find(key);
        if (it != pow_cache.end()) return it->second;
        return pow_cache.emplace(key, laurent_pow(d.walls[static_cast<std::size_t>(id)].fn, k, d.theta))
            .first->second;
    }

    bool reachable(const LatticeVec& m, const Rat& left) const {
        auto it = shifts.find(m - q);
        return it != shifts.end() && it->second <= left;
    }

    // exact test of one wall: sets tau when X + tau*m (tau > 0) meets its support
    bool meets(const Wall& w, const Point& X, const LatticeVec& m, Rat& tau) const {
        LatticeVec sd = w.support_dir();
        std::int64_t den = wedge(m, sd);
        if (den == 0) {
            if (w.kind == WallKind::Line && on_support(w, X))
                throw std::runtime_error("broken line runs along a wall");
            return false;
        }
        Point rel = w.base - X;
        tau = rwedge(rel, as_point(sd)) / Rat(den);
        if (tau <= 0) return false;
        if (w.kind == WallKind::Ray) {
            Rat r = rwedge(rel, as_point(m)) / Rat(den);
            if (r < 0) return false;
            if (r == 0)
                throw std::runtime_error("broken line through " + vec_str(m) + " meets the ray endpoint (" +
                                         rat_str(w.base.x) + "," + rat_str(w.base.y) + ")");
        }
        return true;
    }

    // next crossing of X + tau*m, tau > 0.  Walls above the remaining budget act
    // trivially and are skipped; a floating point pass shortlists the candidates.
    bool next_crossing(const Point& X, const LatticeVec& m, const Rat& left, Point& hit,
                       std::vector<int>& group) {
        const double tol = 1e-9;
        double xd = to_double(X.x), yd = to_double(X.y);
        std::vector<std::pair<double, int>> near;
        for (std::size_t k = 0; k < by_val.size(); ++k) {
            if (by_val[k].first > left) break;
            const WallD& w = approx[k];
            double den = double(m.a) * w.sy - double(m.b) * w.sx;
            if (den == 0) {
                near.emplace_back(-1.0, by_val[k].second);  // exact check for a wall along the path
                continue;
            }
            double rx = w.bx - xd, ry = w.by - yd;
            double tau = (rx * w.sy - ry * w.sx) / den;
            if (tau < -tol) continue;
            if (w.ray) {
                double r = (rx * double(m.b) - ry * double(m.a)) / den;
                if (r < -tol) continue;
            }
            near.emplace_back(tau, by_val[k].second);
        }
        std::sort(near.begin(), near.end());
        std::optional<Rat> best;
        double best_d = 0;
        group.clear();
        for (const auto& [td, idx] : near) {
            if (best && td > best_d + tol * (1 + std::abs(best_d))) break;
            Rat tau;
            if (!meets(d.walls[static_cast<std::size_t>(idx)], X, m, tau)) continue;
            if (!best || tau < *best) {
                best = tau;
                best_d = to_double(tau);
                group.assign(1, idx);
            } else if (tau == *best) {
                group.push_back(idx);
            }
        }
        if (!best) return false;
        hit = X + as_point(m) * *best;
        for (std::size_t a = 1; a < group.size(); ++a)
            if (wedge(d.walls[static_cast<std::size_t>(group[a])].direction,
                      d.walls[static_cast<std::size_t>(group[0])].direction) != 0)
                throw std::runtime_error("broken line passes through a wall intersection");
        return true;
    }

    void accept(const LatticeVec& final_m) {
        BrokenLine L;
        L.q = q;
        L.endpoint = S;
        L.final_exponent = final_m;
        Rat c = 1, e = prefactor;
        // stack holds bends from S backwards
        std::vector<Bend> fwd(stack.rbegin(), stack.rend());
        Point first = fwd.empty() ? S : fwd.front().at;
        Segment s0;
        s0.start = first + as_point(q) * Rat(8);
        s0.direction = -q;
        s0.exponent = q;
        s0.coeff = TExponentSeries::monomial(1, prefactor);
        L.segments.push_back(s0);
        for (const auto& b : fwd) {
            c *= b.coeff;
            e += b.texp;
            Segment s;
            s.start = b.at;
            s.direction = -b.after;
            s.exponent = b.after;
            s.coeff = TExponentSeries::monomial(c, e);
            s.bend_wall = b.wall;
            L.segments.push_back(s);
        }
        L.coeff = c;
        L.texp = e;
        out.push_back(std::move(L));
    }

    void trace(const Point& X, const LatticeVec& m, const Rat& used) {
        Point hit;
        std::vector<int> group;
        if (!next_crossing(X, m, budget - used, hit, group)) {
            if (m == q) accept(stack.empty() ? m : stack.front().after);
            return;
        }
        LatticeVec ph = primitive(d.walls[static_cast<std::size_t>(group[0])].direction);
        std::int64_t k = std::abs(wedge(ph, m));
        LaurentPoly F = LaurentPoly::constant(1, d.theta);
        for (int id : group) F = F * wall_pow(id, k);
        // the wall carrying the bend: the first of the group with a matching term
        for (const auto& [s, ser] : F.terms()) {
            LatticeVec prev = m - s;
            if (prev.is_zero() && !q.is_zero()) continue;
            for (const auto& [e, c] : ser.terms()) {
                Rat nu = used + e;
                if (nu > budget) break;
                if (!reachable(prev, budget - nu)) continue;
                if (s.is_zero()) {
                    trace(hit, prev, nu);
                    continue;
                }
                int bw = group[0];
                for (int id : group)
                    if (!wall_pow(id, k).coeff(s).is_zero()) {
                        bw = id;
                        break;
                    }
                stack.push_back({hit, bw, prev, m, c, e});
                trace(hit, prev, nu);
                stack.pop_back();
            }
        }
    }
};

}  // namespace

std::vector<BrokenLine> broken_lines(const ScatteringDiagram& d, const LatticeVec& q,
                                     const Point& S, const Rat& theta, const Rat& prefactor) {
    check_basepoint(d, S);
    if (q.is_zero()) {
        BrokenLine L;
        L.q = q;
        L.endpoint = S;
        L.coeff = 1;
        L.texp = prefactor;
        L.final_exponent = q;
        return {L};
    }
    Rat budget = theta - prefactor;
    if (budget < 0) return {};
    Tracer tr{d, q, budget, prefactor, S, reachable_shifts(d, budget), {}, {}, {}, {}};
    for (std::size_t i = 0; i < d.walls.size(); ++i)
        tr.by_val.emplace_back(d.walls[i].min_valuation(), static_cast<int>(i));
    std::sort(tr.by_val.begin(), tr.by_val.end());
    for (const auto& [v, i] : tr.by_val) {
        const Wall& w = d.walls[static_cast<std::size_t>(i)];
        LatticeVec sd = w.support_dir();
        tr.approx.push_back({to_double(w.base.x), to_double(w.base.y), double(sd.a), double(sd.b),
                             w.kind == WallKind::Ray});
    }
    for (const auto& [shift, v] : tr.shifts) {
        LatticeVec m = q + shift;
        if (m.is_zero()) continue;
        tr.trace(S, m, Rat(0));
    }
    std::sort(tr.out.begin(), tr.out.end(), [](const BrokenLine& a, const BrokenLine& b) {
        if (a.final_exponent != b.final_exponent) return a.final_exponent < b.final_exponent;
        if (a.texp != b.texp) return a.texp < b.texp;
        return a.bends() < b.bends();
    });
    return tr.out;
}

LaurentPoly theta_expand(const ScatteringDiagram& d, const LatticeVec& q, const Point& S,
                         const Rat& theta) {
    LaurentPoly p(theta);
    for (const auto& L : broken_lines(d, q, S, theta)) p.add_term(L.final_exponent, L.coeff, L.texp);
    return p;
}

void check_basepoint(const ScatteringDiagram& d, const Point& S) {
    Point O{0, 0};
    for (const auto& w : d.walls) {
        if (on_support(w, S)) throw std::invalid_argument("basepoint lies on a wall");
        if (on_support(w, O)) throw std::invalid_argument("origin lies on a wall");
        // segment O..S against the support
        LatticeVec sd = w.support_dir();
        Rat den = rwedge(S, as_point(sd));
        if (den == 0) continue;
        Point rel = w.base - O;
        Rat tau = rwedge(rel, as_point(sd)) / den;
        Rat r = rwedge(rel, S) / den;
        if (tau >= 0 && tau <= 1 && (w.kind == WallKind::Line || r >= 0))
            throw std::invalid_argument("basepoint is not in the chamber of the origin");
    }
}

std::vector<Point> default_basepoints(const Rat& h) {
    // large prime denominators keep backward traces away from ray endpoints
    return {Point{h * Rat(397, 1009), h * Rat(313, 1009)}, Point{h * Rat(-311, 1013), h * Rat(-223, 1013)},
            Point{h * Rat(263, 1019), h * Rat(-97, 1019)}};
}

Superpotential superpotential(const ToricModel& m, const KahlerClass& w,
                              const ScatteringDiagram& completed, const Point& S,
                              const Rat& theta) {
    require_valid(m, w);
    Superpotential W;
    W.basepoint = S;
    W.poly = LaurentPoly(theta);
    for (int i = 0; i < m.n(); ++i) {
        const Rat& lam = w.lambdas[static_cast<std::size_t>(i)];
        auto lines = broken_lines(completed, m.ray(i), S, theta, lam);
        LaurentPoly th(theta);
        for (const auto& L : lines) {
            th.add_term(L.final_exponent, L.coeff, L.texp - lam);
            W.poly.add_term(L.final_exponent, L.coeff, L.texp);
        }
        W.per_theta.push_back(th);
        W.lines.push_back(std::move(lines));
    }
    for (const auto& [n, s] : W.poly.terms())
        for (const auto& [e, c] : s.terms())
            if (e <= 0) throw std::logic_error("superpotential term without positive t-power");
    return W;
}

LaurentPoly truncated_theta(const ToricModel& m, const KahlerClass& w, int i) {
    LaurentPoly p;
    const LatticeVec& ni = m.ray(i);
    const LatticeVec& nn = m.ray(i + 1);
    p.add_term(ni, 1, 0);
    auto c = sorted_c(w, m.idx(i + 1));
    Rat acc = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        acc += c[j];
        p.add_term(ni + nn * static_cast<std::int64_t>(j + 1), 1, acc);
    }
    return p;
}

LaurentPoly truncated_superpotential(const ToricModel& m, const KahlerClass& w) {
    require_valid(m, w);
    LaurentPoly W;
    for (int i = 0; i < m.n(); ++i)
        W += truncated_theta(m, w, i).shifted({0, 0}, 1, w.lambdas[static_cast<std::size_t>(i)]);
    return W;
}

BendAudit bend_audit(const std::vector<BrokenLine>& lines, const ScatteringDiagram& d) {
    BendAudit a;
    for (const auto& L : lines) {
        ++a.lines;
        for (const auto& s : L.segments) {
            if (s.bend_wall < 0) continue;
            ++a.bends;
            if (d.walls.at(static_cast<std::size_t>(s.bend_wall)).kind != WallKind::Line) ++a.violations;
        }
    }
    return a;
}

BrokenLine maximally_bent_line(const std::vector<BrokenLine>& lines, const LaurentPoly& truncated) {
    auto inside = [&](const BrokenLine& L) {
        for (const auto& s : L.segments)
            for (const auto& [e, c] : s.coeff.terms())
                if (truncated.coeff(s.exponent).coeff(e) != c) return false;
        return true;
    };
    const BrokenLine* best = nullptr;
    bool tie = false;
    for (const auto& L : lines) {
        if (!inside(L)) continue;
        if (!best || L.bends() > best->bends()) {
            best = &L;
            tie = false;
        } else if (L.bends() == best->bends()) {
            tie = true;
        }
    }
    if (!best) throw std::invalid_argument("no broken line with monomials in the truncated theta");
    if (tie) throw std::logic_error("maximally bent broken line is not unique");
    return *best;
}

}  // namespace ghk
