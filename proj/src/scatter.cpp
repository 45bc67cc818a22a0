#include "ghk/scatter.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ghk {

Rat Wall::min_valuation() const {
    auto v = fn.nonconstant().valuation();
    return v ? *v : Rat(0);
}

Rat default_theta(const ToricModel& m, const KahlerClass& w) {
    Rat s = 0, mx = 0;
    for (const auto& l : w.lambdas) {
        s += l;
        if (l > mx) mx = l;
    }
    for (const auto& row : w.c)
        for (const auto& c : row) s += c;
    (void)m;
    return s + mx;
}

ScatteringDiagram initial_walls(const ToricModel& m, const KahlerClass& w, const Rat& spacing,
                                std::optional<Rat> theta) {
    require_valid(m, w);
    if (spacing <= 0) throw std::invalid_argument("spacing must be positive");
    ScatteringDiagram d;
    d.theta = theta ? *theta : default_theta(m, w);
    d.spacing = spacing;
    for (int i = 0; i < m.n(); ++i) {
        const auto& ci = w.c[static_cast<std::size_t>(i)];
        // larger c sits closer to the origin
        std::vector<int> order(ci.size());
        for (std::size_t j = 0; j < ci.size(); ++j) order[j] = static_cast<int>(j);
        std::sort(order.begin(), order.end(),
                  [&](int x, int y) { return ci[static_cast<std::size_t>(x)] > ci[static_cast<std::size_t>(y)]; });
        const LatticeVec& n = m.ray(i);
        Point right{Rat(n.b), Rat(-n.a)};  // clockwise rotation of n_i
        for (std::size_t k = 0; k < order.size(); ++k) {
            Wall wl;
            wl.base = right * (spacing * Rat(static_cast<long>(k + 1)));
            wl.direction = n;
            wl.kind = WallKind::Line;
            wl.fn = LaurentPoly::constant(1, d.theta);
            wl.fn.add_term(n, 1, ci[static_cast<std::size_t>(order[k])]);
            wl.family = 1u << i;
            wl.ray_index = i;
            wl.wall_index = order[k];
            d.walls.push_back(std::move(wl));
        }
    }
    return d;
}

static std::int64_t crossing_exponent(const LatticeVec& q, const LatticeVec& wall_dir,
                                      const LatticeVec& travel) {
    std::int64_t s = wedge(wall_dir, travel);
    if (s == 0) throw std::invalid_argument("travel parallel to wall");
    return s > 0 ? -wedge(wall_dir, q) : wedge(wall_dir, q);
}

LaurentPoly cross(const LatticeVec& q, const Rat& coeff, const Rat& texp, const Wall& w,
                  const LatticeVec& travel, const Rat& theta) {
    std::int64_t k = crossing_exponent(q, primitive(w.direction), travel);
    LaurentPoly f = laurent_pow(w.fn, k, theta);
    return f.shifted(q, coeff, texp);
}

LaurentPoly cross_poly(const LaurentPoly& p, const Wall& w, const LatticeVec& travel,
                       const Rat& theta) {
    PowerCache pc(w.fn, theta);
    LatticeVec dir = primitive(w.direction);
    LaurentPoly out(theta);
    for (const auto& [q, s] : p.terms()) {
        std::int64_t k = crossing_exponent(q, dir, travel);
        const LaurentPoly& f = pc.get(k);
        for (const auto& [e, c] : s.terms()) out += f.shifted(q, c, e);
    }
    return out;
}

LaurentPoly path_product(const ScatteringDiagram& d, const std::vector<Crossing>& loop,
                         const LaurentPoly& probe) {
    LaurentPoly cur = probe;
    cur.set_theta(d.theta);
    for (const auto& c : loop) cur = cross_poly(cur, d.walls.at(static_cast<std::size_t>(c.wall)), c.travel, d.theta);
    return cur;
}

bool on_support(const Wall& w, const Point& p) {
    LatticeVec sd = w.support_dir();
    Point rel = p - w.base;
    if (rwedge(rel, as_point(sd)) != 0) return false;
    if (w.kind == WallKind::Line) return true;
    return rel.x * Rat(sd.a) + rel.y * Rat(sd.b) >= 0;
}

std::vector<int> walls_through(const ScatteringDiagram& d, const Point& p) {
    std::vector<int> out;
    for (std::size_t i = 0; i < d.walls.size(); ++i)
        if (on_support(d.walls[i], p)) out.push_back(static_cast<int>(i));
    return out;
}

bool is_singular_point(const ScatteringDiagram& d, const Point& p) {
    std::vector<LatticeVec> dirs;
    for (const auto& w : d.walls) {
        if (!on_support(w, p)) continue;
        if (w.kind == WallKind::Ray && w.base == p) return true;
        for (const auto& u : dirs)
            if (wedge(u, w.direction) != 0) return true;
        dirs.push_back(w.direction);
    }
    return false;
}

namespace {

int half(const LatticeVec& u) { return (u.b > 0 || (u.b == 0 && u.a > 0)) ? 0 : 1; }

bool angle_less(const LatticeVec& u, const LatticeVec& v) {
    int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return wedge(u, v) > 0;
}

std::vector<Crossing> loop_from(const ScatteringDiagram& d, const Point& p,
                                const std::vector<int>& ids) {
    std::vector<std::pair<LatticeVec, int>> halves;
    for (int id : ids) {
        const Wall& w = d.walls[static_cast<std::size_t>(id)];
        LatticeVec u = primitive(w.support_dir());
        if (w.kind == WallKind::Ray && w.base == p) {
            halves.emplace_back(u, id);
        } else {
            halves.emplace_back(u, id);
            halves.emplace_back(-u, id);
        }
    }
    std::stable_sort(halves.begin(), halves.end(), [](const auto& x, const auto& y) {
        if (x.first == y.first) return x.second < y.second;
        return angle_less(x.first, y.first);
    });
    std::vector<Crossing> loop;
    for (const auto& [u, id] : halves) loop.push_back({id, LatticeVec{-u.b, u.a}});
    return loop;
}

std::optional<Point> intersect_walls(const Wall& a, const Wall& b) {
    LatticeVec da = a.support_dir(), db = b.support_dir();
    std::int64_t den = wedge(da, db);
    if (den == 0) return std::nullopt;
    Point rel = b.base - a.base;
    Rat s = rwedge(rel, as_point(db)) / Rat(den);
    Rat r = rwedge(rel, as_point(da)) / Rat(den);
    if (a.kind == WallKind::Ray && s < 0) return std::nullopt;
    if (b.kind == WallKind::Ray && r < 0) return std::nullopt;
    return a.base + as_point(da) * s;
}

struct PointData {
    std::vector<int> walls;
    std::optional<Rat> dirty;
};

class Completer {
public:
    Completer(ScatteringDiagram d, Rat theta, CompletionStats* st)
        : d_(std::move(d)), theta_(std::move(theta)), stats_(st) {
        d_.theta = theta_;
        for (auto& w : d_.walls) w.fn.set_theta(theta_);
    }

    ScatteringDiagram run() {
        std::size_t n0 = d_.walls.size();
        d_.walls.reserve(n0);
        for (std::size_t i = 0; i < n0; ++i) {
            minval_.push_back(d_.walls[i].min_valuation());
            wall_points_.emplace_back();
        }
        for (std::size_t i = 0; i < n0; ++i) register_wall(static_cast<int>(i), i);
        while (!queue_.empty()) {
            auto [key, p] = *queue_.begin();
            queue_.erase(queue_.begin());
            auto& pd = points_[p];
            pd.dirty.reset();
            process(p);
        }
        return d_;
    }

private:
    void mark(const Point& p, const Rat& key) {
        if (key > theta_) return;
        auto& pd = points_[p];
        if (pd.dirty && *pd.dirty <= key) return;
        if (pd.dirty) queue_.erase({*pd.dirty, p});
        pd.dirty = key;
        queue_.insert({key, p});
    }

    void attach(const Point& p, int id) {
        auto& pd = points_[p];
        if (std::find(pd.walls.begin(), pd.walls.end(), id) != pd.walls.end()) return;
        pd.walls.push_back(id);
        wall_points_[static_cast<std::size_t>(id)].push_back(p);
    }

    // pairs (id, j) for j < limit
    void register_wall(int id, std::size_t limit) {
        const Wall& w = d_.walls[static_cast<std::size_t>(id)];
        const Rat& v = minval_[static_cast<std::size_t>(id)];
        if (w.kind == WallKind::Ray) attach(w.base, id);
        for (std::size_t j = 0; j < limit; ++j) {
            if (static_cast<int>(j) == id) continue;
            if (v + minval_[j] > theta_) continue;
            auto p = intersect_walls(w, d_.walls[j]);
            if (!p) continue;
            attach(*p, id);
            attach(*p, static_cast<int>(j));
            mark(*p, v + minval_[j]);
        }
    }

    // new term of valuation v on wall id: revisit its points
    void touched(int id, const Rat& v, const Point& skip) {
        const Wall& w = d_.walls[static_cast<std::size_t>(id)];
        for (const auto& p : wall_points_[static_cast<std::size_t>(id)]) {
            if (p == skip) continue;
            std::optional<Rat> other;
            for (int o : points_[p].walls) {
                if (o == id || wedge(d_.walls[static_cast<std::size_t>(o)].direction, w.direction) == 0) continue;
                const Rat& mv = minval_[static_cast<std::size_t>(o)];
                if (!other || mv < *other) other = mv;
            }
            if (other) mark(p, v + *other);
        }
    }

    void process(const Point& p) {
        if (stats_) ++stats_->points_processed;
        const LatticeVec probes[2] = {{1, 0}, {0, 1}};
        for (int guard = 0; guard < 100000; ++guard) {
            auto loop = loop_from(d_, p, points_[p].walls);
            LaurentPoly defect[2];
            std::optional<Rat> v;
            for (int k = 0; k < 2; ++k) {
                auto img = path_product(d_, loop, LaurentPoly::monomial(probes[k], 1, 0, theta_));
                if (stats_) ++stats_->loop_products;
                defect[k] = img.shifted(-probes[k], 1, 0) - LaurentPoly::constant(1, theta_);
                auto dv = defect[k].valuation();
                if (dv && (!v || *dv < *v)) v = dv;
            }
            if (!v) return;
            // lowest order: defect_p(q) = -C wedge(p^, q)
            std::map<LatticeVec, Rat> cx, cy;
            for (const auto& [n, s] : defect[0].terms()) cx[n] = s.coeff(*v);
            for (const auto& [n, s] : defect[1].terms()) cy[n] = s.coeff(*v);
            std::set<LatticeVec> keys;
            for (const auto& [n, c] : cx)
                if (c != 0) keys.insert(n);
            for (const auto& [n, c] : cy)
                if (c != 0) keys.insert(n);
            unsigned fam = 0;
            for (int id : points_[p].walls) fam |= d_.walls[static_cast<std::size_t>(id)].family;
            for (const auto& pe : keys) {
                if (pe.is_zero()) throw std::logic_error("scattering defect in the constant term");
                LatticeVec ph = primitive(pe);
                Rat dx = cx.count(pe) ? cx[pe] : Rat(0);
                Rat dy = cy.count(pe) ? cy[pe] : Rat(0);
                std::int64_t wx = wedge(ph, probes[0]), wy = wedge(ph, probes[1]);
                if (dx * Rat(wy) != dy * Rat(wx))
                    throw std::logic_error("scattering defect is not a derivation");
                Rat C = wx != 0 ? Rat(-dx / Rat(wx)) : Rat(-dy / Rat(wy));
                add_ray(p, ph, pe, C, *v, fam);
            }
        }
        throw std::runtime_error("completion did not converge at a point");
    }

    void add_ray(const Point& p, const LatticeVec& ph, const LatticeVec& pe, const Rat& C,
                 const Rat& v, unsigned fam) {
        for (int id : points_[p].walls) {
            Wall& w = d_.walls[static_cast<std::size_t>(id)];
            if (w.kind == WallKind::Ray && w.base == p && w.direction == ph) {
                LaurentPoly term = LaurentPoly::constant(1, theta_);
                term.add_term(pe, C, v);
                w.fn = w.fn * term;
                w.family |= fam;
                touched(id, v, p);
                return;
            }
        }
        Wall w;
        w.base = p;
        w.direction = ph;
        w.kind = WallKind::Ray;
        w.fn = LaurentPoly::constant(1, theta_);
        w.fn.add_term(pe, C, v);
        w.family = fam;
        d_.walls.push_back(std::move(w));
        minval_.push_back(v);
        wall_points_.emplace_back();
        if (stats_) ++stats_->rays_added;
        int id = static_cast<int>(d_.walls.size() - 1);
        register_wall(id, d_.walls.size() - 1);
    }

    ScatteringDiagram d_;
    Rat theta_;
    CompletionStats* stats_;
    std::vector<Rat> minval_;
    std::vector<std::vector<Point>> wall_points_;
    std::map<Point, PointData> points_;
    std::set<std::pair<Rat, Point>> queue_;
};

}  // namespace

std::vector<Crossing> loop_around(const ScatteringDiagram& d, const Point& p) {
    return loop_from(d, p, walls_through(d, p));
}

ScatteringDiagram complete(const ScatteringDiagram& d, const Rat& theta, CompletionStats* stats) {
    Completer c(d, theta, stats);
    return c.run();
}

std::vector<Point> intersection_points(const ScatteringDiagram& d) {
    std::set<Point> pts;
    std::vector<Rat> mv;
    for (const auto& w : d.walls) mv.push_back(w.min_valuation());
    for (std::size_t i = 0; i < d.walls.size(); ++i) {
        if (d.walls[i].kind == WallKind::Ray) pts.insert(d.walls[i].base);
        for (std::size_t j = i + 1; j < d.walls.size(); ++j) {
            if (mv[i] + mv[j] > d.theta) continue;  // commutator vanishes mod t^theta
            auto p = intersect_walls(d.walls[i], d.walls[j]);
            if (p) pts.insert(*p);
        }
    }
    return {pts.begin(), pts.end()};
}

ConsistencyReport check_consistency(const ScatteringDiagram& d) {
    ConsistencyReport r;
    const LatticeVec probes[2] = {{1, 0}, {0, 1}};
    for (const auto& p : intersection_points(d)) {
        ++r.points;
        auto loop = loop_around(d, p);
        bool ok = true;
        for (const auto& q : probes) {
            auto probe = LaurentPoly::monomial(q, 1, 0, d.theta);
            if (!(path_product(d, loop, probe) == probe)) ok = false;
        }
        if (!ok) {
            ++r.failures;
            if (!r.first_failure) r.first_failure = p;
        }
    }
    return r;
}

}  // namespace ghk
