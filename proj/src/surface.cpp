#include "ghk/surface.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ghk {

int ToricModel::total_blowups() const {
    int s = 0;
    for (int l : blowups) s += l;
    return s;
}

static ToricModel build(std::string name, std::vector<LatticeVec> rays, std::vector<int> l) {
    ToricModel m;
    m.name = std::move(name);
    m.rays = std::move(rays);
    m.blowups = std::move(l);
    int n = m.n();
    m.self_int.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        LatticeVec s = m.ray(i - 1) + m.ray(i + 1);
        const LatticeVec& r = m.ray(i);
        // s + s_i r = 0
        std::int64_t k = r.a != 0 ? -s.a / r.a : -s.b / r.b;
        m.self_int[static_cast<std::size_t>(i)] = k;
    }
    check_model(m);
    return m;
}

std::vector<std::string> preset_names() { return {"P2", "BlpP2", "dP5", "dP3"}; }

ToricModel make_model(const std::string& preset) {
    std::vector<LatticeVec> p2 = {{1, 0}, {0, 1}, {-1, -1}};
    if (preset == "P2") return build(preset, p2, {0, 0, 0});
    if (preset == "BlpP2") return build(preset, p2, {1, 0, 0});
    if (preset == "dP3") return build(preset, p2, {2, 2, 2});
    if (preset == "dP5")
        return build(preset, {{1, 0}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}, {1, 1, 0, 0, 0});
    throw std::invalid_argument("unknown preset: " + preset);
}

void check_model(const ToricModel& m) {
    int n = m.n();
    if (n < 3) throw std::invalid_argument("model needs at least three rays");
    if (static_cast<int>(m.blowups.size()) != n)
        throw std::invalid_argument("blowup list length mismatch");
    for (int i = 0; i < n; ++i) {
        if (lattice_gcd(m.ray(i)) != 1) throw std::invalid_argument("ray not primitive");
        if (wedge(m.ray(i), m.ray(i + 1)) != 1)
            throw std::invalid_argument("consecutive rays not a positive basis");
        LatticeVec rel = m.ray(i - 1) + m.ray(i + 1) + m.ray(i) * m.self_int[static_cast<std::size_t>(i)];
        if (!rel.is_zero()) throw std::invalid_argument("fan relation fails");
        if (m.blowups[static_cast<std::size_t>(i)] < 0) throw std::invalid_argument("negative l_i");
    }
    Chern ch = chern(m);
    Rat deg = intersect(m, ch.c1, ch.c1);
    if (deg + Rat(ch.c2) != 12) throw std::invalid_argument("Noether identity fails");
}

// ---- divisors

DivisorClass DivisorClass::zero(const ToricModel& m) {
    DivisorClass d;
    d.a.assign(static_cast<std::size_t>(m.n()), Rat(0));
    for (int l : m.blowups) d.b.emplace_back(static_cast<std::size_t>(l), Rat(0));
    return d;
}

DivisorClass DivisorClass::total(const ToricModel& m, int i) {
    auto d = zero(m);
    d.a[static_cast<std::size_t>(m.idx(i))] = 1;
    return d;
}

DivisorClass DivisorClass::exceptional(const ToricModel& m, int i, int j) {
    auto d = zero(m);
    auto& row = d.b.at(static_cast<std::size_t>(m.idx(i)));
    row.at(static_cast<std::size_t>(j)) = 1;
    return d;
}

DivisorClass DivisorClass::proper(const ToricModel& m, int i) {
    auto d = total(m, i);
    for (auto& x : d.b[static_cast<std::size_t>(m.idx(i))]) x = -1;
    return d;
}

static void same_shape(const DivisorClass& x, const DivisorClass& y) {
    if (x.a.size() != y.a.size() || x.b.size() != y.b.size())
        throw std::invalid_argument("divisor classes over different models");
    for (std::size_t i = 0; i < x.b.size(); ++i)
        if (x.b[i].size() != y.b[i].size())
            throw std::invalid_argument("divisor classes over different models");
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    same_shape(*this, o);
    DivisorClass r = *this;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b[i].size(); ++j) r.b[i][j] += o.b[i][j];
    return r;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const { return *this + o * Rat(-1); }

DivisorClass DivisorClass::operator*(const Rat& k) const {
    DivisorClass r = *this;
    for (auto& x : r.a) x *= k;
    for (auto& row : r.b)
        for (auto& x : row) x *= k;
    return r;
}

bool DivisorClass::is_toric() const {
    for (const auto& row : b)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

bool DivisorClass::is_integral() const {
    for (const auto& x : a)
        if (x.get_den() != 1) return false;
    for (const auto& row : b)
        for (const auto& x : row)
            if (x.get_den() != 1) return false;
    return true;
}

DivisorClass DivisorClass::toric_part() const {
    DivisorClass r = *this;
    for (auto& row : r.b)
        for (auto& x : row) x = 0;
    return r;
}

DivisorClass DivisorClass::exceptional_part() const {
    DivisorClass r = *this;
    for (auto& x : r.a) x = 0;
    return r;
}

std::string DivisorClass::str() const {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const Rat& c, const std::string& name) {
        if (c == 0) return;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat ac = abs(c);
        if (ac != 1) os << ac.get_str() << "*";
        os << name;
    };
    for (std::size_t i = 0; i < a.size(); ++i) put(a[i], "D'" + std::to_string(i + 1));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b[i].size(); ++j)
            put(b[i][j], "E" + std::to_string(i + 1) + std::to_string(j + 1));
    return first ? "0" : os.str();
}

static Rat toric_pair(const ToricModel& m, int i, int j) {
    int n = m.n();
    Rat r = 0;
    if (i == j) r += Rat(m.self_int[static_cast<std::size_t>(i)]);
    if (m.idx(i + 1) == j && i != j) r += 1;
    if (m.idx(i - 1) == j && i != j && m.idx(i + 1) != m.idx(i - 1)) r += 1;
    (void)n;
    return r;
}

Rat intersect(const ToricModel& m, const DivisorClass& L1, const DivisorClass& L2) {
    same_shape(L1, L2);
    if (static_cast<int>(L1.a.size()) != m.n()) throw std::invalid_argument("model mismatch");
    Rat s = 0;
    int n = m.n();
    for (int i = 0; i < n; ++i) {
        if (L1.a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (L2.a[static_cast<std::size_t>(j)] == 0) continue;
            s += L1.a[static_cast<std::size_t>(i)] * L2.a[static_cast<std::size_t>(j)] * toric_pair(m, i, j);
        }
    }
    for (std::size_t i = 0; i < L1.b.size(); ++i)
        for (std::size_t j = 0; j < L1.b[i].size(); ++j) s -= L1.b[i][j] * L2.b[i][j];
    return s;
}

Chern chern(const ToricModel& m) {
    Chern c{DivisorClass::zero(m), 0};
    for (int i = 0; i < m.n(); ++i) c.c1 = c.c1 + DivisorClass::proper(m, i);
    c.c2 = m.n() + m.total_blowups();
    return c;
}

// ---- Kahler classes

DivisorClass omega_divisor(const ToricModel& m, const KahlerClass& w) {
    DivisorClass d = DivisorClass::zero(m);
    for (int i = 0; i < m.n(); ++i) {
        auto ui = static_cast<std::size_t>(i);
        d = d + DivisorClass::proper(m, i) * w.lambdas.at(ui);
        for (int j = 0; j < m.blowups[ui]; ++j)
            d = d + DivisorClass::exceptional(m, i, j) * w.c.at(ui).at(static_cast<std::size_t>(j));
    }
    return d;
}

Rat fiber_exponent(const ToricModel& m, const KahlerClass& w, const DivisorClass& C) {
    return intersect(m, omega_divisor(m, w), C);
}

std::vector<Rat> sorted_c(const KahlerClass& w, int i) {
    auto v = w.c.at(static_cast<std::size_t>(i));
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<DivisorClass> exceptional_classes(const ToricModel& m) {
    int n = m.n();
    Chern ch = chern(m);
    std::vector<DivisorClass> gens;
    for (int i = 0; i < n; ++i) gens.push_back(DivisorClass::total(m, i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m.blowups[static_cast<std::size_t>(i)]; ++j)
            gens.push_back(DivisorClass::exceptional(m, i, j));
    std::set<std::vector<Rat>> seen;
    std::vector<DivisorClass> out;
    auto consider = [&](const DivisorClass& C) {
        if (intersect(m, C, C) != -1 || intersect(m, ch.c1, C) != 1) return;
        std::vector<Rat> key;
        for (const auto& g : gens) key.push_back(intersect(m, C, g));
        if (seen.insert(key).second) out.push_back(C);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m.blowups[static_cast<std::size_t>(i)]; ++j)
            consider(DivisorClass::exceptional(m, i, j));
    // p^*beta - sum p_ij E_ij with beta = sum a_i Dbar_i, a_i in {0,1,2}, p_ij in {0,1}
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    int nb = m.total_blowups();
    while (true) {
        DivisorClass base = DivisorClass::zero(m);
        for (int i = 0; i < n; ++i) base.a[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
        for (int mask = 0; mask < (1 << nb); ++mask) {
            DivisorClass C = base;
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m.blowups[static_cast<std::size_t>(i)]; ++j, ++bit)
                    if (mask & (1 << bit)) C.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = -1;
            consider(C);
        }
        int k = 0;
        while (k < n && a[static_cast<std::size_t>(k)] == 2) a[static_cast<std::size_t>(k++)] = 0;
        if (k == n) break;
        ++a[static_cast<std::size_t>(k)];
    }
    return out;
}

ValidityReport validate_omega(const ToricModel& m, const KahlerClass& w) {
    ValidityReport r;
    int n = m.n();
    auto fail = [&](const std::string& s) { r.messages.push_back(s); };
    r.shape_ok = static_cast<int>(w.lambdas.size()) == n && static_cast<int>(w.c.size()) == n;
    if (r.shape_ok)
        for (int i = 0; i < n; ++i)
            if (static_cast<int>(w.c[static_cast<std::size_t>(i)].size()) != m.blowups[static_cast<std::size_t>(i)])
                r.shape_ok = false;
    if (!r.shape_ok) {
        fail("lambda/c lists do not match the preset");
        return r;
    }
    auto lam = [&](int i) { return w.lambdas[static_cast<std::size_t>(m.idx(i))]; };
    r.positive_lambda = true;
    for (int i = 0; i < n; ++i)
        if (lam(i) <= 0) {
            r.positive_lambda = false;
            fail("(1) lambda_" + std::to_string(i + 1) + " <= 0");
        }
    r.base_ample = true;
    for (int i = 0; i < n; ++i) {
        Rat d = lam(i - 1) + Rat(m.self_int[static_cast<std::size_t>(i)]) * lam(i) + lam(i + 1);
        if (d <= 0) {
            r.base_ample = false;
            fail("(2) omega_b.Dbar_" + std::to_string(i + 1) + " <= 0");
        }
    }
    r.distinct_c = true;
    r.c_in_range = true;
    for (int i = 0; i < n; ++i) {
        const auto& ci = w.c[static_cast<std::size_t>(i)];
        std::set<Rat> uniq(ci.begin(), ci.end());
        if (uniq.size() != ci.size()) {
            r.distinct_c = false;
            fail("(3) repeated c on ray " + std::to_string(i + 1));
        }
        for (const auto& c : ci)
            if (!(c > 0 && c < lam(i))) {
                r.c_in_range = false;
                fail("(4) c on ray " + std::to_string(i + 1) + " not in (0, lambda)");
            }
    }
    DivisorClass om = omega_divisor(m, w);
    r.boundary_margin = true;
    for (int i = 0; i < n; ++i) {
        const auto& next = w.c[static_cast<std::size_t>(m.idx(i + 1))];
        if (next.empty()) continue;
        Rat lhs = intersect(m, om, DivisorClass::proper(m, i));
        Rat rhs = lam(i + 1) - *std::min_element(next.begin(), next.end());
        if (!(lhs > rhs)) {
            r.boundary_margin = false;
            fail("(5) omega.D_" + std::to_string(i + 1) + " too small");
        }
    }
    r.exceptional_positive = true;
    if (r.c_in_range && r.positive_lambda) {
        for (const auto& C : exceptional_classes(m))
            if (intersect(m, om, C) <= 0) {
                r.exceptional_positive = false;
                fail("omega not positive on " + C.str());
            }
        if (intersect(m, om, om) <= 0) {
            r.exceptional_positive = false;
            fail("omega^2 <= 0");
        }
    } else {
        r.exceptional_positive = false;
    }
    return r;
}

void require_valid(const ToricModel& m, const KahlerClass& w) {
    auto r = validate_omega(m, w);
    if (r.ok()) return;
    std::string msg = "invalid Kahler class:";
    for (const auto& s : r.messages) msg += " " + s + ";";
    throw std::invalid_argument(msg);
}

std::vector<Rat> pl_kinks(const ToricModel& m, const DivisorClass& L) {
    if (!L.is_toric()) throw std::invalid_argument("pl_kinks: L is not toric");
    int n = m.n();
    std::vector<Rat> k(static_cast<std::size_t>(n));
    auto a = [&](int i) { return L.a[static_cast<std::size_t>(m.idx(i))]; };
    Rat sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
        Rat ki = a(i + 1) + Rat(m.self_int[static_cast<std::size_t>(i)]) * a(i) + a(i - 1);
        if (ki != intersect(m, DivisorClass::total(m, i), L))
            throw std::logic_error("kink disagrees with intersection number");
        MVec d = dual_of(m.ray(i));
        sx += ki * Rat(d.a);
        sy += ki * Rat(d.b);
        k[static_cast<std::size_t>(i)] = ki;
    }
    if (sx != 0 || sy != 0) throw std::logic_error("kinks do not close");
    return k;
}

KahlerClass default_omega(const std::string& preset) {
    KahlerClass w;
    if (preset == "P2") {
        w.lambdas = {1, 1, 1};
        w.c = {{}, {}, {}};
    } else if (preset == "BlpP2") {
        w.lambdas = {1, 1, 1};
        w.c = {{Rat(1, 3)}, {}, {}};
    } else if (preset == "dP5") {
        w.lambdas = {1, 1, 1, 1, 1};
        w.c = {{Rat(1, 2)}, {Rat(2, 3)}, {}, {}, {}};
    } else if (preset == "dP3") {
        w.lambdas = {1, 1, 1};
        w.c = {{Rat(2, 3), Rat(3, 4)}, {Rat(2, 3), Rat(3, 4)}, {Rat(2, 3), Rat(3, 4)}};
    } else {
        throw std::invalid_argument("unknown preset: " + preset);
    }
    return w;
}

}  // namespace ghk
