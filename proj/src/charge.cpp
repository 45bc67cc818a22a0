#include "ghk/charge.hpp"

#include "ghk/tropical.hpp"

#include <cmath>
#include <sstream>

namespace ghk {

std::string ChargeMonomial::str() const {
    std::ostringstream o;
    bool any = false;
    auto put = [&](const char* s, int e) {
        if (e == 0) return;
        if (any) o << "*";
        o << s;
        if (e > 1) o << "^" << e;
        any = true;
    };
    put("gamma", gamma);
    put("zeta2", zeta2);
    put("tau", tau);
    put("ell", ell);
    return any ? o.str() : "1";
}

void SymbolicCharge::add(const ChargeMonomial& m, const Rat& c) {
    if (c == 0) return;
    Rat& v = terms_[m];
    v += c;
    if (v == 0) terms_.erase(m);
}

Rat SymbolicCharge::coeff(const ChargeMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

SymbolicCharge SymbolicCharge::operator+(const SymbolicCharge& o) const {
    SymbolicCharge r = *this;
    for (const auto& [m, c] : o.terms_) r.add(m, c);
    return r;
}

SymbolicCharge SymbolicCharge::operator-(const SymbolicCharge& o) const { return *this + o * Rat(-1); }

SymbolicCharge SymbolicCharge::operator*(const Rat& k) const {
    SymbolicCharge r;
    for (const auto& [m, c] : terms_) r.add(m, c * k);
    return r;
}

SymbolicCharge SymbolicCharge::operator*(const SymbolicCharge& o) const {
    SymbolicCharge r;
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : o.terms_)
            r.add({a.gamma + b.gamma, a.zeta2 + b.zeta2, a.tau + b.tau, a.ell + b.ell}, x * y);
    return r;
}

bool SymbolicCharge::in_degree_bounds() const {
    for (const auto& [m, c] : terms_)
        if (m.gamma + m.tau > 2 || m.ell > 2 || m.zeta2 > 1 || m.gamma > 2 || m.tau > 2) return false;
    return true;
}

std::string SymbolicCharge::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream o;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) o << " + ";
        first = false;
        o << "(" << rat_str(c) << ")";
        if (m != ChargeMonomial{}) o << "*" << m.str();
    }
    return o.str();
}

namespace {

const ChargeMonomial kOne{};
const ChargeMonomial kEll2{0, 0, 0, 2};
const ChargeMonomial kGammaEll{1, 0, 0, 1};
const ChargeMonomial kZeta{0, 1, 0, 0};
const ChargeMonomial kGamma2{2, 0, 0, 0};

}  // namespace

SymbolicCharge gamma_charge_O(const ToricModel& m, const KahlerClass& w) {
    require_valid(m, w);
    DivisorClass om = omega_divisor(m, w);
    Chern ch = chern(m);
    Rat c1sq = intersect(m, ch.c1, ch.c1);
    SymbolicCharge z;
    z.add(kEll2, intersect(m, om, om) / 2);
    z.add(kGammaEll, intersect(m, om, ch.c1));
    z.add(kZeta, c1sq / 2 - Rat(ch.c2));
    z.add(kGamma2, c1sq / 2);
    return z;
}

SymbolicCharge polytope_charge_O(const ToricModel& m, const KahlerClass& w) {
    EpsChoice e = choose_eps(m, w);
    VolumeCheck v = v_of_delta(m, w, e.eps);
    if (!v.ok()) throw std::logic_error("polytope volumes are not quadratic in delta");
    // V(0), V'(0), V''(0) from the interpolated volumes
    const Quadratic& q = v.interpolated;
    Rat V0 = q.a0, V1 = q.a1, V2 = 2 * q.a2;
    SymbolicCharge z;
    z.add(kEll2, V0);
    z.add(kGammaEll, -V1);
    z.add(kGamma2, V2 / 2);
    z.add(kZeta, V2 / 2 - Rat(m.n() + m.total_blowups()));
    return z;
}

SymbolicCharge gamma_charge_line(const ToricModel& m, const KahlerClass& w, const DivisorClass& L) {
    SymbolicCharge z = gamma_charge_O(m, w);
    DivisorClass om = omega_divisor(m, w);
    Chern ch = chern(m);
    z.add({0, 0, 1, 1}, -intersect(m, om, L));
    z.add({1, 0, 1, 0}, -intersect(m, ch.c1, L));
    z.add({0, 0, 2, 0}, intersect(m, L, L) / 2);
    return z;
}

std::complex<double> eval_charge(const SymbolicCharge& ch, double t) {
    if (!(t > 0 && t < 1)) throw std::invalid_argument("t must lie in (0,1)");
    const std::complex<double> tau(0, 2 * M_PI);
    const double zeta2 = M_PI * M_PI / 6, ell = std::log(t);
    std::complex<double> s = 0;
    for (const auto& [mo, c] : ch.terms())
        s += to_double(c) * std::pow(kEulerGamma, mo.gamma) * std::pow(zeta2, mo.zeta2) *
             std::pow(tau, mo.tau) * std::pow(ell, mo.ell);
    return s;
}

}  // namespace ghk
