#include "ghk/core.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ghk {

Rat parse_rat(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal literal, read exactly
        bool neg = s[0] == '-';
        std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
        dot = body.find('.');
        std::string digits = body.substr(0, dot) + body.substr(dot + 1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad rational: " + raw);
        mpz_class num(digits), den(1);
        for (std::size_t i = dot + 1; i < body.size(); ++i) den *= 10;
        Rat r(num, den);
        r.canonicalize();
        return neg ? Rat(-r) : r;
    }
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + raw);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + raw);
    r.canonicalize();
    return r;
}

Rat ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }
double to_double(const Rat& r) { return r.get_d(); }

std::int64_t wedge(const LatticeVec& u, const LatticeVec& v) { return u.a * v.b - u.b * v.a; }
std::int64_t pairing(const MVec& m, const LatticeVec& v) { return m.a * v.a + m.b * v.b; }

std::int64_t lattice_gcd(const LatticeVec& v) { return std::gcd(v.a, v.b); }

LatticeVec primitive(const LatticeVec& v) {
    auto g = lattice_gcd(v);
    if (g == 0) return v;
    return {v.a / g, v.b / g};
}

MVec dual_of(const LatticeVec& n) {
    if (n.is_zero()) throw std::invalid_argument("dual_of: zero vector");
    // <m,(x,y)> = n.a*y - n.b*x
    return {-n.b, n.a};
}

std::string vec_str(const LatticeVec& v) {
    return "(" + std::to_string(v.a) + "," + std::to_string(v.b) + ")";
}

// ---- TExponentSeries

TExponentSeries TExponentSeries::monomial(const Rat& coeff, const Rat& exp) {
    TExponentSeries s;
    s.add_term(exp, coeff);
    return s;
}

Rat TExponentSeries::valuation() const {
    if (terms_.empty()) throw std::domain_error("valuation of zero series");
    return terms_.begin()->first;
}

Rat TExponentSeries::leading_coeff() const {
    if (terms_.empty()) return 0;
    return terms_.begin()->second;
}

Rat TExponentSeries::coeff(const Rat& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rat(0) : it->second;
}

void TExponentSeries::add_term(const Rat& exp, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, fresh] = terms_.try_emplace(exp, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

TExponentSeries& TExponentSeries::operator+=(const TExponentSeries& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

TExponentSeries& TExponentSeries::operator-=(const TExponentSeries& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

TExponentSeries TExponentSeries::operator+(const TExponentSeries& o) const {
    TExponentSeries r = *this;
    r += o;
    return r;
}

TExponentSeries TExponentSeries::operator-(const TExponentSeries& o) const {
    TExponentSeries r = *this;
    r -= o;
    return r;
}

TExponentSeries TExponentSeries::operator-() const {
    TExponentSeries r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

TExponentSeries TExponentSeries::operator*(const TExponentSeries& o) const {
    TExponentSeries r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

TExponentSeries TExponentSeries::scaled(const Rat& coeff, const Rat& shift) const {
    TExponentSeries r;
    if (coeff == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + shift, c * coeff);
    return r;
}

TExponentSeries TExponentSeries::truncated(const Rat& theta) const {
    TExponentSeries r;
    for (const auto& [e, c] : terms_) {
        if (e > theta) break;
        r.terms_.emplace(e, c);
    }
    return r;
}

double TExponentSeries::eval(double t) const {
    double s = 0;
    for (const auto& [e, c] : terms_) s += c.get_d() * std::pow(t, e.get_d());
    return s;
}

std::string TExponentSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (e != 0) os << "*t^" << e.get_str();
    }
    return os.str();
}

// ---- LaurentPoly

LaurentPoly LaurentPoly::constant(const Rat& c, std::optional<Rat> theta) {
    LaurentPoly p(std::move(theta));
    p.add_term({0, 0}, c, 0);
    return p;
}

LaurentPoly LaurentPoly::monomial(const LatticeVec& n, const Rat& coeff, const Rat& texp,
                                  std::optional<Rat> theta) {
    LaurentPoly p(std::move(theta));
    p.add_term(n, coeff, texp);
    return p;
}

void LaurentPoly::set_theta(std::optional<Rat> theta) {
    theta_ = std::move(theta);
    if (!theta_) return;
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second.truncated(*theta_);
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

TExponentSeries LaurentPoly::coeff(const LatticeVec& n) const {
    auto it = terms_.find(n);
    return it == terms_.end() ? TExponentSeries{} : it->second;
}

void LaurentPoly::add_term(const LatticeVec& n, const Rat& coeff, const Rat& texp) {
    if (coeff == 0 || !keep(texp)) return;
    auto& s = terms_[n];
    s.add_term(texp, coeff);
    if (s.is_zero()) terms_.erase(n);
}

void LaurentPoly::add_series(const LatticeVec& n, const TExponentSeries& s) {
    for (const auto& [e, c] : s.terms()) add_term(n, c, e);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [n, s] : o.terms_) add_series(n, s);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [n, s] : o.terms_) add_series(n, -s);
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    if (o.theta_ && (!r.theta_ || *o.theta_ < *r.theta_)) r.set_theta(o.theta_);
    r += o;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    if (o.theta_ && (!r.theta_ || *o.theta_ < *r.theta_)) r.set_theta(o.theta_);
    r -= o;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    std::optional<Rat> th = theta_;
    if (o.theta_ && (!th || *o.theta_ < *th)) th = o.theta_;
    LaurentPoly r(th);
    for (const auto& [n1, s1] : terms_) {
        for (const auto& [n2, s2] : o.terms_) {
            auto& dst = r.terms_[n1 + n2];
            for (const auto& [e1, c1] : s1.terms()) {
                for (const auto& [e2, c2] : s2.terms()) {
                    Rat e = e1 + e2;
                    if (th && e > *th) break;  // exponents ascend
                    dst.add_term(e, c1 * c2);
                }
            }
            if (dst.is_zero()) r.terms_.erase(n1 + n2);
        }
    }
    return r;
}

LaurentPoly LaurentPoly::shifted(const LatticeVec& n, const Rat& coeff, const Rat& texp) const {
    LaurentPoly r(theta_);
    for (const auto& [m, s] : terms_) r.add_series(m + n, s.scaled(coeff, texp));
    return r;
}

std::optional<Rat> LaurentPoly::valuation() const {
    std::optional<Rat> v;
    for (const auto& [n, s] : terms_) {
        Rat e = s.valuation();
        if (!v || e < *v) v = e;
    }
    return v;
}

LaurentPoly LaurentPoly::nonconstant() const {
    LaurentPoly r = *this;
    r.terms_.erase(LatticeVec{0, 0});
    return r;
}

std::size_t LaurentPoly::term_count() const {
    std::size_t k = 0;
    for (const auto& [n, s] : terms_) k += s.terms().size();
    return k;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, s] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << s.str() << ")";
        if (!n.is_zero()) os << "*z^" << vec_str(n);
    }
    return os.str();
}

static void check_unit(const LaurentPoly& f) {
    auto c0 = f.coeff({0, 0});
    if (c0.coeff(0) != 1) throw std::domain_error("laurent_pow: constant term is not 1");
    for (const auto& [n, s] : f.terms()) {
        for (const auto& [e, c] : s.terms()) {
            if (e < 0 || (e == 0 && !n.is_zero()))
                throw std::domain_error("laurent_pow: f is not 1 mod positive valuation");
        }
    }
    for (const auto& [e, c] : c0.terms())
        if (e < 0) throw std::domain_error("laurent_pow: negative valuation");
}

LaurentPoly laurent_pow(const LaurentPoly& f, std::int64_t e, const Rat& theta) {
    check_unit(f);
    LaurentPoly base = f;
    base.set_theta(theta);
    LaurentPoly one = LaurentPoly::constant(1, theta);
    if (e == 0) return one;
    if (e < 0) {
        // geometric series for (1+g)^{-1}
        LaurentPoly g = base - one;
        LaurentPoly inv = one, term = one;
        while (true) {
            term = term * g;
            if (term.is_zero()) break;
            LaurentPoly neg(theta);
            neg -= term;
            term = neg;
            inv += term;
        }
        base = inv;
        e = -e;
    }
    LaurentPoly result = one;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

const LaurentPoly& PowerCache::get(std::int64_t e) {
    auto it = cache_.find(e);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(e, laurent_pow(f_, e, theta_)).first->second;
}

}  // namespace ghk
