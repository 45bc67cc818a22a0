#pragma once
// Exact lattice algebra, t-exponent series and truncated Laurent polynomials.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ghk {

using Rat = mpq_class;

Rat parse_rat(const std::string& s);
// num/den in canonical form; den != 0
Rat ratio(std::int64_t num, std::int64_t den);
std::string rat_str(const Rat& r);
double to_double(const Rat& r);

struct LatticeVec {
    std::int64_t a = 0, b = 0;
    auto operator<=>(const LatticeVec&) const = default;
    LatticeVec operator+(const LatticeVec& o) const { return {a + o.a, b + o.b}; }
    LatticeVec operator-(const LatticeVec& o) const { return {a - o.a, b - o.b}; }
    LatticeVec operator-() const { return {-a, -b}; }
    LatticeVec operator*(std::int64_t k) const { return {a * k, b * k}; }
    bool is_zero() const { return a == 0 && b == 0; }
};

// dual lattice M
struct MVec {
    std::int64_t a = 0, b = 0;
    auto operator<=>(const MVec&) const = default;
};

std::int64_t wedge(const LatticeVec& u, const LatticeVec& v);
std::int64_t pairing(const MVec& m, const LatticeVec& v);
LatticeVec primitive(const LatticeVec& v);
std::int64_t lattice_gcd(const LatticeVec& v);
MVec dual_of(const LatticeVec& n);
std::string vec_str(const LatticeVec& v);

// rational point of N_R or M_R
struct Point {
    Rat x, y;
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator<(const Point& o) const { return x < o.x || (x == o.x && y < o.y); }
    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(const Rat& k) const { return {x * k, y * k}; }
};
inline Point as_point(const LatticeVec& v) { return {Rat(v.a), Rat(v.b)}; }
inline Rat rwedge(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }

// finite sum  sum_e mu_e t^e
class TExponentSeries {
public:
    TExponentSeries() = default;
    static TExponentSeries monomial(const Rat& coeff, const Rat& exp);
    static TExponentSeries one() { return monomial(1, 0); }

    const std::map<Rat, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // min exponent; throws on zero
    Rat valuation() const;
    Rat leading_coeff() const;
    Rat coeff(const Rat& exp) const;

    void add_term(const Rat& exp, const Rat& coeff);
    TExponentSeries& operator+=(const TExponentSeries& o);
    TExponentSeries& operator-=(const TExponentSeries& o);
    TExponentSeries operator+(const TExponentSeries& o) const;
    TExponentSeries operator-(const TExponentSeries& o) const;
    TExponentSeries operator-() const;
    TExponentSeries operator*(const TExponentSeries& o) const;
    TExponentSeries scaled(const Rat& coeff, const Rat& shift) const;
    TExponentSeries truncated(const Rat& theta) const;
    bool operator==(const TExponentSeries& o) const { return terms_ == o.terms_; }

    double eval(double t) const;
    std::string str() const;

private:
    std::map<Rat, Rat> terms_;
};

// sum_n c_n(t) z^n, every t-power above theta dropped
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::optional<Rat> theta) : theta_(std::move(theta)) {}
    static LaurentPoly constant(const Rat& c, std::optional<Rat> theta = std::nullopt);
    static LaurentPoly monomial(const LatticeVec& n, const Rat& coeff, const Rat& texp,
                                std::optional<Rat> theta = std::nullopt);

    const std::map<LatticeVec, TExponentSeries>& terms() const { return terms_; }
    const std::optional<Rat>& theta() const { return theta_; }
    void set_theta(std::optional<Rat> theta);
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    TExponentSeries coeff(const LatticeVec& n) const;

    void add_term(const LatticeVec& n, const Rat& coeff, const Rat& texp);
    void add_series(const LatticeVec& n, const TExponentSeries& s);
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly shifted(const LatticeVec& n, const Rat& coeff, const Rat& texp) const;
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    // min valuation over all terms; nullopt when zero
    std::optional<Rat> valuation() const;
    // part with constant term removed
    LaurentPoly nonconstant() const;
    std::size_t term_count() const;
    std::string str() const;

private:
    Rat effective_theta(const LaurentPoly& o) const;
    bool keep(const Rat& e) const { return !theta_ || e <= *theta_; }

    std::map<LatticeVec, TExponentSeries> terms_;
    std::optional<Rat> theta_;
};

// f^e mod t^theta; f must be 1 plus positive-valuation terms
LaurentPoly laurent_pow(const LaurentPoly& f, std::int64_t e, const Rat& theta);

// powers of one f, cached by exponent
class PowerCache {
public:
    PowerCache(LaurentPoly f, Rat theta) : f_(std::move(f)), theta_(std::move(theta)) {}
    const LaurentPoly& get(std::int64_t e);

private:
    LaurentPoly f_;
    Rat theta_;
    std::map<std::int64_t, LaurentPoly> cache_;
};

}  // namespace ghk
