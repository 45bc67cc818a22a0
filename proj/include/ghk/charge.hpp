#pragma once
// Central charges Z_top over the formal symbols gamma, zeta2, tau = 2 pi i, ell = log t.

#include "ghk/surface.hpp"

#include <array>
#include <complex>
#include <map>
#include <string>

namespace ghk {

// exponents of gamma, zeta2, tau, ell
struct ChargeMonomial {
    int gamma = 0, zeta2 = 0, tau = 0, ell = 0;
    auto operator<=>(const ChargeMonomial&) const = default;
    std::string str() const;
};

class SymbolicCharge {
public:
    const std::map<ChargeMonomial, Rat>& terms() const { return terms_; }
    void add(const ChargeMonomial& m, const Rat& c);
    Rat coeff(const ChargeMonomial& m) const;

    SymbolicCharge operator+(const SymbolicCharge& o) const;
    SymbolicCharge operator-(const SymbolicCharge& o) const;
    SymbolicCharge operator*(const SymbolicCharge& o) const;
    SymbolicCharge operator*(const Rat& k) const;
    bool operator==(const SymbolicCharge& o) const { return terms_ == o.terms_; }
    // within the surface degree bounds a + c <= 2, d <= 2, b <= 1
    bool in_degree_bounds() const;
    std::string str() const;

private:
    std::map<ChargeMonomial, Rat> terms_;
};

constexpr double kEulerGamma = 0.57721566490153286;

SymbolicCharge gamma_charge_O(const ToricModel& m, const KahlerClass& w);
SymbolicCharge polytope_charge_O(const ToricModel& m, const KahlerClass& w);
SymbolicCharge gamma_charge_line(const ToricModel& m, const KahlerClass& w, const DivisorClass& L);
std::complex<double> eval_charge(const SymbolicCharge& ch, double t);

}  // namespace ghk
