#pragma once
// Oscillatory integrals Z_B over mirror cycle pieces, closed-form predictions,
// and the Gamma-conjecture verification driver.

#include "ghk/charge.hpp"
#include "ghk/cycles.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ghk {

struct QuadConfig {
    int levels = 6;          // grid doublings before giving up
    int gauss_order = 10;    // per-cell Gauss-Legendre order
    int min_cells = 8;       // cells per unit length at the coarsest level
    int tau_points = 32;     // starting trapezoid size on the circle
    double rel_tol = 1e-6;
    double t_cut = 40;       // drop the integrand where W exceeds t_cut
    int q_max = 6;           // sing series order
    void validate() const;
};

// the acceptance runs use a much tighter tolerance than the interactive default
QuadConfig precise_config();

// W_t with numeric coefficients at a fixed t
struct NumericTerm {
    LatticeVec n;
    double logc;  // log of the t-evaluated coefficient, which is positive
};
struct NumericW {
    double t = 0, ell = 0;
    std::vector<NumericTerm> terms;
};
NumericW numeric_w(const LaurentPoly& W, double t);

std::complex<double> zb_real_locus(const LaurentPoly& W, double t, const QuadConfig& cfg);
// includes the multiplicity and the orientation flag
std::complex<double> zb_tube(const LaurentPoly& W, const CyclePiece& piece, double t, const QuadConfig& cfg);
std::complex<double> zb_center(const LaurentPoly& W, const CyclePiece& piece, double t, const QuadConfig& cfg);
// series in (-W)^q/q!, keeping the monomials parallel to n_i
std::complex<double> zb_sing(const LaurentPoly& W, const CyclePiece& piece, const SingLoop& loop, double t,
                             int q_max);
// direct quadrature of z^n over the sing piece; vanishes unless n is parallel to n_i
std::complex<double> sing_phase_integral(const ToricModel& m, const KahlerClass& w, const CyclePiece& piece,
                                         const SingLoop& loop, const LatticeVec& n, double t, int tau_points);

// the canonical loop of a sing piece: conjugate when its multiplicity is negative
SingLoop piece_loop(const ToricModel& m, const KahlerClass& w, const LaurentPoly& W, const CyclePiece& piece,
                    double t, const EpsChoice& eps);

// quadrature of one piece at t
std::complex<double> zb_piece(const ToricModel& m, const KahlerClass& w, const LaurentPoly& W,
                              const CyclePiece& piece, double t, const EpsChoice& eps, const QuadConfig& cfg);
// leading-order closed form of one piece; the real locus maps to Z_top(O)
std::complex<double> piece_prediction(const ToricModel& m, const KahlerClass& w, const CyclePiece& piece,
                                      double t);

struct GammaIntegralReport {
    double t = 0, eps_prime = 0;
    double e1 = 0, e1_closed = 0;          // int_{t^e'}^inf e^{-y} dy/y  vs  -gamma - e' log t
    double log_moment = 0, log_closed = 0; // int_{t^e'}^inf e^{-y} log y dy/y  vs  gamma^2/2 + zeta(2)/2 - e'^2 log^2 t/2
    double residual1() const;
    double residual2() const;
};
GammaIntegralReport gamma_integral_checks(double t, double eps_prime);

struct VerificationRow {
    double t = 0;
    std::complex<double> zb, ztop;
    double abs_err = 0, norm_err = 0;
};

struct PieceValue {
    std::string label;
    double t = 0;
    std::complex<double> value, prediction;
};

struct Verification {
    std::vector<VerificationRow> rows;       // Z_B(alpha(O(L))) vs Z_top(O(L))
    std::vector<VerificationRow> diff_rows;  // the same minus the structure sheaf
    std::vector<PieceValue> pieces;
    double slope = 0, diff_slope = 0;
    double eps = 0;
    bool decreasing() const;
    bool diff_decreasing() const;
};

// least-squares slope of log err against log t
double fitted_slope(const std::vector<VerificationRow>& rows);

// eps defaults to choose_eps(m, w, W)
Verification verify(const ToricModel& m, const KahlerClass& w, const DivisorClass& L, const LaurentPoly& W,
                    const std::vector<double>& t_list, const QuadConfig& cfg,
                    std::optional<EpsChoice> eps = std::nullopt);

}  // namespace ghk
