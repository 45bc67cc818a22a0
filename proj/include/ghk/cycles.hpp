#pragma once
// Mirror cycles alpha(O(L)) as lists of parametrized pieces.

#include "ghk/surface.hpp"
#include "ghk/tropical.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace ghk {

// rho(s) = anchor + s (foot - anchor) on [0,1], then foot + r u for r >= 0.
// The outgoing part is parametrized by beta_i, which falls from eps' on F_i.
struct PathSpec {
    int ray = 0;
    Point anchor;
    Point foot;  // midpoint of the facet F_i of P(eps')
    Point u;     // <u, n_i> = -1
    Rat eps_prime;
    bool reversed = false;
    Point at(const Rat& s) const { return anchor + (foot - anchor) * s; }
};

enum class PieceKind { RealLocus, Tube, Center, Sing };
std::string kind_name(PieceKind k);

// p(s) = r exp(bump sin(pi s)) exp(i theta_end s).  The radial bump keeps the
// arc off -r for 0 < s < 1 once it winds more than half a turn.
struct SingLoop {
    double radius = 0;     // t^{-c_ij}
    double theta_end = 0;  // (1-2k) pi, or (2k-1) pi on the conjugate arc
    double bump = 0;
    int k = 1;
    double A = 0;
    std::complex<double> at(double s) const;
    std::complex<double> dlog(double s) const;  // p'(s)/p(s)
    // log p(1) - log p(0) along the arc
    std::complex<double> winding() const { return {0, theta_end}; }
};

struct CyclePiece {
    PieceKind kind = PieceKind::RealLocus;
    int multiplicity = 1;
    int ray = -1;   // tube and sing
    int wall = -1;  // exceptional tube and sing, index into c[ray]
    int k = 0;      // sing winding index
    PathSpec path;  // tube
    MVec circle;    // tube and sing: n_i^vee
    std::vector<Point> sigma;  // center: twisted polygon chain
    std::string label() const;
};

struct MirrorCycle {
    DivisorClass divisor;
    std::vector<CyclePiece> pieces;
};

// chain v_1 = 0, v_{i+1} = v_i + kappa_i n_i^vee
std::vector<Point> twisted_polytope(const ToricModel& m, const DivisorClass& L_toric);
// shoelace over the chain
Rat signed_area(const std::vector<Point>& chain);

// primitive gamma_i with n_i ^ gamma_i = 1
LatticeVec adapted_partner(const LatticeVec& n);

// bump = A (eps' - eps) |log t| / 2, inside the annulus of the construction
SingLoop sing_loop(const ToricModel& m, const KahlerClass& w, int i, int j, int k, double t, double A,
                   const EpsChoice& eps, bool conjugate = false);
// 1 / (2 max |a(n)|) over the monomials n = a n_i + b gamma_i of W
double default_A(const LaurentPoly& W, const LatticeVec& n_i);

// the anchored paths: one per ray, then one per (i, j) in the order of KahlerClass::c
struct DefaultPaths {
    std::vector<PathSpec> rays;
    std::vector<std::vector<PathSpec>> walls;
};
DefaultPaths default_paths(const ToricModel& m, const KahlerClass& w, const Rat& eps_prime);
// samples the outgoing ray and checks beta_i < beta_v - eps' for v != i
bool path_in_region(const PathSpec& p, const TropicalForm& beta, int ray_form, double beta_cut);

MirrorCycle build_cycle(const ToricModel& m, const KahlerClass& w, const DivisorClass& L,
                        const Rat& eps_prime);
// (ray, wall) -> total tube multiplicity; wall = -1 for toric tubes.  Linear in L.
std::map<std::pair<int, int>, long> tube_multiplicities(const MirrorCycle& c);

}  // namespace ghk
