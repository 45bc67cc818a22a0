#pragma once
// Tropicalization of W_t, the polytopes Xi and P(delta), dominance LP, amoebas.

#include "ghk/core.hpp"
#include "ghk/surface.hpp"

#include <string>
#include <vector>

namespace ghk {

// x -> c + <x, n> on M_R
struct AffineForm {
    Rat c;
    LatticeVec n;
    std::string label;
    Rat eval(const Point& x) const { return c + x.x * n.a + x.y * n.b; }
};

struct TropicalForm {
    std::vector<AffineForm> forms;
};

// one form per monomial, constant = valuation of its coefficient
TropicalForm tropicalize(const LaurentPoly& W);
// one form per term of every coefficient
TropicalForm tropicalize_terms(const LaurentPoly& W);
// beta_i and beta_ij; labels "i" and "i.j" (1-based)
TropicalForm beta_forms(const ToricModel& m, const KahlerClass& w);

struct Polygon {
    std::vector<Point> vertices;  // counterclockwise
    std::vector<int> facets;      // form index of the edge vertices[k] -> vertices[k+1]
    std::size_t size() const { return vertices.size(); }
};

// {x : f(x) >= delta for all forms}.  Throws if empty or unbounded.
Polygon polytope(const TropicalForm& T, const Rat& delta);
bool is_nonsingular(const Polygon& P, const TropicalForm& T);
Rat volume(const Polygon& P);
Rat affine_perimeter(const Polygon& P);
Point centroid(const Polygon& P);
Rat lattice_length(const Point& a, const Point& b);

// a0 + a1 d + a2 d^2
struct Quadratic {
    Rat a0, a1, a2;
    Rat operator()(const Rat& d) const { return a0 + a1 * d + a2 * d * d; }
    bool operator==(const Quadratic& o) const { return a0 == o.a0 && a1 == o.a1 && a2 == o.a2; }
};
struct VolumeCheck {
    Quadratic exact;         // (omega - delta c1)^2 / 2
    Quadratic interpolated;  // from volume(polytope(delta)) at 0, eps/2, eps
    bool ok() const { return exact == interpolated; }
};
VolumeCheck v_of_delta(const ToricModel& m, const KahlerClass& w, const Rat& eps);

// min over x of max_v (alpha(x) - beta_v(x)); nullopt when unbounded below
std::optional<Rat> dominance_margin(const AffineForm& alpha, const TropicalForm& beta);

struct DominanceReport {
    std::vector<AffineForm> extras;  // terms of W that are not beta forms
    std::vector<std::optional<Rat>> margins;
    // nullopt when there are no extras or some extra is not dominated at all
    std::optional<Rat> min_margin() const;
    bool strictly_dominated(const Rat& eps_prime) const;
};
DominanceReport dominance(const LaurentPoly& W, const TropicalForm& beta);

bool xi_equals_xi_star(const ToricModel& m, const KahlerClass& w, const LaurentPoly& W,
                       const LaurentPoly& Wstar);

struct EpsChoice {
    Rat eps_prime;
    Rat eps;
};
// eps' = half the smallest dominance gap, halved until P(eps') keeps all facets
EpsChoice choose_eps(const ToricModel& m, const KahlerClass& w, const LaurentPoly& W);
// same rule using only the lambda and c gaps
EpsChoice choose_eps(const ToricModel& m, const KahlerClass& w);

// perturbation spacing: 1/16 of the shortest lattice facet of Xi*
Rat default_spacing(const ToricModel& m, const KahlerClass& w);

// numerics at finite 0 < t < 1.  W must have positive coefficients.
double amoeba_volume(const LaurentPoly& W, double delta, double t);
double corner_defect(const LaurentPoly& W, const Rat& eps, double t);
double hausdorff_gap(const LaurentPoly& W, const Rat& delta, double t, int directions = 720);
// log W_t at the positive real point over x
double log_w(const LaurentPoly& W, double t, double x1, double x2);

}  // namespace ghk
