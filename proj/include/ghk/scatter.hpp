#pragma once
// Perturbed scattering diagrams, wall crossing, path-ordered products, completion.

#include "ghk/core.hpp"
#include "ghk/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ghk {

enum class WallKind { Line, Ray };

// fn is a polynomial in z^direction.  A line is supported on base + R*direction.
// An outgoing ray is supported on base - R>=0 * direction.
struct Wall {
    Point base;
    LatticeVec direction;
    WallKind kind = WallKind::Line;
    LaurentPoly fn;
    unsigned family = 0;  // bitmask of initial ray indices involved
    int ray_index = -1;   // lines only
    int wall_index = -1;  // lines only, order as entered in KahlerClass::c

    LatticeVec support_dir() const { return kind == WallKind::Ray ? -direction : direction; }
    Rat min_valuation() const;
};

struct ScatteringDiagram {
    std::vector<Wall> walls;
    Rat theta;
    Rat spacing;
};

// default truncation: sum lambda + sum c + max lambda
Rat default_theta(const ToricModel& m, const KahlerClass& w);

ScatteringDiagram initial_walls(const ToricModel& m, const KahlerClass& w, const Rat& spacing,
                                std::optional<Rat> theta = std::nullopt);

// z^q -> z^q fn^<m,q>, m vanishing on the wall and negative on travel
LaurentPoly cross(const LatticeVec& q, const Rat& coeff, const Rat& texp, const Wall& w,
                  const LatticeVec& travel, const Rat& theta);
LaurentPoly cross_poly(const LaurentPoly& p, const Wall& w, const LatticeVec& travel,
                       const Rat& theta);

struct Crossing {
    int wall = -1;
    LatticeVec travel;
};
LaurentPoly path_product(const ScatteringDiagram& d, const std::vector<Crossing>& loop,
                         const LaurentPoly& probe);

// counterclockwise small loop around p through every wall incident to p
std::vector<Crossing> loop_around(const ScatteringDiagram& d, const Point& p);
// walls whose support contains p
std::vector<int> walls_through(const ScatteringDiagram& d, const Point& p);
bool on_support(const Wall& w, const Point& p);
// p is at a ray base or on two non-parallel walls
bool is_singular_point(const ScatteringDiagram& d, const Point& p);

struct CompletionStats {
    std::size_t points_processed = 0;
    std::size_t rays_added = 0;
    std::size_t loop_products = 0;
};

ScatteringDiagram complete(const ScatteringDiagram& d, const Rat& theta,
                           CompletionStats* stats = nullptr);

struct ConsistencyReport {
    std::size_t points = 0;
    std::size_t failures = 0;
    std::optional<Point> first_failure;
    bool ok() const { return failures == 0; }
};
// loop product identity mod t^theta on z^(1,0), z^(0,1) at every intersection point
ConsistencyReport check_consistency(const ScatteringDiagram& d);

// all pairwise intersection points of supports
std::vector<Point> intersection_points(const ScatteringDiagram& d);

}  // namespace ghk
