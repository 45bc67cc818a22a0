#pragma once
// Broken lines, theta functions at a point of the special chamber, superpotentials.

#include "ghk/scatter.hpp"

#include <string>
#include <vector>

namespace ghk {

struct Segment {
    Point start;            // where the segment begins (the first one starts at infinity)
    LatticeVec direction;   // travel direction, equal to -exponent
    TExponentSeries coeff;  // attached coefficient
    LatticeVec exponent;
    int bend_wall = -1;     // wall crossed with a bend at the start of this segment
};

struct BrokenLine {
    LatticeVec q;
    std::vector<Segment> segments;  // in travel order
    Point endpoint;
    Rat coeff;
    Rat texp;
    LatticeVec final_exponent;
    int bends() const;
};

std::vector<BrokenLine> broken_lines(const ScatteringDiagram& d, const LatticeVec& q,
                                     const Point& S, const Rat& theta,
                                     const Rat& prefactor = Rat(0));
LaurentPoly theta_expand(const ScatteringDiagram& d, const LatticeVec& q, const Point& S,
                         const Rat& theta);

// S must avoid all walls and be joined to the origin without crossing one
void check_basepoint(const ScatteringDiagram& d, const Point& S);
// basepoints used by default and by the chamber-constancy test
std::vector<Point> default_basepoints(const Rat& spacing);

struct Superpotential {
    LaurentPoly poly;
    std::vector<LaurentPoly> per_theta;
    std::vector<std::vector<BrokenLine>> lines;
    Point basepoint;
};

Superpotential superpotential(const ToricModel& m, const KahlerClass& w,
                              const ScatteringDiagram& completed, const Point& S,
                              const Rat& theta);
LaurentPoly truncated_superpotential(const ToricModel& m, const KahlerClass& w);
// theta*_i without the t^lambda_i prefactor
LaurentPoly truncated_theta(const ToricModel& m, const KahlerClass& w, int i);

struct BendAudit {
    std::size_t lines = 0;
    std::size_t bends = 0;
    std::size_t violations = 0;
    bool ok() const { return violations == 0; }
};
BendAudit bend_audit(const std::vector<BrokenLine>& lines, const ScatteringDiagram& d);

// the broken line with the most bends among those whose segment monomials all
// occur in truncated (t^lambda_i theta*_i); throws unless it is unique
BrokenLine maximally_bent_line(const std::vector<BrokenLine>& lines, const LaurentPoly& truncated);

}  // namespace ghk
