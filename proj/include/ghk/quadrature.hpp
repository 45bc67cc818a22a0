#pragma once
// Composite Gauss-Legendre rules and periodic trapezoid grids in long double.

#include <complex>
#include <vector>

namespace ghk {

using real = long double;
using cplx = std::complex<long double>;

// nodes and weights on [-1, 1]; order in {7, 10, 15, 20, 25, 30}
struct GaussRule {
    std::vector<real> x, w;
    int order() const { return static_cast<int>(x.size()); }
};
const GaussRule& gauss_rule(int order);

// nodes and weights of `cells` equal cells of [a, b]
struct Grid1D {
    std::vector<real> x, w;
};
Grid1D composite(const GaussRule& r, real a, real b, int cells);

// exp(2 pi i j k / N) for the trapezoid grid j = 0..N-1
class PhaseTable {
public:
    explicit PhaseTable(int N);
    int size() const { return N_; }
    cplx operator()(int j, long k) const;

private:
    int N_;
    std::vector<cplx> roots_;
};

}  // namespace ghk
