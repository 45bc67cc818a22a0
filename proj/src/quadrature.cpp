#include "ghk/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ghk {

namespace {

template <unsigned N>
GaussRule expand() {
    using G = boost::math::quadrature::gauss<real, N>;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    GaussRule r;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0) {
            r.x.push_back(0);
            r.w.push_back(w[k]);
        } else {
            r.x.push_back(-a[k]);
            r.w.push_back(w[k]);
            r.x.push_back(a[k]);
            r.w.push_back(w[k]);
        }
    }
    return r;
}

GaussRule make_rule(int order) {
    switch (order) {
        case 7: return expand<7>();
        case 10: return expand<10>();
        case 15: return expand<15>();
        case 20: return expand<20>();
        case 25: return expand<25>();
        case 30: return expand<30>();
    }
    throw std::invalid_argument("gauss order must be one of 7, 10, 15, 20, 25, 30");
}

}  // namespace

const GaussRule& gauss_rule(int order) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
    return it->second;
}

Grid1D composite(const GaussRule& r, real a, real b, int cells) {
    if (cells < 1) throw std::invalid_argument("composite: need at least one cell");
    Grid1D g;
    real h = (b - a) / cells;
    for (int c = 0; c < cells; ++c) {
        real mid = a + (c + 0.5L) * h;
        for (int k = 0; k < r.order(); ++k) {
            g.x.push_back(mid + 0.5L * h * r.x[static_cast<std::size_t>(k)]);
            g.w.push_back(0.5L * h * r.w[static_cast<std::size_t>(k)]);
        }
    }
    return g;
}

PhaseTable::PhaseTable(int N) : N_(N) {
    if (N < 1) throw std::invalid_argument("PhaseTable: N must be positive");
    const real two_pi = 2 * std::acos(-1.0L);
    for (int j = 0; j < N; ++j) roots_.push_back(std::polar(1.0L, two_pi * j / N));
}

cplx PhaseTable::operator()(int j, long k) const {
    long r = (static_cast<long>(j) * k) % N_;
    if (r < 0) r += N_;
    return roots_[static_cast<std::size_t>(r)];
}

}  // namespace ghk
