#include "ghk/oscint.hpp"

#include "ghk/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace ghk {

void QuadConfig::validate() const {
    if (levels < 1) throw std::invalid_argument("quadrature levels must be positive");
    gauss_rule(gauss_order);
    if (min_cells < 1) throw std::invalid_argument("min_cells must be positive");
    if (tau_points < 4) throw std::invalid_argument("tau_points must be at least 4");
    if (!(rel_tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (!(t_cut > 1)) throw std::invalid_argument("t_cut must exceed 1");
    if (q_max < 0) throw std::invalid_argument("q_max must be non-negative");
}

QuadConfig precise_config() {
    QuadConfig c;
    c.levels = 8;
    c.gauss_order = 20;
    c.rel_tol = 1e-14;
    return c;
}

NumericW numeric_w(const LaurentPoly& W, double t) {
    if (!(t > 0 && t < 1)) throw std::invalid_argument("t must lie in (0,1)");
    NumericW r;
    r.t = t;
    r.ell = std::log(t);
    for (const auto& [n, s] : W.terms()) {
        real v = 0;
        for (const auto& [e, c] : s.terms()) v += static_cast<real>(to_double(c)) * std::exp(r.ell * to_double(e));
        if (!(v > 0)) throw std::invalid_argument("W has a non-positive coefficient at this t");
        r.terms.push_back({n, static_cast<double>(std::log(v))});
    }
    if (r.terms.empty()) throw std::invalid_argument("W is zero");
    return r;
}

namespace {

const real kPi = std::acos(-1.0L);
const cplx kTwoPiI(0, 2 * kPi);

std::complex<double> down(const cplx& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

bool close(const cplx& a, const cplx& b, double tol) {
    real scale = std::max<real>(std::abs(b), 1e-300L);
    return std::abs(a - b) <= tol * scale;
}

// repeat `eval(level)` with doubled resolution until two levels agree
template <class F>
cplx refine(F eval, const QuadConfig& cfg, const char* what) {
    cplx prev = eval(0);
    for (int lv = 1; lv <= cfg.levels; ++lv) {
        cplx cur = eval(lv);
        if (close(cur, prev, cfg.rel_tol)) return cur;
        prev = cur;
    }
    throw std::runtime_error(std::string(what) + ": quadrature did not converge");
}

// magnitudes of the terms of W at the real point x
void magnitudes(const NumericW& W, real x1, real x2, std::vector<real>& out) {
    out.resize(W.terms.size());
    for (std::size_t k = 0; k < W.terms.size(); ++k) {
        const auto& tm = W.terms[k];
        out[k] = std::exp(static_cast<real>(tm.logc) + static_cast<real>(W.ell) * (tm.n.a * x1 + tm.n.b * x2));
    }
}

real rd(const Rat& r) { return static_cast<real>(to_double(r)); }

LatticeVec ray_of(const MVec& circle) { return {circle.b, -circle.a}; }

// Sum over a trapezoid circle of e^{-W}, with the phase of z^n equal to e^{2 pi i tau k_n}
cplx circle_mean(const std::vector<real>& mags, const std::vector<long>& freq, const PhaseTable& ph) {
    cplx s = 0;
    for (int j = 0; j < ph.size(); ++j) {
        cplx w = 0;
        for (std::size_t k = 0; k < mags.size(); ++k) w += mags[k] * ph(j, freq[k]);
        s += std::exp(-w);
    }
    return s / static_cast<real>(ph.size());
}

}  // namespace

std::complex<double> zb_real_locus(const LaurentPoly& W, double t, const QuadConfig& cfg) {
    cfg.validate();
    NumericW nw = numeric_w(W, t);
    real ell = nw.ell;
    // outside P(log t_cut / log t) some term exceeds t_cut
    double dcut = std::log(cfg.t_cut) / nw.ell;
    Rat dq(std::floor(dcut * 4096) / 4096);
    Polygon P = polytope(tropicalize(W), dq);
    real x0 = 1e300L, x1 = -1e300L, y0 = 1e300L, y1 = -1e300L;
    for (const auto& v : P.vertices) {
        x0 = std::min(x0, rd(v.x));
        x1 = std::max(x1, rd(v.x));
        y0 = std::min(y0, rd(v.y));
        y1 = std::max(y1, rd(v.y));
    }
    const GaussRule& rule = gauss_rule(cfg.gauss_order);
    auto n_for = [&](real len) { return std::max(cfg.min_cells, static_cast<int>(std::ceil(len * std::abs(ell) / 2))); };
    std::vector<real> mags;
    auto eval = [&](int lv) {
        Grid1D gx = composite(rule, x0, x1, n_for(x1 - x0) << lv);
        Grid1D gy = composite(rule, y0, y1, n_for(y1 - y0) << lv);
        real total = 0;
        for (std::size_t i = 0; i < gx.x.size(); ++i) {
            real col = 0;
            for (std::size_t j = 0; j < gy.x.size(); ++j) {
                magnitudes(nw, gx.x[i], gy.x[j], mags);
                real s = 0;
                for (real m : mags) s += m;
                col += gy.w[j] * std::exp(-s);
            }
            total += gx.w[i] * col;
        }
        return cplx(total * ell * ell, 0);
    };
    return down(refine(eval, cfg, "real locus"));
}

std::complex<double> zb_tube(const LaurentPoly& W, const CyclePiece& piece, double t, const QuadConfig& cfg) {
    if (piece.kind != PieceKind::Tube) throw std::invalid_argument("zb_tube: not a tube piece");
    cfg.validate();
    if (piece.multiplicity == 0) return 0;
    NumericW nw = numeric_w(W, t);
    real ell = nw.ell;
    const PathSpec& p = piece.path;
    LatticeVec ni = ray_of(piece.circle);
    std::vector<long> freq;
    for (const auto& tm : nw.terms) freq.push_back(static_cast<long>(pairing(piece.circle, tm.n)));
    // Omega = 2 pi i log t <rho', n_i> ds dtau
    auto pair_n = [&](real a, real b) { return a * ni.a + b * ni.b; };
    real ax = rd(p.anchor.x), ay = rd(p.anchor.y), fx = rd(p.foot.x), fy = rd(p.foot.y);
    real ux = rd(p.u.x), uy = rd(p.u.y);
    real in_rate = pair_n(fx - ax, fy - ay);
    real out_rate = pair_n(ux, uy);
    real rmax = rd(p.eps_prime) - static_cast<real>(std::log(cfg.t_cut)) / ell;
    const GaussRule& rule = gauss_rule(cfg.gauss_order);
    real in_len = std::hypot(fx - ax, fy - ay);
    int in_cells = std::max(cfg.min_cells, static_cast<int>(std::ceil(in_len * std::abs(ell) / 2)));
    int out_cells = std::max(cfg.min_cells, static_cast<int>(std::ceil(rmax * std::abs(ell) / 2)));
    std::vector<real> mags;
    auto eval = [&](int lv) {
        PhaseTable ph(cfg.tau_points << lv);
        cplx s_in = 0, s_out = 0;
        if (in_rate != 0) {
            Grid1D g = composite(rule, 0, 1, in_cells << lv);
            for (std::size_t k = 0; k < g.x.size(); ++k) {
                magnitudes(nw, ax + g.x[k] * (fx - ax), ay + g.x[k] * (fy - ay), mags);
                s_in += g.w[k] * circle_mean(mags, freq, ph);
            }
        }
        Grid1D g = composite(rule, 0, rmax, out_cells << lv);
        for (std::size_t k = 0; k < g.x.size(); ++k) {
            magnitudes(nw, fx + g.x[k] * ux, fy + g.x[k] * uy, mags);
            s_out += g.w[k] * circle_mean(mags, freq, ph);
        }
        return kTwoPiI * ell * (in_rate * s_in + out_rate * s_out);
    };
    cplx v = refine(eval, cfg, "tube") * static_cast<real>(piece.multiplicity);
    return down(p.reversed ? -v : v);
}

std::complex<double> zb_center(const LaurentPoly& W, const CyclePiece& piece, double t, const QuadConfig& cfg) {
    if (piece.kind != PieceKind::Center) throw std::invalid_argument("zb_center: not a center piece");
    cfg.validate();
    if (piece.multiplicity == 0 || piece.sigma.size() < 3) return 0;
    NumericW nw = numeric_w(W, t);
    // the torus fiber over the origin: |z^n| is the coefficient alone
    std::vector<real> mags;
    magnitudes(nw, 0, 0, mags);
    const GaussRule& rule = gauss_rule(cfg.gauss_order);
    const auto& S = piece.sigma;
    auto integrand = [&](real y1, real y2) {
        cplx w = 0;
        for (std::size_t k = 0; k < mags.size(); ++k)
            w += mags[k] * std::polar(1.0L, 2 * kPi * (nw.terms[k].n.a * y1 + nw.terms[k].n.b * y2));
        return std::exp(-w);
    };
    auto eval = [&](int lv) {
        Grid1D g = composite(rule, 0, 1, cfg.min_cells << lv);
        cplx total = 0;
        // signed fan triangles (v_0, v_k, v_{k+1}), collapsed square map
        real ox = rd(S[0].x), oy = rd(S[0].y);
        for (std::size_t k = 1; k + 1 < S.size(); ++k) {
            real ax = rd(S[k].x) - ox, ay = rd(S[k].y) - oy;
            real bx = rd(S[k + 1].x) - ox, by = rd(S[k + 1].y) - oy;
            real jac = ax * by - ay * bx;
            if (jac == 0) continue;
            for (std::size_t i = 0; i < g.x.size(); ++i)
                for (std::size_t j = 0; j < g.x.size(); ++j) {
                    real u = g.x[i], v = g.x[j];
                    real y1 = ox + u * (ax + v * (bx - ax)), y2 = oy + u * (ay + v * (by - ay));
                    total += g.w[i] * g.w[j] * u * jac * integrand(y1, y2);
                }
        }
        return kTwoPiI * kTwoPiI * total;
    };
    return down(refine(eval, cfg, "center") * static_cast<real>(piece.multiplicity));
}

std::complex<double> zb_sing(const LaurentPoly& W, const CyclePiece& piece, const SingLoop& loop, double t,
                             int q_max) {
    if (piece.kind != PieceKind::Sing) throw std::invalid_argument("zb_sing: not a sing piece");
    if (q_max < 0) throw std::invalid_argument("q_max must be non-negative");
    if (piece.multiplicity == 0) return 0;
    LatticeVec ni = ray_of(piece.circle);
    std::map<LatticeVec, real> w;
    if (!W.terms().empty()) {
        NumericW nw = numeric_w(W, t);
        for (const auto& tm : nw.terms) w[tm.n] = -std::exp(static_cast<real>(tm.logc));
    }
    // (-W)^q / q! summed, term by term
    std::map<LatticeVec, real> power{{LatticeVec{0, 0}, 1.0L}}, total = power;
    for (int q = 1; q <= q_max; ++q) {
        std::map<LatticeVec, real> next;
        for (const auto& [a, x] : power)
            for (const auto& [b, y] : w) next[a + b] += x * y / q;
        power = std::move(next);
        for (const auto& [n, c] : power) total[n] += c;
    }
    real r = loop.radius;
    cplx s = 0;
    for (const auto& [n, c] : total) {
        if (wedge(ni, n) != 0) continue;
        long a = ni.a != 0 ? n.a / ni.a : n.b / ni.b;
        if (a == 0) {
            s += c * cplx(0, loop.theta_end);
        } else {
            // int p^a dlog p from r to r e^{i theta_end}, an odd multiple of pi
            real sign = (a % 2 == 0) ? 1 : -1;
            s += c * std::pow(r, static_cast<real>(a)) * (sign - 1) / static_cast<real>(a);
        }
    }
    return down(kTwoPiI * s * static_cast<real>(piece.multiplicity));
}

SingLoop piece_loop(const ToricModel& m, const KahlerClass& w, const LaurentPoly& W, const CyclePiece& piece,
                    double t, const EpsChoice& eps) {
    if (piece.kind != PieceKind::Sing) throw std::invalid_argument("piece_loop: not a sing piece");
    double A = default_A(W, m.ray(piece.ray));
    return sing_loop(m, w, piece.ray, piece.wall, piece.k, t, A, eps, piece.multiplicity < 0);
}

std::complex<double> sing_phase_integral(const ToricModel& m, const KahlerClass& w, const CyclePiece& piece,
                                         const SingLoop& loop, const LatticeVec& n, double t, int tau_points) {
    if (piece.kind != PieceKind::Sing) throw std::invalid_argument("sing_phase_integral: not a sing piece");
    LatticeVec ni = m.ray(piece.ray);
    LatticeVec gi = adapted_partner(ni);
    long a = wedge(n, gi), b = wedge(ni, n);
    // chart uv = H(w), w = z^{n_i}, u = z^{gamma_i}; the u-circle shrinks to a point at s = 1
    std::vector<real> cs;
    const auto& all = w.c[static_cast<std::size_t>(m.idx(piece.ray))];
    Rat cij = all.at(static_cast<std::size_t>(piece.wall));
    for (const auto& c : all)
        if (c <= cij) cs.push_back(std::pow(static_cast<real>(t), rd(c)));
    auto H = [&](const cplx& z) {
        cplx h = 1;
        for (real f : cs) h *= 1.0L + f * z;
        return h;
    };
    PhaseTable ph(tau_points);
    const GaussRule& rule = gauss_rule(20);
    Grid1D g = composite(rule, 0, 1, 16);
    cplx total = 0;
    for (std::size_t k = 0; k < g.x.size(); ++k) {
        real s = g.x[k];
        std::complex<double> pd = loop.at(static_cast<double>(s));
        cplx p(pd.real(), pd.imag());
        std::complex<double> dl = loop.dlog(static_cast<double>(s));
        real rho = std::pow(std::abs(H(p)), s / 2);
        cplx ring = 0;
        for (int j = 0; j < ph.size(); ++j) ring += ph(j, b);
        ring /= static_cast<real>(ph.size());
        total += g.w[k] * std::pow(p, static_cast<real>(a)) * std::pow(rho, static_cast<real>(b)) *
                 cplx(dl.real(), dl.imag()) * ring;
    }
    return down(kTwoPiI * total * static_cast<real>(piece.multiplicity));
}

std::complex<double> zb_piece(const ToricModel& m, const KahlerClass& w, const LaurentPoly& W,
                              const CyclePiece& piece, double t, const EpsChoice& eps, const QuadConfig& cfg) {
    switch (piece.kind) {
        case PieceKind::RealLocus: return zb_real_locus(W, t, cfg) * static_cast<double>(piece.multiplicity);
        case PieceKind::Tube: return zb_tube(W, piece, t, cfg);
        case PieceKind::Center: return zb_center(W, piece, t, cfg);
        case PieceKind::Sing: return zb_sing(W, piece, piece_loop(m, w, W, piece, t, eps), t, cfg.q_max);
    }
    throw std::logic_error("unknown piece kind");
}

std::complex<double> piece_prediction(const ToricModel& m, const KahlerClass& w, const CyclePiece& piece,
                                      double t) {
    const std::complex<double> tau(0, 2 * M_PI);
    const double ell = std::log(t);
    const double mult = piece.multiplicity;
    switch (piece.kind) {
        case PieceKind::RealLocus: return eval_charge(gamma_charge_O(m, w), t) * mult;
        case PieceKind::Tube: {
            double lam = to_double(w.lambdas.at(static_cast<std::size_t>(m.idx(piece.ray))));
            std::complex<double> v;
            if (piece.wall < 0) {
                v = tau * mult * (-lam * ell - kEulerGamma);
            } else {
                double c = to_double(w.c.at(static_cast<std::size_t>(m.idx(piece.ray))).at(static_cast<std::size_t>(piece.wall)));
                v = tau * mult * ((c - lam) * ell - kEulerGamma);
            }
            return piece.path.reversed ? -v : v;
        }
        case PieceKind::Center: return tau * tau * to_double(signed_area(piece.sigma)) * mult;
        case PieceKind::Sing: {
            // (1-2k) pi i on the arc, or (2k-1) pi i on the conjugate arc with multiplicity -1
            double theta = (piece.multiplicity < 0 ? 1.0 : -1.0) * (2 * piece.k - 1) * M_PI;
            return tau * std::complex<double>(0, theta) * mult;
        }
    }
    throw std::logic_error("unknown piece kind");
}

double GammaIntegralReport::residual1() const { return std::abs(e1 - e1_closed); }
double GammaIntegralReport::residual2() const { return std::abs(log_moment - log_closed); }

GammaIntegralReport gamma_integral_checks(double t, double eps_prime) {
    if (!(t > 0 && t < 1)) throw std::invalid_argument("t must lie in (0,1)");
    if (!(eps_prime > 0)) throw std::invalid_argument("eps' must be positive");
    GammaIntegralReport r;
    r.t = t;
    r.eps_prime = eps_prime;
    double ell = std::log(t), x = std::pow(t, eps_prime);
    boost::math::quadrature::exp_sinh<double> q;
    // substitute y = x + s so the lower limit sits at the origin of exp_sinh
    r.e1 = q.integrate([&](double s) { double y = x + s; return std::exp(-y) / y; }, 0.0,
                       std::numeric_limits<double>::infinity());
    r.log_moment = q.integrate([&](double s) { double y = x + s; return std::exp(-y) * std::log(y) / y; }, 0.0,
                               std::numeric_limits<double>::infinity());
    const double zeta2 = M_PI * M_PI / 6;
    r.e1_closed = -kEulerGamma - eps_prime * ell;
    r.log_closed = 0.5 * kEulerGamma * kEulerGamma + 0.5 * zeta2 - 0.5 * eps_prime * eps_prime * ell * ell;
    return r;
}

namespace {

bool strictly_decreasing(const std::vector<VerificationRow>& rows) {
    for (std::size_t k = 1; k < rows.size(); ++k)
        if (!(rows[k].abs_err < rows[k - 1].abs_err)) return false;
    return !rows.empty();
}

}  // namespace

bool Verification::decreasing() const { return strictly_decreasing(rows); }
bool Verification::diff_decreasing() const { return strictly_decreasing(diff_rows); }

double fitted_slope(const std::vector<VerificationRow>& rows) {
    if (rows.size() < 2) throw std::invalid_argument("fitted_slope needs two rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (const auto& r : rows) {
        if (!(r.abs_err > 0)) continue;
        double x = std::log(r.t), y = std::log(r.abs_err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1;
    }
    if (n < 2) return std::numeric_limits<double>::infinity();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Verification verify(const ToricModel& m, const KahlerClass& w, const DivisorClass& L, const LaurentPoly& W,
                    const std::vector<double>& t_list, const QuadConfig& cfg, std::optional<EpsChoice> eps_in) {
    require_valid(m, w);
    cfg.validate();
    if (t_list.size() < 3) throw std::invalid_argument("verify needs at least three values of t");
    for (std::size_t k = 0; k < t_list.size(); ++k) {
        if (!(t_list[k] > 0 && t_list[k] < 1)) throw std::invalid_argument("t must lie in (0,1)");
        if (k > 0 && !(t_list[k] < t_list[k - 1])) throw std::invalid_argument("t values must be decreasing");
    }
    EpsChoice eps = eps_in ? *eps_in : choose_eps(m, w, W);
    if (!(eps.eps > 0 && eps.eps < eps.eps_prime)) throw std::invalid_argument("need 0 < eps < eps'");
    MirrorCycle C = build_cycle(m, w, L, eps.eps_prime);
    SymbolicCharge zl = gamma_charge_line(m, w, L), z0 = gamma_charge_O(m, w);
    Verification out;
    out.eps = to_double(eps.eps);
    for (double t : t_list) {
        std::complex<double> zb = 0, zb0 = 0;
        for (const auto& p : C.pieces) {
            std::complex<double> v = zb_piece(m, w, W, p, t, eps, cfg);
            out.pieces.push_back({p.label(), t, v, piece_prediction(m, w, p, t)});
            zb += v;
            if (p.kind == PieceKind::RealLocus) zb0 += v;
        }
        double te = std::pow(t, out.eps);
        auto row = [&](std::complex<double> b, std::complex<double> a) {
            VerificationRow r;
            r.t = t;
            r.zb = b;
            r.ztop = a;
            r.abs_err = std::abs(b - a);
            r.norm_err = r.abs_err / te;
            return r;
        };
        std::complex<double> tl = eval_charge(zl, t), t0 = eval_charge(z0, t);
        out.rows.push_back(row(zb, tl));
        out.diff_rows.push_back(row(zb - zb0, tl - t0));
    }
    out.slope = fitted_slope(out.rows);
    out.diff_slope = fitted_slope(out.diff_rows);
    return out;
}

}  // namespace ghk
