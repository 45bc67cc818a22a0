#include "ghk/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ghk {

using nlohmann::json;

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json jpoint(const Point& p) { return json::array({rat_str(p.x), rat_str(p.y)}); }
json jvec(const LatticeVec& v) { return json::array({v.a, v.b}); }
json jcomplex(std::complex<double> z) { return json::array({num(z.real()), num(z.imag())}); }

json jpoly(const LaurentPoly& p) {
    json out = json::array();
    for (const auto& [n, s] : p.terms()) out.push_back({{"exponent", jvec(n)}, {"coefficient", s.str()}});
    return out;
}

json jpolygon(const Polygon& P, const TropicalForm& T) {
    json v = json::array(), f = json::array();
    for (const auto& x : P.vertices) v.push_back(jpoint(x));
    for (int k : P.facets) f.push_back(T.forms[static_cast<std::size_t>(k)].label);
    return {{"vertices", v}, {"facets", f}, {"volume", rat_str(volume(P))},
            {"affine_perimeter", rat_str(affine_perimeter(P))}};
}

json jquad(const Quadratic& q) { return {{"a0", rat_str(q.a0)}, {"a1", rat_str(q.a1)}, {"a2", rat_str(q.a2)}}; }

json jcharge(const SymbolicCharge& z) {
    json terms = json::array();
    for (const auto& [m, c] : z.terms()) terms.push_back({{"monomial", m.str()}, {"coefficient", rat_str(c)}});
    return {{"text", z.str()}, {"terms", terms}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// M_R drawn into a square canvas
struct Canvas {
    double x0, x1, y0, y1;
    double size = 600;
    std::ostringstream body;

    Canvas(double a, double b, double c, double d) : x0(a), x1(b), y0(c), y1(d) {}
    double px(double x) const { return (x - x0) / (x1 - x0) * size; }
    double py(double y) const { return size - (y - y0) / (y1 - y0) * size; }
    void line(double ax, double ay, double bx, double by, const std::string& color, double w = 1,
              const std::string& extra = "") {
        body << "<line x1=\"" << num(px(ax)) << "\" y1=\"" << num(py(ay)) << "\" x2=\"" << num(px(bx)) << "\" y2=\""
             << num(py(by)) << "\" stroke=\"" << color << "\" stroke-width=\"" << w << "\"" << extra << "/>\n";
    }
    void polygon(const std::vector<Point>& v, const std::string& stroke, const std::string& fill,
                 const std::string& extra = "") {
        body << "<polygon points=\"";
        for (const auto& p : v) body << num(px(to_double(p.x))) << "," << num(py(to_double(p.y))) << " ";
        body << "\" stroke=\"" << stroke << "\" fill=\"" << fill << "\"" << extra << "/>\n";
    }
    void dot(double x, double y, const std::string& color, double r = 3) {
        body << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"" << r << "\" fill=\"" << color
             << "\"/>\n";
    }
    void text(double x, double y, const std::string& s) {
        body << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y)) << "\" font-size=\"11\">" << s << "</text>\n";
    }
    std::string str() const {
        std::ostringstream o;
        o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
          << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
          << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
          << body.str() << "</svg>\n";
        return o.str();
    }
};

Canvas canvas_around(const Polygon& P, double pad) {
    double a = 1e300, b = -1e300, c = 1e300, d = -1e300;
    for (const auto& v : P.vertices) {
        a = std::min(a, to_double(v.x));
        b = std::max(b, to_double(v.x));
        c = std::min(c, to_double(v.y));
        d = std::max(d, to_double(v.y));
    }
    double w = std::max(b - a, d - c) * pad;
    double cx = (a + b) / 2, cy = (c + d) / 2;
    return Canvas(cx - w, cx + w, cy - w, cy + w);
}

}  // namespace

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) {
        if (ch == '"') o += '"';
        o += ch;
    }
    return o + "\"";
}

std::string scatter_json(Pipeline& p) {
    const ScatteringDiagram& d = p.diagram();
    json walls = json::array();
    for (const auto& w : d.walls)
        walls.push_back({{"kind", w.kind == WallKind::Line ? "line" : "ray"},
                         {"base", jpoint(w.base)},
                         {"direction", jvec(w.direction)},
                         {"function", w.fn.str()},
                         {"family", w.family},
                         {"ray_index", w.ray_index},
                         {"wall_index", w.wall_index}});
    ConsistencyReport r = check_consistency(d);
    json j{{"preset", p.inputs().model.name},
           {"theta", rat_str(d.theta)},
           {"spacing", rat_str(d.spacing)},
           {"walls", walls},
           {"consistency", {{"points", r.points}, {"failures", r.failures}}}};
    return dump(j);
}

std::string theta_json(Pipeline& p) {
    const Superpotential& W = p.superpotential();
    const auto& in = p.inputs();
    json lines = json::array();
    for (std::size_t i = 0; i < W.lines.size(); ++i) {
        json li = json::array();
        for (const auto& bl : W.lines[i]) {
            json segs = json::array();
            for (const auto& s : bl.segments)
                segs.push_back({{"start", jpoint(s.start)},
                                {"exponent", jvec(s.exponent)},
                                {"coefficient", s.coeff.str()},
                                {"bend_wall", s.bend_wall}});
            li.push_back({{"final_exponent", jvec(bl.final_exponent)},
                          {"coefficient", rat_str(bl.coeff)},
                          {"t_exponent", rat_str(bl.texp)},
                          {"bends", bl.bends()},
                          {"segments", segs}});
        }
        lines.push_back(li);
    }
    json per = json::array();
    for (const auto& th : W.per_theta) per.push_back(jpoly(th));
    std::size_t violations = 0;
    for (const auto& li : W.lines) violations += bend_audit(li, p.diagram()).violations;
    json j{{"preset", in.model.name},
           {"basepoint", jpoint(W.basepoint)},
           {"W", jpoly(W.poly)},
           {"W_text", W.poly.str()},
           {"W_star", jpoly(truncated_superpotential(in.model, in.omega))},
           {"per_theta", per},
           {"broken_lines", lines},
           {"bend_violations", violations}};
    return dump(j);
}

std::string polytope_json(Pipeline& p) {
    const auto& in = p.inputs();
    const LaurentPoly& W = p.superpotential().poly;
    EpsChoice e = p.eps();
    TropicalForm T = tropicalize(W);
    TropicalForm B = beta_forms(in.model, in.omega);
    VolumeCheck vc = v_of_delta(in.model, in.omega, e.eps);
    DominanceReport dr = dominance(W, B);
    json extras = json::array();
    for (std::size_t k = 0; k < dr.extras.size(); ++k)
        extras.push_back({{"form", dr.extras[k].label},
                          {"margin", dr.margins[k] ? json(rat_str(*dr.margins[k])) : json(nullptr)}});
    json j{{"preset", in.model.name},
           {"eps_prime", rat_str(e.eps_prime)},
           {"eps", rat_str(e.eps)},
           {"Xi", jpolygon(polytope(T, 0), T)},
           {"P_eps_prime", jpolygon(polytope(B, e.eps_prime), B)},
           {"P_eps", jpolygon(polytope(B, e.eps), B)},
           {"V_exact", jquad(vc.exact)},
           {"V_interpolated", jquad(vc.interpolated)},
           {"V_match", vc.ok()},
           {"xi_equals_xi_star", xi_equals_xi_star(in.model, in.omega, W, truncated_superpotential(in.model, in.omega))},
           {"dominance", extras}};
    return dump(j);
}

std::string charge_json(Pipeline& p, bool* equal) {
    const auto& in = p.inputs();
    SymbolicCharge g = gamma_charge_O(in.model, in.omega);
    SymbolicCharge q = polytope_charge_O(in.model, in.omega);
    SymbolicCharge l = gamma_charge_line(in.model, in.omega, in.L);
    bool eq = (g - q).terms().empty();
    if (equal) *equal = eq;
    json ev = json::array();
    for (double t : p.config().t_list)
        ev.push_back({{"t", num(t)}, {"Z_top_O", jcomplex(eval_charge(g, t))}, {"Z_top_L", jcomplex(eval_charge(l, t))}});
    json j{{"preset", in.model.name},
           {"gamma_form", jcharge(g)},
           {"polytope_form", jcharge(q)},
           {"equal", eq},
           {"divisor", in.L.str()},
           {"line_charge", jcharge(l)},
           {"values", ev}};
    return dump(j);
}

std::string cycle_json(Pipeline& p) {
    const auto& in = p.inputs();
    EpsChoice e = p.eps();
    MirrorCycle C = build_cycle(in.model, in.omega, in.L, e.eps_prime);
    json pieces = json::array();
    for (const auto& pc : C.pieces) {
        json j{{"label", pc.label()}, {"kind", kind_name(pc.kind)}, {"multiplicity", pc.multiplicity}};
        if (pc.kind == PieceKind::Tube) {
            j["ray"] = pc.ray + 1;
            if (pc.wall >= 0) j["wall"] = pc.wall + 1;
            j["anchor"] = jpoint(pc.path.anchor);
            j["foot"] = jpoint(pc.path.foot);
            j["u"] = jpoint(pc.path.u);
            j["circle"] = json::array({pc.circle.a, pc.circle.b});
        } else if (pc.kind == PieceKind::Center) {
            json s = json::array();
            for (const auto& v : pc.sigma) s.push_back(jpoint(v));
            j["sigma"] = s;
            j["signed_area"] = rat_str(signed_area(pc.sigma));
        } else if (pc.kind == PieceKind::Sing) {
            j["ray"] = pc.ray + 1;
            j["wall"] = pc.wall + 1;
            j["k"] = pc.k;
            j["conjugate"] = pc.multiplicity < 0;
        }
        pieces.push_back(j);
    }
    json j{{"preset", in.model.name}, {"divisor", in.L.str()}, {"eps_prime", rat_str(e.eps_prime)}, {"pieces", pieces}};
    return dump(j);
}

std::string verify_csv(const Verification& v) {
    std::ostringstream o;
    o << "t,ReZB,ImZB,ReZtop,ImZtop,abs_err,norm_err\r\n";
    for (const auto& r : v.rows)
        o << csv_field(num(r.t)) << "," << num(r.zb.real()) << "," << num(r.zb.imag()) << "," << num(r.ztop.real())
          << "," << num(r.ztop.imag()) << "," << num(r.abs_err) << "," << num(r.norm_err) << "\r\n";
    return o.str();
}

std::string verify_json(const Verification& v) {
    auto rows = [](const std::vector<VerificationRow>& rs) {
        json a = json::array();
        for (const auto& r : rs)
            a.push_back({{"t", num(r.t)},
                         {"Z_B", jcomplex(r.zb)},
                         {"Z_top", jcomplex(r.ztop)},
                         {"abs_err", num(r.abs_err)},
                         {"norm_err", num(r.norm_err)}});
        return a;
    };
    json pieces = json::array();
    for (const auto& pv : v.pieces)
        pieces.push_back({{"label", pv.label}, {"t", num(pv.t)}, {"value", jcomplex(pv.value)},
                          {"prediction", jcomplex(pv.prediction)}});
    json j{{"eps", num(v.eps)},
           {"rows", rows(v.rows)},
           {"difference_rows", rows(v.diff_rows)},
           {"slope", num(v.slope)},
           {"difference_slope", num(v.diff_slope)},
           {"decreasing", v.decreasing()},
           {"difference_decreasing", v.diff_decreasing()},
           {"pieces", pieces}};
    return dump(j);
}

std::string scatter_svg(Pipeline& p) {
    const ScatteringDiagram& d = p.diagram();
    double R = 0;
    for (const auto& w : d.walls) R = std::max({R, std::abs(to_double(w.base.x)), std::abs(to_double(w.base.y))});
    R = R * 1.5 + to_double(d.spacing);
    Canvas c(-R, R, -R, R);
    c.line(-R, 0, R, 0, "#ddd");
    c.line(0, -R, 0, R, "#ddd");
    for (const auto& w : d.walls) {
        double bx = to_double(w.base.x), by = to_double(w.base.y);
        double dx = static_cast<double>(w.direction.a), dy = static_cast<double>(w.direction.b);
        double len = 4 * R / std::hypot(dx, dy);
        if (w.kind == WallKind::Line)
            c.line(bx - len * dx, by - len * dy, bx + len * dx, by + len * dy, "#1f5fbf");
        else
            c.line(bx, by, bx - len * dx, by - len * dy, "#c0392b");
    }
    c.dot(0, 0, "black", 2);
    return c.str();
}

std::string polytope_svg(Pipeline& p) {
    const auto& in = p.inputs();
    EpsChoice e = p.eps();
    TropicalForm T = tropicalize(p.superpotential().poly);
    TropicalForm B = beta_forms(in.model, in.omega);
    Polygon Xi = polytope(T, 0);
    Canvas c = canvas_around(Xi, 0.7);
    c.polygon(Xi.vertices, "black", "#eef3fb", " stroke-width=\"1.5\"");
    c.polygon(polytope(B, e.eps_prime).vertices, "#1f5fbf", "none", " stroke-dasharray=\"4 3\"");
    c.polygon(polytope(B, e.eps).vertices, "#7f8c8d", "none", " stroke-dasharray=\"2 2\"");
    for (std::size_t k = 0; k < Xi.size(); ++k) {
        Point m = (Xi.vertices[k] + Xi.vertices[(k + 1) % Xi.size()]) * Rat(1, 2);
        c.text(to_double(m.x), to_double(m.y), T.forms[static_cast<std::size_t>(Xi.facets[k])].label);
    }
    c.dot(0, 0, "black", 2);
    return c.str();
}

std::string cycle_svg(Pipeline& p) {
    const auto& in = p.inputs();
    EpsChoice e = p.eps();
    TropicalForm B = beta_forms(in.model, in.omega);
    Polygon P = polytope(B, e.eps_prime);
    Canvas c = canvas_around(P, 1.0);
    c.polygon(polytope(B, 0).vertices, "black", "none");
    c.polygon(P.vertices, "#7f8c8d", "none", " stroke-dasharray=\"4 3\"");
    MirrorCycle C = build_cycle(in.model, in.omega, in.L, e.eps_prime);
    DefaultPaths paths = default_paths(in.model, in.omega, e.eps_prime);
    double far = (c.x1 - c.x0) * 2;
    for (const auto& pc : C.pieces) {
        if (pc.kind == PieceKind::Tube) {
            const PathSpec& s = pc.path;
            double fx = to_double(s.foot.x), fy = to_double(s.foot.y);
            c.line(to_double(s.anchor.x), to_double(s.anchor.y), fx, fy, "#1f5fbf", 2);
            c.line(fx, fy, fx + far * to_double(s.u.x), fy + far * to_double(s.u.y), "#1f5fbf", 2);
        } else if (pc.kind == PieceKind::Sing) {
            const PathSpec& s = paths.walls[static_cast<std::size_t>(pc.ray)][static_cast<std::size_t>(pc.wall)];
            c.dot(to_double(s.anchor.x), to_double(s.anchor.y), "#c0392b", 4);
        } else if (pc.kind == PieceKind::Center) {
            c.polygon(pc.sigma, "#27ae60", "none", " stroke-dasharray=\"3 2\"");
        }
    }
    c.dot(0, 0, "black", 2);
    return c.str();
}

}  // namespace ghk
