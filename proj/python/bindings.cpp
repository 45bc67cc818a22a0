#include "ghk/cli.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ghk;

namespace {

py::list rows_list(const std::vector<VerificationRow>& rows) {
    py::list out;
    for (const auto& r : rows) {
        py::dict d;
        d["t"] = r.t;
        d["zb"] = r.zb;
        d["ztop"] = r.ztop;
        d["abs_err"] = r.abs_err;
        d["norm_err"] = r.norm_err;
        out.append(d);
    }
    return out;
}

py::dict verification_dict(const Verification& v) {
    py::dict d;
    d["rows"] = rows_list(v.rows);
    d["diff_rows"] = rows_list(v.diff_rows);
    d["slope"] = v.slope;
    d["diff_slope"] = v.diff_slope;
    d["eps"] = v.eps;
    d["decreasing"] = v.decreasing();
    d["diff_decreasing"] = v.diff_decreasing();
    py::list pieces;
    for (const auto& p : v.pieces) {
        py::dict pd;
        pd["label"] = p.label;
        pd["t"] = p.t;
        pd["value"] = p.value;
        pd["prediction"] = p.prediction;
        pieces.append(pd);
    }
    d["pieces"] = pieces;
    return d;
}

// (exponent, coefficient, t-exponent) per term, rationals as strings
py::list poly_terms(const LaurentPoly& W) {
    py::list out;
    for (const auto& [n, s] : W.terms())
        for (const auto& [e, c] : s.terms()) out.append(py::make_tuple(py::make_tuple(n.a, n.b), rat_str(c), rat_str(e)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_ghkmirror, m) {
    m.doc() = "Landau-Ginzburg mirrors of del Pezzo surfaces and the Gamma conjecture";

    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            PyErr_SetString(config_error.ptr(), e.what());
        }
    });

    m.def("presets", &preset_names, "names of the toric model presets");
    m.def("config_schema", &config_schema, "the key = value configuration schema");
    m.def("subcommands", &subcommands, "pipeline stages accepted by Pipeline.run");
    m.def("parse_t", &parse_t, py::arg("text"), "read 'e-5', 'exp(-5)' or a float in (0, 1)");

    m.def(
        "gamma_integral_checks",
        [](double t, double eps_prime) {
            auto r = gamma_integral_checks(t, eps_prime);
            py::dict d;
            d["e1"] = r.e1;
            d["e1_closed"] = r.e1_closed;
            d["log_moment"] = r.log_moment;
            d["log_closed"] = r.log_closed;
            d["residual1"] = r.residual1();
            d["residual2"] = r.residual2();
            return d;
        },
        py::arg("t"), py::arg("eps_prime"));

    py::class_<Pipeline>(m, "Pipeline")
        .def(py::init([](const std::string& text) { return Pipeline(parse_config(text)); }), py::arg("config") = "",
             "build from key = value configuration text")
        .def("preset", [](Pipeline& p) { return p.inputs().model.name; })
        .def("divisor", [](Pipeline& p) { return p.inputs().L.str(); })
        .def("lambdas",
             [](Pipeline& p) {
                 std::vector<std::string> v;
                 for (const auto& x : p.inputs().omega.lambdas) v.push_back(rat_str(x));
                 return v;
             })
        .def("superpotential", [](Pipeline& p) { return poly_terms(p.superpotential().poly); },
             "terms (exponent, coefficient, t-exponent) of W_t")
        .def("truncated_superpotential",
             [](Pipeline& p) { return poly_terms(truncated_superpotential(p.inputs().model, p.inputs().omega)); })
        .def("eps",
             [](Pipeline& p) {
                 auto e = p.eps();
                 return py::make_tuple(rat_str(e.eps_prime), rat_str(e.eps));
             },
             "(eps', eps)")
        .def("charges_equal",
             [](Pipeline& p) {
                 const auto& in = p.inputs();
                 return gamma_charge_O(in.model, in.omega) == polytope_charge_O(in.model, in.omega);
             })
        .def("ztop",
             [](Pipeline& p, double t) {
                 const auto& in = p.inputs();
                 return eval_charge(gamma_charge_line(in.model, in.omega, in.L), t);
             },
             py::arg("t"))
        .def("zb_real_locus",
             [](Pipeline& p, double t) { return zb_real_locus(p.superpotential().poly, t, p.config().quad); },
             py::arg("t"))
        .def("corner_defect",
             [](Pipeline& p, const std::string& eps, double t) {
                 return corner_defect(p.superpotential().poly, parse_rat(eps), t);
             },
             py::arg("eps"), py::arg("t"))
        .def("verify", [](Pipeline& p) { return verification_dict(p.verification()); })
        .def("report",
             [](Pipeline& p, const std::string& kind) -> std::string {
                 if (kind == "scatter") return scatter_json(p);
                 if (kind == "theta") return theta_json(p);
                 if (kind == "polytope") return polytope_json(p);
                 if (kind == "charge") return charge_json(p);
                 if (kind == "cycle") return cycle_json(p);
                 if (kind == "verify") return verify_json(p.verification());
                 throw std::invalid_argument("unknown report: " + kind);
             },
             py::arg("kind"), "JSON text of one report")
        .def("svg",
             [](Pipeline& p, const std::string& kind) -> std::string {
                 if (kind == "scatter") return scatter_svg(p);
                 if (kind == "polytope") return polytope_svg(p);
                 if (kind == "cycle") return cycle_svg(p);
                 throw std::invalid_argument("unknown figure: " + kind);
             },
             py::arg("kind"))
        .def("run",
             [](Pipeline& p, const std::string& sub) {
                 std::ostringstream log;
                 int status = run(sub, p, log);
                 return py::make_tuple(status, log.str());
             },
             py::arg("subcommand"), "write the artifacts of one stage; returns (status, log)");
}
