#include "ghk/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

namespace ghk {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<Rat> rat_list(const std::string& s) {
    std::vector<Rat> v;
    if (trim(s).empty()) return v;
    for (const auto& x : split(s, ',')) v.push_back(parse_rat(x));
    return v;
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw std::invalid_argument("expected true or false");
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("expected an integer");
    return v;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != s.size()) throw std::invalid_argument("expected a number, got '" + s + "'");
    return v;
}

}  // namespace

double parse_t(const std::string& raw) {
    std::string s = trim(raw);
    static const std::regex ex(R"(^(?:e|exp\()\s*([-+]?[0-9]*\.?[0-9]+)\s*\)?$)");
    std::smatch mt;
    double t;
    try {
        t = std::regex_match(s, mt, ex) ? std::exp(parse_double(mt[1].str())) : parse_double(s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(t > 0 && t < 1)) throw ConfigError("t must lie in (0,1), got '" + s + "'");
    return t;
}

std::vector<double> parse_t_list(const std::string& s) {
    std::vector<double> v;
    for (const auto& x : split(s, ',')) v.push_back(parse_t(x));
    return v;
}

std::string config_schema() {
    return R"(# key = value, one per line; '#' starts a comment; rationals as p/q
preset = P2 | BlpP2 | dP5 | dP3
lambda = 1, 1, 1              # one value per ray
c = 1/3 ; ; ;                 # per ray, ';' between rays and ',' within a ray
L = D'1 - E11                 # combination of 0, D'i, Di, Eij (1-based)
t = e-5, e-7, e-9             # decreasing; e-5 and exp(-5) mean e^-5
theta = 9/2                   # truncation order override
eps = 1/24                    # overrides of the tolerance pair
eps_prime = 1/12
quad.levels = 6
quad.gauss_order = 10         # 7, 10, 15, 20, 25 or 30
quad.min_cells = 8
quad.tau_points = 32
quad.rel_tol = 1e-6
quad.t_cut = 40
quad.q_max = 6
out = ghk-out
figures = false
)";
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        try {
            if (key == "preset") {
                cfg.preset = val;
            } else if (key == "lambda") {
                cfg.lambdas = rat_list(val);
            } else if (key == "c") {
                std::vector<std::vector<Rat>> c;
                for (const auto& part : split(val, ';')) c.push_back(rat_list(part));
                cfg.c = c;
            } else if (key == "L") {
                cfg.divisor = val;
            } else if (key == "t") {
                cfg.t_list = parse_t_list(val);
            } else if (key == "theta") {
                cfg.theta = parse_rat(val);
            } else if (key == "eps") {
                cfg.eps = parse_rat(val);
            } else if (key == "eps_prime") {
                cfg.eps_prime = parse_rat(val);
            } else if (key == "quad.levels") {
                cfg.quad.levels = parse_int(val);
            } else if (key == "quad.gauss_order") {
                cfg.quad.gauss_order = parse_int(val);
            } else if (key == "quad.min_cells") {
                cfg.quad.min_cells = parse_int(val);
            } else if (key == "quad.tau_points") {
                cfg.quad.tau_points = parse_int(val);
            } else if (key == "quad.rel_tol") {
                cfg.quad.rel_tol = parse_double(val);
            } else if (key == "quad.t_cut") {
                cfg.quad.t_cut = parse_double(val);
            } else if (key == "quad.q_max") {
                cfg.quad.q_max = parse_int(val);
            } else if (key == "out") {
                cfg.out_dir = val;
            } else if (key == "figures") {
                cfg.figures = parse_bool(val);
            } else {
                throw std::invalid_argument("unknown key");
            }
        } catch (const std::exception& e) {
            throw ConfigError("line " + std::to_string(no) + ": " + key + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

DivisorClass parse_divisor(const ToricModel& m, const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty divisor");
    DivisorClass L = DivisorClass::zero(m);
    static const std::regex term(R"(([+-]?)(?:([0-9]+(?:/[0-9]+)?)\*?)?(0|D'([0-9]+)|D([0-9]+)|E([0-9])\.?([0-9]))|(.))");
    // a leading sign is optional on the first term only
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        std::smatch mt;
        std::string rest = s.substr(pos);
        if (!std::regex_search(rest, mt, term, std::regex_constants::match_continuous) || mt[8].matched)
            throw std::invalid_argument("cannot parse divisor near '" + rest + "'");
        if (!first && mt[1].str().empty()) throw std::invalid_argument("missing sign near '" + rest + "'");
        Rat k = mt[2].matched ? parse_rat(mt[2].str()) : Rat(1);
        if (mt[1].str() == "-") k = -k;
        auto index = [&](const std::string& x, int bound) {
            int i = std::stoi(x) - 1;
            if (i < 0 || i >= bound) throw std::invalid_argument("index out of range in '" + mt[0].str() + "'");
            return i;
        };
        if (mt[4].matched) {
            L = L + DivisorClass::total(m, index(mt[4].str(), m.n())) * k;
        } else if (mt[5].matched) {
            L = L + DivisorClass::proper(m, index(mt[5].str(), m.n())) * k;
        } else if (mt[6].matched) {
            int i = index(mt[6].str(), m.n());
            int j = index(mt[7].str(), m.blowups[static_cast<std::size_t>(i)]);
            L = L + DivisorClass::exceptional(m, i, j) * k;
        }
        pos += static_cast<std::size_t>(mt.length(0));
        first = false;
    }
    return L;
}

Inputs resolve(const RunConfig& cfg) {
    Inputs in;
    try {
        in.model = make_model(cfg.preset);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("preset: ") + e.what());
    }
    in.omega = default_omega(cfg.preset);
    const auto& m = in.model;
    if (cfg.lambdas) {
        if (cfg.lambdas->size() != static_cast<std::size_t>(m.n()))
            throw ConfigError("lambda: expected " + std::to_string(m.n()) + " values");
        in.omega.lambdas = *cfg.lambdas;
    }
    if (cfg.c) {
        if (cfg.c->size() != static_cast<std::size_t>(m.n()))
            throw ConfigError("c: expected " + std::to_string(m.n()) + " ';'-separated groups");
        for (int i = 0; i < m.n(); ++i)
            if ((*cfg.c)[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(m.blowups[static_cast<std::size_t>(i)]))
                throw ConfigError("c: ray " + std::to_string(i + 1) + " needs " +
                                  std::to_string(m.blowups[static_cast<std::size_t>(i)]) + " values");
        in.omega.c = *cfg.c;
    }
    ValidityReport rep = validate_omega(m, in.omega);
    if (!rep.ok()) {
        std::string msg = "omega is not valid:";
        for (const auto& s : rep.messages) msg += " " + s + ";";
        throw ConfigError(msg);
    }
    try {
        in.L = parse_divisor(m, cfg.divisor);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("L: ") + e.what());
    }
    if (!in.L.is_integral()) throw ConfigError("L: divisor must be integral");
    if (cfg.t_list.size() >= 2)
        for (std::size_t k = 1; k < cfg.t_list.size(); ++k)
            if (!(cfg.t_list[k] < cfg.t_list[k - 1])) throw ConfigError("t: values must be decreasing");
    if (cfg.eps_prime && *cfg.eps_prime <= 0) throw ConfigError("eps_prime: must be positive");
    if (cfg.eps && *cfg.eps <= 0) throw ConfigError("eps: must be positive");
    if (cfg.eps && cfg.eps_prime && !(*cfg.eps < *cfg.eps_prime)) throw ConfigError("eps: must be below eps_prime");
    try {
        cfg.quad.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("quad: ") + e.what());
    }
    return in;
}

Pipeline::Pipeline(RunConfig cfg) : cfg_(std::move(cfg)), in_(resolve(cfg_)) {
    if (cfg_.t_list.empty()) cfg_.t_list = {std::exp(-5.0), std::exp(-7.0), std::exp(-9.0)};
}

const ScatteringDiagram& Pipeline::diagram() {
    if (!diagram_) {
        try {
            Rat h = default_spacing(in_.model, in_.omega);
            ScatteringDiagram d0 = initial_walls(in_.model, in_.omega, h, cfg_.theta);
            diagram_ = complete(d0, d0.theta);
        } catch (const std::exception& e) {
            throw StageError("scatter", e.what());
        }
    }
    return *diagram_;
}

const Superpotential& Pipeline::superpotential() {
    if (!W_) {
        const ScatteringDiagram& d = diagram();
        try {
            W_ = ghk::superpotential(in_.model, in_.omega, d, default_basepoints(d.spacing)[0], d.theta);
        } catch (const std::exception& e) {
            throw StageError("theta", e.what());
        }
    }
    return *W_;
}

EpsChoice Pipeline::eps() {
    EpsChoice e;
    if (!cfg_.eps_prime || !cfg_.eps) {
        try {
            e = choose_eps(in_.model, in_.omega, superpotential().poly);
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& ex) {
            throw StageError("polytope", ex.what());
        }
    }
    if (cfg_.eps_prime) e.eps_prime = *cfg_.eps_prime;
    if (cfg_.eps) e.eps = *cfg_.eps;
    else if (cfg_.eps_prime) e.eps = *cfg_.eps_prime / 2;
    return e;
}

const Verification& Pipeline::verification() {
    if (!verify_) {
        const LaurentPoly& W = superpotential().poly;
        EpsChoice e = eps();
        try {
            verify_ = verify(in_.model, in_.omega, in_.L, W, cfg_.t_list, cfg_.quad, e);
        } catch (const std::exception& ex) {
            throw StageError("verify", ex.what());
        }
    }
    return *verify_;
}

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s{"scatter", "theta", "polytope", "charge", "cycle", "verify", "all"};
    return s;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& body, std::ostream& log) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << body;
    log << "wrote " << p.string() << "\n";
}

int run_one(const std::string& sub, Pipeline& p, std::ostream& log) {
    std::filesystem::path dir(p.config().out_dir);
    std::filesystem::create_directories(dir);
    bool fig = p.config().figures;
    if (sub == "scatter") {
        write_file(dir / "scatter.json", scatter_json(p), log);
        if (fig) write_file(dir / "scatter.svg", scatter_svg(p), log);
        ConsistencyReport r = check_consistency(p.diagram());
        log << "scatter: " << p.diagram().walls.size() << " walls, consistency " << (r.ok() ? "ok" : "FAILED") << "\n";
        return r.ok() ? 0 : 1;
    }
    if (sub == "theta") {
        write_file(dir / "theta.json", theta_json(p), log);
        log << "theta: W = " << p.superpotential().poly.str() << "\n";
        return 0;
    }
    if (sub == "polytope") {
        write_file(dir / "polytope.json", polytope_json(p), log);
        if (fig) write_file(dir / "polytope.svg", polytope_svg(p), log);
        return 0;
    }
    if (sub == "charge") {
        bool equal = false;
        write_file(dir / "charge.json", charge_json(p, &equal), log);
        log << "charge: gamma form == polytope form: " << (equal ? "true" : "false") << "\n";
        return equal ? 0 : 1;
    }
    if (sub == "cycle") {
        write_file(dir / "cycle.json", cycle_json(p), log);
        if (fig) write_file(dir / "cycle.svg", cycle_svg(p), log);
        return 0;
    }
    if (sub == "verify") {
        const Verification& v = p.verification();
        write_file(dir / "verify.csv", verify_csv(v), log);
        write_file(dir / "verify.json", verify_json(v), log);
        bool ok = v.decreasing() && v.slope > 0;
        log << "verify: slope " << v.slope << ", errors " << (v.decreasing() ? "decreasing" : "NOT decreasing") << "\n";
        return ok ? 0 : 1;
    }
    throw std::invalid_argument("unknown subcommand '" + sub + "'");
}

}  // namespace

int run(const std::string& subcommand, Pipeline& p, std::ostream& log) {
    if (subcommand != "all") return run_one(subcommand, p, log);
    int status = 0;
    for (const auto& s : subcommands())
        if (s != "all") status = std::max(status, run_one(s, p, log));
    return status;
}

}  // namespace ghk
