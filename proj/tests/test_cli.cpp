#include <doctest.h>

#include "support.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ghk;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string error_of(const std::string& text) {
    try {
        resolve(parse_config(text));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config parsing") {
    auto cfg = parse_config(
        "# BlpP2 with a custom class\n"
        "preset = BlpP2\n"
        "lambda = 5/4, 3/2, 7/6   # per ray\n"
        "c = 1/3 ; ;\n"
        "L = D'1 - E11\n"
        "t = e-5, exp(-7), 0.0001\n"
        "eps = 1/24\n"
        "eps_prime = 1/12\n"
        "quad.gauss_order = 15\n"
        "quad.rel_tol = 1e-8\n"
        "out = somewhere\n"
        "figures = true\n");
    CHECK(cfg.preset == "BlpP2");
    CHECK(*cfg.lambdas == std::vector<Rat>{ratio(5, 4), ratio(3, 2), ratio(7, 6)});
    REQUIRE(cfg.c->size() == 3);
    CHECK((*cfg.c)[0] == std::vector<Rat>{ratio(1, 3)});
    CHECK((*cfg.c)[1].empty());
    CHECK(cfg.divisor == "D'1 - E11");
    REQUIRE(cfg.t_list.size() == 3);
    CHECK(cfg.t_list[0] == doctest::Approx(std::exp(-5.0)));
    CHECK(cfg.t_list[1] == doctest::Approx(std::exp(-7.0)));
    CHECK(cfg.t_list[2] == doctest::Approx(1e-4));
    CHECK(*cfg.eps == ratio(1, 24));
    CHECK(cfg.quad.gauss_order == 15);
    CHECK(cfg.quad.rel_tol == doctest::Approx(1e-8));
    CHECK(cfg.out_dir == "somewhere");
    CHECK(cfg.figures);
    auto in = resolve(cfg);
    CHECK(in.L == DivisorClass::total(in.model, 0) - DivisorClass::exceptional(in.model, 0, 0));
    CHECK(in.omega.c[0][0] == ratio(1, 3));
}

TEST_CASE("config errors name the line and key") {
    auto msg = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(msg("preset = P2\nnonsense\n").find("line 2") != std::string::npos);
    auto m = msg("preset = P2\n\nt = e-5, banana\n");
    CHECK(m.find("line 3") != std::string::npos);
    CHECK(m.find("t:") != std::string::npos);
    CHECK(msg("colour = blue\n").find("colour") != std::string::npos);
    CHECK(msg("quad.gauss_order = ten\n").find("quad.gauss_order") != std::string::npos);
    CHECK(msg("figures = maybe\n") != "");
}

TEST_CASE("resolution errors name the field") {
    CHECK(error_of("preset = P3\n").find("preset") == 0);
    CHECK(error_of("preset = P2\nlambda = 1, 1\n").find("lambda") == 0);
    CHECK(error_of("preset = BlpP2\nc = 1 ; ;\n").find("(4)") != std::string::npos);
    CHECK(error_of("preset = BlpP2\nc = 1/3 ; ; ;\n").find("c:") == 0);
    CHECK(error_of("preset = P2\nL = E11\n").find("L:") == 0);
    CHECK(error_of("preset = P2\nL = 1/2*D'1\n").find("L:") == 0);
    CHECK(error_of("preset = P2\nt = e-9, e-5, e-7\n").find("t:") == 0);
    CHECK(error_of("preset = P2\neps = 1/2\neps_prime = 1/4\n").find("eps") == 0);
    CHECK(error_of("preset = P2\nquad.rel_tol = -1\n").find("quad") == 0);
    CHECK(error_of("preset = P2\n") == "");
}

TEST_CASE("t values") {
    CHECK(parse_t("e-5") == doctest::Approx(std::exp(-5.0)));
    CHECK(parse_t("exp(-7.5)") == doctest::Approx(std::exp(-7.5)));
    CHECK(parse_t("0.25") == 0.25);
    CHECK_THROWS_AS(parse_t("2"), ConfigError);
    CHECK_THROWS_AS(parse_t("e5"), ConfigError);
    CHECK_THROWS_AS(parse_t("x"), ConfigError);
    CHECK(parse_t_list("e-5,e-7 , e-9").size() == 3);
}

TEST_CASE("divisor parsing") {
    auto m = make_model("dP3");
    CHECK(parse_divisor(m, "0") == DivisorClass::zero(m));
    CHECK(parse_divisor(m, "D'2") == DivisorClass::total(m, 1));
    CHECK(parse_divisor(m, "D3") == DivisorClass::proper(m, 2));
    CHECK(parse_divisor(m, "E12") == DivisorClass::exceptional(m, 0, 1));
    CHECK(parse_divisor(m, "E3.2") == DivisorClass::exceptional(m, 2, 1));
    CHECK(parse_divisor(m, "2*D'1 - 3 E21 + 1/2 D2") ==
          DivisorClass::total(m, 0) * Rat(2) - DivisorClass::exceptional(m, 1, 0) * Rat(3) + DivisorClass::proper(m, 1) * ratio(1, 2));
    CHECK(parse_divisor(m, "-D'1") == -DivisorClass::total(m, 0));
    CHECK_THROWS(parse_divisor(m, "D'4"));
    CHECK_THROWS(parse_divisor(m, "E13"));
    CHECK_THROWS(parse_divisor(m, "F1"));
    CHECK_THROWS(parse_divisor(m, ""));
}

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("charge subcommand on P2") {
    RunConfig cfg;
    cfg.preset = "P2";
    cfg.out_dir = "cli-test-charge";
    Pipeline p(cfg);
    std::ostringstream log;
    CHECK(run("charge", p, log) == 0);
    auto j = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "charge.json"));
    CHECK(j.dump().find("true") != std::string::npos);
    bool equal = false;
    charge_json(p, &equal);
    CHECK(equal);
}

TEST_CASE("polytope subcommand on BlpP2 has four facets") {
    RunConfig cfg;
    cfg.preset = "BlpP2";
    cfg.out_dir = "cli-test-polytope";
    cfg.figures = true;
    Pipeline p(cfg);
    std::ostringstream log;
    CHECK(run("polytope", p, log) == 0);
    auto j = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "polytope.json"));
    CHECK(j["Xi"]["facets"].size() == 4);
    CHECK(j["V_match"] == true);
    CHECK(j["xi_equals_xi_star"] == true);
    auto svg = slurp(fs::path(cfg.out_dir) / "polytope.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("verify subcommand writes a decreasing table") {
    RunConfig cfg;
    cfg.preset = "BlpP2";
    cfg.divisor = "E11";
    cfg.out_dir = "cli-test-verify";
    Pipeline p(cfg);
    std::ostringstream log;
    CHECK(run("verify", p, log) == 0);
    std::istringstream csv(slurp(fs::path(cfg.out_dir) / "verify.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "t,ReZB,ImZB,ReZtop,ImZtop,abs_err,norm_err\r");
    std::vector<double> errs;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        REQUIRE(cols.size() == 7);
        errs.push_back(std::stod(cols[5]));
    }
    REQUIRE(errs.size() == 3);
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < errs[1]);
    auto j = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "verify.json"));
    CHECK(j.contains("pieces"));
}

TEST_CASE("outputs are deterministic") {
    for (const std::string& sub : {"scatter", "theta", "polytope", "cycle"}) {
        std::string a, b;
        for (int rep = 0; rep < 2; ++rep) {
            RunConfig cfg;
            cfg.preset = "dP5";
            cfg.divisor = "D'3 + E11";
            cfg.out_dir = "cli-test-det" + std::to_string(rep);
            cfg.figures = true;
            Pipeline p(cfg);
            std::ostringstream log;
            CHECK(run(sub, p, log) == 0);
            std::string s;
            for (const auto& e : fs::directory_iterator(cfg.out_dir))
                if (e.path().stem() == sub) s += slurp(e.path());
            (rep ? b : a) = s;
        }
        CHECK_FALSE(a.empty());
        CHECK(a == b);
    }
}

TEST_CASE("stage errors carry the stage name") {
    RunConfig cfg;
    cfg.preset = "P2";
    cfg.t_list = {0.5, 0.4};
    Pipeline p(cfg);
    try {
        p.verification();
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage == "verify");
    }
    std::ostringstream log;
    CHECK_THROWS(run("nonsense", p, log));
}

TEST_CASE("schema lists every key") {
    auto s = config_schema();
    for (const char* k : {"preset", "lambda", "c =", "L =", "t =", "theta", "eps", "eps_prime", "quad.levels",
                          "quad.gauss_order", "quad.min_cells", "quad.tau_points", "quad.rel_tol", "quad.t_cut",
                          "quad.q_max", "out", "figures"})
        CHECK(s.find(k) != std::string::npos);
}
