#pragma once
// Batch driver: key/value configuration, pipeline stages and report emission.

#include "ghk/oscint.hpp"
#include "ghk/theta.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghk {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// an error raised inside one pipeline stage, tagged with the stage name
struct StageError : std::runtime_error {
    std::string stage;
    StageError(std::string s, const std::string& what) : std::runtime_error(s + ": " + what), stage(std::move(s)) {}
};

struct RunConfig {
    std::string preset = "BlpP2";
    std::optional<std::vector<Rat>> lambdas;
    std::optional<std::vector<std::vector<Rat>>> c;
    std::string divisor = "0";  // e.g. "D'1 - E11", "2*D2", "0"
    std::vector<double> t_list;
    std::optional<Rat> theta;
    std::optional<Rat> eps, eps_prime;
    QuadConfig quad;
    std::string out_dir = "ghk-out";
    bool figures = false;
};

// "key = value" lines; '#' starts a comment.  Errors name the line and the key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_schema();

// "e-5" and "exp(-5)" mean e^-5; anything else is read as a float
double parse_t(const std::string& s);
std::vector<double> parse_t_list(const std::string& s);
// linear combination of 0, D'i, Di, Eij with integer or p/q coefficients
DivisorClass parse_divisor(const ToricModel& m, const std::string& s);

struct Inputs {
    ToricModel model;
    KahlerClass omega;
    DivisorClass L;
};
Inputs resolve(const RunConfig& cfg);

// every stage computed once and reused by later ones
class Pipeline {
public:
    explicit Pipeline(RunConfig cfg);
    const RunConfig& config() const { return cfg_; }
    const Inputs& inputs() const { return in_; }
    const ScatteringDiagram& diagram();
    const Superpotential& superpotential();
    EpsChoice eps();
    const Verification& verification();

private:
    RunConfig cfg_;
    Inputs in_;
    std::optional<ScatteringDiagram> diagram_;
    std::optional<Superpotential> W_;
    std::optional<Verification> verify_;
};

const std::vector<std::string>& subcommands();
// writes the artifacts of one subcommand into cfg.out_dir; returns the exit status
int run(const std::string& subcommand, Pipeline& p, std::ostream& log);

// report writers, deterministic for identical input
std::string scatter_json(Pipeline& p);
std::string theta_json(Pipeline& p);
std::string polytope_json(Pipeline& p);
std::string charge_json(Pipeline& p, bool* equal = nullptr);
std::string cycle_json(Pipeline& p);
std::string verify_csv(const Verification& v);
std::string verify_json(const Verification& v);
std::string csv_field(const std::string& s);

std::string scatter_svg(Pipeline& p);
std::string polytope_svg(Pipeline& p);
std::string cycle_svg(Pipeline& p);

}  // namespace ghk
