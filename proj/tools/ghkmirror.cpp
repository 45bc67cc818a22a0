#include "ghk/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Landau-Ginzburg mirrors of del Pezzo surfaces and the Gamma conjecture"};
    // at most one stage; --schema needs none
    app.require_subcommand(0, 1);
    std::string config, out, t_list, preset, divisor;
    bool figures = false, schema = false;
    app.add_option("--config", config, "key/value configuration file");
    app.add_option("--out", out, "output directory");
    app.add_flag("--figures", figures, "also write SVG figures");
    app.add_option("--t", t_list, "comma-separated decreasing t values, e.g. e-5,e-7,e-9");
    app.add_option("--preset", preset, "P2, BlpP2, dP5 or dP3");
    app.add_option("--L", divisor, "divisor, e.g. \"D'1 - E11\"");
    app.add_flag("--schema", schema, "print the configuration schema and exit");
    // options may follow the subcommand
    for (const auto& s : ghk::subcommands())
        app.add_subcommand(s, s == "all" ? "run every stage" : "run the " + s + " stage")->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (schema) {
        std::cout << ghk::config_schema();
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << "a subcommand is required: scatter, theta, polytope, charge, cycle, verify or all\n";
        return 2;
    }
    try {
        ghk::RunConfig cfg = config.empty() ? ghk::RunConfig{} : ghk::load_config(config);
        if (!preset.empty()) cfg.preset = preset;
        if (!divisor.empty()) cfg.divisor = divisor;
        if (!out.empty()) cfg.out_dir = out;
        if (figures) cfg.figures = true;
        if (!t_list.empty()) cfg.t_list = ghk::parse_t_list(t_list);
        ghk::Pipeline p(cfg);
        return ghk::run(app.get_subcommands().front()->get_name(), p, std::cout);
    } catch (const ghk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
