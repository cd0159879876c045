// latpot: asymptotic expansions and exact/numeric values of the discrete
// harmonic potential of 2-D lattice walks.
#include "latpot/cli.hpp"
#include <CLI11.hpp>
#include <iostream>

using latpot::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"discrete harmonic potential toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--walk", cfg.walk, "bundled walk name or walk-spec file");
        c->add_option("--precision", cfg.precision, "working precision in bits (>= 53)");
    };

    CLI::App* expand = app.add_subcommand("expand", "solve the asymptotic expansion");
    add_common(expand);
    expand->add_option("--order", cfg.order, "expansion order K (2..24)");
    expand->add_option("--format", cfg.format, "table | structured");

    CLI::App* value = app.add_subcommand("value", "exact potential value (z2-simple)");
    add_common(value);
    value->add_option("--at", [&cfg](const std::vector<std::string>& v) {
        if (v.size() != 2) return false;
        cfg.at_x = std::stol(v[0]); cfg.at_y = std::stol(v[1]);
        return true;
    }, "lattice point X Y")->expected(2);
    value->add_flag("--exact", cfg.exact, "print the exact n + (q)/pi form");

    CLI::App* oracle = app.add_subcommand("oracle", "numeric oracle evaluation");
    add_common(oracle);
    oracle->add_option("--at", [&cfg](const std::vector<std::string>& v) {
        if (v.size() != 2) return false;
        cfg.at_x = std::stol(v[0]); cfg.at_y = std::stol(v[1]);
        return true;
    }, "lattice point X Y")->expected(2);
    oracle->add_option("--method", cfg.method, "sum | fourier | fourier2d | conv");
    CLI::App* compare = oracle->add_subcommand("compare", "cross-check oracles at many points");
    compare->add_option("--points", cfg.points_file, "JSON file with [[x,y],...]");

    CLI::App* constant = app.add_subcommand("constant", "explicit error-constant scan");
    add_common(constant);
    constant->add_option("--rmax", cfg.rmax, "scan radius (default 400)");

    CLI::App* verify = app.add_subcommand("verify", "expansion-vs-oracle decay report");
    add_common(verify);
    verify->add_option("--order", cfg.order, "expansion order K");
    verify->add_option("--ray", [&cfg](const std::vector<std::string>& v) {
        if (v.size() != 2) return false;
        cfg.ray_x = std::stol(v[0]); cfg.ray_y = std::stol(v[1]);
        return true;
    }, "ray direction in basis coordinates")->expected(2);

    CLI::App* selftest = app.add_subcommand("selftest", "internal validators");
    CLI::App* lemmas = selftest->add_subcommand("lemmas", "desk-scale lemma checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(expand)) return latpot::cli::cmd_expand(cfg, std::cout);
        if (app.got_subcommand(value)) return latpot::cli::cmd_value(cfg, std::cout);
        if (app.got_subcommand(oracle)) {
            if (oracle->got_subcommand(compare))
                return latpot::cli::cmd_oracle_compare(cfg, std::cout);
            return latpot::cli::cmd_oracle(cfg, std::cout);
        }
        if (app.got_subcommand(constant)) return latpot::cli::cmd_constant(cfg, std::cout);
        if (app.got_subcommand(verify)) return latpot::cli::cmd_verify(cfg, std::cout);
        if (app.got_subcommand(selftest) && selftest->got_subcommand(lemmas))
            return latpot::cli::cmd_selftest_lemmas(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return latpot::cli::kExitPrecision;
    }
    std::cerr << "no command\n";
    return 1;
}
