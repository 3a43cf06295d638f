// Command-line front end: solve single configurations, sweep parameter grids,
// and validate closed forms against the Monte Carlo / quadrature oracles.

#include "hoplink/run.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::string emit_resolved;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Path to the JSON config")->required();
    cmd->add_option("--out", args.out_path, "Output path (default: config output.path or stdout)");
    cmd->add_option("--format", args.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", args.seed, "Override the Monte Carlo seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--threads", args.threads, "Worker threads (sweep points, MC trials)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--emit-resolved", args.emit_resolved,
                    "Also write the fully resolved config (linear units) to this path");
}

int dispatch(const CommonArgs& args, hoplink::Mode expected_solve) {
    hoplink::RunConfig cfg = hoplink::load_config(args.config_path);

    const bool sub_solve = expected_solve == hoplink::Mode::secrecy;  // solve subcommand
    if (sub_solve) {
        if (cfg.mode != hoplink::Mode::secrecy && cfg.mode != hoplink::Mode::covert)
            throw hoplink::ConfigError(
                "config: 'solve' requires mode secrecy or covert, got mode '" +
                std::string(hoplink::to_string(cfg.mode)) + "'");
    } else if (cfg.mode != expected_solve) {
        throw hoplink::ConfigError("config: subcommand expects mode '" +
                                   std::string(hoplink::to_string(expected_solve)) +
                                   "', got '" + hoplink::to_string(cfg.mode) + "'");
    }

    hoplink::RunOptions opts;
    opts.threads = args.threads;
    if (args.seed_set) opts.seed = args.seed;
    if (!args.out_path.empty()) opts.out_path = args.out_path;
    if (!args.format.empty())
        opts.format = args.format == "csv" ? hoplink::OutputFormat::csv
                                           : hoplink::OutputFormat::json;
    if (!args.emit_resolved.empty()) opts.emit_resolved = args.emit_resolved;
    return hoplink::run(cfg, opts, std::cout, std::cerr);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hoplink: multi-hop relay link planner under aerial surveillance"};
    app.require_subcommand(1);

    CommonArgs solve_args, sweep_args, validate_args;
    CLI::App* solve = app.add_subcommand("solve", "Optimize one configuration");
    add_common(solve, solve_args);
    CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a parameter grid");
    add_common(sweep, sweep_args);
    CLI::App* validate =
        app.add_subcommand("validate", "Cross-check closed forms against oracles");
    add_common(validate, validate_args);
    CLI::App* schema = app.add_subcommand("schema", "Print the config schema");

    CLI11_PARSE(app, argc, argv);

    try {
        if (schema->parsed()) {
            std::cout << hoplink::schema_text();
            return 0;
        }
        if (solve->parsed()) return dispatch(solve_args, hoplink::Mode::secrecy);
        if (sweep->parsed()) return dispatch(sweep_args, hoplink::Mode::sweep);
        if (validate->parsed()) return dispatch(validate_args, hoplink::Mode::validate);
    } catch (const hoplink::ConfigError& e) {
        std::cerr << "hoplink: " << e.what() << '\n';
        return 1;
    } catch (const hoplink::InfeasibleError& e) {
        std::cerr << "hoplink: infeasible: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hoplink: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
