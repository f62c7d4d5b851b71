// prodsum: experiment front end. Subcommands mirror the experiment kinds;
// all heavy lifting lives in the library so it stays testable.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "prodsum/cli.hpp"
#include "prodsum/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"product-of-sums invariance laboratory"};
    app.set_version_flag("--version", std::string(prodsum::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    prodsum::CliOverrides overrides;
    std::uint64_t seed = 0;
    std::string out_dir;
    int workers = 0;
    bool retain = true;

    const auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* c = cmd->add_option("--config", config_path, "experiment config (JSON)");
        if (config_required) c->required();
        cmd->add_option("--seed", seed, "master seed override")
            ->each([&](const std::string&) { overrides.seed = seed; });
        cmd->add_option("--out", out_dir, "output directory override")
            ->each([&](const std::string&) { overrides.out = out_dir; });
        cmd->add_option("--workers", workers, "worker thread count")
            ->each([&](const std::string&) { overrides.workers = workers; });
        cmd->add_option("--retain-samples", retain, "write per-replication samples")
            ->each([&](const std::string&) { overrides.retain_samples = retain; });
    };

    for (const std::string kind : {"clt", "fclt", "lil", "extremal"}) {
        auto* cmd = app.add_subcommand(kind, kind + " experiment");
        add_common(cmd, true);
    }
    auto* check = app.add_subcommand("check", "run built-in analytic self-checks");
    add_common(check, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : prodsum::kExitConfig;
    }

    const std::string kind = app.get_subcommands().front()->get_name();
    if (kind == "check" && config_path.empty()) {
        return prodsum::run_check(std::cout);
    }

    try {
        const prodsum::ExperimentConfig config =
            prodsum::parse_config(config_path, kind, overrides);
        return prodsum::run(config, std::cout, std::cerr);
    } catch (const prodsum::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return prodsum::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return prodsum::kExitRuntime;
    }
}
