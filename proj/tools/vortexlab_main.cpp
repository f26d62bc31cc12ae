#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "vortexlab/experiments.hpp"
#include "vortexlab/version.hpp"

using namespace vortexlab;

int main(int argc, char** argv) {
    CLI::App app{"vortexlab - Monte Carlo experiments on stochastic vortex systems"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 1;
    bool seed_given = false, out_given = false;

    for (const std::string& name : known_commands()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "config file (key=value, [section] headers)")
            ->required();
        sub->add_option("--seed", seed, "master seed")->each([&](const std::string&) {
            seed_given = true;
        });
        sub->add_option("--out", out_dir, "output directory")->each([&](const std::string&) {
            out_given = true;
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path);
        const std::string sub = app.get_subcommands().front()->get_name();
        if (!cfg.command.empty() && cfg.command != sub)
            throw ConfigError("config names command '" + cfg.command +
                              "' but the CLI asked for '" + sub + "'");
        cfg.command = sub;
        if (seed_given) cfg.master_seed = seed;
        if (out_given) cfg.out_dir = out_dir;
        const int code = run(cfg);
        if (code == kExitNumerical) std::fprintf(stderr, "error: numerical failure during simulation\n");
        if (code == kExitGateFailed) std::fprintf(stderr, "note: statistical gate failed (exit 3)\n");
        return code;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}
