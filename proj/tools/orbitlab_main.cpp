// orbitlab: experiment runner for the shear automorphisms.

#include "shear/orbitlab/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"orbitlab: certified orbit, recurrence and derivative experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("-c,--config", config_path, std::string("config file (default: $") + shear::kConfigEnv + ")");
        sub->add_option("--set", sets, "override a config key, key=value (repeatable)");
    };

    std::vector<std::pair<std::string, CLI::App *>> commands;
    for (auto [name, help] : std::vector<std::pair<const char *, const char *>>{
             {"theta", "quotients, convergents, Brjuno sums, growth check"},
             {"orbit", "closed-form iterates of the sample points"},
             {"recurrence", "build and verify the recurrence schedule"},
             {"mu", "build and verify the mu interval nest"},
             {"derivative-probe", "certified lower bounds on |phi'| over an N sweep"},
             {"series", "lacunary series values, tails and coefficient bounds"},
             {"report", "SVG plots and the run manifest"}}) {
        CLI::App *sub = app.add_subcommand(name, help);
        add_common(sub);
        commands.emplace_back(name, sub);
    }
    bool verify = false;
    app.get_subcommand("report")->add_flag("--verify-manifest", verify, "check the digests of an existing manifest");

    CLI::App *config_cmd = app.add_subcommand("config", "configuration helpers");
    config_cmd->require_subcommand(1);
    CLI::App *show = config_cmd->add_subcommand("show", "print every key with its value and documentation");
    add_common(show);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : shear::exit_config;
    }

    shear::RunConfig cfg;
    try {
        if (config_path.empty())
            if (const char *env = std::getenv(shear::kConfigEnv))
                config_path = env;
        if (!config_path.empty())
            cfg.load_file(config_path);
        for (const auto &s : sets)
            cfg.set_assignment(s);
    } catch (const shear::Error &e) {
        std::cerr << e.what() << "\n";
        return shear::exit_config;
    }

    if (*show) {
        std::cout << cfg.show();
        return shear::exit_pass;
    }
    for (const auto &[name, sub] : commands) {
        if (!*sub)
            continue;
        std::string cmd = name;
        if (cmd == "report" && verify)
            cmd = "verify-manifest";
        return shear::run_command(cmd, cfg, std::cout, std::cerr);
    }
    return shear::exit_config;
}
