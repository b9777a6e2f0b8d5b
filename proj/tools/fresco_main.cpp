// fresco — frequency-resolved one- and two-photon correlation engine, CLI front end.

#include <CLI11.hpp>

#include <iostream>

#include "fresco/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"fresco — frequency-resolved photon correlation engine"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string grid;
    int workers = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value configuration file");
        sub->add_option("--set", sets, "override: key=value (repeatable)");
        sub->add_option("--out", out_path, "output CSV path (stdout if omitted)");
        sub->add_option("--grid", grid, "grid spec min:max:count[,min:max:count]");
        sub->add_option("--workers", workers, "worker thread count");
    };

    for (const char* name : {"spectrum", "g2map", "g2tau", "decompose", "quantifiers",
                             "gaussian-check"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        fresco::cli::RunConfig cfg = fresco::cli::parse_config(
            fresco::cli::parse_command(cmd),
            config_path.empty() ? std::nullopt : std::make_optional(config_path), sets);
        if (!out_path.empty()) cfg.out_path = out_path;
        if (workers >= 0) cfg.workers = workers;
        if (!grid.empty()) {
            const auto comma = grid.find(',');
            cfg.grid1 = fresco::cli::parse_grid_spec(grid.substr(0, comma));
            if (comma != std::string::npos)
                cfg.grid2 = fresco::cli::parse_grid_spec(grid.substr(comma + 1));
            else
                cfg.grid2 = cfg.grid1;
        }
        cfg.validate();
        return fresco::cli::run(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return fresco::cli::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return fresco::cli::kExitNumerical;
    }
}
