#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "openmap/openmap.hpp"

namespace {

openmap::TimeGrid parse_grid_flag(const std::string& s) {
    openmap::TimeGrid g;
    int consumed = -1;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d%n", &g.t_start, &g.t_end, &g.steps, &consumed) != 3 ||
        consumed != static_cast<int>(s.size()))
        throw openmap::ConfigInvalidError("--grid expects start:end:samples, got '" + s + "'");
    g.validate();
    return g;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduced dynamical maps of a two-level impurity exchanging an excitation "
                 "with a resonant mode, in closed form and under spin baths"};
    app.set_version_flag("--version", openmap::kLibraryVersion);
    app.require_subcommand(1);

    std::string config_path, preset, out_flag, grid_flag, vary, values_csv;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "scenario config file (JSON)");
        sub->add_option("--preset", preset, "use a named preset instead of a config file");
        sub->add_option("--out", out_flag,
                        "output base directory (default $OPENMAP_OUT, then ./out)");
        sub->add_option("--grid", grid_flag, "time grid override, start:end:samples");
        sub->add_option("--seed", seed, "override the sampling seed");
    };

    CLI::App* run = app.add_subcommand("run", "run one scenario and write its output files");
    add_common(run);

    CLI::App* sweep =
        app.add_subcommand("sweep", "run a scenario once per value of one swept field");
    add_common(sweep);
    sweep->add_option("--vary", vary, "field to sweep")->required();
    sweep->add_option("--values", values_csv, "comma-separated values for the field")->required();

    CLI::App* list = app.add_subcommand("list-presets", "print the scenario presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const openmap::ScenarioPreset& p : openmap::scenario_catalogue())
                std::cout << p.name << ": " << p.summary << "\n";
            std::cout << "fig4: alias for fig4-caption\n";
            return 0;
        }

        auto load = [&]() {
            if (!preset.empty() && !config_path.empty())
                throw openmap::ConfigInvalidError("give a config file or --preset, not both");
            if (preset.empty() && config_path.empty())
                throw openmap::ConfigInvalidError("need a config file or --preset");
            openmap::ScenarioConfig cfg = preset.empty() ? openmap::load_config_file(config_path)
                                                         : openmap::scenario_preset(preset);
            if (!grid_flag.empty()) cfg.grid = parse_grid_flag(grid_flag);
            return cfg;
        };
        const char* env_out = std::getenv("OPENMAP_OUT");
        const std::filesystem::path base =
            !out_flag.empty() ? out_flag : (env_out != nullptr ? env_out : "out");

        if (run->parsed()) {
            openmap::ScenarioConfig cfg = load();
            if (run->count("--seed") > 0) cfg.seed = seed;
            const openmap::RunResult res = openmap::run_scenario(cfg, base / cfg.scenario);
            std::cout << "wrote " << res.files.size() + 1 << " files to " << res.out_dir.string()
                      << "\n";
            if (!res.verdicts.empty())
                std::cout << "classification: " << openmap::to_string(res.verdict_overall)
                          << " (min map eigenvalue " << res.min_choi_eigenvalue << " at t="
                          << res.time_of_min << ")\n";
            return 0;
        }

        if (sweep->parsed()) {
            openmap::ScenarioConfig cfg = load();
            if (sweep->count("--seed") > 0) cfg.seed = seed;
            const openmap::SweepResult res = openmap::run_sweep(
                cfg, vary, split_csv(values_csv), base / (cfg.scenario + "__sweep_" + vary));
            std::cout << "wrote " << res.runs.size() << " runs to " << res.out_root.string()
                      << "\n";
            return 0;
        }
    } catch (const openmap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const openmap::InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const openmap::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
