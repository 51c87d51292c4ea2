// kontin <experiment> [--config FILE] [--set key=value]... [--out DIR]
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <kontin/experiments.hpp>

namespace fs = std::filesystem;

namespace
{

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

void write_atomically(const fs::path &path, const std::string &text)
{
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw kontin::Error("cannot write " + tmp.string());
        }
        out << text;
    }
    fs::rename(tmp, path);
}

std::string default_output_dir()
{
    if (const char *env = std::getenv("KONTIN_OUT_DIR"); env && *env) {
        return env;
    }
    return "kontin-out";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Numerical experiments on analytic continuation along families of curves"};
    std::string experiment;
    std::string config_file;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::string names;
    for (auto n : kontin::experiment_names) {
        names += (names.empty() ? "" : ", ") + std::string(n);
    }
    app.add_option("experiment", experiment, "One of: " + names)->required();
    app.add_option("--config", config_file, "Flat key=value configuration file");
    app.add_option("--set", overrides, "Override one configuration key (key=value); repeatable");
    app.add_option("--out", out_dir, "Output directory (default: $KONTIN_OUT_DIR or ./kontin-out)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    kontin::ExperimentConfig cfg;
    cfg.experiment = experiment;
    try {
        if (!kontin::is_experiment(experiment)) {
            throw kontin::InvalidArgument("unknown experiment '" + experiment + "'; expected one of: " + names);
        }
        if (!config_file.empty()) {
            kontin::load_config_file(cfg, config_file);
        }
        for (const auto &kv : overrides) {
            kontin::apply_assignment(cfg, kv);
        }
        if (!out_dir.empty()) {
            cfg.output_dir = out_dir;
        } else if (cfg.output_dir.empty()) {
            cfg.output_dir = default_output_dir();
        }
        cfg.validate();
    } catch (const kontin::InvalidArgument &e) {
        std::cerr << "kontin: " << e.what() << "\n";
        return exit_usage;
    }

    kontin::ExperimentResult res;
    try {
        res = kontin::run_experiment(cfg);
    } catch (const kontin::InvalidArgument &e) {
        std::cerr << "kontin: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "kontin: " << experiment << " aborted: " << e.what() << "\n";
        return exit_fail;
    }

    try {
        const fs::path dir(cfg.output_dir);
        fs::create_directories(dir);
        write_atomically(dir / "results.json", kontin::to_json(res, cfg).dump(2) + "\n");
        for (const auto &t : res.tables) {
            write_atomically(dir / (t.name + ".csv"), t.csv());
        }
        for (const auto &[stem, svg] : res.plots) {
            write_atomically(dir / (stem + ".svg"), svg);
        }
    } catch (const std::exception &e) {
        std::cerr << "kontin: " << e.what() << "\n";
        return exit_fail;
    }

    if (!res.passed()) {
        for (const auto &f : res.failures) {
            std::cerr << "FAIL " << f << "\n";
        }
        return exit_fail;
    }
    std::cout << experiment << ": pass (" << cfg.output_dir << ")\n";
    return exit_pass;
}
