#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ionspec/config.hpp"
#include "ionspec/io.hpp"
#include "ionspec/runner.hpp"
#include "ionspec/version.hpp"

namespace {

namespace fs = std::filesystem;

// Preset configs ship as plain JSON files; search the usual locations.
std::vector<fs::path> preset_dirs(const char* argv0) {
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("IONSPEC_PRESETS")) dirs.emplace_back(env);
    dirs.emplace_back("presets");
    std::error_code ec;
    fs::path exe = fs::canonical(argv0, ec);
    if (!ec) {
        dirs.push_back(exe.parent_path() / "presets");
        dirs.push_back(exe.parent_path().parent_path() / "presets");
        dirs.push_back(exe.parent_path().parent_path().parent_path() / "presets");
    }
    return dirs;
}

fs::path find_preset(const std::string& name, const char* argv0) {
    for (const auto& dir : preset_dirs(argv0)) {
        const fs::path candidate = dir / (name + ".json");
        std::error_code ec;
        if (fs::exists(candidate, ec)) return candidate;
    }
    throw ionspec::ConfigError("/", "preset '" + name + "' not found (set IONSPEC_PRESETS?)");
}

ionspec::ExperimentConfig load_config(const std::string& config_path, const std::string& preset,
                                      const char* argv0) {
    if (!config_path.empty() && !preset.empty())
        throw ionspec::ConfigError("/", "--config and --preset are mutually exclusive");
    if (config_path.empty() && preset.empty())
        throw ionspec::ConfigError("/", "one of --config or --preset is required");
    const fs::path path = config_path.empty() ? find_preset(preset, argv0) : fs::path(config_path);
    return ionspec::ExperimentConfig::load(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear-spectroscopy simulator for trapped-ion chains"};
    app.set_version_flag("--version", std::string(ionspec::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::string out_dir;
    int threads = 0;

    auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
    run->add_option("--config", config_path, "Path to a config file");
    run->add_option("--preset", preset, "Name of a shipped preset config");
    run->add_option("--out", out_dir, "Override the output directory");
    run->add_option("--threads", threads, "Cap the number of worker threads");

    auto* converge = app.add_subcommand("converge", "Run convergence diagnostics for a config");
    converge->add_option("--config", config_path, "Path to a config file");
    converge->add_option("--preset", preset, "Name of a shipped preset config");
    converge->add_option("--threads", threads, "Cap the number of worker threads");

    auto* presets = app.add_subcommand("presets", "Preset utilities");
    auto* presets_list = presets->add_subcommand("list", "List shipped preset configs");
    presets->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (presets_list->parsed()) {
            bool found = false;
            for (const auto& dir : preset_dirs(argv[0])) {
                std::error_code ec;
                if (!fs::is_directory(dir, ec)) continue;
                for (const auto& entry : fs::directory_iterator(dir)) {
                    if (entry.path().extension() != ".json") continue;
                    std::cout << entry.path().stem().string() << "  (" << entry.path().string()
                              << ")\n";
                    found = true;
                }
                if (found) break;
            }
            if (!found) std::cout << "no presets found; set IONSPEC_PRESETS\n";
            return 0;
        }

        ionspec::ExperimentConfig cfg = load_config(config_path, preset, argv[0]);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (threads > 0) cfg.threads = threads;

        if (run->parsed()) {
            const auto artifacts = ionspec::run_experiment(cfg);
            std::cout << "wrote " << artifacts.files.size() << " files to " << cfg.output_dir.string()
                      << "\n";
            return 0;
        }
        if (converge->parsed()) {
            const auto report = ionspec::convergence_report(cfg);
            std::cout << report.to_json().dump(2) << "\n";
            return report.all_pass() ? 0 : 1;
        }
    } catch (const ionspec::ConfigError& e) {
        std::cerr << "config error at " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
