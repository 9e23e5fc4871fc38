#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fwmsim/presets.hpp"

namespace {

int exit_code_for(fwmsim::ErrorKind kind) {
    switch (kind) {
        case fwmsim::ErrorKind::config: return 2;
        case fwmsim::ErrorKind::numerical: return 3;
        case fwmsim::ErrorKind::io: return 4;
    }
    return 3;
}

const char* kind_name(fwmsim::ErrorKind kind) {
    switch (kind) {
        case fwmsim::ErrorKind::config: return "config";
        case fwmsim::ErrorKind::numerical: return "numerical";
        case fwmsim::ErrorKind::io: return "io";
    }
    return "numerical";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FWM spectral-filtering simulator: figure presets and custom runs"};

    std::string preset, config_path, out_dir, formats;
    int threads = 1;
    long seed = 0;
    bool verbose = false;

    auto* opt_preset = app.add_option("--preset", preset, "Figure preset to run");
    opt_preset->check(CLI::IsMember(fwmsim::preset_names()));
    auto* opt_config = app.add_option("--config", config_path, "Run a config file instead");
    opt_preset->excludes(opt_config);
    app.add_option("--out-dir", out_dir, "Output directory")
        ->envname("FWMSIM_OUT_DIR")
        ->default_val("out");
    app.add_option("--format", formats, "Comma-separated outputs: csv,json,svg");
    app.add_option("--threads", threads, "Worker threads for per-bin sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Reserved; the pipeline is deterministic");
    app.add_flag("--verbose", verbose, "Log every file written");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // flag mistakes are config errors
    }
    (void)seed;

    if (preset.empty() == config_path.empty()) {
        std::cerr << "error: [config] exactly one of --preset or --config is required\n";
        return 2;
    }

    try {
        fwmsim::SimulationConfig cfg =
            preset.empty() ? fwmsim::parse_config_file(config_path)
                           : fwmsim::preset_config(preset);
        if (!formats.empty()) {
            cfg.output.formats.clear();
            std::string item;
            std::stringstream ss(formats);
            while (std::getline(ss, item, ','))
                if (!item.empty()) cfg.output.formats.push_back(item);
        }
        fwmsim::RunOptions opt;
        opt.threads = threads;
        opt.verbose = verbose;
        const auto outcome = fwmsim::run_config(cfg, out_dir, opt);
        if (verbose)
            std::cerr << outcome.files.size() << " files written to " << out_dir << "\n";
        return 0;
    } catch (const fwmsim::SimError& e) {
        std::cerr << "error: [" << kind_name(e.kind()) << "] " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
