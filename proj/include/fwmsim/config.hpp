#ifndef FWMSIM_CONFIG_HPP
#define FWMSIM_CONFIG_HPP

#include <string>
#include <vector>

#include "fwmsim/storage.hpp"

namespace fwmsim {

// Spectrum-sweep and parameter-sweep settings ([sweep] block).
struct SweepSettings {
    SweepMode mode = SweepMode::fixed_probe;  // for the standalone spectra
    double f_min_mhz = -50.0;
    double f_max_mhz = 50.0;
    int n_points = 2001;
    std::vector<double> delta_t_values{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    std::vector<double> offsets_mhz{-20.0, 0.0};
    std::vector<double> k_values{0.1, 1.0, 10.0, 100.0};
};

struct StorageSettings {
    StorageParams params;
    double gap_start = 19.8;  // coupling/pump shutoff, us
    double gap_end = 31.8;    // coupling revival, us
};

struct OutputSettings {
    std::string directory = "out";
    std::vector<std::string> formats{"csv", "json", "svg"};
};

// Flat sectioned key-value config; plain MHz/us at the file boundary, the
// loader applies 2*pi where angular units are needed.  Unknown sections or
// keys are fatal at parse time.
struct SimulationConfig {
    std::string preset = "fig5a";
    AtomScheme atom;
    DriveFields drives;
    FilterParams filter;
    SweepMode chi3_mode = SweepMode::two_photon_locked;  // pipeline filter mode
    TimeGrid grid;
    PulseSpec pulse;
    double detect_window = 0.5;  // us
    StorageSettings storage;
    SweepSettings sweep;
    OutputSettings output;

    // Throws ValidationError listing every violated invariant, not just the first.
    void validate() const;
};

SimulationConfig default_config();

SimulationConfig parse_config_text(const std::string& text, const std::string& origin);
SimulationConfig parse_config_file(const std::string& path);

// Full-precision INI dump; parse_config_text(dump_config(c)) reproduces c
// and the dump itself is byte-stable under the round trip.
std::string dump_config(const SimulationConfig& cfg);

PipelineConfig pipeline_config(const SimulationConfig& cfg, int threads);

} // namespace fwmsim

#endif
