#ifndef FWMSIM_PRESETS_HPP
#define FWMSIM_PRESETS_HPP

#include <string>
#include <vector>

#include "fwmsim/config.hpp"

namespace fwmsim {

struct RunOptions {
    int threads = 1;
    bool verbose = false;
};

struct PresetOutcome {
    std::vector<std::string> files;  // everything written, in write order
    std::string manifest_path;
};

const std::vector<std::string>& preset_names();

// The resolved configuration a named preset runs with.
SimulationConfig preset_config(const std::string& name);

// Runs a preset (or an explicit configuration) and writes CSVs, a JSON
// manifest, the resolved config.ini and SVG plots into out_dir.  On error
// all partially written files are removed before the exception propagates.
PresetOutcome run_preset(const std::string& name, const std::string& out_dir,
                         const RunOptions& opt);
PresetOutcome run_config(const SimulationConfig& cfg, const std::string& out_dir,
                         const RunOptions& opt);

// Bisection of omega_c against the 10 MHz FixedProbe bandwidth target;
// returns the calibrated coupling Rabi frequency in rad/us.  Exposed for the
// calibrate preset and the acceptance suite.
double calibrate_omega_c(const AtomScheme& scheme, const DriveFields& drives,
                         double target_fwhm_mhz, int threads, double* achieved_fwhm = nullptr);

} // namespace fwmsim

#endif
