#ifndef FWMSIM_STORAGE_HPP
#define FWMSIM_STORAGE_HPP

#include "fwmsim/pipeline.hpp"

namespace fwmsim {

// One on-interval of a drive channel, [t_on, t_off] in us.
struct OnInterval {
    double t_on;
    double t_off;
};

struct TimingSequence {
    std::vector<OnInterval> coupling;
    std::vector<OnInterval> pump;
    std::vector<OnInterval> probe;

    void validate(const TimeGrid& grid) const;
};

// Phenomenological write/read model of the ground-state spin wave.
struct StorageParams {
    double eta = 0.6;           // write-read efficiency
    double tau_s = 50.0;        // spin-wave lifetime, us
    double write_window = 1.0;  // us credited to the spin wave after shutoff
    double readout_rate = 6.0;  // 1/us exponential readout envelope

    void validate() const;
};

struct StorageRun {
    PulseEnvelope composite;  // leak + retrieval, jointly normalized
    PulseEnvelope leak;
    PulseEnvelope retrieval;
    PulseEnvelope reference;  // no-storage signal, same normalization
    double spin_wave_amplitude = 0.0;
    double gap_start = 0.0;  // coupling shutoff, us
    double gap_end = 0.0;    // coupling revival, us
    // physical-scale energies, taken before the joint normalization
    double retrieval_energy_raw = 0.0;
    double suppressed_energy_raw = 0.0;  // reference energy inside the gap
    std::vector<std::string> warnings;
};

// The storage model: (1) s(t) = signal with all fields on; (2) leak = s
// before the coupling gap, zero inside it; (3) spin wave S = integral of |s|
// over [gap_start, gap_start + write_window], decayed by
// exp(-(gap_end-gap_start)/tau_s); (4) retrieval = eta*S*readout_rate*
// exp(-readout_rate*(t-gap_end)) from gap_end on.  Composite and reference
// are normalized by their joint maximum.  The coupling channel must contain
// exactly one off-gap (NoOffGap otherwise); a gap that misses the signal
// support only produces a warning.
// A precomputed combined filter (matching the probe FFT grid) skips the
// internal pipeline_filter call when several cases share one filter.
StorageRun run_storage(const PulseEnvelope& probe, const TimingSequence& timing,
                       const StorageParams& params, const PipelineConfig& cfg,
                       const SpectralResponse* precomputed_filter = nullptr);

// Convenience wrapper returning only the composite trace.
PulseEnvelope simulate_storage(const PulseEnvelope& probe, const TimingSequence& timing,
                               const StorageParams& params, const PipelineConfig& cfg);

// Sum |amplitude|^2 * dt over the window.
double retrieval_energy(const PulseEnvelope& trace, TimeWindow window);

// Coupling and pump gated off together over (gap_start, gap_end); probe on
// across the pulse support.
TimingSequence preset_timing(const TimeGrid& grid, double gap_start, double gap_end);

} // namespace fwmsim

#endif
