#ifndef FWMSIM_PIPELINE_HPP
#define FWMSIM_PIPELINE_HPP

#include <string>

#include "fwmsim/pulses.hpp"

namespace fwmsim {

enum class EdgeLabel { rising, falling };

struct EdgeMark {
    double time;  // us
    EdgeLabel label;
};

struct TimeWindow {
    double lo;
    double hi;
};

struct SidePeak {
    double time;    // us
    double height;  // normalized magnitude
    EdgeLabel label;
};

struct SidePeakReport {
    std::vector<SidePeak> peaks;
    double plateau_level = 0.0;
    double contrast = 0.0;  // max peak / plateau, capped at contrast_cap
};

inline constexpr double contrast_cap = 1e12;

struct SweepRow {
    double param;
    double peak_rising;
    double peak_falling;
    double contrast;
    double energy_fraction;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

// Carries partial rows when a sweep aborts mid-way.
struct SweepError : SimError {
    SweepError(const std::string& msg, SweepResult partial)
        : SimError(ErrorKind::numerical, msg), partial(std::move(partial)) {}
    SweepResult partial;
};

struct PulseSpec {
    enum class Shape { square, half_gaussian };
    Shape shape = Shape::square;
    double t_a = 10.0;   // square edges, us
    double t_b = 20.0;
    double k = 100.0;    // square edge steepness, 1/us^2
    double t_cut = 10.0; // half-Gaussian cut, us
    double delta_t = 2.0;
    HalfGaussianSide side = HalfGaussianSide::sharp_rise;
};

PulseEnvelope make_pulse(const PulseSpec& spec, const TimeGrid& grid);

// Everything the sweeps need to rebuild probe and filter.
struct PipelineConfig {
    AtomScheme scheme;
    DriveFields drives;
    SweepMode mode = SweepMode::two_photon_locked;
    FilterParams filter;
    TimeGrid grid;
    PulseSpec pulse;
    double detect_window = 0.5;  // us
    int threads = 1;
};

// Fig-3 chain: inverse_transform(forward_transform(probe) .* filter).
// The filter grid must match fft_freq_grid(probe.grid).  Circular
// convolution is assumed benign; a guard rejects outputs whose energy in
// the outermost n/64 samples per end exceeds 1e-6 of the total.
// `generate_signal` is globally max-normalized; the _raw variant keeps the
// physical scale (sweeps and storage need pre-normalization energies).
PulseEnvelope generate_signal(const PulseEnvelope& probe, const SpectralResponse& filter);
PulseEnvelope generate_signal_raw(const PulseEnvelope& probe, const SpectralResponse& filter);

// Peak of |output| within +-window of each edge, plateau = median |output|
// over plateau_region; heights are normalized to max |output| = 1.
SidePeakReport detect_side_peaks(const PulseEnvelope& output,
                                 const std::vector<EdgeMark>& edges,
                                 double window, TimeWindow plateau_region);

// Half-Gaussian probes over delta_t values; per row records the raw sharp-
// and Gaussian-edge peak heights, contrast, and transmitted energy fraction.
SweepResult sweep_pulse_width(std::vector<double> delta_t_values, const PipelineConfig& cfg);

// Square-pulse probe re-filtered per absorption-center offset.
SweepResult sweep_detuning(std::vector<double> offsets_mhz, const PipelineConfig& cfg);

// The combined chi3 x transmission filter on the FFT grid of `grid`.
SpectralResponse pipeline_filter(const PipelineConfig& cfg);

// Default detection geometry for a pulse spec: edge marks and plateau region.
std::vector<EdgeMark> pulse_edges(const PulseSpec& spec);
TimeWindow pulse_plateau(const PulseSpec& spec);

} // namespace fwmsim

#endif
