#include "fwmsim/storage.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fwmsim {

namespace {

void check_channel(const std::vector<OnInterval>& ch, const TimeGrid& grid,
                   const char* name, std::vector<std::string>& bad) {
    double prev_end = -1e300;
    for (const auto& iv : ch) {
        if (!(iv.t_on < iv.t_off)) {
            std::ostringstream os;
            os << "timing." << name << ": interval needs t_on < t_off";
            bad.push_back(os.str());
        }
        if (iv.t_on < prev_end) {
            std::ostringstream os;
            os << "timing." << name << ": intervals overlap or are out of order";
            bad.push_back(os.str());
        }
        if (iv.t_on < grid.t_start || iv.t_off > grid.t_end()) {
            std::ostringstream os;
            os << "timing." << name << ": interval [" << iv.t_on << ", " << iv.t_off
               << "] outside grid span";
            bad.push_back(os.str());
        }
        prev_end = iv.t_off;
    }
}

} // namespace

void TimingSequence::validate(const TimeGrid& grid) const {
    std::vector<std::string> bad;
    check_channel(coupling, grid, "coupling", bad);
    check_channel(pump, grid, "pump", bad);
    check_channel(probe, grid, "probe", bad);
    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

void StorageParams::validate() const {
    std::vector<std::string> bad;
    // eta = 0 is allowed and disables the memory entirely
    if (!(eta >= 0.0) || eta > 1.0) bad.push_back("storage.eta: must be in [0, 1]");
    if (!(tau_s > 0.0)) bad.push_back("storage.tau_s: must be > 0");
    if (!(write_window > 0.0)) bad.push_back("storage.write_window: must be > 0");
    if (!(readout_rate > 0.0)) bad.push_back("storage.readout_rate: must be > 0");
    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

StorageRun run_storage(const PulseEnvelope& probe, const TimingSequence& timing,
                       const StorageParams& params, const PipelineConfig& cfg,
                       const SpectralResponse* precomputed_filter) {
    params.validate();
    timing.validate(cfg.grid);
    if (timing.coupling.size() != 2)
        throw NoOffGap("simulate_storage: coupling channel must contain exactly one off-gap "
                       "(two on-intervals)");
    const double t_off = timing.coupling[0].t_off;
    const double t_on = timing.coupling[1].t_on;

    StorageRun run;
    run.gap_start = t_off;
    run.gap_end = t_on;
    run.reference = precomputed_filter
                        ? generate_signal_raw(probe, *precomputed_filter)
                        : generate_signal_raw(probe, pipeline_filter(cfg));

    const TimeGrid& grid = probe.grid;
    const size_t n = run.reference.amplitude.size();

    double peak_sig = 0.0;
    for (const auto& a : run.reference.amplitude) peak_sig = std::max(peak_sig, std::abs(a));

    // spin-wave write: magnitude integral over the write window
    double written = 0.0;
    double support_max = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double t = grid.time(static_cast<int>(i));
        if (t >= t_off && t <= t_off + params.write_window) {
            const double m = std::abs(run.reference.amplitude[i]);
            written += m * grid.dt;
            support_max = std::max(support_max, m);
        }
    }
    if (peak_sig > 0.0 && support_max < 1e-6 * peak_sig) {
        std::ostringstream os;
        os << "storage: coupling gap at " << t_off
           << " us misses the signal support; retrieval is trivially zero";
        run.warnings.push_back(os.str());
    }
    run.spin_wave_amplitude = written * std::exp(-(t_on - t_off) / params.tau_s);

    // leak follows the no-storage signal outside the gap; inside the gap the
    // drives are off and nothing is emitted
    run.leak = run.reference;
    run.retrieval = run.reference;
    for (size_t i = 0; i < n; ++i) {
        const double t = grid.time(static_cast<int>(i));
        if (t >= t_off && t < t_on) run.leak.amplitude[i] = Complex(0.0, 0.0);
        run.retrieval.amplitude[i] =
            (t >= t_on) ? Complex(params.eta * run.spin_wave_amplitude * params.readout_rate *
                                      std::exp(-params.readout_rate * (t - t_on)),
                                  0.0)
                        : Complex(0.0, 0.0);
    }

    run.composite = run.leak;
    for (size_t i = 0; i < n; ++i) run.composite.amplitude[i] += run.retrieval.amplitude[i];

    for (size_t i = 0; i < n; ++i) {
        const double t = grid.time(static_cast<int>(i));
        run.retrieval_energy_raw += std::norm(run.retrieval.amplitude[i]);
        if (t >= t_off && t < t_on)
            run.suppressed_energy_raw += std::norm(run.reference.amplitude[i]);
    }
    run.retrieval_energy_raw *= grid.dt;
    run.suppressed_energy_raw *= grid.dt;

    // joint normalization with the no-storage reference
    double peak = 0.0;
    for (size_t i = 0; i < n; ++i) {
        peak = std::max(peak, std::abs(run.composite.amplitude[i]));
        peak = std::max(peak, std::abs(run.reference.amplitude[i]));
    }
    if (peak > 0.0) {
        for (size_t i = 0; i < n; ++i) {
            run.composite.amplitude[i] /= peak;
            run.leak.amplitude[i] /= peak;
            run.retrieval.amplitude[i] /= peak;
            run.reference.amplitude[i] /= peak;
        }
    }
    return run;
}

PulseEnvelope simulate_storage(const PulseEnvelope& probe, const TimingSequence& timing,
                               const StorageParams& params, const PipelineConfig& cfg) {
    return run_storage(probe, timing, params, cfg).composite;
}

double retrieval_energy(const PulseEnvelope& trace, TimeWindow window) {
    if (window.lo < trace.grid.t_start || window.hi > trace.grid.t_end() + trace.grid.dt ||
        !(window.hi > window.lo)) {
        std::ostringstream os;
        os << "retrieval_energy: window [" << window.lo << ", " << window.hi
           << "] outside grid [" << trace.grid.t_start << ", " << trace.grid.t_end() << "]";
        throw WindowOutsideGrid(os.str());
    }
    // half-open [lo, hi): a 1 us window at dt = 0.01 sums exactly 100 samples
    double e = 0.0;
    for (int i = 0; i < trace.grid.n; ++i) {
        const double t = trace.grid.time(i);
        if (t >= window.lo && t < window.hi)
            e += std::norm(trace.amplitude[static_cast<size_t>(i)]);
    }
    return e * trace.grid.dt;
}

TimingSequence preset_timing(const TimeGrid& grid, double gap_start, double gap_end) {
    TimingSequence seq;
    seq.coupling = {{grid.t_start, gap_start}, {gap_end, grid.t_end()}};
    seq.pump = seq.coupling;  // gated off together
    seq.probe = {{grid.t_start, grid.t_end()}};
    return seq;
}

} // namespace fwmsim
