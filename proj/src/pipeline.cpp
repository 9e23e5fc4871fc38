#include "fwmsim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fwmsim {

namespace {

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& a : v) m = std::max(m, std::abs(a));
    return m;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Raw peak of |trace| within +-window of an edge time.
double window_peak(const PulseEnvelope& trace, double edge, double window, double* at = nullptr) {
    double best = 0.0;
    double best_t = edge;
    for (int i = 0; i < trace.grid.n; ++i) {
        const double t = trace.grid.time(i);
        if (t < edge - window || t > edge + window) continue;
        const double m = std::abs(trace.amplitude[static_cast<size_t>(i)]);
        if (m > best) {
            best = m;
            best_t = t;
        }
    }
    if (at) *at = best_t;
    return best;
}

void require_inside(const TimeGrid& grid, double lo, double hi, const char* what) {
    if (lo < grid.t_start || hi > grid.t_end() || !(hi > lo)) {
        std::ostringstream os;
        os << what << ": interval [" << lo << ", " << hi << "] outside grid ["
           << grid.t_start << ", " << grid.t_end() << "]";
        throw WindowOutsideGrid(os.str());
    }
}

} // namespace

PulseEnvelope make_pulse(const PulseSpec& spec, const TimeGrid& grid) {
    if (spec.shape == PulseSpec::Shape::square)
        return square_pulse(spec.t_a, spec.t_b, spec.k, grid);
    return half_gaussian_pulse(spec.t_cut, spec.delta_t, spec.side, grid);
}

std::vector<EdgeMark> pulse_edges(const PulseSpec& spec) {
    if (spec.shape == PulseSpec::Shape::square)
        return {{spec.t_a, EdgeLabel::rising}, {spec.t_b, EdgeLabel::falling}};
    if (spec.side == HalfGaussianSide::sharp_rise)
        return {{spec.t_cut, EdgeLabel::rising},
                {spec.t_cut + spec.delta_t, EdgeLabel::falling}};
    return {{spec.t_cut - spec.delta_t, EdgeLabel::rising},
            {spec.t_cut, EdgeLabel::falling}};
}

TimeWindow pulse_plateau(const PulseSpec& spec) {
    // central half of the flat (or near-peak) region
    if (spec.shape == PulseSpec::Shape::square) {
        const double w = spec.t_b - spec.t_a;
        return {spec.t_a + 0.25 * w, spec.t_b - 0.25 * w};
    }
    if (spec.side == HalfGaussianSide::sharp_rise)
        return {spec.t_cut + 0.25 * spec.delta_t, spec.t_cut + 0.75 * spec.delta_t};
    return {spec.t_cut - 0.75 * spec.delta_t, spec.t_cut - 0.25 * spec.delta_t};
}

PulseEnvelope generate_signal_raw(const PulseEnvelope& probe, const SpectralResponse& filter) {
    filter.validate();
    const std::vector<double> expect = fft_freq_grid(probe.grid);
    if (filter.freq_mhz.size() != expect.size())
        throw GridMismatch("generate_signal: filter bin count differs from the probe FFT grid");
    for (size_t i = 0; i < expect.size(); ++i) {
        if (std::abs(filter.freq_mhz[i] - expect[i]) > 1e-9 * std::max(1.0, std::abs(expect[i])))
            throw GridMismatch("generate_signal: filter frequency grid differs from the probe FFT grid");
    }

    SpectralResponse spec = forward_transform(probe);
    for (size_t i = 0; i < spec.amplitude.size(); ++i)
        spec.amplitude[i] *= filter.amplitude[i];
    PulseEnvelope out = inverse_transform(spec);
    out.grid = probe.grid;  // keep the caller's time origin

    // wraparound guard
    const int nb = std::max(2, probe.grid.n / 64);
    double e_total = 0.0, e_edge = 0.0;
    for (int i = 0; i < probe.grid.n; ++i) {
        const double e = std::norm(out.amplitude[static_cast<size_t>(i)]);
        e_total += e;
        if (i < nb || i >= probe.grid.n - nb) e_edge += e;
    }
    if (e_total > 0.0 && e_edge > 1e-6 * e_total) {
        std::ostringstream os;
        os << "generate_signal: boundary energy fraction " << e_edge / e_total
           << " exceeds 1e-6; circular convolution wrapped around the grid";
        throw BoundaryWraparound(os.str());
    }
    return out;
}

PulseEnvelope generate_signal(const PulseEnvelope& probe, const SpectralResponse& filter) {
    PulseEnvelope out = generate_signal_raw(probe, filter);
    const double peak = max_abs(out.amplitude);
    if (peak > 0.0)
        for (auto& a : out.amplitude) a /= peak;
    return out;
}

SidePeakReport detect_side_peaks(const PulseEnvelope& output,
                                 const std::vector<EdgeMark>& edges,
                                 double window, TimeWindow plateau_region) {
    if (!(window > 0.0)) throw ValidationError("detect_side_peaks: window must be > 0");
    for (const auto& e : edges)
        require_inside(output.grid, e.time - window, e.time + window, "detect_side_peaks edge window");
    require_inside(output.grid, plateau_region.lo, plateau_region.hi, "detect_side_peaks plateau");

    const double norm = max_abs(output.amplitude);
    const double scale = norm > 0.0 ? 1.0 / norm : 1.0;

    SidePeakReport report;
    for (const auto& e : edges) {
        double at = e.time;
        const double h = window_peak(output, e.time, window, &at) * scale;
        report.peaks.push_back({at, h, e.label});
    }

    std::vector<double> plat;
    for (int i = 0; i < output.grid.n; ++i) {
        const double t = output.grid.time(i);
        if (t >= plateau_region.lo && t <= plateau_region.hi)
            plat.push_back(std::abs(output.amplitude[static_cast<size_t>(i)]) * scale);
    }
    if (plat.empty())
        throw WindowOutsideGrid("detect_side_peaks: plateau region contains no samples");
    report.plateau_level = median(plat);

    double top = 0.0;
    for (const auto& p : report.peaks) top = std::max(top, p.height);
    report.contrast = report.plateau_level > 0.0
                          ? std::min(top / report.plateau_level, contrast_cap)
                          : contrast_cap;
    return report;
}

SpectralResponse pipeline_filter(const PipelineConfig& cfg) {
    const SpectralResponse chi3 =
        chi3_spectrum(cfg.scheme, cfg.drives, cfg.mode, fft_freq_grid(cfg.grid), cfg.threads);
    return combined_filter(chi3, cfg.filter);
}

namespace {

SweepRow sweep_row(const PipelineConfig& cfg, const PulseSpec& spec,
                   const SpectralResponse& filter, double param) {
    const PulseEnvelope probe = make_pulse(spec, cfg.grid);
    const PulseEnvelope raw = generate_signal_raw(probe, filter);

    const auto edges = pulse_edges(spec);
    double rising = 0.0, falling = 0.0;
    for (const auto& e : edges) {
        const double h = window_peak(raw, e.time, cfg.detect_window);
        (e.label == EdgeLabel::rising ? rising : falling) = h;
    }
    const SidePeakReport rep = detect_side_peaks(raw, edges, cfg.detect_window, pulse_plateau(spec));

    const double e_in = pulse_energy(probe);
    SweepRow row;
    row.param = param;
    row.peak_rising = rising;
    row.peak_falling = falling;
    row.contrast = rep.contrast;
    row.energy_fraction = e_in > 0.0 ? pulse_energy(raw) / e_in : 0.0;
    return row;
}

} // namespace

SweepResult sweep_pulse_width(std::vector<double> delta_t_values, const PipelineConfig& cfg) {
    if (delta_t_values.empty())
        throw ValidationError("sweep_pulse_width: empty delta_t list");
    for (double v : delta_t_values)
        if (!(v > 0.0)) throw ValidationError("sweep_pulse_width: delta_t values must be > 0");
    std::sort(delta_t_values.begin(), delta_t_values.end());

    const SpectralResponse filter = pipeline_filter(cfg);  // shared by all rows
    SweepResult result;
    for (double dtau : delta_t_values) {
        PulseSpec spec = cfg.pulse;
        spec.shape = PulseSpec::Shape::half_gaussian;
        spec.delta_t = dtau;
        try {
            result.rows.push_back(sweep_row(cfg, spec, filter, dtau));
        } catch (const SimError& e) {
            std::ostringstream os;
            os << "sweep_pulse_width: row delta_t = " << dtau << " us failed: " << e.what();
            throw SweepError(os.str(), result);
        }
    }
    return result;
}

SweepResult sweep_detuning(std::vector<double> offsets_mhz, const PipelineConfig& cfg) {
    for (double v : offsets_mhz)
        if (!std::isfinite(v)) throw ValidationError("sweep_detuning: non-finite offset");
    std::sort(offsets_mhz.begin(), offsets_mhz.end());

    const SpectralResponse chi3 =
        chi3_spectrum(cfg.scheme, cfg.drives, cfg.mode, fft_freq_grid(cfg.grid), cfg.threads);
    SweepResult result;
    for (double off : offsets_mhz) {
        FilterParams p = cfg.filter;
        p.center_offset_mhz = off;
        try {
            PulseSpec spec = cfg.pulse;
            spec.shape = PulseSpec::Shape::square;
            result.rows.push_back(sweep_row(cfg, spec, combined_filter(chi3, p), off));
        } catch (const SimError& e) {
            std::ostringstream os;
            os << "sweep_detuning: row offset = " << off << " MHz failed: " << e.what();
            throw SweepError(os.str(), result);
        }
    }
    return result;
}

} // namespace fwmsim
