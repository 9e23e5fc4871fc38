#include "fwmsim/presets.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "fwmsim/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fwmsim {

namespace {

// Calibration sweep constants: FixedProbe grid, target bandwidth and the
// omega_c bracket the bisection searches.
constexpr double cal_f_min = -50.0, cal_f_max = 50.0;
constexpr int cal_points = 401;
constexpr double cal_bracket_lo_mhz = 0.3, cal_bracket_hi_mhz = 14.0;
constexpr int cal_iterations = 36;

json json_params(const SimulationConfig& c) {
    json j;
    j["atom"] = {{"gamma_mhz", mhz_from_angular(c.atom.gamma)},
                 {"gamma_upper_mhz", mhz_from_angular(c.atom.Gamma)},
                 {"gamma_g_mhz", mhz_from_angular(c.atom.gamma_g)},
                 {"gamma_12_mhz", mhz_from_angular(c.atom.gamma_12)},
                 {"b1", c.atom.b1},
                 {"b2", c.atom.b2}};
    j["drives"] = {{"omega_c_mhz", mhz_from_angular(std::abs(c.drives.omega_c))},
                   {"omega_c_phase_rad", std::arg(c.drives.omega_c)},
                   {"omega_p_mhz", mhz_from_angular(c.drives.omega_p)},
                   {"omega_pr_mhz", mhz_from_angular(c.drives.omega_pr)},
                   {"omega_s_mhz", mhz_from_angular(c.drives.omega_s)},
                   {"delta_1_mhz", mhz_from_angular(c.drives.delta_1)},
                   {"delta_2_mhz", mhz_from_angular(c.drives.delta_2)}};
    j["filter"] = {{"alpha", c.filter.alpha},
                   {"gamma_mhz", mhz_from_angular(c.filter.gamma)},
                   {"center_offset_mhz", c.filter.center_offset_mhz},
                   {"dispersion", c.filter.dispersion == Dispersion::off ? "off" : "lorentzian"},
                   {"chi3_mode", c.chi3_mode == SweepMode::fixed_probe ? "fixed_probe"
                                                                       : "two_photon_locked"}};
    j["grid"] = {{"n", c.grid.n}, {"dt_us", c.grid.dt}, {"t_start_us", c.grid.t_start}};
    j["pulse"] = {{"shape", c.pulse.shape == PulseSpec::Shape::square ? "square" : "half_gaussian"},
                  {"t_a_us", c.pulse.t_a},
                  {"t_b_us", c.pulse.t_b},
                  {"k_inv_us2", c.pulse.k},
                  {"t_cut_us", c.pulse.t_cut},
                  {"delta_t_us", c.pulse.delta_t},
                  {"orientation", c.pulse.side == HalfGaussianSide::sharp_rise ? "sharp_rise"
                                                                               : "sharp_fall"},
                  {"detect_window_us", c.detect_window},
                  {"square_duration_note",
                   "the 10 us square duration is a preset assumption"}};
    j["storage"] = {{"eta", c.storage.params.eta},
                    {"tau_s_us", c.storage.params.tau_s},
                    {"write_window_us", c.storage.params.write_window},
                    {"readout_rate_inv_us", c.storage.params.readout_rate},
                    {"gap_start_us", c.storage.gap_start},
                    {"gap_end_us", c.storage.gap_end}};
    j["sweep"] = {{"mode", c.sweep.mode == SweepMode::fixed_probe ? "fixed_probe"
                                                                  : "two_photon_locked"},
                  {"f_min_mhz", c.sweep.f_min_mhz},
                  {"f_max_mhz", c.sweep.f_max_mhz},
                  {"n_points", c.sweep.n_points},
                  {"delta_t_values_us", c.sweep.delta_t_values},
                  {"offsets_mhz", c.sweep.offsets_mhz},
                  {"k_values_inv_us2", c.sweep.k_values}};
    j["transmission_phase_convention"] =
        "t(delta2) = exp(-alpha/(1 + i*x)), x = (delta2 - center_offset)/gamma_mhz; "
        "magnitude exp(-alpha/(1+x^2)) in both dispersion modes";
    return j;
}

struct Ctx {
    std::string dir;
    RunOptions opt;
    const SimulationConfig* cfg = nullptr;
    std::string meta;
    std::vector<std::string> files;
    json derived;

    bool want(const std::string& fmt) const {
        for (const auto& f : cfg->output.formats)
            if (f == fmt) return true;
        return false;
    }

    std::string path(const std::string& name) const { return dir + "/" + name; }

    void track(const std::string& p) {
        files.push_back(p);
        if (opt.verbose) std::cerr << "wrote " << p << "\n";
    }

    void emit_spectrum(const std::string& stem, const SpectralResponse& s,
                       const std::string& title) {
        if (want("csv")) {
            write_spectrum_csv(path(stem + ".csv"), s, meta);
            track(path(stem + ".csv"));
        }
        if (want("svg")) {
            PlotSeries mag{"abs", s.freq_mhz, {}};
            mag.y.reserve(s.amplitude.size());
            for (const auto& a : s.amplitude) mag.y.push_back(std::abs(a));
            write_svg_plot(path(stem + ".svg"), title, "delta2 [MHz]", "amplitude [arb]", {mag});
            track(path(stem + ".svg"));
        }
    }

    void emit_pulse(const std::string& stem, const PulseEnvelope& p, const std::string& title) {
        if (want("csv")) {
            write_pulse_csv(path(stem + ".csv"), p, meta);
            track(path(stem + ".csv"));
        }
        if (want("svg")) {
            PlotSeries mag{"abs", {}, {}};
            for (int i = 0; i < p.grid.n; ++i) {
                mag.x.push_back(p.grid.time(i));
                mag.y.push_back(std::abs(p.amplitude[static_cast<size_t>(i)]));
            }
            write_svg_plot(path(stem + ".svg"), title, "t [us]", "amplitude [arb]", {mag});
            track(path(stem + ".svg"));
        }
    }

    void emit_storage(const std::string& stem, const StorageRun& r, const std::string& title) {
        if (want("csv")) {
            write_storage_csv(path(stem + ".csv"), r, meta);
            track(path(stem + ".csv"));
        }
        if (want("svg")) {
            auto series = [&](const PulseEnvelope& tr, const char* label) {
                PlotSeries s{label, {}, {}};
                for (int i = 0; i < tr.grid.n; ++i) {
                    s.x.push_back(tr.grid.time(i));
                    s.y.push_back(std::abs(tr.amplitude[static_cast<size_t>(i)]));
                }
                return s;
            };
            write_svg_plot(path(stem + ".svg"), title, "t [us]", "amplitude [arb]",
                           {series(r.reference, "reference"), series(r.leak, "leak"),
                            series(r.retrieval, "retrieval")});
            track(path(stem + ".svg"));
        }
    }

    void emit_sweep(const std::string& stem, const SweepResult& r, const std::string& title,
                    const std::string& x_label) {
        if (want("csv")) {
            write_sweep_csv(path(stem + ".csv"), r, meta);
            track(path(stem + ".csv"));
        }
        if (want("svg")) {
            PlotSeries c{"contrast", {}, {}};
            for (const auto& row : r.rows) {
                c.x.push_back(row.param);
                c.y.push_back(row.contrast);
            }
            write_svg_plot(path(stem + ".svg"), title, x_label, "contrast", {c});
            track(path(stem + ".svg"));
        }
    }
};

json peaks_json(const SidePeakReport& rep) {
    json peaks = json::array();
    for (const auto& p : rep.peaks)
        peaks.push_back({{"time_us", p.time},
                         {"height", p.height},
                         {"edge", p.label == EdgeLabel::rising ? "rising" : "falling"}});
    return {{"peaks", peaks}, {"plateau_level", rep.plateau_level}, {"contrast", rep.contrast}};
}

json rows_json(const SweepResult& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"param", row.param},
                        {"peak_rising", row.peak_rising},
                        {"peak_falling", row.peak_falling},
                        {"contrast", row.contrast},
                        {"energy_fraction", row.energy_fraction}});
    return rows;
}

// ---- preset executors -------------------------------------------------

void run_fig2(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    const auto grid = uniform_grid(c.sweep.f_min_mhz, c.sweep.f_max_mhz, c.sweep.n_points);
    const SpectralResponse chi =
        chi3_spectrum(c.atom, c.drives, c.sweep.mode, grid, ctx.opt.threads);
    ctx.emit_spectrum("chi3_spectrum", chi, "FWM response |chi3|");
    ctx.derived["fwhm_mhz"] = bandwidth_fwhm(chi);
    ctx.derived["mode"] =
        c.sweep.mode == SweepMode::fixed_probe ? "fixed_probe" : "two_photon_locked";

    if (c.preset == "fig2a") {
        SpectralResponse trans, dip;
        trans.freq_mhz = grid;
        dip.freq_mhz = grid;
        for (double f : grid) {
            const Complex t = transmission_amplitude(f, c.filter);
            trans.amplitude.push_back(t);
            dip.amplitude.push_back(Complex(1.0 - std::abs(t), 0.0));
        }
        ctx.emit_spectrum("transmission", trans, "linear transmission |t|");
        ctx.derived["absorption_dip_fwhm_mhz"] = bandwidth_fwhm(dip);
        ctx.derived["alpha"] = c.filter.alpha;
    }
}

void run_fig3(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    const PipelineConfig pcfg = pipeline_config(c, ctx.opt.threads);
    const PulseEnvelope probe = make_pulse(c.pulse, c.grid);
    ctx.emit_pulse("probe_pulse", probe, "input probe");

    const SpectralResponse probe_spec = forward_transform(probe);
    ctx.emit_spectrum("probe_spectrum", probe_spec, "probe spectrum");

    const SpectralResponse filter = pipeline_filter(pcfg);
    ctx.emit_spectrum("filter", filter, "combined chi3 x transmission filter");

    SpectralResponse filtered = probe_spec;
    for (size_t i = 0; i < filtered.amplitude.size(); ++i)
        filtered.amplitude[i] *= filter.amplitude[i];
    ctx.emit_spectrum("filtered_spectrum", filtered, "filtered probe spectrum");

    const PulseEnvelope signal = generate_signal(probe, filter);
    ctx.emit_pulse("signal_pulse", signal, "generated signal");

    const SidePeakReport rep =
        detect_side_peaks(signal, pulse_edges(c.pulse), c.detect_window, pulse_plateau(c.pulse));
    ctx.derived["side_peaks"] = peaks_json(rep);
}

void run_fig4(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    PipelineConfig pcfg = pipeline_config(c, ctx.opt.threads);
    const SweepResult sweep = sweep_pulse_width(c.sweep.delta_t_values, pcfg);
    ctx.emit_sweep("sweep", sweep, "peak height vs pulse width", "delta_t [us]");
    ctx.derived["rows"] = rows_json(sweep);

    const SpectralResponse filter = pipeline_filter(pcfg);
    for (double dtau : c.sweep.delta_t_values) {
        PulseSpec spec = c.pulse;
        spec.shape = PulseSpec::Shape::half_gaussian;
        spec.delta_t = dtau;
        const PulseEnvelope raw = generate_signal_raw(make_pulse(spec, c.grid), filter);
        char stem[64];
        std::snprintf(stem, sizeof stem, "signal_dt_%g", dtau);
        ctx.emit_pulse(stem, raw, "signal, delta_t sweep");
    }
}

void run_fig5a(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    const PipelineConfig pcfg = pipeline_config(c, ctx.opt.threads);
    const PulseEnvelope probe = make_pulse(c.pulse, c.grid);
    const SpectralResponse filter = pipeline_filter(pcfg);

    const PulseEnvelope signal = generate_signal(probe, filter);
    ctx.emit_pulse("signal", signal, "generated signal at resonance");
    const SidePeakReport rep =
        detect_side_peaks(signal, pulse_edges(c.pulse), c.detect_window, pulse_plateau(c.pulse));
    ctx.derived["side_peaks"] = peaks_json(rep);

    const TimingSequence timing = preset_timing(c.grid, c.storage.gap_start, c.storage.gap_end);
    const StorageRun sto = run_storage(probe, timing, c.storage.params, pcfg, &filter);
    ctx.emit_storage("storage", sto, "leak and retrieval");
    ctx.derived["storage"] = {{"gap_start_us", sto.gap_start},
                              {"gap_end_us", sto.gap_end},
                              {"retrieval_energy", sto.retrieval_energy_raw},
                              {"suppressed_energy", sto.suppressed_energy_raw},
                              {"warnings", sto.warnings}};
}

void run_fig5b(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    PipelineConfig pcfg = pipeline_config(c, ctx.opt.threads);
    const SweepResult sweep = sweep_detuning(c.sweep.offsets_mhz, pcfg);
    ctx.emit_sweep("sweep", sweep, "contrast vs absorption-center offset", "offset [MHz]");
    ctx.derived["rows"] = rows_json(sweep);

    const SpectralResponse chi =
        chi3_spectrum(c.atom, c.drives, c.chi3_mode, fft_freq_grid(c.grid), ctx.opt.threads);
    const PulseEnvelope probe = make_pulse(c.pulse, c.grid);
    for (double off : c.sweep.offsets_mhz) {
        FilterParams p = c.filter;
        p.center_offset_mhz = off;
        const PulseEnvelope signal = generate_signal(probe, combined_filter(chi, p));
        char stem[64];
        std::snprintf(stem, sizeof stem, "signal_offset_%g", off);
        ctx.emit_pulse(stem, signal, "generated signal");
    }
}

void run_fig6a(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    const PipelineConfig pcfg = pipeline_config(c, ctx.opt.threads);
    const SpectralResponse filter = pipeline_filter(pcfg);

    json cases = json::object();
    struct Case {
        const char* name;
        HalfGaussianSide side;
        double t_cut;
    };
    for (const Case& k : {Case{"sharp_rise", HalfGaussianSide::sharp_rise, c.pulse.t_a},
                          Case{"sharp_fall", HalfGaussianSide::sharp_fall, c.pulse.t_b}}) {
        PulseSpec spec = c.pulse;
        spec.shape = PulseSpec::Shape::half_gaussian;
        spec.side = k.side;
        spec.t_cut = k.t_cut;
        const PulseEnvelope signal = generate_signal(make_pulse(spec, c.grid), filter);
        ctx.emit_pulse(std::string("signal_") + k.name, signal, "generated signal");
        const SidePeakReport rep =
            detect_side_peaks(signal, pulse_edges(spec), c.detect_window, pulse_plateau(spec));
        cases[k.name] = peaks_json(rep);
    }
    ctx.derived["cases"] = cases;
}

void run_fig6b(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    const PipelineConfig pcfg = pipeline_config(c, ctx.opt.threads);
    const SpectralResponse filter = pipeline_filter(pcfg);
    const TimingSequence timing = preset_timing(c.grid, c.storage.gap_start, c.storage.gap_end);

    // case 1: square; case 2: half-Gaussian with the sharp edge at the back;
    // case 3: half-Gaussian with the slow edge at the back
    PulseSpec s1 = c.pulse;
    s1.shape = PulseSpec::Shape::square;
    PulseSpec s2 = c.pulse;
    s2.shape = PulseSpec::Shape::half_gaussian;
    s2.side = HalfGaussianSide::sharp_fall;
    s2.t_cut = c.pulse.t_b;
    PulseSpec s3 = c.pulse;
    s3.shape = PulseSpec::Shape::half_gaussian;
    s3.side = HalfGaussianSide::sharp_rise;
    s3.t_cut = c.pulse.t_a;

    json cases = json::object();
    int idx = 1;
    for (const PulseSpec* spec : {&s1, &s2, &s3}) {
        const StorageRun sto =
            run_storage(make_pulse(*spec, c.grid), timing, c.storage.params, pcfg, &filter);
        const std::string name = "case" + std::to_string(idx);
        ctx.emit_storage("storage_" + name, sto, "storage " + name);
        cases[name] = {{"retrieval_energy", sto.retrieval_energy_raw},
                       {"suppressed_energy", sto.suppressed_energy_raw},
                       {"warnings", sto.warnings}};
        ++idx;
    }
    ctx.derived["cases"] = cases;
    ctx.derived["gap_us"] = c.storage.gap_end - c.storage.gap_start;
}

void run_fig7(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    PipelineConfig pcfg = pipeline_config(c, ctx.opt.threads);
    const SweepResult sweep = sweep_pulse_width(c.sweep.delta_t_values, pcfg);
    ctx.emit_sweep("sweep", sweep, "side peak vs half-Gaussian width", "delta_t [us]");
    ctx.derived["rows"] = rows_json(sweep);

    // spectral energy fraction of the input pulse above 1 MHz, per delta_t
    json hf = json::array();
    for (const auto& row : sweep.rows) {
        PulseSpec spec = c.pulse;
        spec.shape = PulseSpec::Shape::half_gaussian;
        spec.delta_t = row.param;
        const SpectralResponse sp = forward_transform(make_pulse(spec, c.grid));
        double total = 0.0, high = 0.0;
        for (size_t i = 0; i < sp.amplitude.size(); ++i) {
            const double e = std::norm(sp.amplitude[i]);
            total += e;
            if (std::abs(sp.freq_mhz[i]) > 1.0) high += e;
        }
        hf.push_back({{"delta_t_us", row.param},
                      {"fraction_above_1mhz", total > 0 ? high / total : 0.0}});
    }
    ctx.derived["hf_energy_fraction"] = hf;

    const SpectralResponse filter = pipeline_filter(pcfg);
    for (double dtau : c.sweep.delta_t_values) {
        PulseSpec spec = c.pulse;
        spec.shape = PulseSpec::Shape::half_gaussian;
        spec.delta_t = dtau;
        const PulseEnvelope raw = generate_signal_raw(make_pulse(spec, c.grid), filter);
        char stem[64];
        std::snprintf(stem, sizeof stem, "signal_dt_%g", dtau);
        ctx.emit_pulse(stem, raw, "signal, delta_t sweep");
    }
}

void run_calibrate(Ctx& ctx) {
    const SimulationConfig& c = *ctx.cfg;
    double fwhm = 0.0;
    const double oc = calibrate_omega_c(c.atom, c.drives, 10.0, ctx.opt.threads, &fwhm);
    std::cout << "calibrated omega_c = " << format_g17(mhz_from_angular(oc))
              << " MHz (FixedProbe chi3 FWHM = " << format_g17(fwhm) << " MHz)\n";

    DriveFields d = c.drives;
    d.omega_c = oc;
    const auto grid = uniform_grid(cal_f_min, cal_f_max, cal_points);
    const SpectralResponse chi =
        chi3_spectrum(c.atom, d, SweepMode::fixed_probe, grid, ctx.opt.threads);
    ctx.emit_spectrum("chi3_calibrated", chi, "calibrated FixedProbe |chi3|");

    ctx.derived["omega_c_mhz"] = mhz_from_angular(oc);
    ctx.derived["fwhm_mhz"] = fwhm;
    ctx.derived["target_fwhm_mhz"] = 10.0;
    ctx.derived["bracket_mhz"] = {cal_bracket_lo_mhz, cal_bracket_hi_mhz};
}

} // namespace

double calibrate_omega_c(const AtomScheme& scheme, const DriveFields& drives,
                         double target_fwhm_mhz, int threads, double* achieved_fwhm) {
    const auto grid = uniform_grid(cal_f_min, cal_f_max, cal_points);
    auto fwhm_at = [&](double oc) {
        DriveFields d = drives;
        d.omega_c = oc;
        return bandwidth_fwhm(chi3_spectrum(scheme, d, SweepMode::fixed_probe, grid, threads));
    };
    double lo = angular_from_mhz(cal_bracket_lo_mhz);
    double hi = angular_from_mhz(cal_bracket_hi_mhz);
    const double f_lo = fwhm_at(lo);
    const double f_hi = fwhm_at(hi);
    if (!(f_lo < target_fwhm_mhz && target_fwhm_mhz < f_hi)) {
        std::ostringstream os;
        os << "calibrate: target " << target_fwhm_mhz << " MHz not bracketed: FWHM("
           << cal_bracket_lo_mhz << " MHz) = " << f_lo << ", FWHM(" << cal_bracket_hi_mhz
           << " MHz) = " << f_hi;
        throw SimError(ErrorKind::numerical, os.str());
    }
    // FWHM grows monotonically with omega_c across the bracket
    for (int i = 0; i < cal_iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (fwhm_at(mid) < target_fwhm_mhz)
            lo = mid;
        else
            hi = mid;
    }
    const double oc = 0.5 * (lo + hi);
    if (achieved_fwhm) *achieved_fwhm = fwhm_at(oc);
    return oc;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"fig2a", "fig2b", "fig3",  "fig4", "fig5a",
                                                   "fig5b", "fig6a", "fig6b", "fig7", "calibrate"};
    return names;
}

SimulationConfig preset_config(const std::string& name) {
    SimulationConfig c = default_config();
    c.preset = name;
    if (name == "fig2a") {
        c.filter.alpha = 1.0;
        c.sweep.mode = SweepMode::fixed_probe;
    } else if (name == "fig2b") {
        c.filter.alpha = 1.0;
        c.sweep.mode = SweepMode::two_photon_locked;
    } else if (name == "fig3") {
        // defaults: square probe, alpha = 8 resonant filter
    } else if (name == "fig4") {
        c.filter.alpha = 0.01;  // low optical depth: band shaping without absorption
        c.pulse.shape = PulseSpec::Shape::half_gaussian;
        c.pulse.side = HalfGaussianSide::sharp_rise;
    } else if (name == "fig5a") {
        c.grid.n = 8192;  // room for the 12 us gap and the readout tail
    } else if (name == "fig5b") {
        // defaults: offsets {-20, 0}
    } else if (name == "fig6a") {
        c.pulse.shape = PulseSpec::Shape::half_gaussian;
    } else if (name == "fig6b") {
        c.grid.n = 8192;
    } else if (name == "fig7") {
        c.pulse.shape = PulseSpec::Shape::half_gaussian;
        c.pulse.side = HalfGaussianSide::sharp_rise;
    } else if (name == "calibrate") {
        c.sweep.mode = SweepMode::fixed_probe;
        c.filter.alpha = 1.0;
    } else {
        std::ostringstream os;
        os << "unknown preset '" << name << "'; available:";
        for (const auto& n : preset_names()) os << " " << n;
        throw ValidationError(os.str());
    }
    return c;
}

PresetOutcome run_config(const SimulationConfig& cfg, const std::string& out_dir,
                         const RunOptions& opt) {
    cfg.validate();

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

    Ctx ctx;
    ctx.dir = out_dir;
    ctx.opt = opt;
    ctx.cfg = &cfg;
    ctx.meta = dump_config(cfg);

    try {
        if (cfg.preset == "fig2a" || cfg.preset == "fig2b") run_fig2(ctx);
        else if (cfg.preset == "fig3") run_fig3(ctx);
        else if (cfg.preset == "fig4") run_fig4(ctx);
        else if (cfg.preset == "fig5a") run_fig5a(ctx);
        else if (cfg.preset == "fig5b") run_fig5b(ctx);
        else if (cfg.preset == "fig6a") run_fig6a(ctx);
        else if (cfg.preset == "fig6b") run_fig6b(ctx);
        else if (cfg.preset == "fig7") run_fig7(ctx);
        else if (cfg.preset == "calibrate") run_calibrate(ctx);
        else {
            std::ostringstream os;
            os << "unknown preset '" << cfg.preset << "'; available:";
            for (const auto& n : preset_names()) os << " " << n;
            throw ValidationError(os.str());
        }

        write_text_file(ctx.path("config.ini"), dump_config(cfg));
        ctx.track(ctx.path("config.ini"));

        PresetOutcome outcome;
        if (ctx.want("json")) {
            json manifest;
            manifest["preset"] = cfg.preset;
            manifest["parameters"] = json_params(cfg);
            manifest["derived"] = ctx.derived;
            json names = json::array();
            for (const auto& f : ctx.files) names.push_back(fs::path(f).filename().string());
            manifest["outputs"] = names;
            write_text_file(ctx.path("manifest.json"), manifest.dump(2) + "\n");
            ctx.track(ctx.path("manifest.json"));
            outcome.manifest_path = ctx.path("manifest.json");
        }
        outcome.files = ctx.files;
        return outcome;
    } catch (...) {
        for (const auto& f : ctx.files) fs::remove(f, ec);
        throw;
    }
}

PresetOutcome run_preset(const std::string& name, const std::string& out_dir,
                         const RunOptions& opt) {
    return run_config(preset_config(name), out_dir, opt);
}

} // namespace fwmsim
