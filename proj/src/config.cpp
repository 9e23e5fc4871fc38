#include "fwmsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace fwmsim {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += g17(v[i]);
    }
    return out;
}

std::string join_list(const std::vector<std::string>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i];
    }
    return out;
}

struct Cursor {
    std::string origin;
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << origin << ":" << line << ": " << msg;
        throw ParseError(os.str());
    }
};

double parse_double(const std::string& v, const Cursor& at, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        at.fail("value of '" + key + "' is not a number: '" + v + "'");
    return x;
}

int parse_int(const std::string& v, const Cursor& at, const std::string& key) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        at.fail("value of '" + key + "' is not an integer: '" + v + "'");
    return static_cast<int>(x);
}

std::vector<double> parse_list(const std::string& v, const Cursor& at, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) at.fail("empty element in list '" + key + "'");
        out.push_back(parse_double(item, at, key));
    }
    if (out.empty()) at.fail("empty list for '" + key + "'");
    return out;
}

std::vector<std::string> parse_string_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

SimulationConfig default_config() { return SimulationConfig{}; }

void SimulationConfig::validate() const {
    std::vector<std::string> bad;
    auto collect = [&bad](auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            bad.push_back(e.what());
        }
    };
    collect([&] { atom.validate(); });
    collect([&] { drives.validate(); });
    collect([&] { filter.validate(); });
    collect([&] { grid.validate(); });
    collect([&] { storage.params.validate(); });

    if (std::isfinite(atom.gamma) && atom.gamma > 0.0) {
        if (drives.omega_s > 1e-2 * atom.gamma)
            bad.push_back("drives.omega_s: seed exceeds 1e-2 * atom.gamma");
        if (drives.omega_pr > 1e-1 * atom.gamma)
            bad.push_back("drives.omega_pr: probe exceeds 1e-1 * atom.gamma");
    }
    if (!(detect_window > 0.0)) bad.push_back("pulse.detect_window: must be > 0");
    if (!(storage.gap_start < storage.gap_end))
        bad.push_back("storage: gap_start must precede gap_end");
    if (!(sweep.f_min_mhz < sweep.f_max_mhz))
        bad.push_back("sweep.f_min/f_max: need f_min < f_max");
    if (sweep.n_points < 2) bad.push_back("sweep.n_points: need at least 2");
    for (double v : sweep.delta_t_values)
        if (!(v > 0.0)) { bad.push_back("sweep.delta_t_values: entries must be > 0"); break; }
    for (double v : sweep.k_values)
        if (!(v > 0.0)) { bad.push_back("sweep.k_values: entries must be > 0"); break; }
    if (output.directory.empty()) bad.push_back("output.directory: empty");
    for (const auto& f : output.formats)
        if (f != "csv" && f != "json" && f != "svg")
            bad.push_back("output.formats: unknown format '" + f + "'");

    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

namespace {

void apply_key(SimulationConfig& c, const std::string& sec, const std::string& key,
               const std::string& val, const Cursor& at) {
    auto mhz = [&] { return angular_from_mhz(parse_double(val, at, key)); };
    auto num = [&] { return parse_double(val, at, key); };

    if (sec == "run") {
        if (key == "preset") { c.preset = val; return; }
    } else if (sec == "atom") {
        if (key == "gamma_mhz") { c.atom.gamma = mhz(); return; }
        if (key == "gamma_upper_mhz") { c.atom.Gamma = mhz(); return; }
        if (key == "gamma_g_mhz") { c.atom.gamma_g = mhz(); return; }
        if (key == "gamma_12_mhz") { c.atom.gamma_12 = mhz(); return; }
        if (key == "b1") { c.atom.b1 = num(); return; }
        if (key == "b2") { c.atom.b2 = num(); return; }
    } else if (sec == "drives") {
        if (key == "omega_c_mhz") {
            const double ph = std::arg(c.drives.omega_c);
            c.drives.omega_c = mhz() * std::exp(Complex(0.0, ph));
            return;
        }
        if (key == "omega_c_phase_rad") {
            c.drives.omega_c = std::abs(c.drives.omega_c) * std::exp(Complex(0.0, num()));
            return;
        }
        if (key == "omega_p_mhz") { c.drives.omega_p = mhz(); return; }
        if (key == "omega_pr_mhz") { c.drives.omega_pr = mhz(); return; }
        if (key == "omega_s_mhz") { c.drives.omega_s = mhz(); return; }
        if (key == "delta_1_mhz") { c.drives = with_detunings(c.drives, mhz(), c.drives.delta_2); return; }
        if (key == "delta_2_mhz") { c.drives = with_detunings(c.drives, c.drives.delta_1, mhz()); return; }
    } else if (sec == "filter") {
        if (key == "alpha") { c.filter.alpha = num(); return; }
        if (key == "gamma_mhz") { c.filter.gamma = mhz(); return; }
        if (key == "center_offset_mhz") { c.filter.center_offset_mhz = num(); return; }
        if (key == "dispersion") {
            if (val == "off") c.filter.dispersion = Dispersion::off;
            else if (val == "lorentzian") c.filter.dispersion = Dispersion::lorentzian;
            else at.fail("dispersion must be 'off' or 'lorentzian', got '" + val + "'");
            return;
        }
        if (key == "chi3_mode") {
            if (val == "fixed_probe") c.chi3_mode = SweepMode::fixed_probe;
            else if (val == "two_photon_locked") c.chi3_mode = SweepMode::two_photon_locked;
            else at.fail("chi3_mode must be 'fixed_probe' or 'two_photon_locked'");
            return;
        }
    } else if (sec == "grid") {
        if (key == "n") { c.grid.n = parse_int(val, at, key); return; }
        if (key == "dt_us") { c.grid.dt = num(); return; }
        if (key == "t_start_us") { c.grid.t_start = num(); return; }
    } else if (sec == "pulse") {
        if (key == "shape") {
            if (val == "square") c.pulse.shape = PulseSpec::Shape::square;
            else if (val == "half_gaussian") c.pulse.shape = PulseSpec::Shape::half_gaussian;
            else at.fail("shape must be 'square' or 'half_gaussian', got '" + val + "'");
            return;
        }
        if (key == "t_a_us") { c.pulse.t_a = num(); return; }
        if (key == "t_b_us") { c.pulse.t_b = num(); return; }
        if (key == "k_inv_us2") { c.pulse.k = num(); return; }
        if (key == "t_cut_us") { c.pulse.t_cut = num(); return; }
        if (key == "delta_t_us") { c.pulse.delta_t = num(); return; }
        if (key == "orientation") {
            if (val == "sharp_rise") c.pulse.side = HalfGaussianSide::sharp_rise;
            else if (val == "sharp_fall") c.pulse.side = HalfGaussianSide::sharp_fall;
            else at.fail("orientation must be 'sharp_rise' or 'sharp_fall'");
            return;
        }
        if (key == "detect_window_us") { c.detect_window = num(); return; }
    } else if (sec == "storage") {
        if (key == "eta") { c.storage.params.eta = num(); return; }
        if (key == "tau_s_us") { c.storage.params.tau_s = num(); return; }
        if (key == "write_window_us") { c.storage.params.write_window = num(); return; }
        if (key == "readout_rate_inv_us") { c.storage.params.readout_rate = num(); return; }
        if (key == "gap_start_us") { c.storage.gap_start = num(); return; }
        if (key == "gap_end_us") { c.storage.gap_end = num(); return; }
    } else if (sec == "sweep") {
        if (key == "mode") {
            if (val == "fixed_probe") c.sweep.mode = SweepMode::fixed_probe;
            else if (val == "two_photon_locked") c.sweep.mode = SweepMode::two_photon_locked;
            else at.fail("mode must be 'fixed_probe' or 'two_photon_locked'");
            return;
        }
        if (key == "f_min_mhz") { c.sweep.f_min_mhz = num(); return; }
        if (key == "f_max_mhz") { c.sweep.f_max_mhz = num(); return; }
        if (key == "n_points") { c.sweep.n_points = parse_int(val, at, key); return; }
        if (key == "delta_t_values_us") { c.sweep.delta_t_values = parse_list(val, at, key); return; }
        if (key == "offsets_mhz") { c.sweep.offsets_mhz = parse_list(val, at, key); return; }
        if (key == "k_values_inv_us2") { c.sweep.k_values = parse_list(val, at, key); return; }
    } else if (sec == "output") {
        if (key == "directory") { c.output.directory = val; return; }
        if (key == "formats") { c.output.formats = parse_string_list(val); return; }
    }
    at.fail("unknown key '" + key + "' in section [" + sec + "]");
}

const std::set<std::string> known_sections = {
    "run", "atom", "drives", "filter", "grid", "pulse", "storage", "sweep", "output"};

} // namespace

SimulationConfig parse_config_text(const std::string& text, const std::string& origin) {
    SimulationConfig cfg = default_config();
    Cursor at{origin, 0};
    std::string section;
    std::set<std::string> seen;

    std::stringstream ss(text);
    std::string raw;
    while (std::getline(ss, raw)) {
        ++at.line;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') at.fail("malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (known_sections.find(section) == known_sections.end())
                at.fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) at.fail("expected 'key = value', got '" + line + "'");
        if (section.empty()) at.fail("key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) at.fail("empty key");
        if (!seen.insert(section + "." + key).second)
            at.fail("duplicate key '" + key + "' in section [" + section + "]");
        apply_key(cfg, section, key, val, at);
    }
    return cfg;
}

SimulationConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string dump_config(const SimulationConfig& c) {
    std::ostringstream os;
    os << "[run]\n";
    os << "preset = " << c.preset << "\n";
    os << "\n[atom]\n";
    os << "gamma_mhz = " << g17(mhz_from_angular(c.atom.gamma)) << "\n";
    os << "gamma_upper_mhz = " << g17(mhz_from_angular(c.atom.Gamma)) << "\n";
    os << "gamma_g_mhz = " << g17(mhz_from_angular(c.atom.gamma_g)) << "\n";
    os << "gamma_12_mhz = " << g17(mhz_from_angular(c.atom.gamma_12)) << "\n";
    os << "b1 = " << g17(c.atom.b1) << "\n";
    os << "b2 = " << g17(c.atom.b2) << "\n";
    os << "\n[drives]\n";
    os << "omega_c_mhz = " << g17(mhz_from_angular(std::abs(c.drives.omega_c))) << "\n";
    os << "omega_c_phase_rad = " << g17(std::arg(c.drives.omega_c)) << "\n";
    os << "omega_p_mhz = " << g17(mhz_from_angular(c.drives.omega_p)) << "\n";
    os << "omega_pr_mhz = " << g17(mhz_from_angular(c.drives.omega_pr)) << "\n";
    os << "omega_s_mhz = " << g17(mhz_from_angular(c.drives.omega_s)) << "\n";
    os << "delta_1_mhz = " << g17(mhz_from_angular(c.drives.delta_1)) << "\n";
    os << "delta_2_mhz = " << g17(mhz_from_angular(c.drives.delta_2)) << "\n";
    os << "\n[filter]\n";
    os << "alpha = " << g17(c.filter.alpha) << "\n";
    os << "gamma_mhz = " << g17(mhz_from_angular(c.filter.gamma)) << "\n";
    os << "center_offset_mhz = " << g17(c.filter.center_offset_mhz) << "\n";
    os << "dispersion = " << (c.filter.dispersion == Dispersion::off ? "off" : "lorentzian") << "\n";
    os << "chi3_mode = "
       << (c.chi3_mode == SweepMode::fixed_probe ? "fixed_probe" : "two_photon_locked") << "\n";
    os << "\n[grid]\n";
    os << "n = " << c.grid.n << "\n";
    os << "dt_us = " << g17(c.grid.dt) << "\n";
    os << "t_start_us = " << g17(c.grid.t_start) << "\n";
    os << "\n[pulse]\n";
    os << "shape = " << (c.pulse.shape == PulseSpec::Shape::square ? "square" : "half_gaussian") << "\n";
    os << "t_a_us = " << g17(c.pulse.t_a) << "\n";
    os << "t_b_us = " << g17(c.pulse.t_b) << "\n";
    os << "k_inv_us2 = " << g17(c.pulse.k) << "\n";
    os << "t_cut_us = " << g17(c.pulse.t_cut) << "\n";
    os << "delta_t_us = " << g17(c.pulse.delta_t) << "\n";
    os << "orientation = "
       << (c.pulse.side == HalfGaussianSide::sharp_rise ? "sharp_rise" : "sharp_fall") << "\n";
    os << "detect_window_us = " << g17(c.detect_window) << "\n";
    os << "\n[storage]\n";
    os << "eta = " << g17(c.storage.params.eta) << "\n";
    os << "tau_s_us = " << g17(c.storage.params.tau_s) << "\n";
    os << "write_window_us = " << g17(c.storage.params.write_window) << "\n";
    os << "readout_rate_inv_us = " << g17(c.storage.params.readout_rate) << "\n";
    os << "gap_start_us = " << g17(c.storage.gap_start) << "\n";
    os << "gap_end_us = " << g17(c.storage.gap_end) << "\n";
    os << "\n[sweep]\n";
    os << "mode = " << (c.sweep.mode == SweepMode::fixed_probe ? "fixed_probe" : "two_photon_locked") << "\n";
    os << "f_min_mhz = " << g17(c.sweep.f_min_mhz) << "\n";
    os << "f_max_mhz = " << g17(c.sweep.f_max_mhz) << "\n";
    os << "n_points = " << c.sweep.n_points << "\n";
    os << "delta_t_values_us = " << join_list(c.sweep.delta_t_values) << "\n";
    os << "offsets_mhz = " << join_list(c.sweep.offsets_mhz) << "\n";
    os << "k_values_inv_us2 = " << join_list(c.sweep.k_values) << "\n";
    os << "\n[output]\n";
    os << "directory = " << c.output.directory << "\n";
    os << "formats = " << join_list(c.output.formats) << "\n";
    return os.str();
}

PipelineConfig pipeline_config(const SimulationConfig& c, int threads) {
    PipelineConfig p;
    p.scheme = c.atom;
    p.drives = c.drives;
    p.mode = c.chi3_mode;
    p.filter = c.filter;
    p.grid = c.grid;
    p.pulse = c.pulse;
    p.detect_window = c.detect_window;
    p.threads = threads;
    return p;
}

} // namespace fwmsim
