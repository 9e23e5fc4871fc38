#include "fwmsim/spectra.hpp"

#include <cmath>
#include <sstream>

#include "fwmsim/threading.hpp"

namespace fwmsim {

void SpectralResponse::validate() const {
    if (freq_mhz.size() < 2)
        throw ValidationError("spectrum: grid needs at least 2 points");
    if (amplitude.size() != freq_mhz.size())
        throw ValidationError("spectrum: amplitude length differs from grid length");
    const double d0 = freq_mhz[1] - freq_mhz[0];
    if (!(d0 > 0.0)) throw ValidationError("spectrum: grid must ascend");
    for (size_t i = 1; i + 1 < freq_mhz.size(); ++i) {
        const double d = freq_mhz[i + 1] - freq_mhz[i];
        if (std::abs(d - d0) > 1e-9 * std::max(1.0, std::abs(d0)))
            throw ValidationError("spectrum: grid spacing not uniform");
    }
}

double SpectralResponse::spacing() const { return freq_mhz[1] - freq_mhz[0]; }

void FilterParams::validate() const {
    std::vector<std::string> bad;
    if (!std::isfinite(alpha) || alpha < 0.0) bad.push_back("filter.alpha: must be >= 0");
    if (!std::isfinite(gamma) || gamma <= 0.0) bad.push_back("filter.gamma: must be > 0");
    if (!std::isfinite(center_offset_mhz)) bad.push_back("filter.center_offset: non-finite");
    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

namespace {

Complex rho31_steady(const AtomScheme& scheme, DriveFields d, Complex omega_c,
                     double omega_eff, double d1, double d2) {
    d.omega_c = omega_c;
    d.omega_p = omega_eff;  // pump and probe fold into one matrix element
    d.omega_pr = 0.0;
    d = with_detunings(d, d1, d2);
    return steady_state(build_liouvillian(scheme, d)).rho(2, 0);
}

Complex response_at(const AtomScheme& scheme, const DriveFields& drives,
                    double omega_pr, double d1, double d2) {
    const Complex oc = drives.omega_c;
    const double op = drives.omega_p;
    const Complex c_pp = rho31_steady(scheme, drives, oc, op + omega_pr, d1, d2);
    const Complex c_pm = rho31_steady(scheme, drives, oc, op - omega_pr, d1, d2);
    const Complex c_0p = rho31_steady(scheme, drives, 0.0, op + omega_pr, d1, d2);
    const Complex c_0m = rho31_steady(scheme, drives, 0.0, op - omega_pr, d1, d2);
    return ((c_pp - c_pm) - (c_0p - c_0m)) / (2.0 * omega_pr * drives.omega_s);
}

} // namespace

Complex chi3_point(const AtomScheme& scheme, const DriveFields& drives,
                   double delta_1_mhz, double delta_2_mhz) {
    scheme.validate();
    drives.validate();
    if (!(drives.omega_s > 0.0) || drives.omega_s > 1e-2 * scheme.gamma)
        throw ValidationError("chi3_point: seed must satisfy 0 < omega_s <= 1e-2*gamma");
    if (!(drives.omega_pr > 0.0) || drives.omega_pr > 1e-1 * scheme.gamma)
        throw ValidationError("chi3_point: probe must satisfy 0 < omega_pr <= 1e-1*gamma");
    if (!std::isfinite(delta_1_mhz) || !std::isfinite(delta_2_mhz))
        throw ValidationError("chi3_point: non-finite detuning");

    const double d1 = angular_from_mhz(delta_1_mhz);
    const double d2 = angular_from_mhz(delta_2_mhz);
    const Complex r_full = response_at(scheme, drives, drives.omega_pr, d1, d2);
    const Complex r_half = response_at(scheme, drives, 0.5 * drives.omega_pr, d1, d2);

    const double scale = std::max(std::abs(r_full), std::abs(r_half));
    if (scale > 1e-12 && std::abs(r_full - r_half) > 0.05 * scale) {
        std::ostringstream os;
        os << "chi3_point: perturbative extraction broke down at delta_2 = "
           << delta_2_mhz << " MHz: R(omega_pr) = (" << r_full.real() << ","
           << r_full.imag() << "), R(omega_pr/2) = (" << r_half.real() << ","
           << r_half.imag() << ")";
        throw PerturbativeBreakdown(os.str());
    }
    return r_full;
}

SpectralResponse chi3_spectrum(const AtomScheme& scheme, const DriveFields& drives,
                               SweepMode mode, const std::vector<double>& grid_mhz,
                               int threads) {
    SpectralResponse out;
    out.freq_mhz = grid_mhz;
    out.amplitude.assign(grid_mhz.size(), Complex(0.0, 0.0));
    out.validate();

    std::vector<std::string> bin_error(grid_mhz.size());
    parallel_for(static_cast<int>(grid_mhz.size()), threads, [&](int i) {
        const double d2 = grid_mhz[static_cast<size_t>(i)];
        const double d1 = (mode == SweepMode::fixed_probe) ? 0.0 : -d2;
        try {
            out.amplitude[static_cast<size_t>(i)] = chi3_point(scheme, drives, d1, d2);
        } catch (const SimError& e) {
            std::ostringstream os;
            os << e.what() << " [delta_2 = " << d2 << " MHz]";
            bin_error[static_cast<size_t>(i)] = os.str();
        }
    });
    for (const auto& msg : bin_error)
        if (!msg.empty()) throw SimError(ErrorKind::numerical, msg);
    return out;
}

Complex transmission_amplitude(double delta_2_mhz, const FilterParams& params) {
    params.validate();
    if (!std::isfinite(delta_2_mhz))
        throw ValidationError("transmission_amplitude: non-finite detuning");
    const double gamma_mhz = mhz_from_angular(params.gamma);
    const double x = (delta_2_mhz - params.center_offset_mhz) / gamma_mhz;
    if (params.dispersion == Dispersion::off)
        return Complex(std::exp(-params.alpha / (1.0 + x * x)), 0.0);
    return std::exp(-params.alpha / Complex(1.0, x));
}

SpectralResponse combined_filter(const SpectralResponse& chi3, const FilterParams& params) {
    if (chi3.amplitude.empty()) throw EmptySpectrum("combined_filter: empty spectrum");
    chi3.validate();
    params.validate();

    SpectralResponse out;
    out.freq_mhz = chi3.freq_mhz;
    out.amplitude.resize(chi3.amplitude.size());
    double peak = 0.0;
    for (size_t i = 0; i < chi3.amplitude.size(); ++i) {
        out.amplitude[i] = chi3.amplitude[i] * transmission_amplitude(chi3.freq_mhz[i], params);
        peak = std::max(peak, std::abs(out.amplitude[i]));
    }
    if (peak > 0.0)
        for (auto& a : out.amplitude) a /= peak;
    return out;
}

double bandwidth_fwhm(const SpectralResponse& spec) {
    spec.validate();
    const size_t n = spec.amplitude.size();
    std::vector<double> mag(n);
    for (size_t i = 0; i < n; ++i) mag[i] = std::abs(spec.amplitude[i]);

    size_t peak = 0;
    for (size_t i = 1; i < n; ++i)
        if (mag[i] > mag[peak]) peak = i;
    if (peak == 0 || peak == n - 1)
        throw NoHalfCrossing("bandwidth_fwhm: peak sits at a grid edge");

    const double half = mag[peak] / 2.0;
    double left = -1.0, right = -1.0;
    for (size_t i = peak; i > 0; --i) {
        if (mag[i - 1] < half && half <= mag[i]) {
            left = static_cast<double>(i - 1) + (half - mag[i - 1]) / (mag[i] - mag[i - 1]);
            break;
        }
    }
    for (size_t i = peak; i + 1 < n; ++i) {
        if (mag[i + 1] < half && half <= mag[i]) {
            right = static_cast<double>(i) + (mag[i] - half) / (mag[i] - mag[i + 1]);
            break;
        }
    }
    if (left < 0.0 || right < 0.0)
        throw NoHalfCrossing("bandwidth_fwhm: spectrum does not cross half maximum on both sides");
    return (right - left) * spec.spacing();
}

std::vector<double> uniform_grid(double f_min_mhz, double f_max_mhz, int n_points) {
    if (n_points < 2 || !(f_max_mhz > f_min_mhz))
        throw ValidationError("uniform_grid: need n >= 2 and f_max > f_min");
    std::vector<double> g(static_cast<size_t>(n_points));
    const double step = (f_max_mhz - f_min_mhz) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) g[static_cast<size_t>(i)] = f_min_mhz + step * i;
    return g;
}

} // namespace fwmsim
