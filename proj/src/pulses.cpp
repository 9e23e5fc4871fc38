#include "fwmsim/pulses.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include <fftw3.h>

namespace fwmsim {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::mutex fftw_planner_mutex;  // FFTW planning is not thread-safe; execution is

// In-place complex DFT, FFTW sign convention (-1 forward).
void run_dft(std::vector<Complex>& data, int sign) {
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), raw, raw, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex);
        fftw_destroy_plan(plan);
    }
}

} // namespace

void TimeGrid::validate() const {
    std::vector<std::string> bad;
    if (!std::isfinite(t_start)) bad.push_back("grid.t_start: non-finite");
    if (!std::isfinite(dt) || dt <= 0.0) bad.push_back("grid.dt: must be > 0");
    if (n < 8 || !power_of_two(n)) bad.push_back("grid.n: must be a power of two >= 8");
    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

PulseEnvelope square_pulse(double t_a, double t_b, double k, const TimeGrid& grid) {
    grid.validate();
    if (!(k > 0.0) || !std::isfinite(k))
        throw ValidationError("square_pulse: k must be positive and finite");
    if (!(t_a < t_b)) throw ValidationError("square_pulse: requires t_a < t_b");
    if (t_a < grid.t_start || t_b > grid.t_end()) {
        std::ostringstream os;
        os << "square_pulse: edges [" << t_a << ", " << t_b << "] outside grid ["
           << grid.t_start << ", " << grid.t_end() << "]";
        throw EdgeOutsideGrid(os.str());
    }
    PulseEnvelope p;
    p.grid = grid;
    p.amplitude.resize(static_cast<size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        const double t = grid.time(i);
        double v = 1.0;
        if (t < t_a) v = std::exp(-k * (t - t_a) * (t - t_a));
        else if (t > t_b) v = std::exp(-k * (t - t_b) * (t - t_b));
        p.amplitude[static_cast<size_t>(i)] = Complex(v, 0.0);
    }
    return p;
}

PulseEnvelope half_gaussian_pulse(double t_cut, double delta_t, HalfGaussianSide side,
                                  const TimeGrid& grid) {
    grid.validate();
    if (!(delta_t > 0.0) || !std::isfinite(delta_t))
        throw ValidationError("half_gaussian_pulse: delta_t must be positive");
    if (t_cut < grid.t_start || t_cut > grid.t_end()) {
        std::ostringstream os;
        os << "half_gaussian_pulse: t_cut " << t_cut << " outside grid ["
           << grid.t_start << ", " << grid.t_end() << "]";
        throw EdgeOutsideGrid(os.str());
    }
    PulseEnvelope p;
    p.grid = grid;
    p.amplitude.resize(static_cast<size_t>(grid.n));
    const double s2 = 2.0 * delta_t * delta_t;
    for (int i = 0; i < grid.n; ++i) {
        const double t = grid.time(i);
        double v = 0.0;
        if (side == HalfGaussianSide::sharp_rise) {
            if (t >= t_cut) v = std::exp(-(t - t_cut) * (t - t_cut) / s2);
        } else {
            if (t <= t_cut) v = std::exp(-(t - t_cut) * (t - t_cut) / s2);
        }
        p.amplitude[static_cast<size_t>(i)] = Complex(v, 0.0);
    }
    return p;
}

std::vector<double> fft_freq_grid(const TimeGrid& grid) {
    grid.validate();
    std::vector<double> f(static_cast<size_t>(grid.n));
    const double df = 1.0 / (grid.n * grid.dt);
    for (int j = 0; j < grid.n; ++j)
        f[static_cast<size_t>(j)] = (j - grid.n / 2) * df;
    return f;
}

SpectralResponse forward_transform(const PulseEnvelope& pulse) {
    pulse.grid.validate();
    const int n = pulse.grid.n;
    if (static_cast<int>(pulse.amplitude.size()) != n)
        throw ValidationError("forward_transform: amplitude length differs from grid");

    std::vector<Complex> work = pulse.amplitude;
    run_dft(work, FFTW_FORWARD);

    SpectralResponse out;
    out.freq_mhz = fft_freq_grid(pulse.grid);
    out.amplitude.resize(static_cast<size_t>(n));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j)
        out.amplitude[static_cast<size_t>(j)] = scale * work[static_cast<size_t>((j + n / 2) % n)];
    return out;
}

PulseEnvelope inverse_transform(const SpectralResponse& spec) {
    spec.validate();
    const int n = static_cast<int>(spec.amplitude.size());
    if (n < 8 || !power_of_two(n))
        throw GridMismatch("inverse_transform: bin count is not a power of two >= 8");
    const double df = spec.spacing();
    if (std::abs(spec.freq_mhz[0] + (n / 2) * df) > 1e-6 * df)
        throw GridMismatch("inverse_transform: grid does not start at -n/2 * df");

    std::vector<Complex> work(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        work[static_cast<size_t>((j + n / 2) % n)] = spec.amplitude[static_cast<size_t>(j)];
    run_dft(work, FFTW_BACKWARD);

    PulseEnvelope out;
    out.grid.t_start = 0.0;
    out.grid.dt = 1.0 / (n * df);
    out.grid.n = n;
    out.amplitude = std::move(work);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& a : out.amplitude) a *= scale;
    return out;
}

double pulse_energy(const PulseEnvelope& pulse) {
    double e = 0.0;
    for (const auto& a : pulse.amplitude) e += std::norm(a);
    return e * pulse.grid.dt;
}

} // namespace fwmsim
