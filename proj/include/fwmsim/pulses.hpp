#ifndef FWMSIM_PULSES_HPP
#define FWMSIM_PULSES_HPP

#include "fwmsim/spectra.hpp"

namespace fwmsim {

struct TimeGrid {
    double t_start = 0.0;  // us
    double dt = 0.01;      // us
    int n = 4096;          // power of two

    void validate() const;
    double time(int i) const { return t_start + dt * i; }
    double t_end() const { return t_start + dt * (n - 1); }
};

struct PulseEnvelope {
    TimeGrid grid;
    std::vector<Complex> amplitude;
};

enum class HalfGaussianSide { sharp_rise, sharp_fall };

// Soft-edged square: 1 on [t_a, t_b], Gaussian wings exp(-k (t-edge)^2)
// outside; k in 1/us^2 sets the edge steepness.
PulseEnvelope square_pulse(double t_a, double t_b, double k, const TimeGrid& grid);

// sharp_rise: 0 below t_cut, exp(-(t-t_cut)^2/(2 delta_t^2)) above; the
// Gaussian width parameter is delta_t itself (sigma = delta_t convention).
// sharp_fall mirrors in time.
PulseEnvelope half_gaussian_pulse(double t_cut, double delta_t, HalfGaussianSide side,
                                  const TimeGrid& grid);

// The FFT bin frequencies of a grid, ascending from -1/(2 dt), in MHz.
// Bin j carries f_j = (j - n/2)/(n*dt); f = 0 is the pulse carrier, and the
// envelope's baseband frequency maps one-to-one onto the signal detuning
// delta_2.
std::vector<double> fft_freq_grid(const TimeGrid& grid);

// Unitary DFT (1/sqrt(n) both ways, Parseval symmetric) with bins reordered
// onto fft_freq_grid.  t_start does not enter; spectra are carrier-referenced.
SpectralResponse forward_transform(const PulseEnvelope& pulse);

// Exact inverse of forward_transform.  The returned grid starts at t = 0;
// callers that track an absolute time origin keep their own TimeGrid.
// Throws GridMismatch when the frequency grid is not one produced by a
// power-of-two time grid.
PulseEnvelope inverse_transform(const SpectralResponse& spec);

// Sum |amplitude|^2 * dt, us units.
double pulse_energy(const PulseEnvelope& pulse);

} // namespace fwmsim

#endif
