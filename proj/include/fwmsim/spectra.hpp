#ifndef FWMSIM_SPECTRA_HPP
#define FWMSIM_SPECTRA_HPP

#include <vector>

#include "fwmsim/atom_model.hpp"

namespace fwmsim {

// Complex response on a uniform ascending detuning grid (ordinary MHz).
struct SpectralResponse {
    std::vector<double> freq_mhz;
    std::vector<Complex> amplitude;

    void validate() const;
    double spacing() const;  // grid step, MHz
};

enum class Dispersion { off, lorentzian };

// Parameters of the linear transmission t(delta_2).  With x =
// (delta_2 - center_offset)/gamma_mhz the magnitude is exp(-alpha/(1+x^2));
// in lorentzian mode the full complex factor is exp(-alpha/(1 + i*x)), whose
// magnitude is identical and whose phase exp(+i*alpha*x/(1+x^2)) carries the
// Kramers-Kronig-consistent dispersion of the absorption line.
struct FilterParams {
    double alpha = 8.0;
    double gamma = angular_from_mhz(3.0);  // absorption half-linewidth, rad/us
    double center_offset_mhz = 0.0;
    Dispersion dispersion = Dispersion::off;

    void validate() const;
};

// Detuning sweep conventions of the two spectra:
//   fixed_probe       -- delta_1 held at 0 while delta_2 sweeps
//   two_photon_locked -- delta_1 = -delta_2 (zero two-photon detuning)
enum class SweepMode { fixed_probe, two_photon_locked };

// FWM response of the signal transition at one detuning pair (MHz inputs).
//
// Both pump and probe drive |3><->|4> at the same frame frequency, so the
// plain probe-on/probe-off difference of rho_31 retains a coupling-free
// ladder background.  The returned response is therefore the
// coupling-referenced, pump-odd part of the probe derivative:
//
//   R = [ rho31(Oc, Op+Opr) - rho31(Oc, Op-Opr)
//       - rho31(0,  Op+Opr) + rho31(0,  Op-Opr) ] / (2 * Opr * Os)
//
// which equals the probe difference quotient to O(Opr^2), vanishes
// identically without the coupling or the pump leg, and isolates the
// four-wave-mixing pathway.  The global prefactor N mu31 mu43/(i eps0 hbar)
// is set to 1: spectra are shape-accurate up to one constant.
// Throws PerturbativeBreakdown if halving the probe changes R by over 5%.
Complex chi3_point(const AtomScheme& scheme, const DriveFields& drives,
                   double delta_1_mhz, double delta_2_mhz);

// chi3_point evaluated over a uniform grid; bins are independent and may be
// computed on `threads` workers, output order follows the grid.
SpectralResponse chi3_spectrum(const AtomScheme& scheme, const DriveFields& drives,
                               SweepMode mode, const std::vector<double>& grid_mhz,
                               int threads = 1);

Complex transmission_amplitude(double delta_2_mhz, const FilterParams& params);

// Per-bin product chi3 * transmission, rescaled so max |amplitude| = 1.
SpectralResponse combined_filter(const SpectralResponse& chi3, const FilterParams& params);

// Full width at half maximum of |amplitude| with linear interpolation
// between bracketing bins.  Throws NoHalfCrossing when the spectrum does
// not fall below half max on both sides of the peak.
double bandwidth_fwhm(const SpectralResponse& spec);

std::vector<double> uniform_grid(double f_min_mhz, double f_max_mhz, int n_points);

} // namespace fwmsim

#endif
