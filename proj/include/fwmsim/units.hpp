#ifndef FWMSIM_UNITS_HPP
#define FWMSIM_UNITS_HPP

// Unit conventions, used consistently everywhere:
//   - time in microseconds
//   - rates, Rabi frequencies and detunings stored as angular frequencies
//     in rad/us
//   - frequency*grids* (spectra, FFT bins) in ordinary MHz
// MHz and us are conjugate, so f MHz corresponds to 2*pi*f rad/us.
// Config files take plain MHz; the loader applies the 2*pi at the boundary.

namespace fwmsim {

inline constexpr double two_pi = 6.283185307179586476925286766559;

inline constexpr double angular_from_mhz(double f_mhz) { return two_pi * f_mhz; }
inline constexpr double mhz_from_angular(double w) { return w / two_pi; }

} // namespace fwmsim

#endif
