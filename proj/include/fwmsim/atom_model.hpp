#ifndef FWMSIM_ATOM_MODEL_HPP
#define FWMSIM_ATOM_MODEL_HPP

#include <complex>

#include <Eigen/Dense>

#include "fwmsim/errors.hpp"
#include "fwmsim/units.hpp"

namespace fwmsim {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

// Inverted-Y level scheme: two degenerate ground states |1>, |2>, one
// intermediate state |3> (linewidth gamma, branching b1/b2 into the two
// grounds) and one upper state |4> decaying into |3> at Gamma.  A weak
// two-way ground exchange gamma_g makes the zero-field steady state unique;
// gamma_12 is extra pure dephasing of the |1>-|2> coherence.
// All rates in rad/us.
struct AtomScheme {
    double gamma = angular_from_mhz(12.0);
    double Gamma = angular_from_mhz(20.0);
    double gamma_g = 1e-3 * angular_from_mhz(12.0);
    double gamma_12 = 1e-3 * angular_from_mhz(12.0);
    double b1 = 0.5;
    double b2 = 0.5;

    // Throws ValidationError listing every violated invariant.
    void validate() const;

    // Looser check used by the generator builders: finite, non-negative
    // rates with b1+b2 = 1.  gamma_g = 0 passes here and surfaces later as
    // SingularSystem in steady_state.
    void validate_rates_finite() const;
};

// Drive fields in the static rotating frame.  Pump and probe address the
// same |3><->|4> transition and are frequency-degenerate there, so only
// omega_p + omega_pr enters the Hamiltonian; the frame is time-independent
// iff delta_p == delta_1 and delta_c == delta_2, which with_detunings()
// maintains.  Detunings in rad/us.
struct DriveFields {
    Complex omega_c = angular_from_mhz(2.9847902407338549);  // coupling, |2><->|3>
    double omega_p = angular_from_mhz(3.0);         // pump, |3><->|4>
    double omega_pr = angular_from_mhz(0.15);       // probe, |3><->|4>
    double omega_s = angular_from_mhz(0.003);       // seed, |1><->|3>
    double delta_c = 0.0;
    double delta_p = 0.0;
    double delta_1 = 0.0;
    double delta_2 = 0.0;

    void validate() const;
};

// Copy of `d` with probe detuning delta_1 and signal detuning delta_2
// (rad/us); delta_p and delta_c follow from static-frame consistency.
DriveFields with_detunings(DriveFields d, double delta_1, double delta_2);

struct DensityMatrix {
    Matrix4c rho = Matrix4c::Zero();

    void validate(double tol_herm = 1e-10, double tol_trace = 1e-10,
                  double tol_psd = 1e-8) const;
};

// Lindblad generator acting on the column-stacked density matrix,
// d vec(rho)/dt = matrix * vec(rho).  Column-major stacking: element (r,c)
// of rho sits at index 4*c + r.
struct Liouvillian {
    Matrix16c matrix = Matrix16c::Zero();
};

Vector16c stack(const Matrix4c& rho);
Matrix4c unstack(const Vector16c& v);

// Rotating-frame Hamiltonian (rad/us):
//   diag(0, 0, -delta_2, -(delta_2 + delta_1))
//   - omega_s/2 |1><3| - omega_c/2 |2><3| - (omega_p+omega_pr)/2 |3><4| + h.c.
Matrix4c build_hamiltonian(const AtomScheme& scheme, const DriveFields& drives);

// -i[H, .] plus dissipators: |3>->|1> at b1*gamma, |3>->|2> at b2*gamma,
// |4>->|3> at Gamma, |1><->|2> exchange at gamma_g each way, and |1>-|2>
// dephasing via sqrt(gamma_12/2)(|1><1|-|2><2|) so rho_12 decays at gamma_12.
Liouvillian build_liouvillian(const AtomScheme& scheme, const DriveFields& drives);

// d rho/dt under the generator, reshaped back to 4x4.
Matrix4c time_derivative(const Liouvillian& L, const Matrix4c& rho);

// Unique steady state: linear solve of L with row 0 replaced by the trace
// constraint, then hermitized and renormalized.  Throws SingularSystem when
// the constrained system is rank-deficient beyond tolerance (gamma_g = 0 or
// degenerate parameters).
DensityMatrix steady_state(const Liouvillian& L);

// Oracle integrator: fixed-step classic RK4 (applied as the cached one-step
// propagator, identical for a constant generator) with adaptive step halving
// on instability.  Returns once ||d rho/dt||_inf < tol; throws NotConverged
// with the residual if t_max is reached first.
DensityMatrix evolve_to_steady(const Liouvillian& L, const DensityMatrix& rho0,
                               double t_max, double tol);

// Element rho_ij, 1-based level indices.
Complex coherence(const DensityMatrix& rho, int i, int j);

} // namespace fwmsim

#endif
