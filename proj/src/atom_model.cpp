#include "fwmsim/atom_model.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace fwmsim {

namespace {

bool finite(double x) { return std::isfinite(x); }
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Matrix4c ketbra(int i, int j) {
    Matrix4c m = Matrix4c::Zero();
    m(i, j) = 1.0;
    return m;
}

std::vector<Matrix4c> collapse_operators(const AtomScheme& s) {
    std::vector<Matrix4c> ops;
    ops.push_back(std::sqrt(s.b1 * s.gamma) * ketbra(0, 2));
    ops.push_back(std::sqrt(s.b2 * s.gamma) * ketbra(1, 2));
    ops.push_back(std::sqrt(s.Gamma) * ketbra(2, 3));
    ops.push_back(std::sqrt(s.gamma_g) * ketbra(0, 1));
    ops.push_back(std::sqrt(s.gamma_g) * ketbra(1, 0));
    if (s.gamma_12 > 0.0) {
        Matrix4c z = ketbra(0, 0) - ketbra(1, 1);
        ops.push_back(std::sqrt(s.gamma_12 / 2.0) * z);
    }
    return ops;
}

} // namespace

void AtomScheme::validate() const {
    std::vector<std::string> bad;
    if (!finite(gamma) || gamma <= 0.0) bad.push_back("atom.gamma: must be finite and > 0");
    if (!finite(Gamma) || Gamma <= 0.0) bad.push_back("atom.Gamma: must be finite and > 0");
    if (!finite(gamma_g) || gamma_g <= 0.0) bad.push_back("atom.gamma_g: must be finite and > 0");
    if (!finite(gamma_12) || gamma_12 < 0.0) bad.push_back("atom.gamma_12: must be finite and >= 0");
    if (!finite(b1) || b1 < 0.0) bad.push_back("atom.b1: must be finite and >= 0");
    if (!finite(b2) || b2 < 0.0) bad.push_back("atom.b2: must be finite and >= 0");
    if (finite(b1) && finite(b2) && std::abs(b1 + b2 - 1.0) > 1e-12)
        bad.push_back("atom.b1+b2: branching ratios must sum to 1");
    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

void AtomScheme::validate_rates_finite() const {
    std::vector<std::string> bad;
    if (!finite(gamma) || gamma < 0.0) bad.push_back("atom.gamma: must be finite and >= 0");
    if (!finite(Gamma) || Gamma < 0.0) bad.push_back("atom.Gamma: must be finite and >= 0");
    if (!finite(gamma_g) || gamma_g < 0.0) bad.push_back("atom.gamma_g: must be finite and >= 0");
    if (!finite(gamma_12) || gamma_12 < 0.0) bad.push_back("atom.gamma_12: must be finite and >= 0");
    if (!finite(b1) || !finite(b2) || b1 < 0.0 || b2 < 0.0 || std::abs(b1 + b2 - 1.0) > 1e-12)
        bad.push_back("atom.b1/b2: branching ratios must be finite, >= 0 and sum to 1");
    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

void DriveFields::validate() const {
    std::vector<std::string> bad;
    if (!finite(omega_c)) bad.push_back("drives.omega_c: non-finite");
    if (!finite(omega_p)) bad.push_back("drives.omega_p: non-finite");
    if (!finite(omega_pr)) bad.push_back("drives.omega_pr: non-finite");
    if (!finite(omega_s)) bad.push_back("drives.omega_s: non-finite");
    if (!finite(delta_c) || !finite(delta_p) || !finite(delta_1) || !finite(delta_2))
        bad.push_back("drives.detunings: non-finite");
    const double tol = 1e-9;
    if (bad.empty()) {
        if (std::abs(delta_p - delta_1) > tol)
            bad.push_back("drives: static-frame consistency requires delta_p == delta_1");
        if (std::abs(delta_c - delta_2) > tol)
            bad.push_back("drives: static-frame consistency requires delta_c == delta_2");
    }
    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

DriveFields with_detunings(DriveFields d, double delta_1, double delta_2) {
    d.delta_1 = delta_1;
    d.delta_p = delta_1;
    d.delta_2 = delta_2;
    d.delta_c = delta_2;
    return d;
}

void DensityMatrix::validate(double tol_herm, double tol_trace, double tol_psd) const {
    std::vector<std::string> bad;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol_herm)
        bad.push_back("density matrix not Hermitian within tolerance");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol_trace)
        bad.push_back("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (rho + rho.adjoint()));
    if (es.eigenvalues().minCoeff() < -tol_psd)
        bad.push_back("density matrix has a negative eigenvalue beyond tolerance");
    if (!bad.empty()) {
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
        throw ValidationError(os.str());
    }
}

Vector16c stack(const Matrix4c& rho) {
    return Eigen::Map<const Vector16c>(rho.data());
}

Matrix4c unstack(const Vector16c& v) {
    return Eigen::Map<const Matrix4c>(v.data());
}

Matrix4c build_hamiltonian(const AtomScheme& scheme, const DriveFields& drives) {
    scheme.validate_rates_finite();
    drives.validate();
    Matrix4c h = Matrix4c::Zero();
    h(2, 2) = -drives.delta_2;
    h(3, 3) = -(drives.delta_2 + drives.delta_1);
    h(0, 2) = -drives.omega_s / 2.0;
    h(1, 2) = -drives.omega_c / 2.0;
    h(2, 3) = -(drives.omega_p + drives.omega_pr) / 2.0;
    h(2, 0) = std::conj(h(0, 2));
    h(2, 1) = std::conj(h(1, 2));
    h(3, 2) = std::conj(h(2, 3));
    return h;
}

Liouvillian build_liouvillian(const AtomScheme& scheme, const DriveFields& drives) {
    const Matrix4c h = build_hamiltonian(scheme, drives);
    const Matrix4c eye = Matrix4c::Identity();
    const Complex minus_i(0.0, -1.0);

    Liouvillian out;
    out.matrix = minus_i * (Eigen::kroneckerProduct(eye, h) -
                            Eigen::kroneckerProduct(h.transpose(), eye));
    for (const Matrix4c& c : collapse_operators(scheme)) {
        const Matrix4c cdc = c.adjoint() * c;
        out.matrix += Eigen::kroneckerProduct(c.conjugate(), c);
        out.matrix -= 0.5 * Eigen::kroneckerProduct(eye, cdc);
        out.matrix -= 0.5 * Eigen::kroneckerProduct(cdc.transpose(), eye);
    }
    return out;
}

Matrix4c time_derivative(const Liouvillian& L, const Matrix4c& rho) {
    return unstack(L.matrix * stack(rho));
}

DensityMatrix steady_state(const Liouvillian& L) {
    Matrix16c a = L.matrix;
    Vector16c b = Vector16c::Zero();
    a.row(0).setZero();
    for (int i = 0; i < 4; ++i) a(0, 5 * i) = 1.0;  // trace row
    b(0) = 1.0;

    Eigen::FullPivLU<Matrix16c> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() < 16)
        throw SingularSystem(
            "steady_state: constrained system is rank-deficient (gamma_g = 0 or degenerate "
            "parameters)");
    Vector16c x = lu.solve(b);
    if (!x.allFinite())
        throw SingularSystem("steady_state: constrained system is singular (gamma_g = 0 or degenerate parameters)");

    Matrix4c rho = unstack(x);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!std::isfinite(tr) || std::abs(tr) < 1e-14)
        throw SingularSystem("steady_state: solution has vanishing trace");
    rho /= tr;

    const double residual = (L.matrix * stack(rho)).cwiseAbs().maxCoeff();
    if (residual > 1e-10) {
        std::ostringstream os;
        os << "steady_state: rank-deficient system, residual " << residual;
        throw SingularSystem(os.str());
    }
    DensityMatrix out;
    out.rho = rho;
    return out;
}

DensityMatrix evolve_to_steady(const Liouvillian& L, const DensityMatrix& rho0,
                               double t_max, double tol) {
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw ValidationError("evolve_to_steady: t_max must be positive and finite");
    if (!(tol > 0.0)) throw ValidationError("evolve_to_steady: tol must be positive");
    rho0.validate(1e-8, 1e-8, 1e-6);

    const double norm_l = L.matrix.cwiseAbs().rowwise().sum().maxCoeff();
    Vector16c v0 = stack(rho0.rho);
    if (norm_l == 0.0) return rho0;  // static generator, rho0 already steady

    double h = std::min(0.5 / norm_l, t_max / 16.0);
    const int chunk = 64;
    double residual = (L.matrix * v0).cwiseAbs().maxCoeff();
    if (residual < tol) return rho0;

    for (int attempt = 0; attempt < 14; ++attempt) {
        // One-step propagator: I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24,
        // algebraically the classic RK4 step for a constant generator.
        Matrix16c step = Matrix16c::Identity();
        Matrix16c term = Matrix16c::Identity();
        const Matrix16c hl = h * L.matrix;
        for (int k = 1; k <= 4; ++k) {
            term = (term * hl / static_cast<double>(k)).eval();
            step += term;
        }

        Vector16c v = v0;
        double t = 0.0;
        bool unstable = false;
        while (t < t_max) {
            for (int i = 0; i < chunk; ++i) v = step * v;
            t += chunk * h;
            Complex tr = v(0) + v(5) + v(10) + v(15);
            if (!v.allFinite() || std::abs(tr - Complex(1.0, 0.0)) > 1e-6 ||
                v.cwiseAbs().maxCoeff() > 10.0) {
                unstable = true;
                break;
            }
            residual = (L.matrix * v).cwiseAbs().maxCoeff();
            if (residual < tol) {
                DensityMatrix out;
                out.rho = unstack(v);
                out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();
                return out;
            }
        }
        if (!unstable) {
            std::ostringstream os;
            os << "evolve_to_steady: residual " << residual << " >= tol " << tol
               << " at t_max " << t_max;
            throw NotConverged(os.str(), residual);
        }
        h *= 0.5;
    }
    throw NotConverged("evolve_to_steady: step size underflow while stabilizing", residual);
}

Complex coherence(const DensityMatrix& rho, int i, int j) {
    if (i < 1 || i > 4 || j < 1 || j > 4) {
        std::ostringstream os;
        os << "coherence: level index (" << i << "," << j << ") outside 1..4";
        throw IndexOutOfRange(os.str());
    }
    return rho.rho(i - 1, j - 1);
}

} // namespace fwmsim
