#include <doctest.h>

#include <random>

#include "fwmsim/atom_model.hpp"

using namespace fwmsim;

namespace {

AtomScheme scheme_mhz(double g, double G, double gg, double g12) {
    AtomScheme s;
    s.gamma = angular_from_mhz(g);
    s.Gamma = angular_from_mhz(G);
    s.gamma_g = angular_from_mhz(gg);
    s.gamma_12 = angular_from_mhz(g12);
    return s;
}

DriveFields drives_mhz(double oc, double op, double opr, double os, double d1, double d2) {
    DriveFields d;
    d.omega_c = angular_from_mhz(oc);
    d.omega_p = angular_from_mhz(op);
    d.omega_pr = angular_from_mhz(opr);
    d.omega_s = angular_from_mhz(os);
    return with_detunings(d, angular_from_mhz(d1), angular_from_mhz(d2));
}

struct RandomDraw {
    AtomScheme scheme;
    DriveFields drives;
};

RandomDraw random_draw(std::mt19937& rng) {
    std::uniform_real_distribution<double> rate(1.0, 12.0);
    std::uniform_real_distribution<double> rabi(0.0, 10.0);
    std::uniform_real_distribution<double> det(-10.0, 10.0);
    RandomDraw r;
    r.scheme = scheme_mhz(rate(rng), rate(rng), 0.0, 0.0);
    r.scheme.gamma_g = 1e-3 * r.scheme.gamma;
    r.scheme.gamma_12 = 1e-3 * r.scheme.gamma;
    r.drives = drives_mhz(rabi(rng), rabi(rng), rabi(rng), 0.05 * rabi(rng) + 0.001,
                          det(rng), det(rng));
    return r;
}

// Test-side oracle: the Lindblad action computed directly in rho space from
// the documented dissipator list, independent of the Kronecker assembly.
Matrix4c lindblad_action_direct(const AtomScheme& s, const Matrix4c& h, const Matrix4c& rho) {
    auto kb = [](int i, int j) {
        Matrix4c m = Matrix4c::Zero();
        m(i, j) = 1.0;
        return m;
    };
    std::vector<Matrix4c> cs;
    cs.push_back(std::sqrt(s.b1 * s.gamma) * kb(0, 2));
    cs.push_back(std::sqrt(s.b2 * s.gamma) * kb(1, 2));
    cs.push_back(std::sqrt(s.Gamma) * kb(2, 3));
    cs.push_back(std::sqrt(s.gamma_g) * kb(0, 1));
    cs.push_back(std::sqrt(s.gamma_g) * kb(1, 0));
    cs.push_back(std::sqrt(s.gamma_12 / 2.0) * (kb(0, 0) - kb(1, 1)));

    Matrix4c out = Complex(0.0, -1.0) * (h * rho - rho * h);
    for (const auto& c : cs) {
        const Matrix4c cdc = c.adjoint() * c;
        out += c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc);
    }
    return out;
}

} // namespace

TEST_SUITE("atom_model") {

TEST_CASE("hamiltonian: no drives, no rotation gives the zero matrix") {
    const auto h = build_hamiltonian(scheme_mhz(3, 1, 0.003, 0.003),
                                     drives_mhz(0, 0, 0, 0, 0, 0));
    CHECK(h.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian: coupling-only entries") {
    const auto h = build_hamiltonian(scheme_mhz(3, 1, 0.003, 0.003),
                                     drives_mhz(1, 0, 0, 0, 0, 0));
    CHECK(h(1, 2).real() == doctest::Approx(-angular_from_mhz(0.5)).epsilon(1e-14));
    CHECK(h(2, 1).real() == doctest::Approx(-angular_from_mhz(0.5)).epsilon(1e-14));
    Matrix4c rest = h;
    rest(1, 2) = rest(2, 1) = 0.0;
    CHECK(rest.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian: hermitian for random parameter draws") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    for (int k = 0; k < 20; ++k) {
        auto d = random_draw(rng);
        d.drives.omega_c *= std::polar(1.0, phase(rng));  // complex coupling allowed
        const auto h = build_hamiltonian(d.scheme, d.drives);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("hamiltonian rejects non-finite input") {
    auto d = drives_mhz(1, 1, 0.1, 0.001, 0, 0);
    d.omega_p = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(build_hamiltonian(scheme_mhz(3, 1, 0.003, 0.003), d), ValidationError);
}

TEST_CASE("liouvillian: bare decay of the intermediate state") {
    const auto scheme = scheme_mhz(3, 1, 0.003, 0.0);
    const auto L = build_liouvillian(scheme, drives_mhz(0, 0, 0, 0, 0, 0));
    Matrix4c rho33 = Matrix4c::Zero();
    rho33(2, 2) = 1.0;
    const Matrix4c drho = time_derivative(L, rho33);
    CHECK(drho(2, 2).real() == doctest::Approx(-scheme.gamma).epsilon(1e-12));
    CHECK(drho(0, 0).real() == doctest::Approx(scheme.b1 * scheme.gamma).epsilon(1e-12));
    CHECK(drho(1, 1).real() == doctest::Approx(scheme.b2 * scheme.gamma).epsilon(1e-12));
}

TEST_CASE("liouvillian: trace functional annihilates the generator") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto d = random_draw(rng);
    const auto L = build_liouvillian(d.scheme, d.drives);
    for (int k = 0; k < 20; ++k) {
        Matrix4c rho;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rho(i, j) = Complex(u(rng), u(rng));
        CHECK(std::abs(time_derivative(L, rho).trace()) < 1e-10);
    }
}

TEST_CASE("liouvillian matches the column-by-column construction oracle") {
    std::mt19937 rng(13);
    for (int k = 0; k < 5; ++k) {
        const auto d = random_draw(rng);
        const auto L = build_liouvillian(d.scheme, d.drives);
        const auto h = build_hamiltonian(d.scheme, d.drives);
        for (int col = 0; col < 16; ++col) {
            Matrix4c basis = Matrix4c::Zero();
            basis(col % 4, col / 4) = 1.0;  // column-major stacking
            const Matrix4c expect = lindblad_action_direct(d.scheme, h, basis);
            const Matrix4c got = unstack(Vector16c(L.matrix.col(col)));
            CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("steady state: all drives zero gives the symmetric ground mixture") {
    const auto L = build_liouvillian(scheme_mhz(3, 1, 0.003, 0.003),
                                     drives_mhz(0, 0, 0, 0, 0, 0));
    const auto rho = steady_state(L);
    CHECK(rho.rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rho.rho(1, 1).real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::abs(rho.rho(2, 2)) < 1e-12);
    CHECK(std::abs(rho.rho(3, 3)) < 1e-12);
    Matrix4c offdiag = rho.rho;
    offdiag.diagonal().setZero();
    CHECK(offdiag.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("steady state: coupling-only excited population matches the saturation oracle") {
    // Closed two-level pair 2<->3 with drive Omega and detuning Delta has
    // excited fraction S = (Omega^2/4)/(Delta^2 + gamma^2/4 + Omega^2/2).
    // With the b1*gamma leak into |1> balanced by the gamma_g exchange the
    // population partition gives
    //   rho_33 = S / ((2 - S) + (b1*gamma/gamma_g) * S)
    // exact up to O(gamma_g/gamma) corrections to the coherence damping.
    const double g_mhz = 3.0;
    const auto scheme = scheme_mhz(g_mhz, 1.0, 1e-3 * g_mhz, 0.0);
    struct Case {
        double omega_mhz, delta_mhz;
    };
    for (const Case c : {Case{2.0, 0.0}, Case{4.0, 2.0}, Case{1.0, -3.0}}) {
        const double om = angular_from_mhz(c.omega_mhz);
        const double de = angular_from_mhz(c.delta_mhz);
        const double S = (om * om / 4.0) /
                         (de * de + scheme.gamma * scheme.gamma / 4.0 + om * om / 2.0);
        const double expected = S / ((2.0 - S) + (scheme.b1 * scheme.gamma / scheme.gamma_g) * S);

        const auto d = drives_mhz(c.omega_mhz, 0, 0, 0, 0, c.delta_mhz);
        const auto rho = steady_state(build_liouvillian(scheme, d));
        CHECK(rho.rho(2, 2).real() == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("steady state: gamma_g = 0 is singular") {
    AtomScheme s = scheme_mhz(3, 1, 0.003, 0.003);
    s.gamma_g = 0.0;  // build_liouvillian only rejects non-finite rates
    const auto L = build_liouvillian(s, drives_mhz(0, 0, 0, 0, 0, 0));
    CHECK_THROWS_AS(steady_state(L), SingularSystem);
}

TEST_CASE("steady state invariants hold on random draws") {
    std::mt19937 rng(17);
    for (int k = 0; k < 10; ++k) {
        const auto d = random_draw(rng);
        const auto rho = steady_state(build_liouvillian(d.scheme, d.drives));
        CHECK_NOTHROW(rho.validate());
    }
}

TEST_CASE("steady state is invariant under common rescaling of all rates") {
    std::mt19937 rng(19);
    const auto d = random_draw(rng);
    const auto rho_a = steady_state(build_liouvillian(d.scheme, d.drives));

    const double s = 3.7;
    AtomScheme scheme = d.scheme;
    scheme.gamma *= s;
    scheme.Gamma *= s;
    scheme.gamma_g *= s;
    scheme.gamma_12 *= s;
    DriveFields dr = d.drives;
    dr.omega_c *= s;
    dr.omega_p *= s;
    dr.omega_pr *= s;
    dr.omega_s *= s;
    dr = with_detunings(dr, s * d.drives.delta_1, s * d.drives.delta_2);
    const auto rho_b = steady_state(build_liouvillian(scheme, dr));
    CHECK((rho_a.rho - rho_b.rho).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("zero Rabi frequencies empty the excited states exactly") {
    const auto L = build_liouvillian(scheme_mhz(5, 9, 0.005, 0.005),
                                     drives_mhz(0, 0, 0, 0, 2.0, -3.0));
    const auto rho = steady_state(L);
    CHECK(std::abs(rho.rho(2, 2)) < 1e-12);
    CHECK(std::abs(rho.rho(3, 3)) < 1e-12);
    CHECK(rho.rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(rho.rho(1, 1).real() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("evolve: ground exchange equilibrates |1><1|") {
    const auto L = build_liouvillian(scheme_mhz(3, 1, 0.003, 0.003),
                                     drives_mhz(0, 0, 0, 0, 0, 0));
    DensityMatrix rho0;
    rho0.rho(0, 0) = 1.0;
    const auto rho = evolve_to_steady(L, rho0, 5000.0, 1e-10);
    CHECK(rho.rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rho.rho(1, 1).real() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(rho.rho.trace() - Complex(1.0, 0.0)) < 1e-8);
}

TEST_CASE("evolve conserves the trace within 1e-8") {
    std::mt19937 rng(23);
    for (int k = 0; k < 5; ++k) {
        const auto d = random_draw(rng);
        const auto L = build_liouvillian(d.scheme, d.drives);
        DensityMatrix rho0;
        rho0.rho(1, 1) = 1.0;
        const auto rho = evolve_to_steady(L, rho0, 6000.0, 1e-9);
        CHECK(std::abs(rho.rho.trace() - Complex(1.0, 0.0)) < 1e-8);
    }
}

TEST_CASE("evolve agrees with the direct steady-state solve on random draws") {
    std::mt19937 rng(29);
    for (int k = 0; k < 10; ++k) {
        const auto d = random_draw(rng);
        const auto L = build_liouvillian(d.scheme, d.drives);
        const auto direct = steady_state(L);
        DensityMatrix rho0;
        rho0.rho(0, 0) = 1.0;
        const auto evolved = evolve_to_steady(L, rho0, 6000.0, 1e-9);
        CHECK((direct.rho - evolved.rho).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("evolve reports the residual when t_max is too short") {
    const auto L = build_liouvillian(scheme_mhz(3, 1, 0.003, 0.003),
                                     drives_mhz(2, 2, 0.1, 0.001, 0, 0));
    DensityMatrix rho0;
    rho0.rho(0, 0) = 1.0;
    try {
        evolve_to_steady(L, rho0, 0.05, 1e-12);
        FAIL("expected NotConverged");
    } catch (const NotConverged& e) {
        CHECK(e.residual > 0.0);
    }
}

TEST_CASE("coherence accessor") {
    DensityMatrix rho;
    rho.rho(0, 0) = 0.5;
    rho.rho(1, 1) = 0.5;
    CHECK(coherence(rho, 3, 1) == Complex(0.0, 0.0));
    CHECK_THROWS_AS(coherence(rho, 0, 1), IndexOutOfRange);
    CHECK_THROWS_AS(coherence(rho, 1, 5), IndexOutOfRange);

    const auto d = drives_mhz(2, 2, 0.1, 0.01, 0.5, -1.5);
    const auto solved = steady_state(build_liouvillian(scheme_mhz(3, 1, 0.003, 0.003), d));
    CHECK(coherence(solved, 1, 2) == std::conj(coherence(solved, 2, 1)));
    // all four fields on: the FWM coherence is nonzero
    CHECK(std::abs(coherence(solved, 3, 1)) > 1e-8);
}

} // TEST_SUITE
