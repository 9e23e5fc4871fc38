#include <doctest.h>

#include <cmath>
#include <random>

#include "fwmsim/pulses.hpp"

using namespace fwmsim;

namespace {

TimeGrid grid_of(int n, double dt) {
    TimeGrid g;
    g.n = n;
    g.dt = dt;
    return g;
}

std::vector<Complex> random_signal(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> v(static_cast<size_t>(n));
    for (auto& a : v) a = Complex(u(rng), u(rng));
    return v;
}

} // namespace

TEST_SUITE("pulses") {

TEST_CASE("square pulse: plateau, wing value, edge errors") {
    const auto g = grid_of(4096, 0.01);
    const auto p = square_pulse(10.0, 20.0, 1.0, g);
    const int mid = static_cast<int>(15.0 / g.dt);
    CHECK(p.amplitude[static_cast<size_t>(mid)] == Complex(1.0, 0.0));
    const int after = static_cast<int>(21.0 / g.dt);
    CHECK(p.amplitude[static_cast<size_t>(after)].real() ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(square_pulse(-1.0, 20.0, 1.0, g), EdgeOutsideGrid);
    CHECK_THROWS_AS(square_pulse(10.0, 50.0, 1.0, g), EdgeOutsideGrid);
    CHECK_THROWS_AS(square_pulse(20.0, 10.0, 1.0, g), ValidationError);
    CHECK_THROWS_AS(square_pulse(10.0, 20.0, -2.0, g), ValidationError);
}

TEST_CASE("square pulse at huge k matches the ideal rectangle away from the edges") {
    const auto g = grid_of(4096, 0.01);
    const auto p = square_pulse(10.0, 20.0, 1e6, g);
    for (int i = 0; i < g.n; ++i) {
        const double t = g.time(i);
        if (std::abs(t - 10.0) <= 2 * g.dt || std::abs(t - 20.0) <= 2 * g.dt) continue;
        const double ideal = (t >= 10.0 && t <= 20.0) ? 1.0 : 0.0;  // indicator oracle
        CHECK(std::abs(p.amplitude[static_cast<size_t>(i)].real() - ideal) < 1e-10);
    }
}

TEST_CASE("half-Gaussian pulse values and orientations") {
    const auto g = grid_of(4096, 0.01);
    const double dtau = 2.0;
    const auto rise = half_gaussian_pulse(10.0, dtau, HalfGaussianSide::sharp_rise, g);
    const int at_cut = static_cast<int>(10.0 / g.dt);
    CHECK(rise.amplitude[static_cast<size_t>(at_cut)] == Complex(1.0, 0.0));
    CHECK(rise.amplitude[static_cast<size_t>(at_cut - 1)] == Complex(0.0, 0.0));
    const int at_sigma = static_cast<int>((10.0 + dtau) / g.dt);
    CHECK(rise.amplitude[static_cast<size_t>(at_sigma)].real() ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-10));

    const auto fall = half_gaussian_pulse(20.0, dtau, HalfGaussianSide::sharp_fall, g);
    const int at_cut2 = static_cast<int>(20.0 / g.dt);
    CHECK(fall.amplitude[static_cast<size_t>(at_cut2)] == Complex(1.0, 0.0));
    CHECK(fall.amplitude[static_cast<size_t>(at_cut2 + 1)] == Complex(0.0, 0.0));

    CHECK_THROWS_AS(half_gaussian_pulse(50.0, 1.0, HalfGaussianSide::sharp_rise, g),
                    EdgeOutsideGrid);
    CHECK_THROWS_AS(half_gaussian_pulse(10.0, 0.0, HalfGaussianSide::sharp_rise, g),
                    ValidationError);
}

TEST_CASE("generators stay real-valued and bounded by [0, 1]") {
    const auto g = grid_of(1024, 0.04);
    for (const auto& p : {square_pulse(10.0, 20.0, 3.0, g),
                          half_gaussian_pulse(12.0, 4.0, HalfGaussianSide::sharp_fall, g)}) {
        for (const auto& a : p.amplitude) {
            CHECK(a.imag() == 0.0);
            CHECK(a.real() >= 0.0);
            CHECK(a.real() <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("forward transform of a discrete delta is flat at 1/sqrt(n)") {
    const auto g = grid_of(256, 0.01);
    PulseEnvelope p;
    p.grid = g;
    p.amplitude.assign(256, Complex(0.0, 0.0));
    p.amplitude[40] = Complex(1.0, 0.0);
    const auto s = forward_transform(p);
    for (const auto& a : s.amplitude)
        CHECK(std::abs(a) == doctest::Approx(1.0 / 16.0).epsilon(1e-10));
}

TEST_CASE("forward transform of a Gaussian has the analytic spectral width") {
    const auto g = grid_of(4096, 0.01);
    PulseEnvelope p;
    p.grid = g;
    const double sigma_t = 0.5, t0 = 20.48;
    for (int i = 0; i < g.n; ++i) {
        const double t = g.time(i);
        p.amplitude.push_back(Complex(std::exp(-(t - t0) * (t - t0) / (2 * sigma_t * sigma_t)), 0.0));
    }
    const auto s = forward_transform(p);
    const double sigma_f = 1.0 / (two_pi * sigma_t);
    CHECK(bandwidth_fwhm(s) == doctest::Approx(2.3548 * sigma_f).epsilon(0.01));
}

TEST_CASE("transforms are unitary and invert each other") {
    const auto g = grid_of(1024, 0.01);
    PulseEnvelope p;
    p.grid = g;
    p.amplitude = random_signal(g.n, 101);

    const auto s = forward_transform(p);
    double e_t = 0.0, e_f = 0.0;
    for (const auto& a : p.amplitude) e_t += std::norm(a);
    for (const auto& a : s.amplitude) e_f += std::norm(a);
    CHECK(std::abs(e_t - e_f) < 1e-10 * e_t);

    const auto back = inverse_transform(s);
    double worst = 0.0;
    for (size_t i = 0; i < p.amplitude.size(); ++i)
        worst = std::max(worst, std::abs(back.amplitude[i] - p.amplitude[i]));
    CHECK(worst < 1e-10);
}

TEST_CASE("inverse transform of a flat spectrum is a discrete delta") {
    const int n = 256;
    SpectralResponse s;
    s.freq_mhz = fft_freq_grid(grid_of(n, 0.01));
    s.amplitude.assign(static_cast<size_t>(n), Complex(1.0 / 16.0, 0.0));
    const auto p = inverse_transform(s);
    // a constant spectrum is invariant under the bin reordering, so the
    // impulse sits at sample 0 with height (1/16)*sqrt(256) = 1
    double peak = 0.0;
    int at = -1;
    for (int i = 0; i < n; ++i) {
        if (std::abs(p.amplitude[static_cast<size_t>(i)]) > peak) {
            peak = std::abs(p.amplitude[static_cast<size_t>(i)]);
            at = i;
        }
    }
    CHECK(at == 0);
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-10));
    for (int i = 1; i < n; ++i)
        CHECK(std::abs(p.amplitude[static_cast<size_t>(i)]) < 1e-10);
}

TEST_CASE("inverse transform is linear") {
    const auto g = grid_of(512, 0.02);
    PulseEnvelope pa, pb;
    pa.grid = pb.grid = g;
    pa.amplitude = random_signal(g.n, 5);
    pb.amplitude = random_signal(g.n, 6);
    const auto sa = forward_transform(pa);
    const auto sb = forward_transform(pb);
    const Complex ca(0.3, -1.2), cb(-0.7, 0.4);

    SpectralResponse mix;
    mix.freq_mhz = sa.freq_mhz;
    for (size_t i = 0; i < sa.amplitude.size(); ++i)
        mix.amplitude.push_back(ca * sa.amplitude[i] + cb * sb.amplitude[i]);

    const auto left = inverse_transform(mix);
    const auto ia = inverse_transform(sa);
    const auto ib = inverse_transform(sb);
    for (size_t i = 0; i < left.amplitude.size(); ++i) {
        const Complex rhs = ca * ia.amplitude[i] + cb * ib.amplitude[i];
        CHECK(std::abs(left.amplitude[i] - rhs) < 1e-10);
    }
}

TEST_CASE("inverse transform rejects incompatible grids") {
    SpectralResponse s;
    s.freq_mhz = uniform_grid(-10.0, 10.0, 1000);  // not a power of two
    s.amplitude.assign(1000, Complex(1.0, 0.0));
    CHECK_THROWS_AS(inverse_transform(s), GridMismatch);

    SpectralResponse shifted;
    shifted.freq_mhz = uniform_grid(0.0, 20.0, 256);  // does not start at -n/2*df
    shifted.amplitude.assign(256, Complex(1.0, 0.0));
    CHECK_THROWS_AS(inverse_transform(shifted), GridMismatch);
}

TEST_CASE("half-Gaussian spectral energy above 1 MHz falls as delta_t grows") {
    const auto g = grid_of(4096, 0.01);
    double prev = 2.0;
    for (double dtau : {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}) {
        const auto s =
            forward_transform(half_gaussian_pulse(10.0, dtau, HalfGaussianSide::sharp_rise, g));
        double total = 0.0, high = 0.0;
        for (size_t i = 0; i < s.amplitude.size(); ++i) {
            const double e = std::norm(s.amplitude[i]);
            total += e;
            if (std::abs(s.freq_mhz[i]) > 1.0) high += e;
        }
        const double frac = high / total;
        CHECK(frac < prev);
        prev = frac;
    }
}

TEST_CASE("time grid invariants") {
    CHECK_THROWS_AS(grid_of(1000, 0.01).validate(), ValidationError);  // not a power of two
    CHECK_THROWS_AS(grid_of(4, 0.01).validate(), ValidationError);     // below minimum
    CHECK_THROWS_AS(grid_of(1024, -0.01).validate(), ValidationError);
    CHECK_NOTHROW(grid_of(1024, 0.01).validate());
}

} // TEST_SUITE
