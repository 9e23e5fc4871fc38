#include <doctest.h>

#include <cmath>
#include <map>

#include "fwmsim/storage.hpp"

using namespace fwmsim;

namespace {

// the fig5a/fig6b storage grid: span 81.92 us, Nyquist 50 MHz
PipelineConfig storage_cfg() {
    PipelineConfig c;
    c.grid.n = 8192;
    c.grid.dt = 0.01;
    c.threads = 4;
    return c;
}

const SpectralResponse& storage_filter(const PipelineConfig& cfg) {
    static std::map<int, SpectralResponse> cache;
    auto it = cache.find(cfg.grid.n);
    if (it == cache.end()) it = cache.emplace(cfg.grid.n, pipeline_filter(cfg)).first;
    return it->second;
}

StorageRun run_case(const PulseSpec& spec, double gap_start, double gap_end,
                    const StorageParams& params) {
    const auto cfg = storage_cfg();
    const auto probe = make_pulse(spec, cfg.grid);
    const auto timing = preset_timing(cfg.grid, gap_start, gap_end);
    return run_storage(probe, timing, params, cfg, &storage_filter(cfg));
}

PulseSpec square_spec() {
    PulseSpec s;
    s.shape = PulseSpec::Shape::square;
    return s;  // [10, 20] us, k = 100
}

} // namespace

TEST_SUITE("storage") {

TEST_CASE("retrieval energy of simple traces") {
    TimeGrid g;
    g.n = 4096;
    g.dt = 0.01;
    PulseEnvelope zero;
    zero.grid = g;
    zero.amplitude.assign(static_cast<size_t>(g.n), Complex(0.0, 0.0));
    CHECK(retrieval_energy(zero, {5.0, 9.0}) == 0.0);

    PulseEnvelope unit = zero;
    unit.amplitude.assign(static_cast<size_t>(g.n), Complex(1.0, 0.0));
    CHECK(retrieval_energy(unit, {10.0, 11.0}) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(retrieval_energy(unit, {-1.0, 5.0}), WindowOutsideGrid);
    CHECK_THROWS_AS(retrieval_energy(unit, {30.0, 90.0}), WindowOutsideGrid);
}

TEST_CASE("windowed energy agrees with the spectral-domain oracle") {
    TimeGrid g;
    g.n = 1024;
    g.dt = 0.02;
    PulseEnvelope tr;
    tr.grid = g;
    for (int i = 0; i < g.n; ++i) {
        const double t = g.time(i);
        tr.amplitude.push_back(Complex(std::sin(0.7 * t) * std::exp(-0.1 * t), 0.2 * std::cos(t)));
    }
    const TimeWindow w{4.0, 9.0};
    PulseEnvelope windowed = tr;
    for (int i = 0; i < g.n; ++i) {
        const double t = g.time(i);
        if (t < w.lo || t >= w.hi) windowed.amplitude[static_cast<size_t>(i)] = 0.0;
    }
    const auto spec = forward_transform(windowed);
    double e_f = 0.0;
    for (const auto& a : spec.amplitude) e_f += std::norm(a);
    e_f *= g.dt;  // Parseval: sum |x|^2 = sum |X|^2
    CHECK(retrieval_energy(tr, w) == doctest::Approx(e_f).epsilon(1e-8));
}

TEST_CASE("square-pulse storage with a 12 us gap retrieves visibly") {
    const auto run = run_case(square_spec(), 19.8, 31.8, StorageParams{});
    CHECK(run.warnings.empty());
    CHECK(run.retrieval_energy_raw > 0.05 * run.suppressed_energy_raw);
    // leak equals the no-storage signal outside the gap and vanishes inside
    const auto& g = run.composite.grid;
    for (int i = 0; i < g.n; ++i) {
        const double t = g.time(i);
        const Complex leak = run.leak.amplitude[static_cast<size_t>(i)];
        if (t >= run.gap_start && t < run.gap_end)
            CHECK(leak == Complex(0.0, 0.0));
        else
            CHECK(leak == run.reference.amplitude[static_cast<size_t>(i)]);
        if (t < run.gap_start)
            CHECK(run.composite.amplitude[static_cast<size_t>(i)] ==
                  run.reference.amplitude[static_cast<size_t>(i)]);
    }
}

TEST_CASE("slow back edge stores an order of magnitude less than the square pulse") {
    PulseSpec sharp_back;
    sharp_back.shape = PulseSpec::Shape::half_gaussian;
    sharp_back.side = HalfGaussianSide::sharp_fall;
    sharp_back.t_cut = 20.0;
    PulseSpec slow_back;
    slow_back.shape = PulseSpec::Shape::half_gaussian;
    slow_back.side = HalfGaussianSide::sharp_rise;
    slow_back.t_cut = 10.0;

    const auto r1 = run_case(square_spec(), 19.8, 31.8, StorageParams{});
    const auto r2 = run_case(sharp_back, 19.8, 31.8, StorageParams{});
    const auto r3 = run_case(slow_back, 19.8, 31.8, StorageParams{});
    CHECK(r3.retrieval_energy_raw < 0.1 * r1.retrieval_energy_raw);
    CHECK(r1.retrieval_energy_raw > 10.0 * r3.retrieval_energy_raw);
    CHECK(r2.retrieval_energy_raw > 10.0 * r3.retrieval_energy_raw);

    // retrieval ordering follows the suppressed back-peak energies
    CHECK(r3.suppressed_energy_raw < r1.suppressed_energy_raw);
    CHECK(r1.suppressed_energy_raw < r2.suppressed_energy_raw);
    CHECK(r3.retrieval_energy_raw < r1.retrieval_energy_raw);
    CHECK(r1.retrieval_energy_raw < r2.retrieval_energy_raw);
}

TEST_CASE("disabled memory: eta = 0 keeps the leak and kills the retrieval") {
    StorageParams p;
    p.eta = 0.0;
    const auto run = run_case(square_spec(), 19.8, 31.8, p);
    CHECK(run.retrieval_energy_raw == 0.0);
    for (const auto& a : run.retrieval.amplitude) CHECK(a == Complex(0.0, 0.0));
    const auto& g = run.leak.grid;
    for (int i = 0; i < g.n; ++i) {
        if (g.time(i) < run.gap_start)
            CHECK(run.leak.amplitude[static_cast<size_t>(i)] ==
                  run.reference.amplitude[static_cast<size_t>(i)]);
    }
}

TEST_CASE("retrieval decays exponentially with the storage gap") {
    StorageParams p;
    p.tau_s = 5.0;  // short lifetime keeps both gaps inside the grid
    const auto e_gap = run_case(square_spec(), 19.8, 25.8, p).retrieval_energy_raw;
    const auto e_gap_tau = run_case(square_spec(), 19.8, 30.8, p).retrieval_energy_raw;
    CHECK(e_gap_tau / e_gap == doctest::Approx(std::exp(-2.0)).epsilon(0.01));

    StorageParams d;  // defaults, tau_s = 50
    const auto e6 = run_case(square_spec(), 19.8, 25.8, d).retrieval_energy_raw;
    const auto e12 = run_case(square_spec(), 19.8, 31.8, d).retrieval_energy_raw;
    const auto e24 = run_case(square_spec(), 19.8, 43.8, d).retrieval_energy_raw;
    CHECK(e24 < e12);
    CHECK(e12 < e6);
}

TEST_CASE("coupling gap that misses the pulse warns instead of failing") {
    const auto run = run_case(square_spec(), 50.0, 62.0, StorageParams{});
    REQUIRE(!run.warnings.empty());
    CHECK(run.retrieval_energy_raw < 1e-12);
}

TEST_CASE("a coupling channel without a single off-gap is rejected") {
    const auto cfg = storage_cfg();
    const auto probe = make_pulse(square_spec(), cfg.grid);
    TimingSequence timing = preset_timing(cfg.grid, 19.8, 31.8);
    timing.coupling = {{cfg.grid.t_start, cfg.grid.t_end()}};  // always on
    CHECK_THROWS_AS(run_storage(probe, timing, StorageParams{}, cfg, &storage_filter(cfg)),
                    NoOffGap);
}

TEST_CASE("timing and parameter validation") {
    const auto cfg = storage_cfg();
    TimingSequence t = preset_timing(cfg.grid, 19.8, 31.8);
    t.pump = {{5.0, 2.0}};  // reversed interval
    CHECK_THROWS_AS(t.validate(cfg.grid), ValidationError);

    StorageParams p;
    p.eta = 1.5;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = StorageParams{};
    p.readout_rate = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

} // TEST_SUITE
