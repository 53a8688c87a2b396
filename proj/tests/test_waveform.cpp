#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "sarnav/errors.hpp"
#include "sarnav/waveform.hpp"

using namespace sarnav;

namespace {

std::mt19937 rng(99173);

ChirpParams chirp_at(double fs) {
    // 150 MHz symmetric baseband chirp; f0 = -K*T/2 keeps the matched-filter
    // residual phase identically zero across the mainlobe.
    ChirpParams p;
    p.K = 1.5e13;
    p.T = 10.0e-6;
    p.f0 = -p.K * p.T / 2.0;
    p.fs = fs;
    p.fc = 10.0e9;
    return p;
}

// Round a range so its two-way delay lands exactly on a sample.
double aligned_range(double R_approx, double fs) {
    const double tau = std::round(2.0 * R_approx / kSpeedOfLight * fs) / fs;
    return tau * kSpeedOfLight / 2.0;
}

DataMatrix one_pulse_raw(const ChirpParams& p, double R, std::size_t n_fast, double t_start) {
    Trajectory traj;
    traj.positions = {Vec3{}};
    const Target tgt{{0.0, R, 0.0}, 1.0};
    return simulate_raw(std::vector<Target>{tgt}, traj, p, n_fast, t_start, 100.0);
}

// Worst-case deviation between the discrete matched filter and the closed
// form, as a fraction of the peak T.
double oracle_error(double fs) {
    const ChirpParams p = chirp_at(fs);
    const double R = aligned_range(1500.0, fs) + 0.13 * kSpeedOfLight / (2.0 * fs);
    const double tau = 2.0 * R / kSpeedOfLight;
    const double t_start = tau - 2.0e-6;
    const auto n_fast = static_cast<std::size_t>((p.T + 4.0e-6) * fs);
    const DataMatrix rc = range_compress(one_pulse_raw(p, R, n_fast, t_start), p);
    double worst = 0.0;
    for (std::size_t n = 0; n < rc.n_fast; ++n) {
        const cplx ana = analytic_range_compressed_pulse(p, R, rc.sample_time(n) + p.T);
        worst = std::max(worst, std::abs(rc.pulse(0)[n] - ana));
    }
    return worst / p.T;
}

} // namespace

TEST_CASE("ChirpParams validation") {
    ChirpParams p = chirp_at(200.0e6);
    CHECK_NOTHROW(p.validate());
    p.fs = 1.1 * p.bandwidth();
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("oversampling guard"),
                         ValidationError);
    p = chirp_at(200.0e6);
    p.T = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = chirp_at(200.0e6);
    p.fc = 1.0e8; // below |K|*T
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("gen_chirp: endpoints and support") {
    const ChirpParams p = chirp_at(200.0e6);
    CHECK(gen_chirp(p, 0.0) == cplx{1.0, 0.0});
    CHECK(gen_chirp(p, -1.0e-9) == cplx{0.0, 0.0});
    CHECK(gen_chirp(p, p.T + 1.0e-9) == cplx{0.0, 0.0});
}

TEST_CASE("gen_chirp: phase substitution") {
    ChirpParams p;
    p.f0 = 0.0;
    p.K = 1.0e12;
    p.T = 10.0e-6;
    p.fs = 1.0e8;
    p.fc = 1.0e9;
    const cplx v = gen_chirp(p, 1.0e-6); // phase = pi*K*t^2 = pi
    CHECK(v.real() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(std::abs(v.imag()) < 1e-9);
}

TEST_CASE("simulate_raw_pulse: no targets gives zeros") {
    const ChirpParams p = chirp_at(200.0e6);
    const auto out = simulate_raw_pulse({}, Vec3{}, p, 256, 0.0);
    for (const cplx& v : out) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("simulate_raw_pulse: linear in the target set") {
    const ChirpParams p = chirp_at(200.0e6);
    const std::vector<Target> a{{{0.0, 1500.0, 0.0}, 1.0}};
    const std::vector<Target> b{{{0.0, 1520.0, 100.0}, 0.7}};
    std::vector<Target> both = a;
    both.push_back(b[0]);
    const double t_start = 0.9e-5;
    const std::size_t n_fast = 4096;
    const auto pa = simulate_raw_pulse(a, Vec3{}, p, n_fast, t_start);
    const auto pb = simulate_raw_pulse(b, Vec3{}, p, n_fast, t_start);
    const auto pab = simulate_raw_pulse(both, Vec3{}, p, n_fast, t_start);
    for (std::size_t n = 0; n < n_fast; ++n)
        CHECK(std::abs(pab[n] - (pa[n] + pb[n])) < 1e-12);
}

TEST_CASE("simulate_raw_pulse: envelope support starts at the two-way delay") {
    const ChirpParams p = chirp_at(200.0e6);
    const double R = 1500.0;
    const double tau = 2.0 * R / kSpeedOfLight; // ~1.000692e-5 s
    CHECK(tau == doctest::Approx(1.000692e-5).epsilon(1e-6));
    const double t_start = 0.9e-5;
    const std::vector<Target> tgt{{{0.0, R, 0.0}, 1.0}};
    const auto out = simulate_raw_pulse(tgt, Vec3{}, p, 4096, t_start);
    const auto first = static_cast<std::size_t>(std::ceil((tau - t_start) * p.fs));
    for (std::size_t n = 0; n < first; ++n) CHECK(out[n] == cplx{0.0, 0.0});
    CHECK(std::abs(out[first]) > 0.0);
}

TEST_CASE("simulate_raw_pulse: gate misses are counted, not thrown") {
    const ChirpParams p = chirp_at(200.0e6);
    const std::vector<Target> tgt{{{0.0, 50000.0, 0.0}, 1.0}};
    std::size_t misses = 0;
    const auto out = simulate_raw_pulse(tgt, Vec3{}, p, 64, 0.0, &misses);
    CHECK(misses == 1);
    for (const cplx& v : out) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("range_compress: zero input gives zero output") {
    const ChirpParams p = chirp_at(200.0e6);
    DataMatrix raw;
    raw.kind = DataMatrix::Kind::Raw;
    raw.n_pulses = 2;
    raw.n_fast = 4096;
    raw.fs = p.fs;
    raw.t_start = 0.0;
    raw.prf = 100.0;
    raw.values.assign(raw.n_pulses * raw.n_fast, cplx{});
    const DataMatrix rc = range_compress(raw, p);
    for (const cplx& v : rc.values) CHECK(v == cplx{0.0, 0.0});
    CHECK(rc.t_start == raw.t_start - p.T);
    CHECK(rc.n_fast == raw.n_fast + static_cast<std::size_t>(p.T * p.fs));
}

TEST_CASE("range_compress: replica longer than window is a shape mismatch") {
    const ChirpParams p = chirp_at(200.0e6);
    DataMatrix raw;
    raw.kind = DataMatrix::Kind::Raw;
    raw.n_pulses = 1;
    raw.n_fast = 100; // replica is T*fs + 1 = 2001
    raw.fs = p.fs;
    raw.prf = 100.0;
    raw.values.assign(100, cplx{});
    CHECK_THROWS_AS(range_compress(raw, p), ShapeMismatchError);
}

TEST_CASE("range_compress: peak magnitude T at exact alignment, within 2%") {
    const double fs = 200.0e6;
    const ChirpParams p = chirp_at(fs);
    const double R = aligned_range(1500.0, fs);
    const double tau = 2.0 * R / kSpeedOfLight;
    const double t_start = tau - 1.0e-6;
    const auto n_fast = static_cast<std::size_t>((p.T + 2.0e-6) * fs);
    const DataMatrix rc = range_compress(one_pulse_raw(p, R, n_fast, t_start), p);

    // Peak should land within one sample of axis time 2R/c.
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t n = 0; n < rc.n_fast; ++n) {
        const double m = std::abs(rc.pulse(0)[n]);
        if (m > best_mag) {
            best_mag = m;
            best = n;
        }
    }
    CHECK(std::abs(rc.sample_time(best) - tau) <= 1.0 / fs + 1e-15);
    CHECK(best_mag == doctest::Approx(p.T).epsilon(0.02));

    // Carrier phase at the aligned peak.
    const double want = std::remainder(-4.0 * M_PI * R / p.lambda(), 2.0 * M_PI);
    const double got = std::arg(rc.pulse(0)[best]);
    CHECK(std::abs(std::remainder(got - want, 2.0 * M_PI)) < 1e-6);
}

TEST_CASE("range_compress: matches the closed form, error halving with fs") {
    const double e200 = oracle_error(200.0e6);
    const double e400 = oracle_error(400.0e6);
    const double e800 = oracle_error(800.0e6);
    CHECK(e200 < 0.02);
    CHECK(e400 < 0.6 * e200);
    CHECK(e800 < 0.6 * e400);
}

TEST_CASE("range_compress: direct and FFT convolutions agree to 1e-10") {
    const ChirpParams p = chirp_at(200.0e6);
    const double R = 1500.0 + 3.7;
    const double tau = 2.0 * R / kSpeedOfLight;
    const DataMatrix raw = one_pulse_raw(p, R, 3000, tau - 1.0e-6);
    const DataMatrix fft = range_compress(raw, p, ConvolutionMethod::Fft);
    const DataMatrix dir = range_compress(raw, p, ConvolutionMethod::Direct);
    double peak = 0.0;
    for (const cplx& v : dir.values) peak = std::max(peak, std::abs(v));
    for (std::size_t n = 0; n < fft.n_fast; ++n)
        CHECK(std::abs(fft.pulse(0)[n] - dir.pulse(0)[n]) < 1e-10 * peak);
}

TEST_CASE("range_compress: linearity over raw inputs") {
    const ChirpParams p = chirp_at(200.0e6);
    std::normal_distribution<double> n01(0.0, 1.0);
    DataMatrix a, b, sum;
    for (DataMatrix* dm : {&a, &b, &sum}) {
        dm->kind = DataMatrix::Kind::Raw;
        dm->n_pulses = 1;
        dm->n_fast = 2501;
        dm->fs = p.fs;
        dm->t_start = 0.0;
        dm->prf = 100.0;
        dm->values.resize(2501);
    }
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        a.values[i] = {n01(rng), n01(rng)};
        b.values[i] = {n01(rng), n01(rng)};
        sum.values[i] = a.values[i] + 2.5 * b.values[i];
    }
    const DataMatrix ca = range_compress(a, p);
    const DataMatrix cb = range_compress(b, p);
    const DataMatrix cs = range_compress(sum, p);
    double scale = 0.0;
    for (const cplx& v : cs.values) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < cs.values.size(); ++i)
        CHECK(std::abs(cs.values[i] - (ca.values[i] + 2.5 * cb.values[i])) < 1e-12 * scale);
}

TEST_CASE("analytic pulse: peak value, first null, symmetry") {
    const ChirpParams p = chirp_at(200.0e6);
    const double R = 1200.0;
    const double t_peak = 2.0 * R / kSpeedOfLight + p.T;
    CHECK(std::abs(analytic_range_compressed_pulse(p, R, t_peak)) ==
          doctest::Approx(p.T).epsilon(1e-12));

    // Smallest rho > 0 with K*rho*(T - rho) = 1.
    const double KT = p.K * p.T;
    const double rho0 = (KT - std::sqrt(KT * KT - 4.0 * p.K)) / (2.0 * p.K);
    CHECK(std::abs(analytic_range_compressed_pulse(p, R, t_peak - rho0)) < 1e-12 * p.T);

    for (double d : {0.1e-6, 0.37e-6, 2.0e-6, 7.3e-6}) {
        const double m1 = std::abs(analytic_range_compressed_pulse(p, R, t_peak + d));
        const double m2 = std::abs(analytic_range_compressed_pulse(p, R, t_peak - d));
        CHECK(m1 == doctest::Approx(m2).epsilon(1e-10));
    }
    // Zero outside the support 0 <= t' <= 2T.
    CHECK(analytic_range_compressed_pulse(p, R, t_peak - p.T - 1e-9) == cplx{0.0, 0.0});
    CHECK(analytic_range_compressed_pulse(p, R, t_peak + p.T + 1e-9) == cplx{0.0, 0.0});
}

TEST_CASE("synthesize_range_compressed agrees with simulate + compress") {
    const double fs = 200.0e6;
    const ChirpParams p = chirp_at(fs);
    Trajectory traj;
    traj.positions = {Vec3{}, Vec3{2.0, 0.0, 0.0}};
    const std::vector<Target> tgts{{{0.0, 1500.0, 0.0}, 1.0}, {{30.0, 1510.0, 50.0}, 0.5}};
    const double u_start = 2.0 * 1400.0 / kSpeedOfLight;
    const auto n_fast_rc = static_cast<std::size_t>(2.0 * 300.0 / kSpeedOfLight * fs) + 1;

    const DataMatrix synth =
        synthesize_range_compressed(tgts, traj, p, n_fast_rc, u_start, 100.0);
    const auto n_fast_raw =
        static_cast<std::size_t>((2.0 * 300.0 / kSpeedOfLight + p.T) * fs) + 1;
    const DataMatrix rc =
        range_compress(simulate_raw(tgts, traj, p, n_fast_raw, u_start, 100.0), p);

    // Compare on the synth grid; the compressed axis contains it.
    for (std::size_t k = 0; k < synth.n_pulses; ++k) {
        for (std::size_t n = 0; n < synth.n_fast; n += 7) {
            const double t = synth.sample_time(n);
            const double idx = (t - rc.t_start) * fs;
            const auto i = static_cast<std::size_t>(std::llround(idx));
            REQUIRE(std::abs(idx - static_cast<double>(i)) < 1e-6);
            CHECK(std::abs(synth.pulse(k)[n] - rc.pulse(k)[i]) < 0.03 * p.T);
        }
    }
}
