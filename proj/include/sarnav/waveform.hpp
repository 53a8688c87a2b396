#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sarnav/scene_geometry.hpp"

namespace sarnav {

inline constexpr double kSpeedOfLight = 299792458.0;

using cplx = std::complex<double>;

// Baseband linear FM chirp parameters plus RF carrier.
struct ChirpParams {
    double f0 = 0.0;  // initial frequency (Hz)
    double K = 0.0;   // FM rate (Hz/s)
    double T = 0.0;   // pulse duration (s)
    double fs = 0.0;  // fast-time sampling rate (Hz)
    double fc = 0.0;  // RF carrier (Hz)

    double bandwidth() const { return std::abs(K) * T; }
    double lambda() const { return kSpeedOfLight / fc; }
    void validate() const;
};

// Pulses-by-fast-time complex samples with axis metadata. For raw data,
// sample n of a pulse sits at two-way time t_start + n/fs. Range-compressed
// data carries the matched-filter delay T absorbed into t_start, so a point
// target at range R peaks at axis time 2R/c (t_start may then be negative).
struct DataMatrix {
    enum class Kind { Raw, RangeCompressed };

    Kind kind = Kind::Raw;
    std::size_t n_pulses = 0;
    std::size_t n_fast = 0;
    std::vector<cplx> values;
    double t_start = 0.0;
    double fs = 0.0;
    double prf = 0.0;

    std::span<const cplx> pulse(std::size_t k) const {
        return {values.data() + k * n_fast, n_fast};
    }
    std::span<cplx> pulse(std::size_t k) {
        return {values.data() + k * n_fast, n_fast};
    }
    double sample_time(std::size_t n) const { return t_start + static_cast<double>(n) / fs; }
    void validate() const;
};

// Eq-of-motion chirp: exp(j(2 pi f0 t + pi K t^2)) on [0, T], exactly 0 outside.
cplx gen_chirp(const ChirpParams& params, double t);

// Stop-and-hop echo of all targets for one frozen platform position:
// sum_t A * s_tx(t_n - 2R/c) * exp(-j 4 pi R / lambda).
// gate_misses, when given, counts targets whose echo misses the window entirely.
std::vector<cplx> simulate_raw_pulse(std::span<const Target> targets, const Vec3& p_platform,
                                     const ChirpParams& params, std::size_t n_fast,
                                     double t_start, std::size_t* gate_misses = nullptr);

// Raw data matrix over a trajectory, one simulate_raw_pulse per pulse.
DataMatrix simulate_raw(std::span<const Target> targets, const Trajectory& traj,
                        const ChirpParams& params, std::size_t n_fast, double t_start,
                        double prf, std::size_t* gate_misses = nullptr);

enum class ConvolutionMethod { Fft, Direct };

// Matched filter s_rx * conj(s_tx(T - t)), scaled by 1/fs so the continuous
// closed form is the reference without renormalization. Output has
// n_fast + n_replica - 1 samples and t_start shifted by -T.
DataMatrix range_compress(const DataMatrix& raw, const ChirpParams& params,
                          ConvolutionMethod method = ConvolutionMethod::Fft);

// Closed-form range-compressed response of a unit target at range R, sampled
// at physical two-way time t (local pulse time t' = t - 2R/c):
//   exp(-j rho (2 pi f0 + pi K T)) * xi * sinc(K rho xi) * exp(-j 4 pi R / lambda)
// with rho = T - t', xi = T - |t' - T|, zero outside 0 <= t' <= 2T.
cplx analytic_range_compressed_pulse(const ChirpParams& params, double R, double t);

// Direct synthesis of range-compressed data via the closed form (the fast
// path that skips simulate_raw + range_compress). t_start is on the
// delay-absorbed axis where a target at range R peaks at 2R/c.
DataMatrix synthesize_range_compressed(std::span<const Target> targets, const Trajectory& traj,
                                       const ChirpParams& params, std::size_t n_fast,
                                       double t_start, double prf);

} // namespace sarnav
