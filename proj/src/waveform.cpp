#include "sarnav/waveform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "sarnav/errors.hpp"

namespace sarnav {

namespace {
constexpr double kPi = std::numbers::pi;

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}
} // namespace

void ChirpParams::validate() const {
    if (!(T > 0.0)) throw ValidationError("chirp duration T must be positive");
    if (!(fs >= 1.2 * bandwidth()))
        throw ValidationError("fs = " + std::to_string(fs) +
                              " Hz violates the oversampling guard fs >= 1.2*|K|*T = " +
                              std::to_string(1.2 * bandwidth()) + " Hz");
    if (!(fc > bandwidth())) throw ValidationError("carrier fc must exceed |K|*T");
}

void DataMatrix::validate() const {
    if (values.size() != n_pulses * n_fast)
        throw ValidationError("data matrix is not rectangular");
    if (kind == Kind::Raw && t_start < 0.0)
        throw ValidationError("raw data t_start must be >= 0");
    if (!(fs > 0.0)) throw ValidationError("data matrix fs must be positive");
}

cplx gen_chirp(const ChirpParams& params, double t) {
    if (t < 0.0 || t > params.T) return {0.0, 0.0};
    const double phase = 2.0 * kPi * params.f0 * t + kPi * params.K * t * t;
    return {std::cos(phase), std::sin(phase)};
}

std::vector<cplx> simulate_raw_pulse(std::span<const Target> targets, const Vec3& p_platform,
                                     const ChirpParams& params, std::size_t n_fast,
                                     double t_start, std::size_t* gate_misses) {
    std::vector<cplx> out(n_fast, cplx{0.0, 0.0});
    const double t_end = t_start + static_cast<double>(n_fast - 1) / params.fs;
    for (const Target& tgt : targets) {
        const double R = slant_range(tgt.position, p_platform);
        const double tau = 2.0 * R / kSpeedOfLight;
        if (tau > t_end || tau + params.T < t_start) {
            if (gate_misses) ++*gate_misses;
            continue;
        }
        const double carrier = -4.0 * kPi * R / params.lambda();
        const cplx factor = tgt.amplitude * cplx{std::cos(carrier), std::sin(carrier)};
        // Envelope support is [tau, tau + T]; skip samples outside it.
        const auto lo = static_cast<std::size_t>(
            std::max(0.0, std::ceil((tau - t_start) * params.fs)));
        const auto hi = static_cast<std::size_t>(std::min(
            static_cast<double>(n_fast - 1), std::floor((tau + params.T - t_start) * params.fs)));
        for (std::size_t n = lo; n <= hi; ++n) {
            const double t = t_start + static_cast<double>(n) / params.fs;
            out[n] += factor * gen_chirp(params, t - tau);
        }
    }
    return out;
}

DataMatrix simulate_raw(std::span<const Target> targets, const Trajectory& traj,
                        const ChirpParams& params, std::size_t n_fast, double t_start,
                        double prf, std::size_t* gate_misses) {
    params.validate();
    DataMatrix dm;
    dm.kind = DataMatrix::Kind::Raw;
    dm.n_pulses = traj.positions.size();
    dm.n_fast = n_fast;
    dm.t_start = t_start;
    dm.fs = params.fs;
    dm.prf = prf;
    dm.values.resize(dm.n_pulses * n_fast);
    for (std::size_t k = 0; k < dm.n_pulses; ++k) {
        const auto pulse =
            simulate_raw_pulse(targets, traj.positions[k], params, n_fast, t_start, gate_misses);
        std::copy(pulse.begin(), pulse.end(), dm.pulse(k).begin());
    }
    dm.validate();
    return dm;
}

namespace {

// FFTW planning is not thread safe; execution of separate buffers is.
std::mutex g_fftw_mutex;

std::vector<cplx> fft_convolve(std::span<const cplx> a, std::span<const cplx> b) {
    const std::size_t n_out = a.size() + b.size() - 1;
    std::size_t n = 1;
    while (n < n_out) n <<= 1;
    std::vector<cplx> fa(n, cplx{}), fb(n, cplx{});
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    fftw_plan pf, pb;
    {
        std::scoped_lock lock(g_fftw_mutex);
        pf = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(fa.data()),
                              reinterpret_cast<fftw_complex*>(fa.data()), FFTW_FORWARD,
                              FFTW_ESTIMATE);
        pb = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(fb.data()),
                              reinterpret_cast<fftw_complex*>(fb.data()), FFTW_FORWARD,
                              FFTW_ESTIMATE);
    }
    fftw_execute(pf);
    fftw_execute_dft(pb, reinterpret_cast<fftw_complex*>(fb.data()),
                     reinterpret_cast<fftw_complex*>(fb.data()));
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fftw_plan pi;
    {
        std::scoped_lock lock(g_fftw_mutex);
        pi = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(fa.data()),
                              reinterpret_cast<fftw_complex*>(fa.data()), FFTW_BACKWARD,
                              FFTW_ESTIMATE);
    }
    fftw_execute(pi);
    {
        std::scoped_lock lock(g_fftw_mutex);
        fftw_destroy_plan(pf);
        fftw_destroy_plan(pb);
        fftw_destroy_plan(pi);
    }
    std::vector<cplx> out(n_out);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n_out; ++i) out[i] = fa[i] * scale;
    return out;
}

std::vector<cplx> direct_convolve(std::span<const cplx> a, std::span<const cplx> b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

} // namespace

DataMatrix range_compress(const DataMatrix& raw, const ChirpParams& params,
                          ConvolutionMethod method) {
    raw.validate();
    params.validate();
    if (raw.kind != DataMatrix::Kind::Raw)
        throw ValidationError("range_compress expects raw data");
    const auto n_replica = static_cast<std::size_t>(std::floor(params.T * params.fs)) + 1;
    if (n_replica > raw.n_fast)
        throw ShapeMismatchError("replica (" + std::to_string(n_replica) +
                                 " samples) longer than the pulse window (" +
                                 std::to_string(raw.n_fast) + ")");
    // h(t) = conj(s_tx(T - t)), sampled on [0, T].
    std::vector<cplx> replica(n_replica);
    for (std::size_t k = 0; k < n_replica; ++k)
        replica[k] = std::conj(gen_chirp(params, params.T - static_cast<double>(k) / params.fs));

    DataMatrix out;
    out.kind = DataMatrix::Kind::RangeCompressed;
    out.n_pulses = raw.n_pulses;
    out.n_fast = raw.n_fast + n_replica - 1;
    // Matched-filter delay absorbed: a target at range R now peaks at axis
    // time 2R/c.
    out.t_start = raw.t_start - params.T;
    out.fs = raw.fs;
    out.prf = raw.prf;
    out.values.resize(out.n_pulses * out.n_fast);
    const double scale = 1.0 / params.fs;
    for (std::size_t k = 0; k < raw.n_pulses; ++k) {
        const auto conv = method == ConvolutionMethod::Fft
                              ? fft_convolve(raw.pulse(k), replica)
                              : direct_convolve(raw.pulse(k), replica);
        auto dst = out.pulse(k);
        for (std::size_t n = 0; n < conv.size(); ++n) dst[n] = conv[n] * scale;
    }
    return out;
}

cplx analytic_range_compressed_pulse(const ChirpParams& params, double R, double t) {
    const double tp = t - 2.0 * R / kSpeedOfLight;
    if (tp < 0.0 || tp > 2.0 * params.T) return {0.0, 0.0};
    const double rho = params.T - tp;
    const double xi = params.T - std::abs(tp - params.T);
    const double mf_phase = -rho * (2.0 * kPi * params.f0 + kPi * params.K * params.T);
    const double carrier = -4.0 * kPi * R / params.lambda();
    const double mag = xi * sinc(params.K * rho * xi);
    const double phase = mf_phase + carrier;
    return mag * cplx{std::cos(phase), std::sin(phase)};
}

DataMatrix synthesize_range_compressed(std::span<const Target> targets, const Trajectory& traj,
                                       const ChirpParams& params, std::size_t n_fast,
                                       double t_start, double prf) {
    params.validate();
    DataMatrix dm;
    dm.kind = DataMatrix::Kind::RangeCompressed;
    dm.n_pulses = traj.positions.size();
    dm.n_fast = n_fast;
    dm.t_start = t_start;
    dm.fs = params.fs;
    dm.prf = prf;
    dm.values.resize(dm.n_pulses * n_fast, cplx{});
    for (std::size_t k = 0; k < dm.n_pulses; ++k) {
        auto dst = dm.pulse(k);
        for (const Target& tgt : targets) {
            const double R = slant_range(tgt.position, traj.positions[k]);
            // Closed-form support is axis time 2R/c - T .. 2R/c + T.
            const double lo_t = 2.0 * R / kSpeedOfLight - params.T;
            const auto lo = static_cast<std::size_t>(
                std::max(0.0, std::ceil((lo_t - t_start) * params.fs)));
            const auto hi = static_cast<std::size_t>(
                std::min(static_cast<double>(n_fast - 1),
                         std::floor((lo_t + 2.0 * params.T - t_start) * params.fs)));
            for (std::size_t n = lo; n <= hi && n < n_fast; ++n) {
                // The axis has the matched-filter delay absorbed; the closed
                // form takes physical time, hence the +T.
                const double t_phys = dm.sample_time(n) + params.T;
                dst[n] += tgt.amplitude * analytic_range_compressed_pulse(params, R, t_phys);
            }
        }
    }
    return dm;
}

} // namespace sarnav
