#include "sarnav/backprojection.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "sarnav/errors.hpp"

namespace sarnav {

void ImageGrid::validate() const {
    if (!origin.finite() || !axis_along.finite() || !axis_cross.finite())
        throw ValidationError("image grid geometry must be finite");
    if (std::abs(axis_along.norm() - 1.0) > 1e-9 || std::abs(axis_cross.norm() - 1.0) > 1e-9)
        throw ValidationError("image grid axes must be unit vectors");
    if (std::abs(axis_along.dot(axis_cross)) > 1e-9)
        throw ValidationError("image grid axes must be orthogonal");
    if (!(spacing_along > 0.0) || !(spacing_cross > 0.0))
        throw ValidationError("image grid spacings must be positive");
    if (n_along == 0 || n_cross == 0) throw ValidationError("image grid must be non-empty");
}

PixelResult pixel_response(const Vec3& p_pix, const DataMatrix& rc, const Trajectory& traj,
                           const ChirpParams& params, Interpolation interp) {
    if (rc.kind != DataMatrix::Kind::RangeCompressed)
        throw ValidationError("pixel_response expects range-compressed data");
    if (traj.positions.size() != rc.n_pulses)
        throw ValidationError("trajectory pulse count does not match the data matrix");
    const double four_pi_over_lambda = 4.0 * std::numbers::pi / params.lambda();
    PixelResult res;
    std::size_t skipped = 0;
    for (std::size_t k = 0; k < rc.n_pulses; ++k) {
        const double R = slant_range(p_pix, traj.positions[k]);
        const double idx = (2.0 * R / kSpeedOfLight - rc.t_start) * rc.fs;
        cplx sample;
        const auto data = rc.pulse(k);
        if (interp == Interpolation::Linear) {
            const double fl = std::floor(idx);
            const auto i0 = static_cast<long>(fl);
            if (i0 < 0 || i0 + 1 >= static_cast<long>(rc.n_fast)) {
                ++skipped;
                continue;
            }
            const double frac = idx - fl;
            sample = data[static_cast<std::size_t>(i0)] * (1.0 - frac) +
                     data[static_cast<std::size_t>(i0) + 1] * frac;
        } else {
            const auto i0 = static_cast<long>(std::llround(idx));
            if (i0 < 0 || i0 >= static_cast<long>(rc.n_fast)) {
                ++skipped;
                continue;
            }
            sample = data[static_cast<std::size_t>(i0)];
        }
        const double phase = four_pi_over_lambda * R;
        res.value += sample * cplx{std::cos(phase), std::sin(phase)};
    }
    res.skipped_fraction = static_cast<double>(skipped) / static_cast<double>(rc.n_pulses);
    return res;
}

ComplexImage backproject(const DataMatrix& rc, const Trajectory& traj, const ImageGrid& grid,
                         const ChirpParams& params, const BackprojectOptions& opt) {
    grid.validate();
    ComplexImage img;
    img.grid = grid;
    img.values.resize(grid.size());
    img.skipped_fraction.resize(grid.size());

    auto rows = [&](std::size_t i_begin, std::size_t i_end) {
        for (std::size_t i = i_begin; i < i_end; ++i) {
            for (std::size_t j = 0; j < grid.n_cross; ++j) {
                const PixelResult pr = pixel_response(
                    grid.pixel(static_cast<double>(i), static_cast<double>(j)), rc, traj,
                    params, opt.interp);
                img.values[i * grid.n_cross + j] = pr.value;
                img.skipped_fraction[i * grid.n_cross + j] = pr.skipped_fraction;
            }
        }
    };

    const unsigned n_threads = std::max(1u, opt.threads);
    if (n_threads == 1 || grid.n_along < 2 * n_threads) {
        rows(0, grid.n_along);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (grid.n_along + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(grid.n_along, b + chunk);
            if (b >= e) break;
            pool.emplace_back(rows, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return img;
}

} // namespace sarnav
