#pragma once

#include <cstddef>
#include <vector>

#include "sarnav/waveform.hpp"

namespace sarnav {

// Planar pixel lattice with orthonormal in-plane axes; z is fixed by origin
// and axes (ground plane).
struct ImageGrid {
    Vec3 origin;
    Vec3 axis_along{1.0, 0.0, 0.0};
    Vec3 axis_cross{0.0, 1.0, 0.0};
    double spacing_along = 1.0;
    double spacing_cross = 1.0;
    std::size_t n_along = 0;
    std::size_t n_cross = 0;

    Vec3 pixel(double i, double j) const {
        return origin + axis_along * (i * spacing_along) + axis_cross * (j * spacing_cross);
    }
    std::size_t size() const { return n_along * n_cross; }
    void validate() const;
};

struct ComplexImage {
    ImageGrid grid;
    std::vector<cplx> values;            // n_along x n_cross, row-major
    std::vector<double> skipped_fraction; // per pixel, fraction of out-of-gate pulses

    cplx at(std::size_t i, std::size_t j) const { return values[i * grid.n_cross + j]; }
};

enum class Interpolation { Linear, Nearest };

struct BackprojectOptions {
    Interpolation interp = Interpolation::Linear;
    unsigned threads = 1;
};

struct PixelResult {
    cplx value{0.0, 0.0};
    double skipped_fraction = 0.0;
};

// Azimuth compression for one pixel: per pulse, look up the range-compressed
// sample at 2R/c on the delay-absorbed axis, apply exp(+j 4 pi R / lambda),
// and sum in ascending pulse order. Out-of-gate pulses contribute zero and
// are counted, never thrown.
PixelResult pixel_response(const Vec3& p_pix, const DataMatrix& rc, const Trajectory& traj,
                           const ChirpParams& params,
                           Interpolation interp = Interpolation::Linear);

// Full image; data-parallel over pixels, bitwise identical for any thread count.
ComplexImage backproject(const DataMatrix& rc, const Trajectory& traj, const ImageGrid& grid,
                         const ChirpParams& params, const BackprojectOptions& opt = {});

} // namespace sarnav
