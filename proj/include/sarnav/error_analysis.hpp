#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "sarnav/backprojection.hpp"
#include "sarnav/scene_geometry.hpp"

namespace sarnav {

// Second-order expansion of the estimated range about its closest approach:
// R(eta) ~= r0_hat + quad_coeff * (eta - eta0_ref)^2.
struct TaylorExpansion {
    double r0_hat = 0.0;     // m
    double quad_coeff = 0.0; // m/s^2, = Q / (2 r0_hat)
    double eta0_ref = 0.0;   // s
    double q_term = 0.0;     // Q itself

    double eval(double eta) const {
        const double u = eta - eta0_ref;
        return r0_hat + quad_coeff * u * u;
    }
};

// True vs estimated closest-approach pairs and derived deltas. Note the
// apparent target displacement in a corrupted image is the negative of
// (d_range, d_along): the estimated hyperbola moving farther means the
// target energy lands closer.
struct ShiftPrediction {
    double r0 = 0.0;
    double eta0 = 0.0;
    double r0_hat = 0.0;
    double eta0_hat = 0.0;
    double d_range = 0.0; // r0_hat - r0
    double d_eta = 0.0;   // eta0_hat - eta0
    double d_along = 0.0; // |v0| * d_eta
};

enum class ShiftSign { Negative = -1, None = 0, Positive = 1 };

struct ComponentEffect {
    ShiftSign shift_range = ShiftSign::None;
    ShiftSign shift_azimuth = ShiftSign::None;
    bool blur_azimuth = false;

    bool null() const {
        return shift_range == ShiftSign::None && shift_azimuth == ShiftSign::None &&
               !blur_azimuth;
    }
};

// Expected image effect of each error component in isolation. Component
// order: dp x/y/z, dv x/y/z, dtheta x/y/z. The yaw row is always null.
struct DistortionReport {
    std::array<ComponentEffect, 9> components{};

    static const std::array<const char*, 9>& component_names();
};

struct ImageMetrics {
    std::size_t peak_i = 0;
    std::size_t peak_j = 0;
    double peak_sub_i = 0.0; // sub-pixel refined indices
    double peak_sub_j = 0.0;
    double peak_mag = 0.0;
    double width3db_along = 0.0; // m
    double width3db_cross = 0.0; // m
    double entropy = 0.0;
};

enum class ImageAxis { Along, Cross };

// Range history under the injected error:
// ||p_t - v0 eta + dp0 + dv0 eta + (nu x dtheta0) eta^2 / 2||.
// Equals the slant range to the corrupted trajectory at eta.
double estimated_range(const Vec3& p_t, const FlightParams& params, const ErrorState& e0,
                       double eta);

// Exact quadratic coefficient Q/(2 r0_hat) of the estimated range about its
// refined closest approach within the aperture.
TaylorExpansion taylor_coefficients(const Vec3& p_t, const FlightParams& params,
                                    const SlowTimeGrid& grid, const ErrorState& e0);

// min/argmin of the true and estimated range histories, both refined with the
// same three-point procedure used by closest_approach.
ShiftPrediction predict_shift(const Vec3& p_t, const FlightParams& params,
                              const SlowTimeGrid& grid, const ErrorState& e0);

DistortionReport classify_distortion(const ErrorState& e0, const Vec3& p_t,
                                     const FlightParams& params);

// Global peak of |values| with independent 1-D parabolic sub-pixel fits.
ImageMetrics find_peak(const ComplexImage& img);

// 3 dB (half-power) width of the magnitude profile through the peak,
// linear-interpolated crossings, never less than one pixel spacing.
double width_3db(const ComplexImage& img, ImageAxis axis);

// Shannon entropy of |values|^2 normalized to unit sum, natural log.
double image_entropy(const ComplexImage& img);

// Peak + widths + entropy in one pass.
ImageMetrics compute_metrics(const ComplexImage& img);

// Signed sub-pixel peak displacement test - ref, in meters along grid axes.
struct MeasuredShift {
    double d_along = 0.0;
    double d_cross = 0.0;
};
MeasuredShift measure_shift(const ImageMetrics& ref_metrics, const ImageMetrics& test_metrics,
                            const ImageGrid& grid);

} // namespace sarnav
