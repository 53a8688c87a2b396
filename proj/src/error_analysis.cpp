#include "sarnav/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sarnav/errors.hpp"

namespace sarnav {

const std::array<const char*, 9>& DistortionReport::component_names() {
    static const std::array<const char*, 9> names = {
        "dp_x", "dp_y", "dp_z", "dv_x", "dv_y", "dv_z", "dtheta_x", "dtheta_y", "dtheta_z"};
    return names;
}

double estimated_range(const Vec3& p_t, const FlightParams& params, const ErrorState& e0,
                       double eta) {
    const Vec3 dp = position_error_closed_form(e0, eta, params);
    return (p_t - params.v0 * eta + dp).norm();
}

namespace {

std::vector<double> estimated_range_samples(const Vec3& p_t, const FlightParams& params,
                                            const SlowTimeGrid& grid, const ErrorState& e0) {
    std::vector<double> r(grid.n_pulses);
    for (std::size_t k = 0; k < grid.n_pulses; ++k)
        r[k] = estimated_range(p_t, params, e0, grid.eta(k));
    return r;
}

} // namespace

TaylorExpansion taylor_coefficients(const Vec3& p_t, const FlightParams& params,
                                    const SlowTimeGrid& grid, const ErrorState& e0) {
    e0.validate();
    const auto samples = estimated_range_samples(p_t, params, grid, e0);
    const ClosestApproach ca = refine_minimum(samples, grid);
    const double eta0 = ca.eta0;

    const Vec3 dvdot = accel_error_from_attitude(e0.dtheta, params.g);
    // a(eta) = p_t - v0 eta + dp(eta); its eta-derivative at eta0.
    const Vec3 a0 = p_t - params.v0 * eta0 + position_error_closed_form(e0, eta0, params);
    const Vec3 a1 = e0.dv - params.v0 + dvdot * eta0;
    const double q = a1.dot(a1) + a0.dot(dvdot);

    TaylorExpansion te;
    te.eta0_ref = eta0;
    te.r0_hat = estimated_range(p_t, params, e0, eta0);
    te.q_term = q;
    te.quad_coeff = q / (2.0 * te.r0_hat);
    return te;
}

ShiftPrediction predict_shift(const Vec3& p_t, const FlightParams& params,
                              const SlowTimeGrid& grid, const ErrorState& e0) {
    e0.validate();
    grid.validate();
    const auto truth = estimated_range_samples(p_t, params, grid, ErrorState{});
    const auto est = estimated_range_samples(p_t, params, grid, e0);
    const ClosestApproach ct = refine_minimum(truth, grid);
    const ClosestApproach ce = refine_minimum(est, grid);
    ShiftPrediction sp;
    sp.r0 = ct.r0;
    sp.eta0 = ct.eta0;
    sp.r0_hat = ce.r0;
    sp.eta0_hat = ce.eta0;
    sp.d_range = ce.r0 - ct.r0;
    sp.d_eta = ce.eta0 - ct.eta0;
    sp.d_along = params.v0.norm() * sp.d_eta;
    return sp;
}

DistortionReport classify_distortion(const ErrorState& e0, const Vec3& p_t,
                                     const FlightParams& params) {
    e0.validate();
    params.validate();
    // Internal aperture centered on the truth closest approach.
    const double speed2 = params.v0.dot(params.v0);
    const double eta0 = p_t.dot(params.v0) / speed2;
    if (!(eta0 > 0.0))
        throw ValidationError("target closest approach must lie at positive slow time");
    SlowTimeGrid grid;
    grid.n_pulses = 2001;
    grid.prf = 2000.0 / (2.0 * eta0);

    const auto components = e0.to_array();
    constexpr double tol = 1e-6; // m
    DistortionReport report;
    for (std::size_t c = 0; c < 9; ++c) {
        if (components[c] == 0.0) continue;
        std::array<double, 9> one{};
        one[c] = components[c];
        const ShiftPrediction sp =
            predict_shift(p_t, params, grid, ErrorState::from_array(one));
        ComponentEffect& eff = report.components[c];
        if (std::abs(sp.d_range) > tol)
            eff.shift_range = sp.d_range > 0.0 ? ShiftSign::Positive : ShiftSign::Negative;
        if (std::abs(sp.d_along) > tol)
            eff.shift_azimuth = sp.d_along > 0.0 ? ShiftSign::Positive : ShiftSign::Negative;
        // Blur: along-track velocity, and the roll/pitch acceleration terms.
        eff.blur_azimuth = (c == 3) || (c == 6) || (c == 7);
    }
    return report;
}

ImageMetrics find_peak(const ComplexImage& img) {
    const std::size_t n = img.values.size();
    if (n == 0) throw DegenerateImageError("empty image");
    std::size_t best = 0;
    double best_mag = -1.0;
    bool all_equal = true;
    const double first = std::abs(img.values[0]);
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::abs(img.values[i]);
        if (m != first) all_equal = false;
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag == 0.0) throw DegenerateImageError("all-zero image");
    if (all_equal && n > 1) throw DegenerateImageError("all magnitudes equal, no peak");

    ImageMetrics m;
    m.peak_i = best / img.grid.n_cross;
    m.peak_j = best % img.grid.n_cross;
    m.peak_mag = best_mag;

    auto parabola_offset = [](double a, double b, double c) {
        const double denom = 2.0 * (2.0 * b - a - c);
        return denom == 0.0 ? 0.0 : (c - a) / denom;
    };
    auto mag = [&](std::size_t i, std::size_t j) { return std::abs(img.at(i, j)); };

    m.peak_sub_i = static_cast<double>(m.peak_i);
    m.peak_sub_j = static_cast<double>(m.peak_j);
    if (m.peak_i > 0 && m.peak_i + 1 < img.grid.n_along)
        m.peak_sub_i += parabola_offset(mag(m.peak_i - 1, m.peak_j), best_mag,
                                        mag(m.peak_i + 1, m.peak_j));
    if (m.peak_j > 0 && m.peak_j + 1 < img.grid.n_cross)
        m.peak_sub_j += parabola_offset(mag(m.peak_i, m.peak_j - 1), best_mag,
                                        mag(m.peak_i, m.peak_j + 1));
    return m;
}

double width_3db(const ComplexImage& img, ImageAxis axis) {
    const ImageMetrics m = find_peak(img);
    const bool along = axis == ImageAxis::Along;
    const std::size_t len = along ? img.grid.n_along : img.grid.n_cross;
    const double spacing = along ? img.grid.spacing_along : img.grid.spacing_cross;
    std::vector<double> prof(len);
    for (std::size_t k = 0; k < len; ++k)
        prof[k] = std::abs(along ? img.at(k, m.peak_j) : img.at(m.peak_i, k));

    const std::size_t pk = along ? m.peak_i : m.peak_j;
    const double thr = prof[pk] / std::sqrt(2.0);

    double lo = 0.0, hi = 0.0;
    bool found_lo = false, found_hi = false;
    for (std::size_t k = pk; k-- > 0;) {
        if (prof[k] < thr) {
            lo = static_cast<double>(k) + (thr - prof[k]) / (prof[k + 1] - prof[k]);
            found_lo = true;
            break;
        }
    }
    for (std::size_t k = pk + 1; k < len; ++k) {
        if (prof[k] < thr) {
            hi = static_cast<double>(k) - (thr - prof[k]) / (prof[k - 1] - prof[k]);
            found_hi = true;
            break;
        }
    }
    if (!found_lo || !found_hi)
        throw UnboundedError("3 dB profile never falls below threshold inside the grid");
    return std::max((hi - lo) * spacing, spacing);
}

double image_entropy(const ComplexImage& img) {
    double total = 0.0;
    for (const cplx& v : img.values) total += std::norm(v);
    if (total == 0.0) throw DegenerateImageError("all-zero image has no entropy");
    double h = 0.0;
    for (const cplx& v : img.values) {
        const double p = std::norm(v) / total;
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

ImageMetrics compute_metrics(const ComplexImage& img) {
    ImageMetrics m = find_peak(img);
    m.width3db_along = width_3db(img, ImageAxis::Along);
    m.width3db_cross = width_3db(img, ImageAxis::Cross);
    m.entropy = image_entropy(img);
    return m;
}

MeasuredShift measure_shift(const ImageMetrics& ref_metrics, const ImageMetrics& test_metrics,
                            const ImageGrid& grid) {
    return {(test_metrics.peak_sub_i - ref_metrics.peak_sub_i) * grid.spacing_along,
            (test_metrics.peak_sub_j - ref_metrics.peak_sub_j) * grid.spacing_cross};
}

} // namespace sarnav
