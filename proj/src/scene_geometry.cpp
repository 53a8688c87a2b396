#include "sarnav/scene_geometry.hpp"

#include <cmath>
#include <string>

#include "sarnav/errors.hpp"

namespace sarnav {

void Target::validate() const {
    if (!position.finite()) throw ValidationError("target position must be finite");
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw ValidationError("target amplitude must be finite and >= 0");
}

void SlowTimeGrid::validate() const {
    if (!(prf > 0.0)) throw ValidationError("prf must be positive");
    if (n_pulses < 2) throw ValidationError("n_pulses must be >= 2");
}

Trajectory truth_trajectory(const FlightParams& params, const SlowTimeGrid& grid) {
    params.validate();
    grid.validate();
    Trajectory t;
    t.kind = Trajectory::Kind::Truth;
    t.v0 = params.v0;
    t.positions.reserve(grid.n_pulses);
    for (std::size_t k = 0; k < grid.n_pulses; ++k) t.positions.push_back(params.v0 * grid.eta(k));
    return t;
}

Trajectory corrupted_trajectory(const FlightParams& params, const SlowTimeGrid& grid,
                                const ErrorState& e0) {
    e0.validate();
    Trajectory t = truth_trajectory(params, grid);
    t.kind = Trajectory::Kind::Corrupted;
    t.error = e0;
    for (std::size_t k = 0; k < grid.n_pulses; ++k)
        t.positions[k] -= position_error_closed_form(e0, grid.eta(k), params);
    return t;
}

double slant_range(const Vec3& p_t, const Vec3& p_platform) {
    return (p_t - p_platform).norm();
}

ClosestApproach refine_minimum(std::span<const double> ranges, const SlowTimeGrid& grid) {
    if (ranges.size() < 3) throw ValidationError("need at least 3 pulses to refine a minimum");
    std::size_t k = 0;
    for (std::size_t i = 1; i < ranges.size(); ++i)
        if (ranges[i] < ranges[k]) k = i;
    if (k == 0 || k == ranges.size() - 1)
        throw EdgeMinimumError("closest approach at pulse " + std::to_string(k) +
                               " lies on the aperture edge");
    const double a = ranges[k - 1], b = ranges[k], c = ranges[k + 1];
    const double denom = a - 2.0 * b + c;
    // Flat neighborhood: keep the sample itself.
    double off = 0.0;
    if (denom > 0.0) off = 0.5 * (a - c) / denom;
    const double h = 1.0 / grid.prf;
    ClosestApproach ca;
    ca.eta0 = grid.eta(k) + off * h;
    ca.r0 = b - 0.25 * (a - c) * off;
    return ca;
}

ClosestApproach closest_approach(const Vec3& p_t, const Trajectory& traj,
                                 const SlowTimeGrid& grid) {
    if (traj.positions.size() != grid.n_pulses)
        throw ValidationError("trajectory and slow-time grid disagree on pulse count");
    std::vector<double> r(traj.positions.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = slant_range(p_t, traj.positions[k]);
    return refine_minimum(r, grid);
}

} // namespace sarnav
