#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sarnav/nav_kinematics.hpp"
#include "sarnav/vec3.hpp"

namespace sarnav {

// Point scatterer in the nav frame (z down; ground targets have z > 0 for a
// platform at z = 0).
struct Target {
    Vec3 position;
    double amplitude = 1.0;

    void validate() const;
};

// Uniform slow-time sampling eta_k = k / prf.
struct SlowTimeGrid {
    double prf = 0.0;
    std::size_t n_pulses = 0;

    double eta(std::size_t k) const { return static_cast<double>(k) / prf; }
    double duration() const { return eta(n_pulses - 1); }
    void validate() const;
};

struct Trajectory {
    enum class Kind { Truth, Corrupted };

    Kind kind = Kind::Truth;
    std::vector<Vec3> positions;
    Vec3 v0;
    ErrorState error; // zero for truth
};

// p(eta_k) = v0 * eta_k, origin at the first pulse.
Trajectory truth_trajectory(const FlightParams& params, const SlowTimeGrid& grid);

// p_hat(eta_k) = p(eta_k) - dp(eta_k), with dp from the closed-form error
// growth. A pure yaw error leaves the trajectory bit-identical to truth.
Trajectory corrupted_trajectory(const FlightParams& params, const SlowTimeGrid& grid,
                                const ErrorState& e0);

// R = ||p_t - p_platform||.
double slant_range(const Vec3& p_t, const Vec3& p_platform);

struct ClosestApproach {
    double r0 = 0.0;   // range of closest approach (m)
    double eta0 = 0.0; // time of closest approach (s)
};

// Minimum over a sampled range history with three-point parabolic refinement.
// Throws EdgeMinimumError if the minimum sample is first or last.
ClosestApproach refine_minimum(std::span<const double> ranges, const SlowTimeGrid& grid);

ClosestApproach closest_approach(const Vec3& p_t, const Trajectory& traj,
                                 const SlowTimeGrid& grid);

} // namespace sarnav
