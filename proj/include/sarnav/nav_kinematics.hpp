#pragma once

#include <array>
#include <cstddef>

#include "sarnav/vec3.hpp"

namespace sarnav {

// Initial navigation error (dp in m, dv in m/s, dtheta in rad).
struct ErrorState {
    Vec3 dp;
    Vec3 dv;
    Vec3 dtheta;

    constexpr bool operator==(const ErrorState& o) const = default;
    bool is_zero() const { return *this == ErrorState{}; }

    // Enforces finiteness and the small-angle guard |dtheta| <= 0.5 rad.
    void validate() const;

    std::array<double, 9> to_array() const;
    static ErrorState from_array(const std::array<double, 9>& a);
};

// Straight-and-level flight parameters. Specific force in the nav frame is
// (0, 0, -g) with z down.
struct FlightParams {
    Vec3 v0{100.0, 0.0, 0.0};
    double g = 9.81;

    Vec3 specific_force() const { return {0.0, 0.0, -g}; }
    void validate() const;
};

// 9x9 state transition matrix, row-major, block order (dp, dv, dtheta).
struct Stm {
    std::array<double, 81> m{};

    static Stm identity();
    double& at(std::size_t i, std::size_t j) { return m[i * 9 + j]; }
    double at(std::size_t i, std::size_t j) const { return m[i * 9 + j]; }
    Stm operator*(const Stm& o) const;
    std::array<double, 9> apply(const std::array<double, 9>& v) const;
};

// Matrix exponential of the constant straight-and-level dynamics over dt:
// [I, I*dt, (nu x) dt^2/2; 0, I, (nu x) dt; 0, 0, I].
Stm build_stm(double dt, const FlightParams& params);

// Homogeneous error-state propagation dx(dt) = Phi(dt) dx0.
ErrorState propagate_error_state(const ErrorState& e0, double dt, const FlightParams& params);

// dp(dt) = dp0 + dv0*dt + (nu x dtheta0) dt^2/2.
Vec3 position_error_closed_form(const ErrorState& e0, double dt, const FlightParams& params);

// nu x dtheta0 = (dtheta_y*g, -dtheta_x*g, 0): yaw contributes nothing.
Vec3 accel_error_from_attitude(const Vec3& dtheta0, double g);

} // namespace sarnav
