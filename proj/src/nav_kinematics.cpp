#include "sarnav/nav_kinematics.hpp"

#include <cmath>
#include <string>

#include "sarnav/errors.hpp"

namespace sarnav {

void ErrorState::validate() const {
    if (!dp.finite() || !dv.finite() || !dtheta.finite())
        throw ValidationError("error state components must be finite");
    const double a = dtheta.norm();
    if (a > 0.5)
        throw LargeAngleError("|dtheta| = " + std::to_string(a) +
                              " rad exceeds the 0.5 rad small-angle guard");
}

std::array<double, 9> ErrorState::to_array() const {
    return {dp.x, dp.y, dp.z, dv.x, dv.y, dv.z, dtheta.x, dtheta.y, dtheta.z};
}

ErrorState ErrorState::from_array(const std::array<double, 9>& a) {
    return {{a[0], a[1], a[2]}, {a[3], a[4], a[5]}, {a[6], a[7], a[8]}};
}

void FlightParams::validate() const {
    if (!v0.finite() || v0.norm() <= 0.0) throw ValidationError("|v0| must be positive");
    if (!(g > 0.0)) throw ValidationError("g must be positive");
}

Stm Stm::identity() {
    Stm s;
    for (std::size_t i = 0; i < 9; ++i) s.at(i, i) = 1.0;
    return s;
}

Stm Stm::operator*(const Stm& o) const {
    Stm r;
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t k = 0; k < 9; ++k) {
            const double a = at(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < 9; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

std::array<double, 9> Stm::apply(const std::array<double, 9>& v) const {
    std::array<double, 9> r{};
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) r[i] += at(i, j) * v[j];
    return r;
}

namespace {

// Skew matrix of the nav-frame specific force (0, 0, -g).
void put_skew(Stm& s, std::size_t row, std::size_t col, const Vec3& v, double scale) {
    s.at(row + 0, col + 1) = -v.z * scale;
    s.at(row + 0, col + 2) = v.y * scale;
    s.at(row + 1, col + 0) = v.z * scale;
    s.at(row + 1, col + 2) = -v.x * scale;
    s.at(row + 2, col + 0) = -v.y * scale;
    s.at(row + 2, col + 1) = v.x * scale;
}

} // namespace

Stm build_stm(double dt, const FlightParams& params) {
    if (dt < 0.0) throw ValidationError("build_stm requires dt >= 0");
    Stm s = Stm::identity();
    const Vec3 nu = params.specific_force();
    for (std::size_t i = 0; i < 3; ++i) s.at(i, i + 3) = dt;
    put_skew(s, 0, 6, nu, dt * dt / 2.0);
    put_skew(s, 3, 6, nu, dt);
    return s;
}

ErrorState propagate_error_state(const ErrorState& e0, double dt, const FlightParams& params) {
    e0.validate();
    const Vec3 acc = params.specific_force().cross(e0.dtheta);
    return {position_error_closed_form(e0, dt, params), e0.dv + acc * dt, e0.dtheta};
}

Vec3 position_error_closed_form(const ErrorState& e0, double dt, const FlightParams& params) {
    const Vec3 acc = params.specific_force().cross(e0.dtheta);
    return e0.dp + e0.dv * dt + acc * (dt * dt / 2.0);
}

Vec3 accel_error_from_attitude(const Vec3& dtheta0, double g) {
    if (!(g > 0.0)) throw ValidationError("g must be positive");
    return {dtheta0.y * g, -dtheta0.x * g, 0.0};
}

} // namespace sarnav
