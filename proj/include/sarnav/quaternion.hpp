#pragma once

#include <array>

#include "sarnav/vec3.hpp"

namespace sarnav {

using Mat3 = std::array<std::array<double, 3>, 3>;

Vec3 mat3_apply(const Mat3& m, const Vec3& v);
Mat3 mat3_mul(const Mat3& a, const Mat3& b);
Mat3 mat3_transpose(const Mat3& m);

// Left-handed unit quaternion, component order (scalar, x, y, z).
// A rotation of `angle` about `axis` carries vector part -sin(angle/2)*axis,
// so that the error quaternion q (x) conj(q_hat) has vector part -dtheta/2.
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    static Quaternion from_axis_angle(const Vec3& axis, double angle);

    double norm() const;
    Quaternion normalized() const;
    constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
    constexpr Vec3 vec() const { return {x, y, z}; }

    // Sandwich rotation q (x) [0; v] (x) q*.
    Vec3 rotate(const Vec3& v) const;
};

// Hamilton product a (x) b.
Quaternion quat_product(const Quaternion& a, const Quaternion& b);

// Direction cosine matrix of the sandwich rotation map.
Mat3 quat_to_dcm(const Quaternion& q);

// Small-angle attitude error dtheta such that q_true (x) conj(q_est) has
// vector part -dtheta/2 (scalar part sign-normalized positive).
// Throws LargeAngleError if the relative rotation exceeds 0.5 rad.
Vec3 attitude_error(const Quaternion& q_true, const Quaternion& q_est);

} // namespace sarnav
