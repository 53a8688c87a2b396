#include "sarnav/quaternion.hpp"

#include <cmath>

#include "sarnav/errors.hpp"

namespace sarnav {

Vec3 mat3_apply(const Mat3& m, const Vec3& v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat3 mat3_transpose(const Mat3& m) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
    return r;
}

Quaternion Quaternion::from_axis_angle(const Vec3& axis, double angle) {
    const Vec3 n = axis.normalized();
    const double s = -std::sin(angle / 2.0);
    return {std::cos(angle / 2.0), s * n.x, s * n.y, s * n.z};
}

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion Quaternion::normalized() const {
    const double n = norm();
    return {w / n, x / n, y / n, z / n};
}

Vec3 Quaternion::rotate(const Vec3& v) const {
    const Quaternion p{0.0, v.x, v.y, v.z};
    const Quaternion r = quat_product(quat_product(*this, p), conjugate());
    return r.vec();
}

Quaternion quat_product(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Mat3 quat_to_dcm(const Quaternion& q) {
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    return Mat3{{{w * w + x * x - y * y - z * z, 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)},
                 {2.0 * (x * y + w * z), w * w - x * x + y * y - z * z, 2.0 * (y * z - w * x)},
                 {2.0 * (x * z - w * y), 2.0 * (y * z + w * x), w * w - x * x - y * y + z * z}}};
}

Vec3 attitude_error(const Quaternion& q_true, const Quaternion& q_est) {
    Quaternion d = quat_product(q_true, q_est.conjugate());
    if (d.w < 0.0) d = {-d.w, -d.x, -d.y, -d.z};
    const double angle = 2.0 * std::atan2(d.vec().norm(), d.w);
    if (angle > 0.5)
        throw LargeAngleError("relative rotation " + std::to_string(angle) + " rad > 0.5 rad");
    return d.vec() * -2.0;
}

} // namespace sarnav
