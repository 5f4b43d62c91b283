#include "cbddl/geometry.hpp"

#include <algorithm>

namespace cbddl {

Vec3 Vec3::normalized() const {
  double n = norm();
  if (n == 0.0) return {};
  return {x / n, y / n, z / n};
}

Quat Quat::from_axis_angle(const Vec3& axis, double angle) {
  Vec3 a = axis.normalized();
  double h = 0.5 * angle;
  double s = std::sin(h);
  return {std::cos(h), a.x * s, a.y * s, a.z * s};
}

Quat Quat::from_rotvec(const Vec3& r) {
  double angle = r.norm();
  if (angle < 1e-12) return identity();
  return from_axis_angle(r, angle);
}

Vec3 Quat::to_rotvec() const {
  Quat q = normalized();
  if (q.w < 0.0) q = {-q.w, -q.x, -q.y, -q.z};
  double s = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (s < 1e-12) return {};
  double angle = 2.0 * std::atan2(s, q.w);
  return Vec3{q.x, q.y, q.z} * (angle / s);
}

Quat Quat::normalized() const {
  double n = norm();
  if (n == 0.0) return identity();
  return {w / n, x / n, y / n, z / n};
}

Vec3 Quat::rotate(const Vec3& v) const {
  // q v q* expanded via the double-cross formula.
  Vec3 u{x, y, z};
  Vec3 t = u.cross(v) * 2.0;
  return v + t * w + u.cross(t);
}

double Quat::angle_to(const Quat& o) const {
  double d = std::clamp(std::abs(dot(o)), 0.0, 1.0);
  return 2.0 * std::acos(d);
}

Quat slerp(const Quat& a, const Quat& b, double t) {
  Quat bn = b;
  double d = a.dot(b);
  if (d < 0.0) {
    bn = {-b.w, -b.x, -b.y, -b.z};
    d = -d;
  }
  d = std::min(d, 1.0);
  double theta = std::acos(d);
  if (theta < 1e-6) {
    Quat r{a.w + t * (bn.w - a.w), a.x + t * (bn.x - a.x),
           a.y + t * (bn.y - a.y), a.z + t * (bn.z - a.z)};
    return r.normalized();
  }
  double s = std::sin(theta);
  double wa = std::sin((1.0 - t) * theta) / s;
  double wb = std::sin(t * theta) / s;
  Quat r{wa * a.w + wb * bn.w, wa * a.x + wb * bn.x, wa * a.y + wb * bn.y,
         wa * a.z + wb * bn.z};
  return r.normalized();
}

namespace {

Quat quat_from_basis(const Vec3& ex, const Vec3& ey, const Vec3& ez) {
  // Shepperd's method on the column-major rotation matrix [ex ey ez].
  double m00 = ex.x, m01 = ey.x, m02 = ez.x;
  double m10 = ex.y, m11 = ey.y, m12 = ez.y;
  double m20 = ex.z, m21 = ey.z, m22 = ez.z;
  double trace = m00 + m11 + m22;
  Quat q;
  if (trace > 0.0) {
    double s = std::sqrt(trace + 1.0) * 2.0;
    q = {0.25 * s, (m21 - m12) / s, (m02 - m20) / s, (m10 - m01) / s};
  } else if (m00 > m11 && m00 > m22) {
    double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
    q = {(m21 - m12) / s, 0.25 * s, (m01 + m10) / s, (m02 + m20) / s};
  } else if (m11 > m22) {
    double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
    q = {(m02 - m20) / s, (m01 + m10) / s, 0.25 * s, (m12 + m21) / s};
  } else {
    double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
    q = {(m10 - m01) / s, (m02 + m20) / s, (m12 + m21) / s, 0.25 * s};
  }
  return q.normalized();
}

}  // namespace

Quat facing(const Vec3& dir) {
  Vec3 f = dir.normalized();
  Vec3 up{0.0, 0.0, 1.0};
  if (f.cross(up).norm() < 1e-9) up = {1.0, 0.0, 0.0};
  Vec3 ez = (up - f * up.dot(f)).normalized();
  Vec3 ey = ez.cross(f);
  return quat_from_basis(f, ey, ez);
}

Pose compose(const Pose& parent, const Pose& local) {
  return {parent.position + parent.orientation.rotate(local.position),
          (parent.orientation * local.orientation).normalized()};
}

Pose inverse(const Pose& p) {
  Quat qi = p.orientation.conjugate();
  return {qi.rotate(-p.position), qi};
}

Vec3 transform_point(const Pose& p, const Vec3& local) {
  return p.position + p.orientation.rotate(local);
}

}  // namespace cbddl
