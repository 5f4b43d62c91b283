// Minimal pose algebra: 3-vectors, unit quaternions, rigid transforms.
#pragma once

#include <cmath>

namespace cbddl {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  bool operator==(const Vec3&) const = default;
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Unit quaternion, scalar-first (w, x, y, z).
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  static Quat identity() { return {}; }
  static Quat from_axis_angle(const Vec3& axis, double angle);
  // Rotation vector (axis * angle); zero vector maps to identity.
  static Quat from_rotvec(const Vec3& r);
  Vec3 to_rotvec() const;

  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  Quat conjugate() const { return {w, -x, -y, -z}; }
  double dot(const Quat& o) const {
    return w * o.w + x * o.x + y * o.y + z * o.z;
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Quat normalized() const;

  Vec3 rotate(const Vec3& v) const;
  // Angle of the relative rotation this->other, in [0, pi].
  double angle_to(const Quat& o) const;

  bool operator==(const Quat&) const = default;
};

// Shortest-arc spherical interpolation. b is negated when dot(a,b) < 0;
// falls back to normalized lerp for nearly identical inputs.
Quat slerp(const Quat& a, const Quat& b, double t);

// Orientation whose +x axis points along dir, +z kept as close to world
// up as possible. dir must be non-zero.
Quat facing(const Vec3& dir);

struct Pose {
  Vec3 position;
  Quat orientation;

  bool operator==(const Pose&) const = default;
};

// World pose of a child frame given its local pose in the parent frame.
Pose compose(const Pose& parent, const Pose& local);
Pose inverse(const Pose& p);
Vec3 transform_point(const Pose& p, const Vec3& local);

}  // namespace cbddl
