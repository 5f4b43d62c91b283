#include "cbddl/kinematics.hpp"

#include <cmath>

namespace cbddl {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

Pose linear_pose(const MotionSpec& m, const Pose& p0, int step) {
  int period = *m.period;
  int s = step % period;
  int half = period / 2;
  // Integer phase keeps multiples of the period exactly at p0.
  double frac = s <= half ? static_cast<double>(s) / half
                          : static_cast<double>(period - s) / (period - half);
  Vec3 dir = m.direction.normalized();
  return {p0.position + dir * (m.travel_dist * frac), p0.orientation};
}

Pose circular_pose(const MotionSpec& m, const Pose& p0, int step) {
  int period = *m.period;
  int phase = step % period;
  if (phase == 0) return p0;  // exact at every full revolution
  double angle = kTau * static_cast<double>(phase) / period;
  double c = std::cos(angle), s = std::sin(angle);
  Vec3 r = p0.position - m.center;
  // Rotate the initial offset about the vertical axis through the pivot;
  // the height offset is preserved.
  Vec3 rotated{c * r.x - s * r.y, s * r.x + c * r.y, r.z};
  return {m.center + rotated, p0.orientation};
}

Pose waypoint_pose(const MotionSpec& m, const Pose& p0, int step) {
  const auto& wps = m.waypoints;
  int segments = static_cast<int>(wps.size()) - 1;
  int total = m.period ? *m.period : kWaypointStepsPerSegment * segments;
  int per_segment = total / segments;
  if (per_segment < 1) per_segment = 1;

  auto orientation_at = [&](int index) {
    // Zero direction means "keep previous orientation".
    Quat q = p0.orientation;
    for (int i = 0; i <= index; ++i)
      if (!(wps[i].facing_dir == Vec3{})) q = facing(wps[i].facing_dir);
    return q;
  };

  if (step >= per_segment * segments) {
    return {wps.back().position, orientation_at(segments)};
  }
  int seg = step / per_segment;
  double t = static_cast<double>(step - seg * per_segment) / per_segment;
  const Vec3& a = wps[seg].position;
  const Vec3& b = wps[seg + 1].position;
  Quat qa = orientation_at(seg);
  Quat qb = orientation_at(seg + 1);
  return {a + (b - a) * t, slerp(qa, qb, t)};
}

Pose projectile_pose(const MotionSpec& m, const Pose& p0, int step,
                     double dt) {
  double t = step * dt;
  Vec3 v0 = m.direction.normalized() * m.initial_speed;
  return {p0.position + v0 * t + m.gravity * (0.5 * t * t), p0.orientation};
}

}  // namespace

Pose MotionGenerator::pose_at(int step, double dt) const {
  switch (spec.type) {
    case MotionSpec::Type::Linear:
      return linear_pose(spec, p0, step);
    case MotionSpec::Type::Circular:
      return circular_pose(spec, p0, step);
    case MotionSpec::Type::Waypoints:
      return waypoint_pose(spec, p0, step);
    case MotionSpec::Type::Projectile:
      return projectile_pose(spec, p0, step, dt);
  }
  return p0;
}

}  // namespace cbddl
