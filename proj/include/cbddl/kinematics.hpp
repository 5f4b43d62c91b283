// Motion generators for dynamic objects. Poses are pure functions of the
// step index, so trajectories are reproducible by construction.
#pragma once

#include "cbddl/ast.hpp"
#include "cbddl/geometry.hpp"

namespace cbddl {

// Simulation time base: one step = dt seconds (projectile motion needs a
// clock; periods are given in steps).
inline constexpr double kDefaultDt = 0.02;

// Total steps allotted to a waypoint traversal when the task gives no
// period: 50 per segment.
inline constexpr int kWaypointStepsPerSegment = 50;

struct MotionGenerator {
  MotionSpec spec;
  Pose p0;  // pose captured at episode start

  // Deterministic pose for the given step.
  //  - linear: triangle-wave oscillation between p0 and p0 + d*v_hat,
  //    full cycle in `period` steps; orientation constant
  //  - circular: uniform rotation about the world z-axis through the
  //    pivot; horizontal radius fixed by p0, height preserved
  //  - waypoints: piecewise-linear position with SLERP orientation,
  //    equal steps per segment, final waypoint held afterwards
  //  - projectile: p0 + v0*t + g*t^2/2 with t = step*dt
  Pose pose_at(int step, double dt = kDefaultDt) const;
};

}  // namespace cbddl
