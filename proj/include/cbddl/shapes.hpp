// Analytic distance and penetration tests between part primitives.
// Spheres and (oriented) boxes cover every predicate the cost language
// needs: contact booleans, separations and a penetration-based force.
#pragma once

#include <array>

#include "cbddl/ast.hpp"
#include "cbddl/geometry.hpp"

namespace cbddl {

// A part primitive placed in the world.
struct WorldPart {
  PartDecl::Shape shape = PartDecl::Shape::Sphere;
  double radius = 0.0;  // sphere
  Vec3 half;            // box half extents
  Pose pose;            // world pose of the primitive

  static WorldPart sphere(const Vec3& center, double r) {
    WorldPart p;
    p.shape = PartDecl::Shape::Sphere;
    p.radius = r;
    p.pose = {center, Quat::identity()};
    return p;
  }
  static WorldPart box(const Pose& pose, const Vec3& half) {
    WorldPart p;
    p.shape = PartDecl::Shape::Box;
    p.half = half;
    p.pose = pose;
    return p;
  }
};

struct PairSeparation {
  double distance = 0.0;  // surface-to-surface, 0 when touching/penetrating
  double depth = 0.0;     // penetration depth, 0 when separated
};

// Exact for sphere/sphere and sphere/box. Box/box separation distance is
// exact via feature pairs (vertex-to-box and edge-edge); box/box depth is
// the SAT minimum-translation depth.
PairSeparation part_separation(const WorldPart& a, const WorldPart& b);

// Distance from a point to a solid primitive (0 inside).
double point_to_part(const Vec3& p, const WorldPart& part);

// World-frame axis-aligned bounds of a primitive.
void part_aabb(const WorldPart& part, Vec3& lo, Vec3& hi);

// True if the point lies inside the (solid) primitive.
bool point_in_part(const Vec3& p, const WorldPart& part);

}  // namespace cbddl
