#include "cbddl/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbddl {

namespace {

Vec3 box_axis(const WorldPart& b, int i) {
  switch (i) {
    case 0: return b.pose.orientation.rotate({1, 0, 0});
    case 1: return b.pose.orientation.rotate({0, 1, 0});
    default: return b.pose.orientation.rotate({0, 0, 1});
  }
}

double half_component(const Vec3& h, int i) {
  return i == 0 ? h.x : i == 1 ? h.y : h.z;
}

// Closest point on (solid) box to p, plus signed distance: negative
// magnitude is reported through `inside_depth` (distance to nearest face
// measured inward) when p lies inside.
double box_point_distance(const WorldPart& b, const Vec3& p,
                          double* inside_depth = nullptr) {
  Vec3 local = inverse(b.pose).orientation.rotate(p - b.pose.position);
  double lx = std::abs(local.x), ly = std::abs(local.y), lz = std::abs(local.z);
  if (lx <= b.half.x && ly <= b.half.y && lz <= b.half.z) {
    if (inside_depth)
      *inside_depth = std::min({b.half.x - lx, b.half.y - ly, b.half.z - lz});
    return 0.0;
  }
  double dx = std::max(0.0, lx - b.half.x);
  double dy = std::max(0.0, ly - b.half.y);
  double dz = std::max(0.0, lz - b.half.z);
  if (inside_depth) *inside_depth = 0.0;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

PairSeparation sphere_sphere(const WorldPart& a, const WorldPart& b) {
  double d = (a.pose.position - b.pose.position).norm();
  double gap = d - a.radius - b.radius;
  return {std::max(0.0, gap), std::max(0.0, -gap)};
}

PairSeparation sphere_box(const WorldPart& s, const WorldPart& b) {
  double inside = 0.0;
  double d = box_point_distance(b, s.pose.position, &inside);
  if (d == 0.0) {
    // Center inside the box: fully embedded.
    return {0.0, s.radius + inside};
  }
  double gap = d - s.radius;
  return {std::max(0.0, gap), std::max(0.0, -gap)};
}

std::array<Vec3, 8> box_corners(const WorldPart& b) {
  std::array<Vec3, 8> out;
  Vec3 ax = box_axis(b, 0) * b.half.x;
  Vec3 ay = box_axis(b, 1) * b.half.y;
  Vec3 az = box_axis(b, 2) * b.half.z;
  int k = 0;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1})
        out[k++] = b.pose.position + ax * sx + ay * sy + az * sz;
  return out;
}

// 12 edges as corner-index pairs for the ordering produced above
// (index = sx*4 + sy*2 + sz with -1 -> 0).
constexpr int kBoxEdges[12][2] = {{0, 1}, {2, 3}, {4, 5}, {6, 7},
                                  {0, 2}, {1, 3}, {4, 6}, {5, 7},
                                  {0, 4}, {1, 5}, {2, 6}, {3, 7}};

double segment_segment_distance(const Vec3& p1, const Vec3& q1,
                                const Vec3& p2, const Vec3& q2) {
  // Ericson, Real-Time Collision Detection, closest points of segments.
  Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  double a = d1.dot(d1), e = d2.dot(d2), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  constexpr double eps = 1e-12;
  if (a <= eps && e <= eps) {
    return r.norm();
  }
  if (a <= eps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    double c = d1.dot(r);
    if (e <= eps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      double b = d1.dot(d2);
      double denom = a * e - b * b;
      if (denom > eps)
        s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  Vec3 c1 = p1 + d1 * s, c2 = p2 + d2 * t;
  return (c1 - c2).norm();
}

// Gottschalk separating-axis test. Returns true when the boxes overlap
// and reports the minimum translation depth.
bool box_box_sat(const WorldPart& a, const WorldPart& b, double& depth) {
  Vec3 t = b.pose.position - a.pose.position;
  std::array<Vec3, 3> aa{box_axis(a, 0), box_axis(a, 1), box_axis(a, 2)};
  std::array<Vec3, 3> bb{box_axis(b, 0), box_axis(b, 1), box_axis(b, 2)};
  depth = std::numeric_limits<double>::infinity();
  auto test_axis = [&](Vec3 axis) -> bool {
    double len = axis.norm();
    if (len < 1e-9) return true;  // degenerate cross axis
    axis = axis * (1.0 / len);
    double ra = 0.0, rb = 0.0;
    for (int i = 0; i < 3; ++i) {
      ra += half_component(a.half, i) * std::abs(aa[i].dot(axis));
      rb += half_component(b.half, i) * std::abs(bb[i].dot(axis));
    }
    double overlap = ra + rb - std::abs(t.dot(axis));
    if (overlap < 0.0) return false;
    depth = std::min(depth, overlap);
    return true;
  };
  for (int i = 0; i < 3; ++i)
    if (!test_axis(aa[i])) return false;
  for (int i = 0; i < 3; ++i)
    if (!test_axis(bb[i])) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!test_axis(aa[i].cross(bb[j]))) return false;
  return true;
}

PairSeparation box_box(const WorldPart& a, const WorldPart& b) {
  double depth = 0.0;
  if (box_box_sat(a, b, depth)) return {0.0, depth};
  // Disjoint convex polytopes: the closest pair of points lies on a
  // vertex-face or edge-edge feature pair.
  auto ca = box_corners(a);
  auto cb = box_corners(b);
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& v : ca) best = std::min(best, box_point_distance(b, v));
  for (const Vec3& v : cb) best = std::min(best, box_point_distance(a, v));
  for (const auto& ea : kBoxEdges)
    for (const auto& eb : kBoxEdges)
      best = std::min(best,
                      segment_segment_distance(ca[ea[0]], ca[ea[1]],
                                               cb[eb[0]], cb[eb[1]]));
  return {best, 0.0};
}

}  // namespace

PairSeparation part_separation(const WorldPart& a, const WorldPart& b) {
  using S = PartDecl::Shape;
  if (a.shape == S::Sphere && b.shape == S::Sphere) return sphere_sphere(a, b);
  if (a.shape == S::Sphere && b.shape == S::Box) return sphere_box(a, b);
  if (a.shape == S::Box && b.shape == S::Sphere) return sphere_box(b, a);
  return box_box(a, b);
}

double point_to_part(const Vec3& p, const WorldPart& part) {
  if (part.shape == PartDecl::Shape::Sphere)
    return std::max(0.0, (p - part.pose.position).norm() - part.radius);
  return box_point_distance(part, p);
}

bool point_in_part(const Vec3& p, const WorldPart& part) {
  if (part.shape == PartDecl::Shape::Sphere)
    return (p - part.pose.position).norm() <= part.radius;
  return box_point_distance(part, p) == 0.0;
}

void part_aabb(const WorldPart& part, Vec3& lo, Vec3& hi) {
  if (part.shape == PartDecl::Shape::Sphere) {
    Vec3 r{part.radius, part.radius, part.radius};
    lo = part.pose.position - r;
    hi = part.pose.position + r;
    return;
  }
  Vec3 ext;
  for (int i = 0; i < 3; ++i) {
    Vec3 axis = box_axis(part, i);
    double h = half_component(part.half, i);
    ext += Vec3{std::abs(axis.x), std::abs(axis.y), std::abs(axis.z)} * h;
  }
  lo = part.pose.position - ext;
  hi = part.pose.position + ext;
}

}  // namespace cbddl
