// Typed representation of a parsed CBDDL problem.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbddl/geometry.hpp"

namespace cbddl {

// The agent's end effector is addressable in expressions under this
// reserved name without being declared in :objects.
inline const std::string kGripperName = "gripper0";

struct SourcePos {
  int line = 0;  // 1-based; 0 means "no position"
  int col = 0;
  bool operator==(const SourcePos&) const = default;
};

// Argument of a predicate atom: an object name, a numeric literal, or a
// parenthesized list of numbers (part-index lists, vectors).
struct Arg {
  enum class Kind { Name, Number, NumberList };
  Kind kind = Kind::Name;
  std::string name;
  double number = 0.0;
  std::vector<double> list;
  SourcePos pos;

  static Arg make_name(std::string n) {
    Arg a;
    a.kind = Kind::Name;
    a.name = std::move(n);
    return a;
  }
  static Arg make_number(double v) {
    Arg a;
    a.kind = Kind::Number;
    a.number = v;
    return a;
  }
  static Arg make_list(std::vector<double> v) {
    Arg a;
    a.kind = Kind::NumberList;
    a.list = std::move(v);
    return a;
  }
};

bool structural_equal(const Arg& a, const Arg& b);

// Predicate-logic tree shared by :init, :goal and :cost.
struct Expr {
  enum class Kind { And, Or, Not, Atom };
  Kind kind = Kind::Atom;
  std::string pred;            // Atom only
  std::vector<Arg> args;       // Atom only
  std::vector<Expr> children;  // connectives only
  SourcePos pos;

  static Expr atom(std::string name, std::vector<Arg> args = {}) {
    Expr e;
    e.kind = Kind::Atom;
    e.pred = std::move(name);
    e.args = std::move(args);
    return e;
  }
  static Expr connective(Kind k, std::vector<Expr> ch) {
    Expr e;
    e.kind = k;
    e.children = std::move(ch);
    return e;
  }
};

bool structural_equal(const Expr& a, const Expr& b);

struct PartDecl {
  enum class Shape { Sphere, Box };
  int index = 0;
  Shape shape = Shape::Sphere;
  double radius = 0.0;    // Sphere
  Vec3 half_extents;      // Box
  Vec3 offset;            // local offset from the object origin, meters
  SourcePos pos;
};

struct ObjectDecl {
  std::string name;
  std::string category;
  std::vector<PartDecl> parts;
  SourcePos pos;

  bool is_region() const { return category == "region"; }
};

struct MotionSpec {
  enum class Type { Linear, Circular, Waypoints, Projectile };
  std::string object;
  Type type = Type::Linear;
  // linear / circular / waypoints
  std::optional<int> period;
  // linear
  double travel_dist = 0.0;
  Vec3 direction;
  // circular
  Vec3 center;
  // waypoints: (x, y, z, dir_x, dir_y, dir_z) tuples
  struct Waypoint {
    Vec3 position;
    Vec3 facing_dir;  // zero means "keep previous orientation"
  };
  std::vector<Waypoint> waypoints;
  // projectile
  double initial_speed = 0.0;
  Vec3 gravity;
  SourcePos pos;
};

struct ImageSettings {
  double brightness = 0.0;  // factor delta, applied as f = 1 + delta
  double contrast = 0.0;
  double saturation = 0.0;
  double temperature = 6500.0;  // Kelvin
  bool operator==(const ImageSettings&) const = default;
};

struct NoiseSpec {
  enum class Mode { None, Gaussian, SaltPepper };
  Mode mode = Mode::None;
  double mean = 0.0;  // Gaussian
  double var = 0.0;   // Gaussian
  double prob = 0.0;  // SaltPepper
  bool operator==(const NoiseSpec&) const = default;
};

struct VisualSpec {
  std::optional<ImageSettings> image;
  std::optional<NoiseSpec> noise;
  std::optional<bool> random_color;
  bool operator==(const VisualSpec&) const = default;
};

struct CameraDecl {
  std::string name;
  std::optional<Vec3> offset;
  SourcePos pos;
};

struct TaskSpec {
  std::string name;
  std::string domain;
  std::optional<std::string> language;
  std::vector<ObjectDecl> objects;
  std::vector<MotionSpec> moving_objects;
  std::vector<Expr> init;  // atoms only
  Expr goal;
  std::vector<Expr> cost;  // independent constraint terms (may be empty)
  VisualSpec visual;
  std::vector<CameraDecl> cameras;

  const ObjectDecl* find_object(const std::string& n) const {
    for (const auto& o : objects)
      if (o.name == n) return &o;
    return nullptr;
  }
  const MotionSpec* find_mover(const std::string& n) const {
    for (const auto& m : moving_objects)
      if (m.object == n) return &m;
    return nullptr;
  }
};

// Structural equality ignores source positions.
bool structural_equal(const TaskSpec& a, const TaskSpec& b);

}  // namespace cbddl
