#include "cbddl/printer.hpp"

#include <charconv>
#include <sstream>

namespace cbddl {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

namespace {

std::string print_vec(const Vec3& v) {
  return "(" + format_number(v.x) + " " + format_number(v.y) + " " +
         format_number(v.z) + ")";
}

std::string print_arg(const Arg& a) {
  switch (a.kind) {
    case Arg::Kind::Name:
      return a.name;
    case Arg::Kind::Number:
      return format_number(a.number);
    case Arg::Kind::NumberList: {
      std::string s = "(";
      for (size_t i = 0; i < a.list.size(); ++i) {
        if (i) s += " ";
        s += format_number(a.list[i]);
      }
      return s + ")";
    }
  }
  return {};
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Atom: {
      std::string s = "(" + e.pred;
      for (const auto& a : e.args) s += " " + print_arg(a);
      return s + ")";
    }
    case Expr::Kind::And:
    case Expr::Kind::Or:
    case Expr::Kind::Not: {
      std::string s = "(";
      s += e.kind == Expr::Kind::And ? "And"
           : e.kind == Expr::Kind::Or ? "Or"
                                      : "Not";
      for (const auto& c : e.children) s += " " + print_expr(c);
      return s + ")";
    }
  }
  return {};
}

namespace {

std::string print_part(const PartDecl& p) {
  std::string s = "(" + std::to_string(p.index) + " ";
  if (p.shape == PartDecl::Shape::Sphere)
    s += "sphere " + format_number(p.radius);
  else
    s += "box " + print_vec(p.half_extents);
  return s + " " + print_vec(p.offset) + ")";
}

std::string print_motion(const MotionSpec& m) {
  std::ostringstream os;
  os << "    (" << m.object << "\n";
  const char* type = nullptr;
  switch (m.type) {
    case MotionSpec::Type::Linear: type = "linear"; break;
    case MotionSpec::Type::Circular: type = "circular"; break;
    case MotionSpec::Type::Waypoints: type = "waypoints"; break;
    case MotionSpec::Type::Projectile: type = "projectile"; break;
  }
  os << "      (:motion_type " << type << ")\n";
  if (m.period) os << "      (:motion_period " << *m.period << ")\n";
  if (m.travel_dist != 0.0)
    os << "      (:motion_travel_dist " << format_number(m.travel_dist) << ")\n";
  if (!(m.direction == Vec3{}))
    os << "      (:motion_direction " << print_vec(m.direction) << ")\n";
  if (!(m.center == Vec3{}))
    os << "      (:motion_center " << print_vec(m.center) << ")\n";
  if (!m.waypoints.empty()) {
    os << "      (:motion_waypoints (";
    for (size_t i = 0; i < m.waypoints.size(); ++i) {
      const auto& w = m.waypoints[i];
      if (i) os << " ";
      os << "(" << format_number(w.position.x) << " "
         << format_number(w.position.y) << " " << format_number(w.position.z)
         << " " << format_number(w.facing_dir.x) << " "
         << format_number(w.facing_dir.y) << " "
         << format_number(w.facing_dir.z) << ")";
    }
    os << "))\n";
  }
  if (m.initial_speed != 0.0)
    os << "      (:motion_initial_speed " << format_number(m.initial_speed)
       << ")\n";
  if (!(m.gravity == Vec3{}))
    os << "      (:motion_gravity " << print_vec(m.gravity) << ")\n";
  os << "    )";
  return os.str();
}

}  // namespace

std::string pretty_print(const TaskSpec& spec) {
  std::ostringstream os;
  os << "(define (problem " << spec.name << ")\n";
  os << "  (:domain " << spec.domain << ")\n";
  if (spec.language) os << "  (:language \"" << *spec.language << "\")\n";
  if (!spec.objects.empty()) {
    os << "  (:objects\n";
    for (const auto& o : spec.objects) {
      os << "    (" << o.name << " " << o.category;
      if (!o.parts.empty()) {
        os << " (:parts";
        for (const auto& p : o.parts) os << " " << print_part(p);
        os << ")";
      }
      os << ")\n";
    }
    os << "  )\n";
  }
  if (!spec.moving_objects.empty()) {
    os << "  (:moving_objects\n";
    for (const auto& m : spec.moving_objects) os << print_motion(m) << "\n";
    os << "  )\n";
  }
  os << "  (:init";
  for (const auto& a : spec.init) os << "\n    " << print_expr(a);
  os << (spec.init.empty() ? ")\n" : "\n  )\n");
  os << "  (:goal " << print_expr(spec.goal) << ")\n";
  if (!spec.cost.empty()) {
    os << "  (:cost";
    for (const auto& t : spec.cost) os << "\n    " << print_expr(t);
    os << "\n  )\n";
  }
  if (spec.visual.image) {
    const auto& s = *spec.visual.image;
    os << "  (:image_settings (:brightness " << format_number(s.brightness)
       << ") (:contrast " << format_number(s.contrast) << ") (:saturation "
       << format_number(s.saturation) << ") (:temperature "
       << format_number(s.temperature) << "))\n";
  }
  if (spec.visual.noise) {
    const auto& n = *spec.visual.noise;
    os << "  (:noise ";
    switch (n.mode) {
      case NoiseSpec::Mode::None:
        os << "none";
        break;
      case NoiseSpec::Mode::Gaussian:
        os << "gaussian " << format_number(n.mean) << " "
           << format_number(n.var);
        break;
      case NoiseSpec::Mode::SaltPepper:
        os << "salt_pepper " << format_number(n.prob);
        break;
    }
    os << ")\n";
  }
  if (!spec.cameras.empty()) {
    os << "  (:camera";
    for (const auto& c : spec.cameras) {
      os << " " << c.name;
      if (c.offset) os << " " << print_vec(*c.offset);
    }
    os << ")\n";
  }
  if (spec.visual.random_color)
    os << "  (:random_color " << (*spec.visual.random_color ? "true" : "false")
       << ")\n";
  os << ")\n";
  return os.str();
}

}  // namespace cbddl
