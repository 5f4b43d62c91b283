#include "cbddl/parser.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <variant>

#include "cbddl/lexer.hpp"

namespace cbddl {

namespace {

struct SNode {
  enum class Kind { Symbol, Number, String, List };
  Kind kind;
  std::string text;
  double number = 0.0;
  std::vector<SNode> items;
  SourcePos pos;

  bool is_sym(const std::string& s) const {
    return kind == Kind::Symbol && text == s;
  }
};

class SReader {
 public:
  explicit SReader(const std::vector<Token>& tokens) : tokens_(tokens) {}

  SNode read() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Kind::LParen: {
        SNode list;
        list.kind = SNode::Kind::List;
        list.pos = t.pos;
        while (peek().kind != Token::Kind::RParen) list.items.push_back(read());
        next();  // consume ')'
        return list;
      }
      case Token::Kind::RParen:
        throw ParseError("unexpected ')'", t.pos);
      case Token::Kind::Symbol: {
        SNode s;
        s.kind = SNode::Kind::Symbol;
        s.text = t.text;
        s.pos = t.pos;
        return s;
      }
      case Token::Kind::Number: {
        SNode s;
        s.kind = SNode::Kind::Number;
        s.text = t.text;
        s.number = t.number;
        s.pos = t.pos;
        return s;
      }
      case Token::Kind::String: {
        SNode s;
        s.kind = SNode::Kind::String;
        s.text = t.text;
        s.pos = t.pos;
        return s;
      }
    }
    throw ParseError("unexpected token", t.pos);
  }

  bool at_end() const { return i_ >= tokens_.size(); }
  SourcePos end_pos() const {
    return tokens_.empty() ? SourcePos{1, 1} : tokens_.back().pos;
  }

 private:
  const Token& peek() {
    if (i_ >= tokens_.size())
      throw ParseError("unexpected end of input", end_pos());
    return tokens_[i_];
  }
  const Token& next() {
    const Token& t = peek();
    ++i_;
    return t;
  }

  const std::vector<Token>& tokens_;
  size_t i_ = 0;
};

[[noreturn]] void fail(const std::string& msg, const SNode& where) {
  throw ParseError(msg, where.pos);
}

std::string expect_symbol(const SNode& n, const std::string& what) {
  if (n.kind != SNode::Kind::Symbol) fail("expected " + what, n);
  return n.text;
}

double expect_number(const SNode& n, const std::string& what) {
  if (n.kind != SNode::Kind::Number) fail("expected number for " + what, n);
  return n.number;
}

int expect_int(const SNode& n, const std::string& what) {
  double v = expect_number(n, what);
  if (v != std::floor(v)) fail(what + " must be an integer", n);
  return static_cast<int>(v);
}

Vec3 expect_vec3(const SNode& n, const std::string& what) {
  if (n.kind != SNode::Kind::List || n.items.size() != 3)
    fail("expected (x y z) for " + what, n);
  return {expect_number(n.items[0], what), expect_number(n.items[1], what),
          expect_number(n.items[2], what)};
}

Expr parse_expr(const SNode& n);

Arg parse_arg(const SNode& n) {
  Arg a;
  a.pos = n.pos;
  switch (n.kind) {
    case SNode::Kind::Symbol:
      a.kind = Arg::Kind::Name;
      a.name = n.text;
      return a;
    case SNode::Kind::Number:
      a.kind = Arg::Kind::Number;
      a.number = n.number;
      return a;
    case SNode::Kind::List: {
      a.kind = Arg::Kind::NumberList;
      for (const auto& item : n.items)
        a.list.push_back(expect_number(item, "list argument"));
      return a;
    }
    default:
      fail("invalid predicate argument", n);
  }
}

Expr parse_expr(const SNode& n) {
  if (n.kind != SNode::Kind::List || n.items.empty())
    fail("expected (Predicate ...) or connective", n);
  std::string head = expect_symbol(n.items[0], "predicate or connective name");
  Expr e;
  e.pos = n.pos;
  if (head == "And" || head == "Or") {
    e.kind = head == "And" ? Expr::Kind::And : Expr::Kind::Or;
    for (size_t i = 1; i < n.items.size(); ++i)
      e.children.push_back(parse_expr(n.items[i]));
    if (e.children.size() < 2)
      fail(head + " requires >=2 children", n);
    return e;
  }
  if (head == "Not") {
    e.kind = Expr::Kind::Not;
    for (size_t i = 1; i < n.items.size(); ++i)
      e.children.push_back(parse_expr(n.items[i]));
    if (e.children.size() != 1) fail("Not requires exactly 1 child", n);
    return e;
  }
  e.kind = Expr::Kind::Atom;
  e.pred = head;
  for (size_t i = 1; i < n.items.size(); ++i)
    e.args.push_back(parse_arg(n.items[i]));
  return e;
}

PartDecl parse_part(const SNode& n) {
  if (n.kind != SNode::Kind::List || n.items.size() != 4)
    fail("expected (index shape dims (ox oy oz))", n);
  PartDecl p;
  p.pos = n.pos;
  p.index = expect_int(n.items[0], "part index");
  std::string shape = expect_symbol(n.items[1], "part shape");
  if (shape == "sphere") {
    p.shape = PartDecl::Shape::Sphere;
    p.radius = expect_number(n.items[2], "sphere radius");
  } else if (shape == "box") {
    p.shape = PartDecl::Shape::Box;
    p.half_extents = expect_vec3(n.items[2], "box half extents");
  } else {
    fail("unknown part shape '" + shape + "'", n.items[1]);
  }
  p.offset = expect_vec3(n.items[3], "part offset");
  return p;
}

ObjectDecl parse_object(const SNode& n) {
  if (n.kind != SNode::Kind::List || n.items.size() < 2)
    fail("expected (name category ...)", n);
  ObjectDecl o;
  o.pos = n.pos;
  o.name = expect_symbol(n.items[0], "object name");
  o.category = expect_symbol(n.items[1], "object category");
  for (size_t i = 2; i < n.items.size(); ++i) {
    const SNode& sub = n.items[i];
    if (sub.kind != SNode::Kind::List || sub.items.empty() ||
        !sub.items[0].is_sym(":parts"))
      fail("expected (:parts ...) in object declaration", sub);
    for (size_t j = 1; j < sub.items.size(); ++j)
      o.parts.push_back(parse_part(sub.items[j]));
  }
  return o;
}

MotionSpec parse_motion(const SNode& n) {
  if (n.kind != SNode::Kind::List || n.items.size() < 2)
    fail("expected (object_name (:motion_type ...) ...)", n);
  MotionSpec m;
  m.pos = n.pos;
  m.object = expect_symbol(n.items[0], "moving object name");
  bool have_type = false;
  for (size_t i = 1; i < n.items.size(); ++i) {
    const SNode& attr = n.items[i];
    if (attr.kind != SNode::Kind::List || attr.items.empty() ||
        attr.items[0].kind != SNode::Kind::Symbol)
      fail("expected (:attribute value)", attr);
    const std::string& key = attr.items[0].text;
    auto value = [&](const char* what) -> const SNode& {
      if (attr.items.size() != 2) fail(std::string("expected one value for ") + what, attr);
      return attr.items[1];
    };
    if (key == ":motion_type") {
      std::string t = expect_symbol(value("motion type"), "motion type");
      if (t == "linear")
        m.type = MotionSpec::Type::Linear;
      else if (t == "circular")
        m.type = MotionSpec::Type::Circular;
      else if (t == "waypoints")
        m.type = MotionSpec::Type::Waypoints;
      else if (t == "projectile")
        m.type = MotionSpec::Type::Projectile;
      else
        fail("unknown motion type '" + t + "'", attr.items[1]);
      have_type = true;
    } else if (key == ":motion_period") {
      m.period = expect_int(value("motion period"), "motion period");
    } else if (key == ":motion_travel_dist") {
      m.travel_dist = expect_number(value("travel distance"), "travel distance");
    } else if (key == ":motion_direction") {
      m.direction = expect_vec3(value("direction"), "direction");
    } else if (key == ":motion_center") {
      m.center = expect_vec3(value("center"), "center");
    } else if (key == ":motion_initial_speed") {
      m.initial_speed = expect_number(value("initial speed"), "initial speed");
    } else if (key == ":motion_gravity") {
      m.gravity = expect_vec3(value("gravity"), "gravity");
    } else if (key == ":motion_waypoints") {
      if (attr.items.size() != 2 || attr.items[1].kind != SNode::Kind::List)
        fail("expected a list of waypoint tuples", attr);
      for (const auto& wp : attr.items[1].items) {
        if (wp.kind != SNode::Kind::List || wp.items.size() != 6)
          fail("expected (x y z dir_x dir_y dir_z)", wp);
        MotionSpec::Waypoint w;
        w.position = {expect_number(wp.items[0], "waypoint"),
                      expect_number(wp.items[1], "waypoint"),
                      expect_number(wp.items[2], "waypoint")};
        w.facing_dir = {expect_number(wp.items[3], "waypoint"),
                        expect_number(wp.items[4], "waypoint"),
                        expect_number(wp.items[5], "waypoint")};
        m.waypoints.push_back(w);
      }
    } else {
      fail("unknown motion attribute '" + key + "'", attr.items[0]);
    }
  }
  if (!have_type) fail("missing (:motion_type ...)", n);
  return m;
}

void parse_image_settings(const SNode& block, TaskSpec& spec) {
  ImageSettings s = spec.visual.image.value_or(ImageSettings{});
  for (size_t i = 1; i < block.items.size(); ++i) {
    const SNode& attr = block.items[i];
    if (attr.kind != SNode::Kind::List || attr.items.size() != 2 ||
        attr.items[0].kind != SNode::Kind::Symbol)
      fail("expected (:setting value)", attr);
    const std::string& key = attr.items[0].text;
    double v = expect_number(attr.items[1], key);
    if (key == ":brightness")
      s.brightness = v;
    else if (key == ":contrast")
      s.contrast = v;
    else if (key == ":saturation")
      s.saturation = v;
    else if (key == ":temperature")
      s.temperature = v;
    else
      fail("unknown image setting '" + key + "'", attr.items[0]);
  }
  spec.visual.image = s;
}

void parse_noise(const SNode& block, TaskSpec& spec) {
  if (block.items.size() < 2) fail("expected (:noise mode ...)", block);
  std::string mode = expect_symbol(block.items[1], "noise mode");
  NoiseSpec n;
  if (mode == "none") {
    if (block.items.size() != 2) fail("(:noise none) takes no parameters", block);
    n.mode = NoiseSpec::Mode::None;
  } else if (mode == "gaussian") {
    if (block.items.size() != 4)
      fail("expected (:noise gaussian mean var)", block);
    n.mode = NoiseSpec::Mode::Gaussian;
    n.mean = expect_number(block.items[2], "noise mean");
    n.var = expect_number(block.items[3], "noise variance");
  } else if (mode == "salt_pepper") {
    if (block.items.size() != 3)
      fail("expected (:noise salt_pepper prob)", block);
    n.mode = NoiseSpec::Mode::SaltPepper;
    n.prob = expect_number(block.items[2], "noise probability");
  } else {
    fail("unknown noise mode '" + mode + "'", block.items[1]);
  }
  spec.visual.noise = n;
}

void parse_camera(const SNode& block, TaskSpec& spec) {
  // Camera names, each optionally followed by an (ox oy oz) offset.
  for (size_t i = 1; i < block.items.size(); ++i) {
    const SNode& item = block.items[i];
    if (item.kind != SNode::Kind::Symbol)
      fail("expected a camera name", item);
    CameraDecl cam;
    cam.pos = item.pos;
    cam.name = item.text;
    if (i + 1 < block.items.size() &&
        block.items[i + 1].kind == SNode::Kind::List) {
      cam.offset = expect_vec3(block.items[i + 1], "camera offset");
      ++i;
    }
    spec.cameras.push_back(cam);
  }
}

}  // namespace

TaskSpec parse_problem(const std::string& source) {
  std::vector<Token> tokens = lex(source);
  SReader reader(tokens);
  if (reader.at_end()) throw ParseError("empty input", {1, 1});
  SNode root = reader.read();
  if (!reader.at_end())
    throw ParseError("trailing content after problem definition",
                     reader.end_pos());

  if (root.kind != SNode::Kind::List || root.items.size() < 2 ||
      !root.items[0].is_sym("define"))
    fail("expected (define (problem NAME) ...)", root);
  const SNode& header = root.items[1];
  if (header.kind != SNode::Kind::List || header.items.size() != 2 ||
      !header.items[0].is_sym("problem"))
    fail("expected (problem NAME)", header);

  TaskSpec spec;
  spec.name = expect_symbol(header.items[1], "problem name");

  bool have_domain = false, have_goal = false;
  for (size_t i = 2; i < root.items.size(); ++i) {
    const SNode& block = root.items[i];
    if (block.kind != SNode::Kind::List || block.items.empty() ||
        block.items[0].kind != SNode::Kind::Symbol)
      fail("expected (:block ...)", block);
    const std::string& key = block.items[0].text;
    if (key == ":domain") {
      if (block.items.size() != 2) fail("expected (:domain NAME)", block);
      spec.domain = expect_symbol(block.items[1], "domain name");
      have_domain = true;
    } else if (key == ":language") {
      if (block.items.size() != 2 ||
          block.items[1].kind != SNode::Kind::String)
        fail("expected (:language \"...\")", block);
      spec.language = block.items[1].text;
    } else if (key == ":objects") {
      for (size_t j = 1; j < block.items.size(); ++j)
        spec.objects.push_back(parse_object(block.items[j]));
    } else if (key == ":moving_objects") {
      for (size_t j = 1; j < block.items.size(); ++j)
        spec.moving_objects.push_back(parse_motion(block.items[j]));
    } else if (key == ":init") {
      for (size_t j = 1; j < block.items.size(); ++j) {
        Expr e = parse_expr(block.items[j]);
        if (e.kind != Expr::Kind::Atom)
          fail(":init entries must be ground atoms", block.items[j]);
        spec.init.push_back(std::move(e));
      }
    } else if (key == ":goal") {
      if (block.items.size() != 2)
        fail("expected (:goal EXPR)", block);
      spec.goal = parse_expr(block.items[1]);
      have_goal = true;
    } else if (key == ":cost") {
      for (size_t j = 1; j < block.items.size(); ++j)
        spec.cost.push_back(parse_expr(block.items[j]));
    } else if (key == ":image_settings") {
      parse_image_settings(block, spec);
    } else if (key == ":noise") {
      parse_noise(block, spec);
    } else if (key == ":camera") {
      parse_camera(block, spec);
    } else if (key == ":random_color") {
      if (block.items.size() != 2)
        fail("expected (:random_color true|false)", block);
      std::string v = expect_symbol(block.items[1], "boolean");
      if (v == "true")
        spec.visual.random_color = true;
      else if (v == "false")
        spec.visual.random_color = false;
      else
        fail("expected true or false, got '" + v + "'", block.items[1]);
    } else {
      fail("unknown block keyword '" + key + "'", block.items[0]);
    }
  }
  if (!have_domain) fail("missing (:domain ...)", root);
  if (!have_goal) fail("missing (:goal ...)", root);
  return spec;
}

namespace {

bool eq(double a, double b) { return a == b; }

}  // namespace

bool structural_equal(const Arg& a, const Arg& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Arg::Kind::Name:
      return a.name == b.name;
    case Arg::Kind::Number:
      return eq(a.number, b.number);
    case Arg::Kind::NumberList:
      return a.list == b.list;
  }
  return false;
}

bool structural_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Expr::Kind::Atom) {
    if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
    for (size_t i = 0; i < a.args.size(); ++i)
      if (!structural_equal(a.args[i], b.args[i])) return false;
    return true;
  }
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!structural_equal(a.children[i], b.children[i])) return false;
  return true;
}

namespace {

bool parts_equal(const PartDecl& a, const PartDecl& b) {
  return a.index == b.index && a.shape == b.shape && eq(a.radius, b.radius) &&
         a.half_extents == b.half_extents && a.offset == b.offset;
}

bool objects_equal(const ObjectDecl& a, const ObjectDecl& b) {
  if (a.name != b.name || a.category != b.category ||
      a.parts.size() != b.parts.size())
    return false;
  for (size_t i = 0; i < a.parts.size(); ++i)
    if (!parts_equal(a.parts[i], b.parts[i])) return false;
  return true;
}

bool motion_equal(const MotionSpec& a, const MotionSpec& b) {
  if (a.object != b.object || a.type != b.type || a.period != b.period ||
      !eq(a.travel_dist, b.travel_dist) || a.direction != b.direction ||
      a.center != b.center || !eq(a.initial_speed, b.initial_speed) ||
      a.gravity != b.gravity || a.waypoints.size() != b.waypoints.size())
    return false;
  for (size_t i = 0; i < a.waypoints.size(); ++i)
    if (a.waypoints[i].position != b.waypoints[i].position ||
        a.waypoints[i].facing_dir != b.waypoints[i].facing_dir)
      return false;
  return true;
}

bool cameras_equal(const CameraDecl& a, const CameraDecl& b) {
  return a.name == b.name && a.offset == b.offset;
}

}  // namespace

bool structural_equal(const TaskSpec& a, const TaskSpec& b) {
  if (a.name != b.name || a.domain != b.domain || a.language != b.language)
    return false;
  if (a.objects.size() != b.objects.size() ||
      a.moving_objects.size() != b.moving_objects.size() ||
      a.init.size() != b.init.size() || a.cost.size() != b.cost.size() ||
      a.cameras.size() != b.cameras.size())
    return false;
  for (size_t i = 0; i < a.objects.size(); ++i)
    if (!objects_equal(a.objects[i], b.objects[i])) return false;
  for (size_t i = 0; i < a.moving_objects.size(); ++i)
    if (!motion_equal(a.moving_objects[i], b.moving_objects[i])) return false;
  for (size_t i = 0; i < a.init.size(); ++i)
    if (!structural_equal(a.init[i], b.init[i])) return false;
  if (!structural_equal(a.goal, b.goal)) return false;
  for (size_t i = 0; i < a.cost.size(); ++i)
    if (!structural_equal(a.cost[i], b.cost[i])) return false;
  if (!(a.visual == b.visual)) return false;
  for (size_t i = 0; i < a.cameras.size(); ++i)
    if (!cameras_equal(a.cameras[i], b.cameras[i])) return false;
  return true;
}

}  // namespace cbddl
