#include "cbddl/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cbddl/predicates.hpp"
#include "cbddl/printer.hpp"

namespace cbddl {

std::string render_diagnostic(const Diagnostic& d, const std::string& file) {
  const char* sev = d.severity == Diagnostic::Severity::Error ? "error" : "warning";
  return file + ":" + std::to_string(d.pos.line) + ":" +
         std::to_string(d.pos.col) + ": " + sev + ": " + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Diagnostic::Severity::Error;
  });
}

namespace {

class Validator {
 public:
  explicit Validator(const TaskSpec& spec) : spec_(spec) {}

  std::vector<Diagnostic> run() {
    check_objects();
    check_movers();
    check_init();
    check_expr(spec_.goal, Context::Goal);
    for (const auto& term : spec_.cost) check_cost_term(term);
    check_visual();
    return std::move(diags_);
  }

 private:
  enum class Context { Init, Goal, Cost };

  void error(std::string msg, SourcePos pos) {
    diags_.push_back({Diagnostic::Severity::Error, std::move(msg), pos});
  }
  void warning(std::string msg, SourcePos pos) {
    diags_.push_back({Diagnostic::Severity::Warning, std::move(msg), pos});
  }

  void check_objects() {
    std::set<std::string> seen;
    for (const auto& o : spec_.objects) {
      if (o.name == kGripperName)
        error("'" + kGripperName + "' is a reserved body name", o.pos);
      if (!seen.insert(o.name).second)
        error("duplicate object name '" + o.name + "'", o.pos);
      if (o.parts.empty()) {
        error("object '" + o.name + "' declares no parts", o.pos);
        continue;
      }
      std::set<int> indices;
      for (const auto& p : o.parts) {
        if (!indices.insert(p.index).second)
          error("duplicate part index " + std::to_string(p.index) + " in '" +
                    o.name + "'",
                p.pos);
        if (p.shape == PartDecl::Shape::Sphere && p.radius <= 0.0)
          error("sphere radius must be positive", p.pos);
        if (p.shape == PartDecl::Shape::Box &&
            (p.half_extents.x <= 0.0 || p.half_extents.y <= 0.0 ||
             p.half_extents.z <= 0.0))
          error("box half extents must be positive", p.pos);
      }
      for (int i = 0; i < static_cast<int>(o.parts.size()); ++i)
        if (!indices.count(i)) {
          error("part indices of '" + o.name +
                    "' must be contiguous from 0 (missing " +
                    std::to_string(i) + ")",
                o.pos);
          break;
        }
    }
  }

  void check_movers() {
    std::set<std::string> seen;
    for (const auto& m : spec_.moving_objects) {
      if (!seen.insert(m.object).second)
        error("duplicate moving object '" + m.object + "'", m.pos);
      if (!spec_.find_object(m.object))
        error("unknown object '" + m.object + "' in :moving_objects", m.pos);
      switch (m.type) {
        case MotionSpec::Type::Linear:
          require_period(m);
          if (m.travel_dist <= 0.0)
            error("travel distance must be positive", m.pos);
          if (m.direction == Vec3{})
            error("motion direction must be non-zero", m.pos);
          break;
        case MotionSpec::Type::Circular:
          require_period(m);
          break;
        case MotionSpec::Type::Waypoints:
          if (m.waypoints.size() < 2)
            error("waypoint motion needs at least 2 waypoints", m.pos);
          if (m.period && *m.period < 2) error("period must be >= 2", m.pos);
          break;
        case MotionSpec::Type::Projectile:
          if (m.initial_speed < 0.0)
            error("initial speed must be non-negative", m.pos);
          if (m.initial_speed > 0.0 && m.direction == Vec3{})
            error("motion direction must be non-zero", m.pos);
          break;
      }
      if (!m.direction.finite() || !m.center.finite() || !m.gravity.finite())
        error("motion parameters must be finite", m.pos);
    }
  }

  void require_period(const MotionSpec& m) {
    if (!m.period)
      error("motion of '" + m.object + "' requires (:motion_period ...)", m.pos);
    else if (*m.period < 2)
      error("period must be >= 2", m.pos);
  }

  void check_init() {
    for (const auto& atom : spec_.init) {
      if (atom.kind != Expr::Kind::Atom) {
        error(":init entries must be atoms", atom.pos);
        continue;
      }
      const PredicateSchema* schema = find_predicate(atom.pred);
      if (!schema) {
        error("unknown predicate '" + atom.pred + "'", atom.pos);
        continue;
      }
      if (!schema->init_allowed) {
        error("predicate '" + atom.pred + "' is not allowed in :init",
              atom.pos);
        continue;
      }
      check_atom_args(atom, *schema);
    }
  }

  void check_cost_term(const Expr& term) {
    // A top-level And wrapper denotes a list of independent terms.
    if (term.kind == Expr::Kind::And) {
      for (const auto& child : term.children) check_cost_term(child);
      return;
    }
    check_expr(term, Context::Cost);
    // Each term must be purely instantaneous or purely terminal.
    bool has_inst = false, has_term = false;
    classify(term, has_inst, has_term);
    if (has_inst && has_term)
      error("cost term mixes instantaneous and terminal predicates",
            term.pos);
  }

  void classify(const Expr& e, bool& has_inst, bool& has_term) {
    if (e.kind == Expr::Kind::Atom) {
      const PredicateSchema* schema = find_predicate(e.pred);
      if (!schema) return;
      if (schema->cls == PredicateClass::Instantaneous) has_inst = true;
      if (schema->cls == PredicateClass::Terminal) has_term = true;
      return;
    }
    for (const auto& c : e.children) classify(c, has_inst, has_term);
  }

  void check_expr(const Expr& e, Context ctx) {
    if (e.kind != Expr::Kind::Atom) {
      for (const auto& c : e.children) check_expr(c, ctx);
      return;
    }
    const PredicateSchema* schema = find_predicate(e.pred);
    if (!schema) {
      error("unknown predicate '" + e.pred + "'", e.pos);
      return;
    }
    if (ctx == Context::Goal && schema->cls != PredicateClass::Goal) {
      error("predicate '" + e.pred + "' is not allowed in :goal", e.pos);
      return;
    }
    if (ctx == Context::Cost && schema->cls != PredicateClass::Instantaneous &&
        schema->cls != PredicateClass::Terminal) {
      error("predicate '" + e.pred + "' is not allowed in :cost", e.pos);
      return;
    }
    check_atom_args(e, *schema);
    warn_vacuous_region_use(e, *schema);
  }

  // Regions are virtual volumes: they support distance and containment
  // but never produce contacts, so contact-dependent predicates over
  // them can never trigger.
  void warn_vacuous_region_use(const Expr& atom,
                               const PredicateSchema& schema) {
    static const std::set<std::string> contact_dependent = {
        "InContact",           "InContactPart", "CheckForce",
        "CheckGripperContact", "CheckGripperContactPart",
        "Collide",             "NotOn",         "OnTop"};
    if (!contact_dependent.count(schema.name)) return;
    for (const Arg& a : atom.args) {
      if (a.kind != Arg::Kind::Name) continue;
      const ObjectDecl* obj = spec_.find_object(a.name);
      if (obj && obj->is_region())
        warning("'" + a.name + "' is a region and produces no contacts; '" +
                    atom.pred + "' can never trigger",
                atom.pos);
    }
  }

  void check_atom_args(const Expr& atom, const PredicateSchema& schema) {
    if (atom.args.size() != schema.args.size()) {
      error("'" + atom.pred + "' expects " +
                std::to_string(schema.args.size()) + " arguments, got " +
                std::to_string(atom.args.size()),
            atom.pos);
      return;
    }
    for (size_t i = 0; i < schema.args.size(); ++i) {
      const Arg& a = atom.args[i];
      switch (schema.args[i]) {
        case ArgKind::Object: {
          if (a.kind != Arg::Kind::Name) {
            error("argument " + std::to_string(i + 1) + " of '" + atom.pred +
                      "' must be an object name",
                  a.pos);
            break;
          }
          if (a.name == kGripperName) break;
          if (!spec_.find_object(a.name))
            error("unknown object '" + a.name + "'", a.pos);
          break;
        }
        case ArgKind::Ids: {
          if (a.kind != Arg::Kind::NumberList || a.list.empty()) {
            error("argument " + std::to_string(i + 1) + " of '" + atom.pred +
                      "' must be a part-index list",
                  a.pos);
            break;
          }
          const ObjectDecl* owner = nullptr;
          int owner_idx = schema.id_owner[i];
          if (owner_idx >= 0 &&
              atom.args[owner_idx].kind == Arg::Kind::Name)
            owner = spec_.find_object(atom.args[owner_idx].name);
          for (double v : a.list) {
            if (v != std::floor(v) || v < 0.0) {
              error("part indices must be non-negative integers", a.pos);
              continue;
            }
            if (owner && static_cast<size_t>(v) >= owner->parts.size())
              error("part index " + format_number(v) + " out of range for '" +
                        owner->name + "'",
                    a.pos);
          }
          break;
        }
        case ArgKind::Number:
          if (a.kind != Arg::Kind::Number)
            error("argument " + std::to_string(i + 1) + " of '" + atom.pred +
                      "' must be a number",
                  a.pos);
          break;
        case ArgKind::Vector3:
          if (a.kind != Arg::Kind::NumberList || a.list.size() != 3)
            error("argument " + std::to_string(i + 1) + " of '" + atom.pred +
                      "' must be (x y z)",
                  a.pos);
          break;
      }
    }
  }

  void check_visual() {
    if (spec_.visual.image && spec_.visual.image->temperature <= 0.0)
      error("temperature must be positive", {});
    if (spec_.visual.noise) {
      const auto& n = *spec_.visual.noise;
      if (n.mode == NoiseSpec::Mode::Gaussian && n.var < 0.0)
        error("noise variance must be non-negative", {});
      if (n.mode == NoiseSpec::Mode::SaltPepper &&
          (n.prob < 0.0 || n.prob > 1.0))
        error("salt_pepper probability must be in [0, 1]", {});
    }
    std::set<std::string> names;
    for (const auto& c : spec_.cameras)
      if (!names.insert(c.name).second)
        error("duplicate camera '" + c.name + "'", c.pos);
  }

  const TaskSpec& spec_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate(const TaskSpec& spec) {
  return Validator(spec).run();
}

}  // namespace cbddl
