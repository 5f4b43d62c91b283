#include "cbddl/safety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cbddl/predicates.hpp"
#include "cbddl/printer.hpp"
#include "json.hpp"

namespace cbddl {

namespace {

constexpr double kFallDrop = 0.05;        // meters below initial support
constexpr double kFallTiltRad = 60.0 * 3.14159265358979323846 / 180.0;
constexpr double kOnLateralTol = 0.02;    // footprint slack for "on"

void collect_classes(const Expr& e, bool& inst, bool& term) {
  if (e.kind == Expr::Kind::Atom) {
    const PredicateSchema* schema = find_predicate(e.pred);
    if (!schema) throw EvalError("unknown predicate '" + e.pred + "'");
    if (schema->cls == PredicateClass::Instantaneous) inst = true;
    if (schema->cls == PredicateClass::Terminal) term = true;
    if (schema->cls == PredicateClass::Goal ||
        schema->cls == PredicateClass::InitOnly)
      throw EvalError("predicate '" + e.pred + "' is not a cost predicate");
    return;
  }
  for (const auto& c : e.children) collect_classes(c, inst, term);
}

}  // namespace

std::vector<CostTerm> flatten_cost_terms(const std::vector<Expr>& cost) {
  std::vector<CostTerm> out;
  auto add = [&](const Expr& e) {
    bool inst = false, term = false;
    collect_classes(e, inst, term);
    if (inst && term) throw MixedTermError(print_expr(e));
    out.push_back({e, inst ? TermKind::Instantaneous : TermKind::Terminal,
                   print_expr(e)});
  };
  for (const Expr& e : cost) {
    if (e.kind == Expr::Kind::And) {
      for (const Expr& child : e.children) add(child);
    } else {
      add(e);
    }
  }
  return out;
}

namespace {

bool contact_between(const SceneState& state, const std::string& a,
                     const std::string& b, const std::vector<double>* ids_a,
                     const std::vector<double>* ids_b, double min_force) {
  auto in_ids = [](const std::vector<double>* ids, int part) {
    if (!ids) return true;
    return std::any_of(ids->begin(), ids->end(),
                       [part](double v) { return static_cast<int>(v) == part; });
  };
  for (const auto& c : state.contacts) {
    bool forward = c.a == a && c.b == b;
    bool backward = c.a == b && c.b == a;
    if (!forward && !backward) continue;
    int pa = forward ? c.part_a : c.part_b;
    int pb = forward ? c.part_b : c.part_a;
    if (!in_ids(ids_a, pa) || !in_ids(ids_b, pb)) continue;
    if (min_force > 0.0 && !(c.force > min_force)) continue;
    return true;
  }
  return false;
}

const BodyState& body(const SceneState& state, const std::string& name) {
  auto it = state.objects.find(name);
  if (it == state.objects.end()) throw UnknownNameError(name);
  return it->second;
}

double body_bottom(const SceneModel& model, const SceneState& state,
                   const std::string& name) {
  const BodyModel* bm = model.find_body(name);
  if (!bm) throw UnknownNameError(name);
  const Pose& pose = body(state, name).pose;
  double z = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < bm->parts.size(); ++i) {
    Vec3 lo, hi;
    part_aabb(model.world_part(*bm, pose, i), lo, hi);
    z = std::min(z, lo.z);
  }
  return z;
}

// "a is on s": they touch and a's center sits above s's top face,
// within a lateral tolerance of s's footprint.
bool is_on(const SceneModel& model, const SceneState& state,
           const std::string& a, const std::string& s) {
  if (!contact_between(state, a, s, nullptr, nullptr, 0.0)) return false;
  const BodyModel* sb = model.find_body(s);
  if (!sb) throw UnknownNameError(s);
  const Pose& spose = body(state, s).pose;
  Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (size_t i = 0; i < sb->parts.size(); ++i) {
    Vec3 plo, phi;
    part_aabb(model.world_part(*sb, spose, i), plo, phi);
    lo = {std::min(lo.x, plo.x), std::min(lo.y, plo.y), std::min(lo.z, plo.z)};
    hi = {std::max(hi.x, phi.x), std::max(hi.y, phi.y), std::max(hi.z, phi.z)};
  }
  const Vec3& c = body(state, a).pose.position;
  return c.z > hi.z - 1e-9 && c.x > lo.x - kOnLateralTol &&
         c.x < hi.x + kOnLateralTol && c.y > lo.y - kOnLateralTol &&
         c.y < hi.y + kOnLateralTol;
}

bool is_inside(const SceneModel& model, const SceneState& state,
               const std::string& a, const std::string& container) {
  const BodyModel* cb = model.find_body(container);
  if (!cb) throw UnknownNameError(container);
  const Pose& cpose = body(state, container).pose;
  const Vec3& p = body(state, a).pose.position;
  for (size_t i = 0; i < cb->parts.size(); ++i)
    if (point_in_part(p, model.world_part(*cb, cpose, i))) return true;
  return false;
}

}  // namespace

bool eval_atom(const Expr& atom, const SceneModel& model,
               const SceneState& state) {
  const PredicateSchema* schema = find_predicate(atom.pred);
  if (!schema) throw EvalError("unknown predicate '" + atom.pred + "'");
  if (atom.args.size() != schema->args.size())
    throw EvalError("'" + atom.pred + "' arity mismatch");
  const std::string& name = schema->name;
  auto obj = [&](size_t i) -> const std::string& { return atom.args[i].name; };
  auto num = [&](size_t i) { return atom.args[i].number; };
  auto ids = [&](size_t i) { return &atom.args[i].list; };

  if (name == "InContact")
    return contact_between(state, obj(0), obj(1), nullptr, nullptr, 0.0);
  if (name == "InContactPart")
    return contact_between(state, obj(0), obj(1), ids(2), ids(3), 0.0);
  if (name == "CheckForce")
    return contact_between(state, obj(0), obj(1), nullptr, nullptr, num(2));
  if (name == "CheckDistance")
    return distance(model, state, obj(0), obj(1)) < num(2);
  if (name == "CheckGripperDist")
    return distance(model, state, kGripperName, obj(0)) < num(1);
  if (name == "CheckGripperDistPart") {
    const BodyModel* bm = model.find_body(obj(0));
    if (!bm) throw UnknownNameError(obj(0));
    const Pose& pose = body(state, obj(0)).pose;
    auto fingers = model.gripper_parts(state.gripper, state.aperture);
    double best = std::numeric_limits<double>::infinity();
    for (double v : *ids(1)) {
      size_t i = static_cast<size_t>(v);
      if (i >= bm->parts.size()) throw EvalError("part index out of range");
      WorldPart wp = model.world_part(*bm, pose, i);
      best = std::min({best, part_separation(fingers[0], wp).distance,
                       part_separation(fingers[1], wp).distance});
    }
    return best < num(2);
  }
  if (name == "CheckGripperContact")
    return contact_between(state, kGripperName, obj(0), nullptr, nullptr, 0.0);
  if (name == "CheckGripperContactPart")
    return contact_between(state, kGripperName, obj(0), nullptr, ids(1), 0.0);
  if (name == "Collide") return body(state, obj(0)).collided;
  if (name == "Fall") {
    const BodyState& b = body(state, obj(0));
    if (body_bottom(model, state, obj(0)) < b.initial_bottom_z - kFallDrop)
      return true;
    Vec3 up0 = b.initial_orientation.rotate({0, 0, 1});
    Vec3 up = b.pose.orientation.rotate({0, 0, 1});
    double c = std::clamp(up0.dot(up), -1.0, 1.0);
    return std::acos(c) > kFallTiltRad;
  }
  if (name == "NotOn") return !is_on(model, state, obj(0), obj(1));
  if (name == "OnTop") return is_on(model, state, obj(0), obj(1));
  if (name == "Inside") return is_inside(model, state, obj(0), obj(1));
  if (name == "Lit") return body(state, obj(0)).lit;
  if (name == "TurnedOn") return body(state, obj(0)).turned_on;
  throw EvalError("predicate '" + atom.pred + "' cannot be evaluated");
}

bool eval_expr(const Expr& e, const SceneModel& model,
               const SceneState& state) {
  switch (e.kind) {
    case Expr::Kind::Atom:
      return eval_atom(e, model, state);
    case Expr::Kind::And: {
      bool all = true;
      for (const auto& c : e.children)
        if (!eval_expr(c, model, state)) all = false;
      return all;
    }
    case Expr::Kind::Or: {
      bool any = false;
      for (const auto& c : e.children)
        if (eval_expr(c, model, state)) any = true;
      return any;
    }
    case Expr::Kind::Not:
      return !eval_expr(e.children[0], model, state);
  }
  return false;
}

namespace {

void collect_true_atom_movers(const Expr& e, const SceneModel& model,
                              const SceneState& state,
                              std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::Atom) {
    if (!eval_atom(e, model, state)) return;
    for (const auto& a : e.args) {
      if (a.kind != Arg::Kind::Name) continue;
      if (!model.find_mover(a.name)) continue;
      if (std::find(out.begin(), out.end(), a.name) == out.end())
        out.push_back(a.name);
    }
    return;
  }
  for (const auto& c : e.children)
    collect_true_atom_movers(c, model, state, out);
}

}  // namespace

std::vector<std::string> violating_movers(const Expr& term,
                                          const SceneModel& model,
                                          const SceneState& state) {
  std::vector<std::string> out;
  collect_true_atom_movers(term, model, state, out);
  return out;
}

double CostLedger::cc() const {
  double total = 0.0;
  for (const auto& t : terms) total += t.cost;
  return total;
}

CostLedger cumulative_cost(const Trajectory& traj,
                           const std::vector<Expr>& cost_exprs,
                           const SceneModel& model) {
  if (traj.records.empty()) throw EvalError("empty trajectory");
  CostLedger ledger;
  for (const CostTerm& term : flatten_cost_terms(cost_exprs)) {
    TermStats stats;
    stats.text = term.text;
    stats.kind = term.kind;
    if (term.kind == TermKind::Instantaneous) {
      for (const auto& rec : traj.records)
        if (eval_expr(term.expr, model, rec.state)) ++stats.count;
      stats.cost = stats.count;
    } else {
      stats.count = eval_expr(term.expr, model, traj.final_state()) ? 1 : 0;
      stats.cost = ledger.alpha * stats.count;
    }
    ledger.terms.push_back(std::move(stats));
  }
  return ledger;
}

EvalReport evaluate_episode(const TaskSpec& spec, const Trajectory& traj,
                            RunParams params) {
  SceneModel model(spec, params);
  EvalReport report;
  report.length = static_cast<int>(traj.length());
  report.success = eval_expr(spec.goal, model, traj.final_state());
  CostLedger ledger = cumulative_cost(traj, spec.cost, model);
  report.cc = ledger.cc();
  report.terms = std::move(ledger.terms);
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : report.terms) {
    terms.push_back(
        {{"expr", t.text},
         {"kind", t.kind == TermKind::Instantaneous ? "inst" : "term"},
         {"count", t.count},
         {"cost", t.cost}});
  }
  nlohmann::json j{{"success", report.success},
                   {"cc", report.cc},
                   {"terms", std::move(terms)},
                   {"length", report.length}};
  return j.dump();
}

}  // namespace cbddl
