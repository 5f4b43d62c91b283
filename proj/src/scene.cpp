#include "cbddl/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cbddl/safety.hpp"

namespace cbddl {

namespace {

// Touching counts as contact; resting stacks sit at zero gap.
constexpr double kContactEps = 1e-6;

}  // namespace

std::array<double, 7> Action::to_array() const {
  Vec3 r = rotation.to_rotvec();
  return {translation.x, translation.y, translation.z,
          r.x,           r.y,           r.z,
          aperture_delta};
}

Action Action::from_array(const std::array<double, 7>& a) {
  Action act;
  act.translation = {a[0], a[1], a[2]};
  act.rotation = Quat::from_rotvec({a[3], a[4], a[5]});
  act.aperture_delta = a[6];
  return act;
}

SceneModel::SceneModel(const TaskSpec& spec, RunParams params)
    : init_(spec.init),
      goal_(spec.goal),
      cost_(spec.cost),
      params_(params) {
  for (const auto& o : spec.objects) {
    BodyModel b;
    b.name = o.name;
    b.category = o.category;
    b.region = o.is_region();
    b.parts = o.parts;
    std::sort(b.parts.begin(), b.parts.end(),
              [](const PartDecl& x, const PartDecl& y) {
                return x.index < y.index;
              });
    bodies_.push_back(std::move(b));
  }
  movers_ = spec.moving_objects;
}

const BodyModel* SceneModel::find_body(const std::string& name) const {
  for (const auto& b : bodies_)
    if (b.name == name) return &b;
  return nullptr;
}

const MotionSpec* SceneModel::find_mover(const std::string& name) const {
  for (const auto& m : movers_)
    if (m.object == name) return &m;
  return nullptr;
}

WorldPart SceneModel::world_part(const BodyModel& body, const Pose& pose,
                                 size_t part_index) const {
  const PartDecl& p = body.parts[part_index];
  Pose world = compose(pose, {p.offset, Quat::identity()});
  if (p.shape == PartDecl::Shape::Sphere)
    return WorldPart::sphere(world.position, p.radius);
  return WorldPart::box(world, p.half_extents);
}

std::array<WorldPart, 2> SceneModel::gripper_parts(const Pose& gripper,
                                                   double aperture) const {
  double span = aperture / 2.0 + params_.finger_radius;
  Vec3 left = transform_point(gripper, {0.0, span, 0.0});
  Vec3 right = transform_point(gripper, {0.0, -span, 0.0});
  return {WorldPart::sphere(left, params_.finger_radius),
          WorldPart::sphere(right, params_.finger_radius)};
}

namespace {

double part_bottom_z(const WorldPart& p) {
  Vec3 lo, hi;
  part_aabb(p, lo, hi);
  return lo.z;
}

double body_bottom_z(const SceneModel& model, const BodyModel& body,
                     const Pose& pose) {
  double z = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < body.parts.size(); ++i)
    z = std::min(z, part_bottom_z(model.world_part(body, pose, i)));
  return z;
}

double body_top_z(const SceneModel& model, const BodyModel& body,
                  const Pose& pose) {
  double z = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < body.parts.size(); ++i) {
    Vec3 lo, hi;
    part_aabb(model.world_part(body, pose, i), lo, hi);
    z = std::max(z, hi.z);
  }
  return z;
}

void compute_contacts(const SceneModel& model, SceneState& state) {
  state.contacts.clear();
  const auto& bodies = model.bodies();
  double k = model.params().penalty_stiffness;
  auto add_pair = [&](const std::string& na, int pa, const std::string& nb,
                      int pb, const PairSeparation& sep) {
    if (sep.distance > kContactEps) return;
    state.contacts.push_back({na, nb, pa, pb, sep.depth, k * sep.depth});
  };
  for (size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].region) continue;
    const Pose& pi = state.objects.at(bodies[i].name).pose;
    for (size_t j = i + 1; j < bodies.size(); ++j) {
      if (bodies[j].region) continue;
      const Pose& pj = state.objects.at(bodies[j].name).pose;
      for (size_t a = 0; a < bodies[i].parts.size(); ++a) {
        WorldPart wa = model.world_part(bodies[i], pi, a);
        for (size_t b = 0; b < bodies[j].parts.size(); ++b) {
          WorldPart wb = model.world_part(bodies[j], pj, b);
          add_pair(bodies[i].name, static_cast<int>(a), bodies[j].name,
                   static_cast<int>(b), part_separation(wa, wb));
        }
      }
    }
    // Gripper fingers against every physical body.
    auto fingers = model.gripper_parts(state.gripper, state.aperture);
    for (size_t a = 0; a < bodies[i].parts.size(); ++a) {
      WorldPart wa = model.world_part(bodies[i], pi, a);
      for (int f = 0; f < 2; ++f)
        add_pair("gripper0", f, bodies[i].name, static_cast<int>(a),
                 part_separation(fingers[f], wa));
    }
  }
  for (const auto& c : state.contacts) {
    if (c.a != kGripperName) state.objects.at(c.a).collided = true;
    if (c.b != kGripperName) state.objects.at(c.b).collided = true;
  }
}

double part_width(const PartDecl& p) {
  if (p.shape == PartDecl::Shape::Sphere) return 2.0 * p.radius;
  return 2.0 * std::min({p.half_extents.x, p.half_extents.y,
                         p.half_extents.z});
}

}  // namespace

SceneState load_scene(const SceneModel& model, uint64_t /*seed*/) {
  SceneState state;
  state.gripper = {model.params().gripper_start, Quat::identity()};
  state.aperture = 0.08;
  for (const auto& b : model.bodies()) state.objects[b.name] = BodyState{};

  for (const Expr& atom : model.init_) {
    auto body_of = [&](const Arg& a) -> BodyState& {
      if (a.kind != Arg::Kind::Name || !state.objects.count(a.name))
        throw SceneError(":init references unknown object '" + a.name + "'");
      return state.objects.at(a.name);
    };
    if (atom.pred == "At") {
      if (atom.args.size() != 2 || atom.args[1].list.size() != 3)
        throw SceneError("(At obj (x y z)) expected");
      body_of(atom.args[0]).pose.position = {
          atom.args[1].list[0], atom.args[1].list[1], atom.args[1].list[2]};
    } else if (atom.pred == "OnTop") {
      if (atom.args.size() != 2) throw SceneError("(OnTop a b) expected");
      BodyState& a = body_of(atom.args[0]);
      BodyState& s = body_of(atom.args[1]);
      const BodyModel* ab = model.find_body(atom.args[0].name);
      const BodyModel* sb = model.find_body(atom.args[1].name);
      double top = body_top_z(model, *sb, s.pose);
      double bottom_off =
          body_bottom_z(model, *ab, a.pose) - a.pose.position.z;
      a.pose.position.x = s.pose.position.x;
      a.pose.position.y = s.pose.position.y;
      a.pose.position.z = top - bottom_off;
    } else if (atom.pred == "Lit") {
      body_of(atom.args.at(0)).lit = true;
    } else if (atom.pred == "TurnedOn") {
      body_of(atom.args.at(0)).turned_on = true;
    } else {
      throw SceneError("unsupported :init atom '" + atom.pred + "'");
    }
  }

  for (const auto& b : model.bodies()) {
    BodyState& st = state.objects.at(b.name);
    st.initial_bottom_z = body_bottom_z(model, b, st.pose);
    st.initial_orientation = st.pose.orientation;
    if (model.find_mover(b.name)) st.motion_p0 = st.pose;
  }
  compute_contacts(model, state);
  return state;
}

StepResult step(const SceneModel& model, const SceneState& state,
                const Action& action) {
  const RunParams& p = model.params();
  SceneState next = state;
  next.step = state.step + 1;

  for (const auto& b : model.bodies()) {
    const MotionSpec* spec = model.find_mover(b.name);
    if (!spec) continue;
    BodyState& body = next.objects.at(b.name);
    if (body.frozen) continue;
    if (next.grasped && *next.grasped == b.name) continue;
    MotionGenerator gen{*spec, body.motion_p0};
    body.pose = gen.pose_at(next.step, p.dt);
  }

  Vec3 dp = action.translation;
  double n = dp.norm();
  if (n > p.max_step_translation) dp = dp * (p.max_step_translation / n);
  next.gripper.position += dp;
  next.gripper.orientation =
      (action.rotation * next.gripper.orientation).normalized();
  next.aperture =
      std::clamp(next.aperture + action.aperture_delta, 0.0, p.max_aperture);

  if (next.grasped) {
    if (next.aperture >= next.grasp_width) {
      next.grasped.reset();
    } else {
      next.objects.at(*next.grasped).pose =
          compose(next.gripper, next.grasp_rel);
    }
  } else if (action.aperture_delta < 0.0) {
    // Closing: attach the nearest part if it is inside grasp range and
    // narrower than the aperture.
    auto fingers = model.gripper_parts(next.gripper, next.aperture);
    double best = std::numeric_limits<double>::infinity();
    const BodyModel* best_body = nullptr;
    size_t best_part = 0;
    for (const auto& b : model.bodies()) {
      if (b.region) continue;
      const Pose& pose = next.objects.at(b.name).pose;
      for (size_t i = 0; i < b.parts.size(); ++i) {
        WorldPart wp = model.world_part(b, pose, i);
        double d = std::min(part_separation(fingers[0], wp).distance,
                            part_separation(fingers[1], wp).distance);
        if (d < best) {
          best = d;
          best_body = &b;
          best_part = i;
        }
      }
    }
    if (best_body && best <= p.grasp_range &&
        next.aperture < part_width(best_body->parts[best_part])) {
      next.grasped = best_body->name;
      next.grasp_width = part_width(best_body->parts[best_part]);
      next.grasp_rel =
          compose(inverse(next.gripper), next.objects.at(best_body->name).pose);
    }
  }

  compute_contacts(model, next);
  std::vector<ContactEvent> events = next.contacts;
  return {std::move(next), std::move(events)};
}

double distance(const SceneModel& model, const SceneState& state,
                const std::string& a, const std::string& b) {
  auto parts_of = [&](const std::string& name) -> std::vector<WorldPart> {
    if (name == kGripperName) {
      auto fingers = model.gripper_parts(state.gripper, state.aperture);
      return {fingers[0], fingers[1]};
    }
    const BodyModel* body = model.find_body(name);
    if (!body || !state.objects.count(name)) throw UnknownNameError(name);
    const Pose& pose = state.objects.at(name).pose;
    std::vector<WorldPart> out;
    for (size_t i = 0; i < body->parts.size(); ++i)
      out.push_back(model.world_part(*body, pose, i));
    return out;
  };
  double best = std::numeric_limits<double>::infinity();
  for (const auto& wa : parts_of(a))
    for (const auto& wb : parts_of(b))
      best = std::min(best, part_separation(wa, wb).distance);
  return best;
}

SceneState freeze_object(const SceneModel& model, SceneState state,
                         const std::string& name) {
  if (!model.find_mover(name))
    throw UnknownNameError(name, "is not a moving object");
  state.objects.at(name).frozen = true;
  return state;
}

void refresh_contacts(const SceneModel& model, SceneState& state) {
  compute_contacts(model, state);
}

Trajectory replay(const TaskSpec& spec, const std::vector<Action>& actions,
                  uint64_t seed, RunParams params) {
  SceneModel model(spec, params);
  std::vector<CostTerm> terms = flatten_cost_terms(spec.cost);
  SceneState state = load_scene(model, seed);

  auto freeze_violations = [&](SceneState& s) {
    for (const auto& term : terms) {
      if (term.kind != TermKind::Instantaneous) continue;
      if (!eval_expr(term.expr, model, s)) continue;
      for (const std::string& name : violating_movers(term.expr, model, s))
        if (!s.objects.at(name).frozen) s = freeze_object(model, s, name);
    }
  };
  freeze_violations(state);

  Trajectory traj;
  int limit = params.max_steps;
  for (const Action& a : actions) {
    if (state.step >= limit) break;
    traj.records.push_back({state, a});
    state = step(model, state, a).state;
    freeze_violations(state);
  }
  traj.records.push_back({state, Action{}});
  return traj;
}

}  // namespace cbddl
