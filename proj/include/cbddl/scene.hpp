// Episode state: body placement, kinematically driven movers, analytic
// contacts with a penalty-stiffness force proxy, gripper actions and
// grasping. No dynamics; everything is a deterministic function of
// (spec, actions, seed).
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbddl/ast.hpp"
#include "cbddl/kinematics.hpp"
#include "cbddl/shapes.hpp"

namespace cbddl {

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownNameError : public SceneError {
 public:
  explicit UnknownNameError(const std::string& name)
      : SceneError("unknown name '" + name + "'") {}
  UnknownNameError(const std::string& name, const std::string& why)
      : SceneError("'" + name + "' " + why) {}
};

struct RunParams {
  double dt = kDefaultDt;
  double penalty_stiffness = 1000.0;  // N/m, force = k * depth
  int max_steps = 500;
  double grasp_range = 0.005;     // nearest-part threshold, meters
  double finger_radius = 0.008;   // gripper finger sphere
  double max_aperture = 0.1;
  double max_step_translation = 0.05;
  Vec3 gripper_start{0.0, 0.0, 0.4};
};

// Per-step agent command: gripper deltas. Translation magnitude is
// clamped to max_step_translation.
struct Action {
  Vec3 translation;
  Quat rotation = Quat::identity();
  double aperture_delta = 0.0;

  // 7-number wire form: [dx dy dz rx ry rz daperture], rotation as a
  // rotation vector.
  std::array<double, 7> to_array() const;
  static Action from_array(const std::array<double, 7>& a);
};

struct ContactEvent {
  std::string a, b;  // body names; the gripper appears as "gripper0"
  int part_a = 0, part_b = 0;
  double depth = 0.0;
  double force = 0.0;
};

struct BodyState {
  Pose pose;
  bool frozen = false;
  bool collided = false;  // sticky: any contact at any step so far
  bool lit = false;
  bool turned_on = false;
  Pose motion_p0;              // movers: pose captured at episode start
  double initial_bottom_z = 0.0;
  Quat initial_orientation;
};

struct SceneState {
  int step = 0;
  std::map<std::string, BodyState> objects;
  Pose gripper;
  double aperture = 0.08;
  std::optional<std::string> grasped;
  Pose grasp_rel;            // grasped object's pose in the gripper frame
  double grasp_width = 0.0;  // release threshold captured at attach
  std::vector<ContactEvent> contacts;  // contacts at this state
};

struct BodyModel {
  std::string name;
  std::string category;
  bool region = false;  // virtual volume: no contacts, no grasping
  std::vector<PartDecl> parts;
};

// Immutable scene description derived from a validated TaskSpec.
class SceneModel {
 public:
  SceneModel(const TaskSpec& spec, RunParams params = {});

  const std::vector<BodyModel>& bodies() const { return bodies_; }
  const BodyModel* find_body(const std::string& name) const;
  const MotionSpec* find_mover(const std::string& name) const;
  const RunParams& params() const { return params_; }
  const std::vector<Expr>& cost_exprs() const { return cost_; }
  const Expr& goal() const { return goal_; }

  WorldPart world_part(const BodyModel& body, const Pose& pose,
                       size_t part_index) const;
  // Gripper finger spheres for the given gripper pose and aperture.
  std::array<WorldPart, 2> gripper_parts(const Pose& gripper,
                                         double aperture) const;

 private:
  std::vector<BodyModel> bodies_;
  std::vector<MotionSpec> movers_;
  std::vector<Expr> init_;
  Expr goal_;
  std::vector<Expr> cost_;
  RunParams params_;

  friend SceneState load_scene(const SceneModel&, uint64_t);
};

// Places bodies from :init, binds motion generators (capturing p0) and
// computes step-0 contacts. Throws SceneError on unknown references.
SceneState load_scene(const SceneModel& model, uint64_t seed);

struct StepResult {
  SceneState state;
  std::vector<ContactEvent> events;
};

StepResult step(const SceneModel& model, const SceneState& state,
                const Action& action);

// Minimum surface-to-surface distance over all part pairs; 0 when
// penetrating. Either name may be "gripper0".
double distance(const SceneModel& model, const SceneState& state,
                const std::string& a, const std::string& b);

// Detaches the motion generator; the pose is held for the rest of the
// episode. Idempotent. Throws UnknownNameError for non-movers.
SceneState freeze_object(const SceneModel& model, SceneState state,
                         const std::string& name);

// Recompute the contact set for externally constructed states.
void refresh_contacts(const SceneModel& model, SceneState& state);

struct TrajectoryRecord {
  SceneState state;
  Action action;  // action taken from this state; no-op on the last record
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  size_t length() const { return records.size(); }
  const SceneState& final_state() const { return records.back().state; }
};

// Runs load_scene then step for each action (or until max_steps),
// freezing a moving object the first time a violated instantaneous cost
// term involves it. Returns initial snapshot + one record per step.
Trajectory replay(const TaskSpec& spec, const std::vector<Action>& actions,
                  uint64_t seed, RunParams params = {});

}  // namespace cbddl
