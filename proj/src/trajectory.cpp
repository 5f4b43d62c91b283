#include "cbddl/trajectory.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cbddl {

namespace {

using nlohmann::json;

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }
json quat_to_json(const Quat& q) { return json::array({q.w, q.x, q.y, q.z}); }

Vec3 vec_from_json(const json& j) { return {j.at(0), j.at(1), j.at(2)}; }
Quat quat_from_json(const json& j) {
  return {j.at(0), j.at(1), j.at(2), j.at(3)};
}

json record_to_json(const TrajectoryRecord& rec) {
  const SceneState& s = rec.state;
  json objects = json::object();
  for (const auto& [name, body] : s.objects) {
    json o;
    o["pos"] = vec_to_json(body.pose.position);
    o["quat"] = quat_to_json(body.pose.orientation);
    o["frozen"] = body.frozen;
    o["collided"] = body.collided;
    o["lit"] = body.lit;
    o["on"] = body.turned_on;
    // Episode-start references, so terminal checks (Fall) evaluate the
    // same way on deserialized trajectories.
    o["ibz"] = body.initial_bottom_z;
    o["iquat"] = quat_to_json(body.initial_orientation);
    objects[name] = std::move(o);
  }
  json contacts = json::array();
  for (const auto& c : s.contacts) {
    contacts.push_back({{"a", c.a},
                        {"b", c.b},
                        {"pa", c.part_a},
                        {"pb", c.part_b},
                        {"depth", c.depth},
                        {"force", c.force}});
  }
  auto arr = rec.action.to_array();
  return json{{"step", s.step},
              {"gripper",
               {{"pos", vec_to_json(s.gripper.position)},
                {"quat", quat_to_json(s.gripper.orientation)},
                {"aperture", s.aperture}}},
              {"objects", std::move(objects)},
              {"action", json(arr)},
              {"contacts", std::move(contacts)}};
}

TrajectoryRecord record_from_json(const json& j) {
  TrajectoryRecord rec;
  SceneState& s = rec.state;
  s.step = j.at("step");
  const json& g = j.at("gripper");
  s.gripper.position = vec_from_json(g.at("pos"));
  s.gripper.orientation = quat_from_json(g.at("quat"));
  s.aperture = g.value("aperture", 0.0);
  for (const auto& [name, o] : j.at("objects").items()) {
    BodyState body;
    body.pose.position = vec_from_json(o.at("pos"));
    body.pose.orientation = quat_from_json(o.at("quat"));
    body.frozen = o.value("frozen", false);
    body.collided = o.value("collided", false);
    body.lit = o.value("lit", false);
    body.turned_on = o.value("on", false);
    body.initial_bottom_z = o.value("ibz", 0.0);
    if (o.contains("iquat")) body.initial_orientation = quat_from_json(o["iquat"]);
    s.objects[name] = body;
  }
  if (j.contains("contacts")) {
    for (const auto& c : j.at("contacts")) {
      s.contacts.push_back({c.at("a"), c.at("b"), c.at("pa"), c.at("pb"),
                            c.at("depth"), c.at("force")});
    }
  }
  std::array<double, 7> arr{};
  const json& a = j.at("action");
  for (size_t i = 0; i < 7 && i < a.size(); ++i) arr[i] = a.at(i);
  rec.action = Action::from_array(arr);
  return rec;
}

}  // namespace

std::string trajectory_to_jsonl(const Trajectory& traj) {
  std::ostringstream os;
  for (const auto& rec : traj.records) os << record_to_json(rec).dump() << "\n";
  return os.str();
}

Trajectory trajectory_from_jsonl(const std::string& text) {
  Trajectory traj;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    traj.records.push_back(record_from_json(json::parse(line)));
  }
  if (traj.records.empty())
    throw SceneError("trajectory stream contains no records");
  return traj;
}

void write_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SceneError("cannot write '" + path + "'");
  out << trajectory_to_jsonl(traj);
}

Trajectory read_trajectory(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return trajectory_from_jsonl(os.str());
}

std::vector<Action> read_actions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError("cannot read '" + path + "'");
  std::vector<Action> actions;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    const json* arr = nullptr;
    if (j.is_array())
      arr = &j;
    else if (j.is_object() && j.contains("action"))
      arr = &j.at("action");
    else
      throw SceneError("action line must be a 7-number array or carry an "
                       "\"action\" field");
    std::array<double, 7> a{};
    for (size_t i = 0; i < 7 && i < arr->size(); ++i) a[i] = arr->at(i);
    actions.push_back(Action::from_array(a));
  }
  return actions;
}

void write_actions(const std::vector<Action>& actions,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SceneError("cannot write '" + path + "'");
  for (const auto& a : actions) out << json(a.to_array()).dump() << "\n";
}

}  // namespace cbddl
