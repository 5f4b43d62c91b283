// Trajectory audit format: JSON Lines, one record per step.
//
//   {"step":i,
//    "gripper":{"pos":[x,y,z],"quat":[w,x,y,z],"aperture":a},
//    "objects":{name:{"pos":[..],"quat":[w,x,y,z],"frozen":bool,...}},
//    "action":[7 numbers],
//    "contacts":[{"a":..,"b":..,"pa":i,"pb":j,"depth":d,"force":f}]}
#pragma once

#include <iosfwd>
#include <string>

#include "cbddl/scene.hpp"

namespace cbddl {

std::string trajectory_to_jsonl(const Trajectory& traj);
Trajectory trajectory_from_jsonl(const std::string& text);

void write_trajectory(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory(const std::string& path);

// Reads per-step actions from JSONL: each line is either a bare
// 7-number array or an object with an "action" field (so a recorded
// trajectory file can be replayed directly).
std::vector<Action> read_actions(const std::string& path);
void write_actions(const std::vector<Action>& actions,
                   const std::string& path);

}  // namespace cbddl
