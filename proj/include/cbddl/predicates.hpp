// Predicate vocabulary and arity schemas.
//
// Instantaneous predicates are checked on every simulation step,
// terminal ones once on the final state; goal predicates may appear in
// :goal, and a subset of them (plus At) may seed :init.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cbddl {

enum class PredicateClass { Instantaneous, Terminal, Goal, InitOnly };

enum class ArgKind { Object, Ids, Number, Vector3 };

struct PredicateSchema {
  std::string name;  // canonical spelling
  PredicateClass cls;
  std::vector<ArgKind> args;
  // For each Ids argument, the position of the object argument whose
  // parts it indexes; -1 elsewhere.
  std::vector<int> id_owner;
  bool init_allowed = false;
};

// Case-sensitive lookup. CheckGripperDistance / CheckGripperDistancePart
// are accepted as spellings of CheckGripperDist / CheckGripperDistPart.
const PredicateSchema* find_predicate(const std::string& name);

const std::vector<PredicateSchema>& predicate_table();

}  // namespace cbddl
