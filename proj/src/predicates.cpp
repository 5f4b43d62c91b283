#include "cbddl/predicates.hpp"

namespace cbddl {

const std::vector<PredicateSchema>& predicate_table() {
  using C = PredicateClass;
  using A = ArgKind;
  static const std::vector<PredicateSchema> table = {
      {"InContact", C::Instantaneous, {A::Object, A::Object}, {-1, -1}},
      {"InContactPart",
       C::Instantaneous,
       {A::Object, A::Object, A::Ids, A::Ids},
       {-1, -1, 0, 1}},
      {"CheckForce",
       C::Instantaneous,
       {A::Object, A::Object, A::Number},
       {-1, -1, -1}},
      {"CheckDistance",
       C::Instantaneous,
       {A::Object, A::Object, A::Number},
       {-1, -1, -1}},
      {"CheckGripperDist", C::Instantaneous, {A::Object, A::Number}, {-1, -1}},
      {"CheckGripperDistPart",
       C::Instantaneous,
       {A::Object, A::Ids, A::Number},
       {-1, 0, -1}},
      {"CheckGripperContact", C::Instantaneous, {A::Object}, {-1}},
      {"CheckGripperContactPart",
       C::Instantaneous,
       {A::Object, A::Ids},
       {-1, 0}},
      {"Collide", C::Terminal, {A::Object}, {-1}},
      {"Fall", C::Terminal, {A::Object}, {-1}},
      {"NotOn", C::Terminal, {A::Object, A::Object}, {-1, -1}},
      {"OnTop", C::Goal, {A::Object, A::Object}, {-1, -1}, true},
      {"Inside", C::Goal, {A::Object, A::Object}, {-1, -1}},
      {"Lit", C::Goal, {A::Object}, {-1}, true},
      {"TurnedOn", C::Goal, {A::Object}, {-1}, true},
      {"At", C::InitOnly, {A::Object, A::Vector3}, {-1, -1}, true},
  };
  return table;
}

const PredicateSchema* find_predicate(const std::string& name) {
  std::string key = name;
  if (key == "CheckGripperDistance") key = "CheckGripperDist";
  if (key == "CheckGripperDistancePart") key = "CheckGripperDistPart";
  for (const auto& schema : predicate_table())
    if (schema.name == key) return &schema;
  return nullptr;
}

}  // namespace cbddl
