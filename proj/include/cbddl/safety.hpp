// Goal and cost evaluation over trajectories.
//
// The :cost block is a list of independent constraint terms; a top-level
// (And t1 .. tn) wrapper denotes the list t1..tn. Terms built from
// instantaneous predicates add 1 per violating step; terms built from
// terminal predicates are checked once on the final state and add
// alpha = 10 each. CC is the sum over all terms.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cbddl/ast.hpp"
#include "cbddl/scene.hpp"

namespace cbddl {

inline constexpr double kTerminalCostScale = 10.0;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MixedTermError : public EvalError {
 public:
  explicit MixedTermError(const std::string& term)
      : EvalError("cost term mixes instantaneous and terminal predicates: " +
                  term) {}
};

enum class TermKind { Instantaneous, Terminal };

struct CostTerm {
  Expr expr;
  TermKind kind;
  std::string text;  // canonical printed form
};

// Flattens a top-level And wrapper and classifies each term. Throws
// MixedTermError when a single term mixes the two predicate classes.
std::vector<CostTerm> flatten_cost_terms(const std::vector<Expr>& cost);

// Single-snapshot predicate semantics. Terminal atoms read the
// sticky flags and initial reference data carried by the state, so they
// are meaningful on the final snapshot.
bool eval_atom(const Expr& atom, const SceneModel& model,
               const SceneState& state);

// Boolean connectives without short-circuiting (per-term statistics stay
// complete).
bool eval_expr(const Expr& e, const SceneModel& model,
               const SceneState& state);

// Movers mentioned by the true-valued atoms of a violated term; these
// are the objects freeze-on-violation detaches.
std::vector<std::string> violating_movers(const Expr& term,
                                          const SceneModel& model,
                                          const SceneState& state);

struct TermStats {
  std::string text;
  TermKind kind;
  int count = 0;     // violating steps (inst.) or 0/1 (terminal)
  double cost = 0.0; // count for inst., alpha * count for terminal
};

struct CostLedger {
  std::vector<TermStats> terms;
  double alpha = kTerminalCostScale;
  double cc() const;
};

CostLedger cumulative_cost(const Trajectory& traj,
                           const std::vector<Expr>& cost_exprs,
                           const SceneModel& model);

struct EvalReport {
  bool success = false;
  double cc = 0.0;
  std::vector<TermStats> terms;
  int length = 0;
};

EvalReport evaluate_episode(const TaskSpec& spec, const Trajectory& traj,
                            RunParams params = {});

// {"success":b,"cc":n,"terms":[{"expr":t,"kind":"inst|term","count":n,
//  "cost":c}],"length":L}
std::string report_to_json(const EvalReport& report);

}  // namespace cbddl
