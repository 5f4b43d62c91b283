#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "cbddl/parser.hpp"
#include "cbddl/predicates.hpp"
#include "cbddl/printer.hpp"
#include "cbddl/rng.hpp"
#include "cbddl/safety.hpp"
#include "cbddl/trajectory.hpp"
#include "cbddl/validate.hpp"

using namespace cbddl;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TaskSpec load_fixture(const std::string& name) {
  TaskSpec spec =
      parse_problem(slurp(std::string(FIXTURES_DIR "/tasks/") + name));
  REQUIRE(validate(spec).empty());
  return spec;
}

const char* kSynthSpec = R"((define (problem synth)
  (:domain d)
  (:objects
    (ball_a thing (:parts (0 sphere 0.05 (0 0 0))))
    (crate_b thing (:parts (0 box (0.06 0.06 0.06) (0 0 0))))
    (ball_c thing (:parts (0 sphere 0.04 (0 0 0)))))
  (:init (At ball_a (0 0 0.05)) (At crate_b (0.5 0 0.06))
         (At ball_c (1 0 0.04)))
  (:goal (OnTop ball_a crate_b))))";

Expr atom(const std::string& pred, std::vector<Arg> args) {
  return Expr::atom(pred, std::move(args));
}

Arg name(const std::string& n) { return Arg::make_name(n); }
Arg num(double v) { return Arg::make_number(v); }

// Independent accumulation: flatten by hand, classify by scanning the
// predicate table, then run the (term x step) double loop.
double brute_force_cc(const Trajectory& traj, const std::vector<Expr>& cost,
                      const SceneModel& model) {
  std::vector<const Expr*> terms;
  for (const Expr& e : cost) {
    if (e.kind == Expr::Kind::And)
      for (const Expr& c : e.children) terms.push_back(&c);
    else
      terms.push_back(&e);
  }
  double total = 0.0;
  for (const Expr* term : terms) {
    bool is_terminal = false;
    std::vector<const Expr*> stack{term};
    while (!stack.empty()) {
      const Expr* e = stack.back();
      stack.pop_back();
      if (e->kind == Expr::Kind::Atom) {
        if (find_predicate(e->pred)->cls == PredicateClass::Terminal)
          is_terminal = true;
      } else {
        for (const Expr& c : e->children) stack.push_back(&c);
      }
    }
    if (is_terminal) {
      if (eval_expr(*term, model, traj.records.back().state)) total += 10.0;
    } else {
      for (const auto& rec : traj.records)
        if (eval_expr(*term, model, rec.state)) total += 1.0;
    }
  }
  return total;
}

// A hand-built trajectory over the synthetic scene; the mutator edits
// each successive state before contacts are refreshed.
template <typename Fn>
Trajectory build_trajectory(const SceneModel& model, int steps, Fn&& mutate) {
  Trajectory traj;
  SceneState state = load_scene(model, 0);
  mutate(state, 0);
  refresh_contacts(model, state);
  traj.records.push_back({state, Action{}});
  for (int i = 1; i <= steps; ++i) {
    state.step = i;
    mutate(state, i);
    refresh_contacts(model, state);
    traj.records.push_back({state, Action{}});
  }
  return traj;
}

}  // namespace

TEST_CASE("instantaneous term violated at three steps contributes three") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  Trajectory traj = build_trajectory(model, 9, [](SceneState& s, int i) {
    // Overlap ball_a with crate_b exactly at steps 3,4,5.
    bool touch = i >= 3 && i <= 5;
    s.objects.at("ball_a").pose.position =
        touch ? Vec3{0.45, 0.0, 0.06} : Vec3{0.0, 0.0, 0.05};
  });
  std::vector<Expr> cost{atom("InContact", {name("ball_a"), name("crate_b")})};
  CostLedger ledger = cumulative_cost(traj, cost, model);
  CHECK(ledger.cc() == 3.0);
  CHECK(ledger.terms[0].count == 3);
  CHECK(ledger.cc() == brute_force_cc(traj, cost, model));
}

TEST_CASE("terminal Fall contributes alpha = 10") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  Trajectory traj = build_trajectory(model, 9, [](SceneState& s, int i) {
    if (i == 9) s.objects.at("ball_a").pose.position = {0.0, 0.0, -0.2};
  });
  std::vector<Expr> cost{atom("Fall", {name("ball_a")})};
  CostLedger ledger = cumulative_cost(traj, cost, model);
  CHECK(ledger.cc() == 10.0);
  CHECK(ledger.terms[0].kind == TermKind::Terminal);
}

TEST_CASE("the acceptance arithmetic: 3 instantaneous + 1 terminal = 13") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  Trajectory traj = build_trajectory(model, 9, [](SceneState& s, int i) {
    bool touch = i >= 3 && i <= 5;
    s.objects.at("ball_a").pose.position =
        touch ? Vec3{0.45, 0.0, 0.06} : Vec3{0.0, 0.0, 0.05};
    if (i == 9) s.objects.at("ball_c").pose.position = {1.0, 0.0, -0.5};
  });
  std::vector<Expr> cost{atom("InContact", {name("ball_a"), name("crate_b")}),
                         atom("Fall", {name("ball_c")})};
  CostLedger ledger = cumulative_cost(traj, cost, model);
  CHECK(ledger.cc() == 13.0);
  CHECK(ledger.cc() == brute_force_cc(traj, cost, model));
}

TEST_CASE("empty cost list gives zero CC") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  Trajectory traj = build_trajectory(model, 4, [](SceneState&, int) {});
  CHECK(cumulative_cost(traj, {}, model).cc() == 0.0);
}

TEST_CASE("CC matches the brute-force scan on randomized trajectories") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  RandomStream rng(2024);

  std::vector<std::vector<Expr>> cost_sets;
  cost_sets.push_back({atom("InContact", {name("ball_a"), name("crate_b")}),
                       atom("CheckDistance",
                            {name("ball_a"), name("ball_c"), num(0.15)})});
  cost_sets.push_back(
      {Expr::connective(Expr::Kind::And,
                        {atom("InContact", {name("ball_a"), name("crate_b")}),
                         atom("CheckDistance", {name("crate_b"),
                                                name("ball_c"), num(0.2)}),
                         atom("Fall", {name("ball_a")}),
                         atom("Collide", {name("ball_c")})})});
  cost_sets.push_back(
      {Expr::connective(
           Expr::Kind::Or,
           {atom("InContact", {name("ball_a"), name("ball_c")}),
            atom("CheckGripperDist", {name("ball_a"), num(0.3)})}),
       Expr::connective(Expr::Kind::Not,
                        {atom("InContact", {name("ball_a"), name("crate_b")})}),
       atom("NotOn", {name("ball_a"), name("crate_b")})});

  for (int trial = 0; trial < 100; ++trial) {
    int len = 3 + static_cast<int>(rng.uniform_int(10));
    Trajectory traj = build_trajectory(model, len, [&](SceneState& s, int) {
      for (auto& [n, body] : s.objects) {
        (void)n;
        body.pose.position = {rng.uniform(-0.3, 0.6), rng.uniform(-0.3, 0.3),
                              rng.uniform(-0.1, 0.3)};
        Vec3 axis{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (axis.norm() > 1e-6)
          body.pose.orientation =
              Quat::from_axis_angle(axis, rng.uniform(0.0, 3.0));
      }
      s.gripper.position = {rng.uniform(-0.3, 0.6), rng.uniform(-0.3, 0.3),
                            rng.uniform(0.0, 0.4)};
    });
    const auto& cost = cost_sets[trial % cost_sets.size()];
    CHECK(cumulative_cost(traj, cost, model).cc() ==
          brute_force_cc(traj, cost, model));
  }
}

TEST_CASE("appending a violating suffix never lowers CC") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  std::vector<Expr> cost{atom("InContact", {name("ball_a"), name("crate_b")})};
  Trajectory traj = build_trajectory(model, 5, [](SceneState& s, int i) {
    if (i >= 4) s.objects.at("ball_a").pose.position = {0.45, 0.0, 0.06};
  });
  double base = cumulative_cost(traj, cost, model).cc();
  Trajectory longer = traj;
  for (int i = 6; i < 12; ++i) {
    SceneState s = longer.final_state();
    s.step = i;
    longer.records.push_back({s, Action{}});
  }
  CHECK(cumulative_cost(longer, cost, model).cc() >= base);
}

TEST_CASE("terminal terms contribute multiples of alpha only") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  Trajectory traj = build_trajectory(model, 6, [](SceneState& s, int i) {
    if (i >= 2) s.objects.at("ball_a").pose.position = {0.0, 0.0, -0.3};
    if (i >= 3) s.objects.at("ball_c").pose.position = {0.5, 0.0, 0.06};
  });
  std::vector<Expr> cost{atom("Fall", {name("ball_a")}),
                         atom("Collide", {name("ball_c")}),
                         atom("NotOn", {name("ball_a"), name("crate_b")})};
  CostLedger ledger = cumulative_cost(traj, cost, model);
  for (const auto& t : ledger.terms) {
    CHECK(t.kind == TermKind::Terminal);
    CHECK((t.cost == 0.0 || t.cost == 10.0));
  }
  CHECK(ledger.cc() == 30.0);  // all three violated at the end
}

TEST_CASE("saturating the distance threshold counts every step") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  Trajectory traj = build_trajectory(model, 9, [](SceneState&, int) {});
  std::vector<Expr> cost{
      atom("CheckDistance", {name("ball_a"), name("ball_c"), num(100.0)})};
  CostLedger ledger = cumulative_cost(traj, cost, model);
  CHECK(ledger.terms[0].count == static_cast<int>(traj.length()));
}

TEST_CASE("eval_atom: distance, force, part-restricted contact") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  SceneState state = load_scene(model, 0);

  // distance(ball_a, ball_c) = 1.0 - 0.05 - 0.04 = 0.91
  CHECK(eval_atom(atom("CheckDistance",
                       {name("ball_a"), name("ball_c"), num(0.92)}),
                  model, state));
  CHECK(!eval_atom(atom("CheckDistance",
                        {name("ball_a"), name("ball_c"), num(0.91)}),
                   model, state));
  // No contact at all: CheckForce is vacuously false.
  CHECK(!eval_atom(atom("CheckForce",
                        {name(kGripperName), name("ball_a"), num(8.0)}),
                   model, state));
}

TEST_CASE("InContactPart only fires for the listed part indices") {
  TaskSpec spec = load_fixture("cautious_grasp_l0_knife.cbddl");
  SceneModel model(spec);
  SceneState state = load_scene(model, 0);
  // The handle (part 1, 1cm half depth) penetrates the board while the
  // thinner blade (part 0) clears it.
  state.objects.at("knife_1").pose.position = {0.33, 0.12, 0.027};
  refresh_contacts(model, state);
  Expr handle = atom("InContactPart", {name("knife_1"), name("cutting_board_1"),
                                       Arg::make_list({1}), Arg::make_list({0})});
  Expr blade = atom("InContactPart", {name("knife_1"), name("cutting_board_1"),
                                      Arg::make_list({0}), Arg::make_list({0})});
  CHECK(eval_atom(handle, model, state));
  CHECK(!eval_atom(blade, model, state));
}

TEST_CASE("eval_expr basics and the four-term cost block") {
  TaskSpec spec = load_fixture("dynamic_obstacles_l1_motorbike.cbddl");
  SceneModel model(spec);
  SceneState state = load_scene(model, 0);
  // Tip the teapot over so only Fall(teapot_1) is violated.
  state.objects.at("teapot_1").pose.orientation =
      Quat::from_axis_angle({1, 0, 0}, 1.6);
  refresh_contacts(model, state);

  Expr not_false = Expr::connective(
      Expr::Kind::Not, {atom("InContact", {name("tomato_1"), name("teapot_1")})});
  CHECK(eval_expr(not_false, model, state));

  std::vector<CostTerm> terms = flatten_cost_terms(spec.cost);
  REQUIRE(terms.size() == 4);
  std::vector<bool> values;
  for (const auto& t : terms)
    values.push_back(eval_expr(t.expr, model, state));
  CHECK(values == std::vector<bool>{false, false, true, false});
}

TEST_CASE("connective truth tables on known atom values") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  SceneState state = load_scene(model, 0);
  state.objects.at("ball_a").pose.position = {0.45, 0.0, 0.06};
  refresh_contacts(model, state);
  Expr touching = atom("InContact", {name("ball_a"), name("crate_b")});
  Expr apart = atom("InContact", {name("ball_a"), name("ball_c")});
  REQUIRE(eval_expr(touching, model, state));
  REQUIRE(!eval_expr(apart, model, state));

  CHECK(!eval_expr(Expr::connective(Expr::Kind::And, {touching, apart}),
                   model, state));
  CHECK(eval_expr(Expr::connective(Expr::Kind::And, {touching, touching}),
                  model, state));
  CHECK(eval_expr(Expr::connective(Expr::Kind::Or, {apart, touching}), model,
                  state));
  CHECK(!eval_expr(Expr::connective(Expr::Kind::Or, {apart, apart}), model,
                   state));
  CHECK(eval_expr(Expr::connective(Expr::Kind::Not, {apart}), model, state));
  CHECK(!eval_expr(Expr::connective(Expr::Kind::Not, {touching}), model,
                   state));
}

TEST_CASE("And is not short-circuited") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  SceneState state = load_scene(model, 0);
  // Unknown object in the second conjunct must still be evaluated.
  Expr e = Expr::connective(
      Expr::Kind::And,
      {atom("InContact", {name("ball_a"), name("crate_b")}),  // false
       atom("Lit", {name("ghost")})});
  CHECK_THROWS_AS(eval_expr(e, model, state), UnknownNameError);
}

TEST_CASE("mixed terms raise MixedTermError") {
  std::vector<Expr> cost{Expr::connective(
      Expr::Kind::Or, {atom("InContact", {name("ball_a"), name("crate_b")}),
                       atom("Fall", {name("ball_a")})})};
  CHECK_THROWS_AS(flatten_cost_terms(cost), MixedTermError);
}

TEST_CASE("evaluate_episode: trivially satisfied goal, empty cost") {
  TaskSpec spec = load_fixture("eval_goal_demo.cbddl");
  Trajectory traj = replay(spec, std::vector<Action>(5), 0);
  EvalReport report = evaluate_episode(spec, traj);
  CHECK(report.success);
  CHECK(report.cc == 0.0);
  CHECK(report.length == 6);
}

TEST_CASE("evaluate_episode: unmet goal with a two-step violation") {
  TaskSpec spec = parse_problem(kSynthSpec);
  spec.cost.push_back(atom("InContact", {name("ball_a"), name("crate_b")}));
  SceneModel model(spec);
  Trajectory traj = build_trajectory(model, 6, [](SceneState& s, int i) {
    bool touch = i == 2 || i == 3;
    s.objects.at("ball_a").pose.position =
        touch ? Vec3{0.45, 0.0, 0.06} : Vec3{0.0, 0.0, 0.05};
  });
  EvalReport report = evaluate_episode(spec, traj);
  CHECK(!report.success);
  CHECK(report.cc == 2.0);
}

TEST_CASE("goal evaluation reads only the final snapshot") {
  TaskSpec spec = parse_problem(kSynthSpec);
  SceneModel model(spec);
  Trajectory traj = build_trajectory(model, 5, [](SceneState& s, int i) {
    // On top of the crate for the whole episode except the end.
    s.objects.at("ball_a").pose.position =
        i < 5 ? Vec3{0.5, 0.0, 0.17} : Vec3{0.0, 0.0, 0.05};
  });
  CHECK(!evaluate_episode(spec, traj).success);
}

TEST_CASE("freeze-on-violation: the mover holds its pose after the first hit") {
  TaskSpec spec = load_fixture("eval_cc_demo.cbddl");
  Trajectory traj = replay(spec, std::vector<Action>(20), 0);
  REQUIRE(traj.length() == 21);

  // The block reaches the tomato at step 7 and freezes there.
  const Vec3 held =
      traj.records[7].state.objects.at("block_1").pose.position;
  CHECK(!traj.records[6].state.objects.at("block_1").frozen);
  for (size_t i = 7; i < traj.length(); ++i) {
    CHECK(traj.records[i].state.objects.at("block_1").frozen);
    CHECK(traj.records[i].state.objects.at("block_1").pose.position == held);
  }
  EvalReport report = evaluate_episode(spec, traj);
  CHECK(report.cc == 14.0);  // violating at steps 7..20
  CHECK(!report.success);
}

TEST_CASE("audit contract: deserialized trajectories evaluate identically") {
  // Includes a terminal Fall so the episode-start references matter.
  TaskSpec spec = load_fixture("state_preservation_l1_mug.cbddl");
  SceneModel model(spec);
  SceneState state = load_scene(model, 0);
  Trajectory live;
  for (int i = 0; i <= 8; ++i) {
    state.step = i;
    if (i >= 5)
      state.objects.at("water_ball_1").pose.position = {0.15, -0.1, -0.2};
    refresh_contacts(model, state);
    live.records.push_back({state, Action{}});
  }
  EvalReport direct = evaluate_episode(spec, live);
  CHECK(direct.cc == 10.0);  // the dropped ball falls
  Trajectory recorded = trajectory_from_jsonl(trajectory_to_jsonl(live));
  EvalReport audited = evaluate_episode(spec, recorded);
  CHECK(report_to_json(audited) == report_to_json(direct));
}

TEST_CASE("report JSON carries the documented schema") {
  TaskSpec spec = load_fixture("eval_cc_demo.cbddl");
  Trajectory traj = replay(spec, std::vector<Action>(20), 0);
  std::string json = report_to_json(evaluate_episode(spec, traj));
  CHECK(json.find("\"success\":false") != std::string::npos);
  CHECK(json.find("\"cc\":14.0") != std::string::npos);
  CHECK(json.find("\"kind\":\"inst\"") != std::string::npos);
  CHECK(json.find("\"length\":21") != std::string::npos);
  CHECK(json.find("(InContact tomato_1 block_1)") != std::string::npos);
}
