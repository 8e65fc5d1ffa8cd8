#include <gtest/gtest.h>

#include "cardinal/error.hpp"
#include "cardinal/executor.hpp"
#include "cardinal/harness.hpp"
#include "property_suites.hpp"

using namespace cardinal;
using namespace cardinal::testing;

TEST(Properties, SaturationIgnoresRuleAndFactOrder) {
  SuiteResult r = saturation_order_independence(10, 20);
  EXPECT_EQ(r.cases, 200u);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(Properties, WitnessCountMatchesEnumeration) {
  SuiteResult r = witnesses_match_enumeration(500);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(Properties, RoundTrips) {
  SuiteResult r = parse_serialize_round_trips(1000);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(Properties, AlphaEquivalenceLaws) {
  SuiteResult r = alpha_equivalence_laws(400);
  EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

namespace {

// Constraint query over kitchen predicates with small literals, so the
// bounded oracle stays well below its cap.
SentenceIR small_query(Gen& g) {
  Formula body = g.unary_body("x0", 2);
  if (!free_vars(body).count("x0")) body = Formula::conjunction(Formula::atom("object", {Term::variable("x0")}), body);
  if (g.coin(0.3)) return SentenceIR::query({CountQuery{make_card("x0", body)}});
  return SentenceIR::query(
      {make_constraint(make_card("x0", body), g.coin() ? Comparison::ge : Comparison::eq,
                       IntLit{static_cast<std::int64_t>(g.below(4))})});
}

}  // namespace

TEST(Properties, ClassificationIsReflexiveAndSymmetric) {
  Gen g(23);
  for (int i = 0; i < 60; ++i) {
    const SentenceIR a = small_query(g);
    const SentenceIR b = small_query(g);
    EXPECT_EQ(classify(a, a, kitchen_kb()).verdict, Verdict::identical) << serialize_ir(a);
    const Verdict ab = classify(a, b, kitchen_kb()).verdict;
    const Verdict ba = classify(b, a, kitchen_kb()).verdict;
    EXPECT_EQ(ab, ba) << serialize_ir(a) << " vs " << serialize_ir(b);
    EXPECT_FALSE(find_separating_world(a, rename_ir(a, "w"), kitchen_kb()).has_value()) << serialize_ir(a);
  }
}

TEST(Properties, DisagreementOnSmallWorldIsFound) {
  Gen g(29);
  int separated = 0;
  for (int i = 0; i < 150; ++i) {
    const SentenceIR a = small_query(g);
    const SentenceIR b = small_query(g);
    if (a.query_expressions.front().index() != b.query_expressions.front().index()) continue;
    const SensorsDoc doc = g.world(g.below(6));
    const Interpretation world = build_interpretation(doc, kitchen_kb());
    if (answer_query(world, a) == answer_query(world, b)) continue;
    ++separated;
    EXPECT_TRUE(find_separating_world(a, b, kitchen_kb()).has_value())
        << serialize_ir(a) << " vs " << serialize_ir(b) << " on " << format_sensors(doc);
  }
  EXPECT_GT(separated, 10);
}

TEST(Properties, SimulatorActionsKeepTheWorldConsistent) {
  Gen g(31);
  const auto& arities = action_arities();
  std::vector<std::string> actions;
  for (const auto& [a, n] : arities) actions.push_back(a);
  std::size_t applied = 0;
  for (int round = 0; round < 40; ++round) {
    SensorsDoc doc = g.world(2 + g.below(7));
    std::string scn = "Robot1 : robot @ Kitchen\n";
    for (const auto& f : doc.facts) {
      const std::string& c = f.args().front().name;
      if (f.predicate() != "robot") scn += c + " : " + f.predicate() + " @ " + (g.coin() ? "CounterTop" : "Fridge") + "\n";
    }
    World w = World::load_scenario(scn, kitchen_kb());
    const std::size_t objects = w.objects().size();
    for (int step = 0; step < 30; ++step) {
      const std::string& action = g.pick(actions);
      std::vector<std::string> args = {"Robot1"};
      for (std::size_t i = 1; i < arities.at(action); ++i) args.push_back(g.pick(w.objects()).constant);
      World copy = w;
      World twin = w;
      try {
        w.apply_action(action, args);
        ++applied;
        twin.apply_action(action, args);
        EXPECT_EQ(w, twin) << "nondeterministic " << action;
      } catch (const PreconditionFailed&) {
        EXPECT_EQ(w, copy) << "failed " << action << " mutated the world";
      }
      EXPECT_EQ(w.objects().size(), objects);
      EXPECT_NO_THROW(build_interpretation(w.to_sensors(), kitchen_kb())) << w.state_json();
    }
  }
  EXPECT_GT(applied, 50u);
}

TEST(Properties, RejectedCommandsNeverMutate) {
  Gen g(37);
  const std::vector<std::string> sentences = {
      "Cut several tomatoes", "Cut a bowl",          "Fetch Robot1",         "Fetch 3 eggs",
      "Mix bowl Bowl9",       "Cut 4 onions",        "Fetch many peppers",   "Line a tray with baking paper",
      "Shape the dough",      "Bake the dough",      "Fetch all bananas",    "Sprinkle sugar on a doughnut"};
  for (int round = 0; round < 30; ++round) {
    SensorsDoc doc = g.world(1 + g.below(7));
    std::string scn = "Robot1 : robot @ Kitchen\n";
    for (const auto& f : doc.facts)
      if (f.predicate() != "robot") scn += f.args().front().name + " : " + f.predicate() + " @ Fridge\n";
    for (const auto& s : sentences) {
      Simulator sim(World::load_scenario(scn, kitchen_kb()));
      const World before = sim.snapshot();
      ExecutionReport r = run_command(tr(s), sim, kitchen_kb());
      if (r.status == ExecutionReport::Status::rejected) {
        EXPECT_TRUE(r.actions.empty()) << s;
        EXPECT_EQ(sim.snapshot(), before) << s;
      }
    }
  }
}
