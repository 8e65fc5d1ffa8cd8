#include <gtest/gtest.h>

#include <json.hpp>

#include "cardinal/error.hpp"
#include "cardinal/sim.hpp"
#include "support.hpp"

using namespace cardinal;
using cardinal::testing::fixture_path;
using cardinal::testing::kitchen_kb;
using cardinal::testing::kitchen_world;

namespace {

World small_kitchen() {
  return World::load_scenario(R"(
# a counter-top set-up
Robot1 : robot @ Kitchen
Tomato1 : tomato @ CounterTop
Tomato2 : tomato @ Fridge
Knife1 : cookingKnife @ Drawer
Whisk1 : whisk @ Drawer
Bowl1 : bowl @ CounterTop
Bowl2 : bowl @ CounterTop
Egg1 : egg @ Bowl1
Sugar1 : sugar @ Bowl1
Tray1 : tray @ CounterTop
Paper1 : bakingPaper @ Drawer
Oven1 : oven @ Kitchen
Dough1 : dough @ CounterTop
)",
                              kitchen_kb());
}

HttpResponse post(Simulator& sim, const std::string& body) { return sim.handle_http({"POST", "/abe-sim-command", body}); }

}  // namespace

TEST(Scenario, LoadsObjectsInOrder) {
  World w = World::load(fixture_path("tomato_world.scn"), cardinal::testing::tomato_kb());
  ASSERT_EQ(w.objects().size(), 5u);
  EXPECT_EQ(w.objects()[0].constant, "Robot1");
  EXPECT_EQ(w.find("Tomato2")->at, "Fridge");
  EXPECT_EQ(w.find("Banana1"), nullptr);
}

TEST(Scenario, ExportsTheListingSensors) {
  World w = World::load(fixture_path("tomato_world.scn"), cardinal::testing::tomato_kb());
  SensorsDoc expected = parse_sensors(read_file(fixture_path("tomato_world.sensors")));
  SensorsDoc got = w.to_sensors();
  EXPECT_EQ(got.domain_size, expected.domain_size);
  EXPECT_EQ(got.distinct, expected.distinct);
  EXPECT_EQ(got.facts, expected.facts);
}

TEST(Scenario, Errors) {
  const KnowledgeDoc& kb = kitchen_kb();
  EXPECT_THROW(World::load_scenario("Tomato1 : tomato @ Fridge\n", kb), NoRobot);
  EXPECT_THROW(World::load_scenario("Robot1 : robot @ Kitchen\nX1 : unicorn @ Fridge\n", kb), UnknownType);
  EXPECT_THROW(World::load_scenario("Robot1 : robot @ Kitchen\nRobot1 : robot @ Fridge\n", kb), DuplicateConstant);
  EXPECT_THROW(World::load_scenario("Robot1 : robot @ Mars\n", kb), UnknownLocation);
  EXPECT_THROW(World::load_scenario("Robot1 robot Kitchen\n", kb), ScenarioError);
  EXPECT_NO_THROW(World::load_scenario("location Mars\nRobot1 : robot @ Mars\n", kb));
  EXPECT_NO_THROW(World::load_scenario("Robot1 : robot @ Kitchen\nEgg1 : egg @ Bowl1\nBowl1 : bowl @ Fridge\n", kb));
}

TEST(Actions, FetchMovesToCounter) {
  World w = small_kitchen();
  w.apply_action("fetch", {"Robot1", "Tomato2"});
  EXPECT_EQ(w.find("Tomato2")->at, kCounterTop);
  ASSERT_EQ(w.log().size(), 1u);
  EXPECT_EQ(w.log()[0], (ActionCall{"fetch", {"Robot1", "Tomato2"}}));
}

TEST(Actions, CutNeedsCounterKnifeAndIngredient) {
  World w = small_kitchen();
  EXPECT_THROW(w.apply_action("cut", {"Robot1", "Tomato2", "Knife1"}), PreconditionFailed);  // in the fridge
  EXPECT_THROW(w.apply_action("cut", {"Robot1", "Tomato1", "Whisk1"}), PreconditionFailed);  // not a knife
  EXPECT_THROW(w.apply_action("cut", {"Robot1", "Bowl1", "Knife1"}), PreconditionFailed);    // cutting a bowl
  w.apply_action("cut", {"Robot1", "Tomato1", "Knife1"});
  EXPECT_TRUE(w.find("Tomato1")->attributes.cut);
  EXPECT_THROW(w.apply_action("cut", {"Robot1", "Tomato1", "Knife1"}), PreconditionFailed);
}

TEST(Actions, TransferMovesEveryContent) {
  World w = small_kitchen();
  w.apply_action("transfer", {"Robot1", "Bowl1", "Bowl2"});
  EXPECT_EQ(w.find("Egg1")->at, "Bowl2");
  EXPECT_EQ(w.find("Sugar1")->at, "Bowl2");
  EXPECT_EQ(w.find("Tomato1")->at, kCounterTop);
  EXPECT_THROW(w.apply_action("transfer", {"Robot1", "Bowl2", "Bowl2"}), PreconditionFailed);
}

TEST(Actions, TransferRefusesCycles) {
  World w = World::load_scenario("Robot1 : robot @ Kitchen\nBowl1 : bowl @ CounterTop\nBowl2 : bowl @ Bowl1\n",
                                 kitchen_kb());
  EXPECT_THROW(w.apply_action("transfer", {"Robot1", "Bowl1", "Bowl2"}), PreconditionFailed);
}

TEST(Actions, BakeLineSprinkleShapeMix) {
  World w = small_kitchen();
  w.apply_action("bake", {"Robot1", "Dough1", "Oven1"});
  EXPECT_EQ(w.find("Dough1")->at, "Oven1");
  EXPECT_TRUE(w.find("Dough1")->attributes.baked);

  w.apply_action("line", {"Robot1", "Tray1", "Paper1"});
  EXPECT_TRUE(w.find("Tray1")->attributes.lined);
  EXPECT_EQ(w.find("Paper1")->at, "Tray1");
  EXPECT_THROW(w.apply_action("line", {"Robot1", "Bowl1", "Paper1"}), PreconditionFailed);

  w.apply_action("sprinkle", {"Robot1", "Tomato1", "Sugar1"});
  EXPECT_TRUE(w.find("Tomato1")->attributes.sprinkled);
  EXPECT_THROW(w.apply_action("sprinkle", {"Robot1", "Tomato1", "Tomato1"}), PreconditionFailed);

  w.apply_action("mix", {"Robot1", "Bowl1", "Whisk1"});
  EXPECT_TRUE(w.find("Bowl1")->attributes.mixed);

  World v = small_kitchen();
  v.apply_action("shape", {"Robot1", "Dough1"});
  EXPECT_TRUE(v.find("Dough1")->attributes.shaped);
}

TEST(Actions, RobotsAreNeverPatients) {
  World w = World::load_scenario("Robot1 : robot @ Kitchen\nRobot2 : robot @ Kitchen\n", kitchen_kb());
  EXPECT_THROW(w.apply_action("fetch", {"Robot1", "Robot2"}), PreconditionFailed);
  EXPECT_THROW(w.apply_action("fetch", {"Robot1", "Robot1"}), PreconditionFailed);
  World k = small_kitchen();
  EXPECT_THROW(k.apply_action("fetch", {"Tomato1", "Tomato2"}), PreconditionFailed);
}

TEST(Actions, FailuresLeaveTheWorldUntouched) {
  World w = small_kitchen();
  const World before = w;
  EXPECT_THROW(w.apply_action("cut", {"Robot1", "Tomato2", "Knife1"}), PreconditionFailed);
  EXPECT_THROW(w.apply_action("fetch", {"Robot1"}), ArityError);
  EXPECT_THROW(w.apply_action("fetch", {"Robot1", "Ghost1"}), UnknownObject);
  EXPECT_THROW(w.apply_action("juggle", {"Robot1", "Tomato1"}), PreconditionFailed);
  EXPECT_EQ(w, before);
}

TEST(Actions, AttributesReachSensorsAndStayConsistent) {
  World w = small_kitchen();
  w.apply_action("cut", {"Robot1", "Tomato1", "Knife1"});
  w.apply_action("line", {"Robot1", "Tray1", "Paper1"});
  SensorsDoc s = w.to_sensors();
  auto has = [&](const char* pred, const char* c) {
    return std::find(s.facts.begin(), s.facts.end(), Formula::atom(pred, {Term::constant(c)})) != s.facts.end();
  };
  EXPECT_TRUE(has("cutObject", "Tomato1"));
  EXPECT_TRUE(has("linedTray", "Tray1"));
  EXPECT_NO_THROW(build_interpretation(s, kitchen_kb()));
}

TEST(StateJson, ListsEveryObject) {
  World w = kitchen_world({{"tomato", 2}});
  auto state = nlohmann::json::parse(w.state_json());
  ASSERT_EQ(state.size(), 3u);
  EXPECT_EQ(state[1]["name"], "Tomato1");
  EXPECT_EQ(state[1]["type"], "tomato");
  EXPECT_EQ(state[1]["at"], "Fridge");
  EXPECT_EQ(state[1]["attributes"]["cut"], false);
}

TEST(Http, CommandEndpoint) {
  Simulator sim(small_kitchen());
  auto ok = post(sim, R"({"command": "to-fetch", "args": ["Robot1", "Tomato2"]})");
  EXPECT_EQ(ok.status, 200);
  EXPECT_EQ(nlohmann::json::parse(ok.body)["status"], "ok");
  EXPECT_EQ(sim.snapshot().find("Tomato2")->at, kCounterTop);

  auto failed = post(sim, R"({"command": "to-cut", "args": ["Robot1", "Bowl1", "Knife1"]})");
  EXPECT_EQ(failed.status, 422);
  EXPECT_EQ(nlohmann::json::parse(failed.body)["status"], "error");

  EXPECT_EQ(post(sim, R"({"command": "to-juggle", "args": []})").status, 422);
  EXPECT_EQ(post(sim, R"({"command": "fetch", "args": ["Robot1", "Tomato1"]})").status, 422);
  EXPECT_EQ(post(sim, "not json").status, 400);
  EXPECT_EQ(post(sim, R"({"args": []})").status, 400);
  EXPECT_EQ(post(sim, R"({"command": "to-fetch", "args": [1, 2]})").status, 400);
  EXPECT_EQ(sim.handle_http({"GET", "/abe-sim-command", ""}).status, 405);
  EXPECT_EQ(sim.handle_http({"GET", "/elsewhere", ""}).status, 404);
}

TEST(Http, StateEndpoint) {
  Simulator sim(small_kitchen());
  auto r = sim.handle_http({"GET", "/abe-sim-command/state", ""});
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body, sim.snapshot().state_json());
  EXPECT_EQ(sim.handle_http({"POST", "/abe-sim-command/state", "{}"}).status, 405);
}
