#include <gtest/gtest.h>

#include <memory>
#include <sstream>

#include <json.hpp>

#include "cardinal/error.hpp"
#include "cardinal/service.hpp"
#include "support.hpp"

using namespace cardinal;
using cardinal::testing::data_path;
using cardinal::testing::kitchen_kb;
using cardinal::testing::kitchen_lexicon;
using cardinal::testing::kitchen_world;
using nlohmann::json;

namespace {

std::unique_ptr<Service> service(const std::vector<std::pair<std::string, int>>& counts) {
  return std::make_unique<Service>(kitchen_kb(), kitchen_lexicon(), kitchen_world(counts));
}

std::string body(const std::string& text) { return json{{"text", text}}.dump(); }

}  // namespace

TEST(Service, LoadsTheShippedConfiguration) {
  ServiceConfig config{data_path("scenarios/kitchen.scn"), data_path("kitchen.kb"), data_path("kitchen.lex")};
  Service s = Service::load(config);
  EXPECT_GT(s.simulator().snapshot().objects().size(), 20u);
}

TEST(Service, RejectsLexiconThatDisagreesWithKnowledge) {
  EXPECT_THROW(Service(kitchen_kb(), Lexicon::parse("noun unicorn|unicorns -> unicorn\n"), kitchen_world({})),
               LexiconError);
}

TEST(Service, InterpretEndpoint) {
  auto s = service({});
  ServiceResponse r = s->handle("POST", "/interpret", body("I like swimming"));
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body, R"({"type": "invalid"})");
}

TEST(Service, QueryEndpoint) {
  auto s = service({{"tomato", 2}, {"onion", 3}});
  ServiceResponse r = s->handle("POST", "/query", body("How many vegetables are there?"));
  ASSERT_EQ(r.status, 200) << r.body;
  auto j = json::parse(r.body);
  EXPECT_EQ(j["answer"], 5);
  EXPECT_EQ(j["ir"]["type"], "query");

  auto b = json::parse(s->handle("POST", "/query", body("There are more onions than tomatoes")).body);
  EXPECT_EQ(b["answer"], true);

  EXPECT_EQ(s->handle("POST", "/query", body("Fetch a tomato")).status, 422);
  EXPECT_EQ(s->handle("POST", "/query", body("I like swimming")).status, 422);
}

TEST(Service, CommandEndpointMutatesTheWorld) {
  auto s = service({{"greenPepper", 2}});
  ServiceResponse r = s->handle("POST", "/command", body("Fetch all green peppers"));
  ASSERT_EQ(r.status, 200) << r.body;
  auto j = json::parse(r.body);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["actions"].size(), 2u);
  auto state = json::parse(s->handle("GET", "/state", "").body);
  for (const auto& o : state)
    if (o["type"] == "greenPepper") EXPECT_EQ(o["at"], "CounterTop");
  EXPECT_EQ(s->handle("GET", "/state", "").body, s->simulator().snapshot().state_json());
}

TEST(Service, ErrorStatuses) {
  auto s = service({});
  EXPECT_EQ(s->handle("POST", "/command", body("How many boxes are there?")).status, 422);
  EXPECT_EQ(s->handle("POST", "/query", "nope").status, 400);
  EXPECT_EQ(s->handle("POST", "/query", R"({"text": 3})").status, 400);
  EXPECT_EQ(s->handle("GET", "/query", "").status, 405);
  EXPECT_EQ(s->handle("POST", "/state", "{}").status, 405);
  EXPECT_EQ(s->handle("GET", "/nowhere", "").status, 404);
}

TEST(Service, HistoryRecordsEverySentence) {
  auto s = service({{"egg", 1}});
  s->handle("POST", "/interpret", body("Fetch an egg"));
  s->handle("POST", "/query", body("Are there 2 eggs?"));
  auto h = json::parse(s->handle("GET", "/history", "").body);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0]["text"], "Fetch an egg");
  EXPECT_EQ(h[0]["kind"], "command");
  EXPECT_EQ(h[1]["kind"], "query");
}

TEST(Repl, LinesAndMetaCommands) {
  auto s = service({{"tomato", 2}});
  bool quit = false;
  EXPECT_EQ(s->repl_line("", quit), "");
  std::string answer = s->repl_line("How many tomatoes are there?", quit);
  EXPECT_NE(answer.find("answer: 2"), std::string::npos) << answer;
  EXPECT_NE(s->repl_line("I like swimming", quit).find("cannot interpret"), std::string::npos);
  EXPECT_EQ(s->repl_line("/ir I like swimming", quit), "{\"type\": \"invalid\"}\n");
  EXPECT_NE(s->repl_line("/state", quit).find("Tomato1 : tomato @ Fridge"), std::string::npos);
  EXPECT_NE(s->repl_line("/bogus", quit).find("unknown meta-command"), std::string::npos);
  std::string cut = s->repl_line("Fetch a tomato", quit);
  EXPECT_NE(cut.find("status: ok"), std::string::npos) << cut;
  EXPECT_FALSE(quit);
  EXPECT_EQ(s->repl_line("/quit", quit), "bye\n");
  EXPECT_TRUE(quit);
}

TEST(Repl, StreamLoopStopsOnQuit) {
  auto s = service({{"tomato", 1}});
  std::istringstream in("How many tomatoes are there?\n/quit\nHow many tomatoes are there?\n");
  std::ostringstream out;
  s->repl(in, out);
  const std::string text = out.str();
  EXPECT_EQ(text.find("answer: 1"), text.rfind("answer: 1"));
  EXPECT_NE(text.find("bye"), std::string::npos);
}

TEST(Format, ReportAndState) {
  ExecutionReport r;
  r.status = ExecutionReport::Status::rejected;
  r.constraints = {{"|exists x1 (tomato(x1)).| >= 5", false}};
  r.reasons = {"constraint |exists x1 (tomato(x1)).| >= 5 is false"};
  const std::string text = format_report(r);
  EXPECT_NE(text.find("status: rejected"), std::string::npos);
  EXPECT_NE(text.find("fails |exists x1 (tomato(x1)).| >= 5"), std::string::npos);

  World w = kitchen_world({{"tomato", 1}, {"cookingKnife", 1}}, "CounterTop");
  w.apply_action("cut", {"Robot1", "Tomato1", "CookingKnife1"});
  EXPECT_NE(format_state(w).find("Tomato1 : tomato @ CounterTop [cut]"), std::string::npos);
}
