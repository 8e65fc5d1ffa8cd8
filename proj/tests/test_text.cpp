#include <gtest/gtest.h>

#include "cardinal/error.hpp"
#include "cardinal/text.hpp"
#include "support.hpp"

using namespace cardinal;
using cardinal::testing::fixture_path;

TEST(ParseFormula, Precedence) {
  Formula f = parse_formula("a(x) | b(x) & -c(x).");
  ASSERT_EQ(f.kind(), Formula::Kind::disjunction);
  ASSERT_EQ(f.rhs().kind(), Formula::Kind::conjunction);
  EXPECT_EQ(f.rhs().rhs().kind(), Formula::Kind::negation);

  Formula g = parse_formula("a(x) -> b(x) -> c(x).");
  ASSERT_EQ(g.kind(), Formula::Kind::implication);
  EXPECT_EQ(g.lhs(), parse_formula("a(x)."));
  EXPECT_EQ(g.rhs(), parse_formula("b(x) -> c(x)."));

  Formula h = parse_formula("robot(x) & (ingredient(y) | kitchenTool(y)) -> fetch(x, y).");
  ASSERT_EQ(h.kind(), Formula::Kind::implication);
  EXPECT_EQ(h.lhs().rhs().kind(), Formula::Kind::disjunction);
}

TEST(ParseFormula, QuantifierScopesOverAtom) {
  Formula f = parse_formula("exists x (ingredient(x)).");
  ASSERT_EQ(f.kind(), Formula::Kind::exists);
  EXPECT_EQ(f.variable(), "x");
  EXPECT_EQ(f.body(), parse_formula("ingredient(x)."));
}

TEST(ParseFormula, Errors) {
  EXPECT_THROW(parse_formula("box(x."), SyntaxError);
  EXPECT_THROW(parse_formula("Box(x)."), SyntaxError);
  EXPECT_THROW(parse_formula("box(x) &."), SyntaxError);
  EXPECT_THROW(parse_formula("all X (box(X))."), SyntaxError);
  EXPECT_THROW(parse_formula("box(x) $ tray(x)."), SyntaxError);
  EXPECT_THROW(parse_formula("all x (box(x) & exists x (tray(x)))."), ShadowingError);
}

TEST(ParseFormula, SyntaxErrorCarriesOffset) {
  try {
    parse_formula("box(x) & & tray(x).");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 9u);
  }
}

TEST(FormatFormula, MinimalParentheses) {
  EXPECT_EQ(format_formula(parse_formula("((a(x)) & (b(x))) | c(x).")), "a(x) & b(x) | c(x)");
  EXPECT_EQ(format_formula(parse_formula("a(x) & (b(x) | c(x)).")), "a(x) & (b(x) | c(x))");
  EXPECT_EQ(format_formula(parse_formula("(a(x) -> b(x)) -> c(x).")), "(a(x) -> b(x)) -> c(x)");
  EXPECT_EQ(format_formula(parse_formula("-(exists x (box(x))).")), "-(exists x (box(x)))");
}

TEST(QueryExpr, CardinalityForms) {
  const char* text = "|exists x0 (pepper(x0)).| == 2 * |exists x0 (-pepper(x0) & vegetable(x0)).|";
  QueryExpr q = parse_query_expr(text);
  ASSERT_TRUE(std::holds_alternative<CardConstraint>(q));
  const auto& c = std::get<CardConstraint>(q);
  EXPECT_EQ(c.cmp, Comparison::eq);
  ASSERT_TRUE(std::holds_alternative<ScaledCard>(c.rhs));
  EXPECT_EQ(std::get<ScaledCard>(c.rhs).factor, 2);
  EXPECT_EQ(format_query_expr(q), text);

  QueryExpr count = parse_query_expr("|exists x0 (box(x0)).|");
  EXPECT_TRUE(std::holds_alternative<CountQuery>(count));
  EXPECT_EQ(format_query_expr(count), "|exists x0 (box(x0)).|");

  QueryExpr b = parse_query_expr("all x0 (object(x0) -> box(x0)).");
  EXPECT_TRUE(std::holds_alternative<BoolQuery>(b));
  EXPECT_EQ(format_query_expr(b), "all x0 (object(x0) -> box(x0)).");

  EXPECT_THROW(parse_constraint("|exists x0 (box(x0)).|"), FormatError);
  EXPECT_THROW(parse_query_expr("|exists x0 (box(x0)).| + 1"), Error);
}

TEST(Sensors, ParsesTheShippedFixture) {
  SensorsDoc doc = parse_sensors(read_file(fixture_path("tomato_world.sensors")));
  EXPECT_EQ(doc.domain_size, 5u);
  EXPECT_EQ(doc.distinct, (std::vector<std::string>{"Robot1", "Tomato1", "Tomato2", "Whisk1", "CookingKnife1"}));
  EXPECT_EQ(doc.facts.size(), 5u);
  EXPECT_EQ(parse_sensors(format_sensors(doc)), doc);
}

TEST(Sensors, InvariantsAreChecked) {
  EXPECT_THROW(parse_sensors("assign(domain_size, 2).\nlist(distinct).\n [A1].\nend_of_list.\n"), DomainMismatch);
  EXPECT_THROW(parse_sensors("assign(domain_size, 2).\nlist(distinct).\n [A1, A1].\nend_of_list.\n"), DomainMismatch);
  EXPECT_THROW(parse_sensors("assign(domain_size, 1).\nlist(distinct).\n [A1].\nend_of_list.\n"
                             "formulas(sensors).\n box(B1).\nend_of_list.\n"),
               UnknownConstant);
  EXPECT_THROW(parse_sensors("assign(domain_size, 1).\nlist(distinct).\n [A1].\nend_of_list.\n"
                             "formulas(sensors).\n box(x).\nend_of_list.\n"),
               FormatError);
  EXPECT_THROW(parse_sensors("assign(domain_size, 1).\nlist(stuff).\n [A1].\nend_of_list.\n"), UnknownSection);
  EXPECT_THROW(parse_sensors("list(distinct).\n [A1].\nend_of_list.\n"), FormatError);
}

TEST(Knowledge, ParsesTheShippedFixture) {
  KnowledgeDoc kb = parse_knowledge(read_file(fixture_path("tomato_world.kb")));
  EXPECT_EQ(kb.classification.size(), 3u);
  EXPECT_EQ(kb.distinction.size(), 4u);
  EXPECT_EQ(kb.commands.size(), 3u);
  EXPECT_EQ(kb.actions(), (std::set<std::string>{"fetch"}));
  EXPECT_EQ(kb.arities().at("fetch"), 2u);
  EXPECT_TRUE(kb.predicates().count("whisk"));
  EXPECT_EQ(parse_knowledge(format_knowledge(kb)), kb);
}

TEST(Knowledge, RuleShapesAreChecked) {
  auto section = [](const char* name, const char* body) {
    return std::string("formulas(") + name + ").\n" + body + "\nend_of_list.\n";
  };
  EXPECT_THROW(parse_knowledge(section("background_knowledge_classification", "a(x) & b(x) -> c(x).")), FormatError);
  EXPECT_THROW(parse_knowledge(section("background_knowledge_classification", "a(x) -> b(y).")), FormatError);
  EXPECT_THROW(parse_knowledge(section("background_knowledge_distinction", "a(x) -> b(x).")), FormatError);
  EXPECT_THROW(parse_knowledge(section("background_knowledge_commands", "robot(x) & box(z) -> fetch(x, y).")),
               FormatError);
  EXPECT_THROW(parse_knowledge(section("background_knowledge_commands", "robot(x) -> fetch(x, Box1).")), FormatError);
  EXPECT_THROW(parse_knowledge(section("background_knowledge_gossip", "a(x) -> b(x).")), UnknownSection);
}

TEST(Expressions, ParsesTheGoalFixture) {
  auto goals = parse_expressions(read_file(fixture_path("ingredient_goal.expr")));
  ASSERT_EQ(goals.size(), 1u);
  EXPECT_EQ(format_formula(goals[0]), "exists x (ingredient(x))");
}

TEST(Wire, KeyOrderAndSpacing) {
  SentenceIR ir = parse_ir(R"({"commands": ["robot(x0) & box(x1) -> fetch(x0, x1)."], "expressions": [[]],
                               "type": "command"})");
  EXPECT_EQ(serialize_ir(ir),
            R"({"type": "command", "expressions": [[]], "commands": ["robot(x0) & box(x1) -> fetch(x0, x1)."]})");
  EXPECT_EQ(serialize_ir(SentenceIR::invalid()), R"({"type": "invalid"})");
}

TEST(Wire, SingleQuotedDocumentsAreAccepted) {
  SentenceIR a = parse_ir("{'type':'query','expressions':['all x0 (pepper(x0) -> -redPepper(x0)).']}");
  SentenceIR b = parse_ir(R"({"type": "query", "expressions": ["all x0 (pepper(x0) -> -redPepper(x0))."]})");
  EXPECT_EQ(a, b);
}

TEST(Wire, RejectsMalformedDocuments) {
  EXPECT_THROW(parse_ir("not json"), FormatError);
  EXPECT_THROW(parse_ir(R"({"type": "query"})"), FormatError);
  EXPECT_THROW(parse_ir(R"({"type": "query", "expressions": [], "extra": 1})"), FormatError);
  EXPECT_THROW(parse_ir(R"({"type": "weather"})"), FormatError);
  EXPECT_THROW(parse_ir(R"({"type": "invalid", "expressions": []})"), FormatError);
  EXPECT_THROW(parse_ir(R"({"type": "command", "expressions": ["x"], "commands": []})"), FormatError);
  EXPECT_THROW(parse_ir(R"({"type": "query", "expressions": ["box(x0)."]})"), FreeVariableError);
  EXPECT_THROW(parse_ir("{'type': 'query', 'expressions': ['unterminated]}"), FormatError);
}

TEST(Wire, CanonicalFormIgnoresLayout) {
  EXPECT_EQ(canonical_wire("{ \"type\" :  \"invalid\" }"), canonical_wire(R"({"type": "invalid"})"));
  EXPECT_EQ(canonical_wire(R"({"type": "query", "expressions": ["|exists   x0 (box(x0)).|   >= 2"]})"),
            canonical_wire(R"({"type":"query","expressions":["|exists x0 (box(x0)).| >= 2"]})"));
}

TEST(Whitespace, Normalization) {
  EXPECT_EQ(normalize_whitespace("  a \t b\n\nc  "), "a b c");
  EXPECT_EQ(normalize_whitespace(""), "");
}

TEST(ReadFile, MissingFileIsAnError) { EXPECT_THROW(read_file("/nonexistent/cardinal.kb"), Error); }
