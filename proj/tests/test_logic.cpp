#include <gtest/gtest.h>

#include "cardinal/error.hpp"
#include "cardinal/logic.hpp"
#include "cardinal/text.hpp"

using namespace cardinal;

namespace {

Formula p(const char* pred, const char* arg) {
  std::string a = arg;
  return Formula::atom(pred, {is_variable_name(a) ? Term::variable(a) : Term::constant(a)});
}

SentenceIR ir(std::string_view wire) { return parse_ir(wire); }

}  // namespace

TEST(Names, VariablesAreLowercaseConstantsCapitalized) {
  EXPECT_TRUE(is_variable_name("x"));
  EXPECT_TRUE(is_variable_name("x12"));
  EXPECT_FALSE(is_variable_name("Tomato1"));
  EXPECT_TRUE(is_constant_name("Tomato1"));
  EXPECT_TRUE(is_constant_name("LargeBowl1"));
  EXPECT_FALSE(is_constant_name("tomato"));
  EXPECT_TRUE(is_predicate_name("greenChiliPepper"));
  EXPECT_FALSE(is_predicate_name("Pepper"));
}

TEST(Formula, FactoriesValidateNames) {
  EXPECT_THROW(Term::variable("X"), FormatError);
  EXPECT_THROW(Term::constant("x"), FormatError);
  EXPECT_THROW(Formula::atom("Box", {Term::variable("x")}), FormatError);
  EXPECT_THROW(Formula::atom("box", {}), ArityError);
  EXPECT_THROW(Formula::conjunction_of({}), FormatError);
}

TEST(Formula, ConjunctionOfFoldsLeft) {
  Formula f = Formula::conjunction_of({p("a", "x"), p("b", "x"), p("c", "x")});
  ASSERT_EQ(f.kind(), Formula::Kind::conjunction);
  EXPECT_EQ(f.lhs().kind(), Formula::Kind::conjunction);
  EXPECT_EQ(f.rhs(), p("c", "x"));
  EXPECT_EQ(conjuncts(f), (std::vector<Formula>{p("a", "x"), p("b", "x"), p("c", "x")}));
}

TEST(Formula, FreeAndBoundVariables) {
  Formula f = parse_formula("all x (box(x) -> inside(x, y)).");
  EXPECT_EQ(free_vars(f), (std::set<std::string>{"y"}));
  EXPECT_EQ(bound_vars(f), (std::set<std::string>{"x"}));
  EXPECT_FALSE(is_closed(f));
  EXPECT_TRUE(is_closed(parse_formula("exists y (all x (box(x) -> inside(x, y))).")));
}

TEST(Formula, ArityConflictsAreReported) {
  std::map<std::string, std::size_t> arities;
  collect_arities(parse_formula("fetch(x, y) & robot(x)."), arities);
  EXPECT_EQ(arities.at("fetch"), 2u);
  EXPECT_EQ(arities.at("robot"), 1u);
  EXPECT_THROW(collect_arities(parse_formula("robot(x, y)."), arities), ArityError);
}

TEST(Formula, ConstantsOf) {
  EXPECT_EQ(constants_of(parse_formula("robot(x0) & bowl(LargeBowl1) -> mix(x0, LargeBowl1, Whisk1).")),
            (std::set<std::string>{"LargeBowl1", "Whisk1"}));
}

TEST(Substitute, ReplacesFreeOccurrencesOnly) {
  Formula f = parse_formula("tomato(x) & cut(Robot1, x, Knife1).");
  EXPECT_EQ(format_formula(substitute(f, "x", Term::constant("Tomato1"))),
            "tomato(Tomato1) & cut(Robot1, Tomato1, Knife1)");
  EXPECT_THROW(substitute(parse_formula("p(x) & (exists x (q(x)))."), "x", Term::constant("A1")), CaptureError);
  EXPECT_THROW(substitute(f, "x", Term::variable("y")), FormatError);
}

TEST(Card, BodyMustMentionExactlyItsVariable) {
  EXPECT_NO_THROW(make_card("x", p("box", "x")));
  EXPECT_THROW(make_card("x", p("box", "y")), ArityError);
  EXPECT_THROW(make_card("x", parse_formula("box(x) & tray(y).")), ArityError);
  EXPECT_THROW(make_card("X", p("box", "x")), FormatError);
  EXPECT_THROW(make_scaled(0, make_card("x", p("box", "x"))), FormatError);
}

TEST(Constraint, RejectsLiteralOnlyAndNegative) {
  EXPECT_THROW(make_constraint(IntLit{1}, Comparison::lt, IntLit{2}), FormatError);
  EXPECT_THROW(make_constraint(make_card("x", p("box", "x")), Comparison::ge, IntLit{-1}), FormatError);
  EXPECT_THROW(make_bool_query(p("box", "x")), FreeVariableError);
}

TEST(Comparison, TextAndSemantics) {
  for (auto c : {Comparison::ge, Comparison::le, Comparison::eq, Comparison::gt, Comparison::lt})
    EXPECT_EQ(parse_comparison(to_string(c)), c);
  EXPECT_FALSE(parse_comparison("=").has_value());
  EXPECT_TRUE(compare(5, Comparison::ge, 5));
  EXPECT_FALSE(compare(5, Comparison::gt, 5));
  EXPECT_TRUE(compare(4, Comparison::lt, 5));
  EXPECT_TRUE(compare(2, Comparison::eq, 2));
}

TEST(CommandShape, SplitsAntecedentAndAction) {
  auto shape = command_shape(parse_formula("robot(x0) & onion(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."));
  ASSERT_TRUE(shape);
  EXPECT_EQ(shape->antecedent.size(), 3u);
  EXPECT_EQ(shape->action.predicate(), "cut");
  EXPECT_FALSE(command_shape(parse_formula("robot(x) -> -fetch(x, y).")).has_value());
  EXPECT_FALSE(command_shape(parse_formula("robot(x) & box(y).")).has_value());
}

TEST(CheckIr, StructuralInvariants) {
  SentenceIR bad = SentenceIR::invalid();
  bad.commands.push_back(parse_formula("robot(x0) -> fetch(x0, x0)."));
  EXPECT_THROW(check_ir(bad), FormatError);

  SentenceIR q;
  q.kind = SentenceKind::query;
  EXPECT_THROW(check_ir(q), FormatError);

  SentenceIR c = SentenceIR::command({}, parse_formula("robot(x0) & box(x1) -> fetch(x0, x1)."));
  EXPECT_NO_THROW(check_ir(c));
  c.commands.push_back(c.commands.front());
  EXPECT_THROW(check_ir(c), FormatError);
}

TEST(CanonicalRename, NumbersVariablesByFirstOccurrence) {
  SentenceIR a = ir(R"({"type": "command", "expressions": [["|exists k (whisk(k)).| >= 1"]],
                        "commands": ["robot(r) & bowl(Bowl1) & whisk(k) -> mix(r, Bowl1, k)."]})");
  EXPECT_EQ(serialize_ir(canonical_rename(a)),
            R"({"type": "command", "expressions": [["|exists x1 (whisk(x1)).| >= 1"]], )"
            R"("commands": ["robot(x0) & bowl(Bowl1) & whisk(x1) -> mix(x0, Bowl1, x1)."]})");
}

TEST(AlphaEquivalence, IgnoresVariableNamesOnly) {
  SentenceIR expected = ir("{'type':'command','expressions':[['|exists x2 (whisk(x2)).| >= 1']], "
                           "'commands':['robot(x0) & bowl(Bowl1) & whisk(x2) -> mix(x0, Bowl1, x2).']}");
  SentenceIR produced = ir("{'type':'command','expressions':[['|exists x1 (whisk(x1)).| >= 1']], "
                           "'commands':['robot(x0) & bowl(Bowl1) & whisk(x1) -> mix(x0, Bowl1, x1).']}");
  EXPECT_TRUE(alpha_equivalent(expected, produced));
  EXPECT_FALSE(alpha_equivalent(ir("{'type':'query','expressions':['all x0 (pepper(x0) -> -redPepper(x0)).']}"),
                                ir("{'type':'query','expressions':['all x0 (pepper(x0) -> redPepper(x0)).']}")));
  // Conjunct order is structure, not naming.
  EXPECT_FALSE(alpha_equivalent(ir(R"({"type": "query", "expressions": ["|exists x (a(x) & b(x)).| > 1"]})"),
                                ir(R"({"type": "query", "expressions": ["|exists x (b(x) & a(x)).| > 1"]})")));
}

TEST(AlphaEquivalence, SharedCommandVariablesMustStayShared) {
  // x2 in the constraint is the same object as x2 in the command.
  SentenceIR tied = ir(R"({"type": "command", "expressions": [["|exists x2 (whisk(x2)).| >= 1"]],
                           "commands": ["robot(x0) & whisk(x2) -> mix(x0, Bowl1, x2)."]})");
  SentenceIR split = ir(R"({"type": "command", "expressions": [["|exists x3 (whisk(x3)).| >= 1"]],
                            "commands": ["robot(x0) & whisk(x2) -> mix(x0, Bowl1, x2)."]})");
  EXPECT_FALSE(alpha_equivalent(tied, split));
}
