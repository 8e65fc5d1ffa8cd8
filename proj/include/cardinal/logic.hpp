#pragma once

// First-order formulas extended with cardinality terms, and the sentence-level
// representation produced by the translator.
//
// All values are immutable once built. Formula nodes are shared, so copying a
// Formula is cheap and values can be passed between threads freely.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cardinal {

bool is_variable_name(std::string_view name);
bool is_constant_name(std::string_view name);
bool is_predicate_name(std::string_view name);

struct Term {
  enum class Kind { variable, constant };

  Kind kind = Kind::variable;
  std::string name;

  static Term variable(std::string name);
  static Term constant(std::string name);

  bool is_variable() const { return kind == Kind::variable; }
  bool is_constant() const { return kind == Kind::constant; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

class Formula {
 public:
  enum class Kind { atom, negation, conjunction, disjunction, implication, forall, exists };

  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula negation(Formula body);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  // Left-nested conjunction of the given conjuncts; requires a non-empty list.
  static Formula conjunction_of(const std::vector<Formula>& conjuncts);

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return kind() == Kind::atom; }
  bool is_binary() const;
  bool is_quantifier() const { return kind() == Kind::forall || kind() == Kind::exists; }

  // atom
  const std::string& predicate() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  // quantifier
  const std::string& variable() const { return node_->name; }
  // negation and quantifiers
  const Formula& body() const { return node_->children.front(); }
  // binary connectives
  const Formula& lhs() const { return node_->children.front(); }
  const Formula& rhs() const { return node_->children.back(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// |exists var (body)| : number of domain elements satisfying body.
struct Card {
  std::string var;
  Formula body;

  friend bool operator==(const Card&, const Card&) = default;
};

struct IntLit {
  std::int64_t value = 0;
  friend bool operator==(const IntLit&, const IntLit&) = default;
};

struct ScaledCard {
  std::int64_t factor = 1;
  Card inner;
  friend bool operator==(const ScaledCard&, const ScaledCard&) = default;
};

using CardTerm = std::variant<IntLit, Card, ScaledCard>;

enum class Comparison { ge, le, eq, gt, lt };

std::string_view to_string(Comparison cmp);
std::optional<Comparison> parse_comparison(std::string_view text);
bool compare(std::int64_t lhs, Comparison cmp, std::int64_t rhs);

struct CardConstraint {
  CardTerm lhs;
  Comparison cmp = Comparison::ge;
  CardTerm rhs;

  friend bool operator==(const CardConstraint&, const CardConstraint&) = default;
};

struct BoolQuery {
  Formula formula;
  friend bool operator==(const BoolQuery&, const BoolQuery&) = default;
};

struct CountQuery {
  Card card;
  friend bool operator==(const CountQuery&, const CountQuery&) = default;
};

using QueryExpr = std::variant<BoolQuery, CardConstraint, CountQuery>;

enum class SentenceKind { command, query, invalid };

std::string_view to_string(SentenceKind kind);

struct SentenceIR {
  SentenceKind kind = SentenceKind::invalid;
  // kind == command: one inner list per command.
  std::vector<std::vector<CardConstraint>> command_expressions;
  // kind == query.
  std::vector<QueryExpr> query_expressions;
  // kind == command: implications with an action atom as consequent.
  std::vector<Formula> commands;

  static SentenceIR invalid();
  static SentenceIR query(std::vector<QueryExpr> expressions);
  static SentenceIR command(std::vector<CardConstraint> constraints, Formula command);

  friend bool operator==(const SentenceIR&, const SentenceIR&) = default;
};

// Validated constructors. They throw ArityError / FreeVariableError / FormatError
// when the value would break an invariant of its type.
Card make_card(std::string var, Formula body);
ScaledCard make_scaled(std::int64_t factor, Card inner);
CardConstraint make_constraint(CardTerm lhs, Comparison cmp, CardTerm rhs);
BoolQuery make_bool_query(Formula formula);

// Throws FormatError if the IR breaks a structural invariant of its kind.
void check_ir(const SentenceIR& ir);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> bound_vars(const Formula& f);
bool is_closed(const Formula& f);

// Predicate name -> arity for every atom in f. Throws ArityError when one
// predicate is used with two different arities.
void collect_arities(const Formula& f, std::map<std::string, std::size_t>& arities);
std::set<std::string> constants_of(const Formula& f);

// Replaces the free occurrences of var by the constant c. Throws CaptureError
// when var occurs both free and bound in f.
Formula substitute(const Formula& f, const std::string& var, const Term& c);

// Renames every variable to x0, x1, ... in first-occurrence order (commands
// first, then expressions). Each binder gets its own fresh name, except that a
// command constraint binding one of the command's variables reuses that
// variable's name; the free variables of one top-level formula share a name
// per identifier.
SentenceIR canonical_rename(const SentenceIR& ir);
bool alpha_equivalent(const SentenceIR& a, const SentenceIR& b);

// Pieces of the command formula `a1 & ... & an -> action(args)`.
struct CommandShape {
  std::vector<Formula> antecedent;  // flattened conjuncts
  Formula action;                   // consequent atom
};
std::optional<CommandShape> command_shape(const Formula& command);

// Flattens nested conjunctions into their conjuncts, left to right.
std::vector<Formula> conjuncts(const Formula& f);

}  // namespace cardinal
