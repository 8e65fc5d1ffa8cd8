#include "cardinal/logic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "cardinal/error.hpp"
#include "cardinal/text.hpp"

namespace cardinal {

namespace {

bool is_alnum_tail(std::string_view s, bool allow_underscore) {
  return std::all_of(s.begin() + 1, s.end(), [&](unsigned char c) {
    return std::isalnum(c) || (allow_underscore && c == '_');
  });
}

}  // namespace

bool is_variable_name(std::string_view name) {
  return !name.empty() && std::islower(static_cast<unsigned char>(name[0])) &&
         is_alnum_tail(name, false) && name != "all" && name != "exists";
}

bool is_constant_name(std::string_view name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0])) &&
         is_alnum_tail(name, false);
}

bool is_predicate_name(std::string_view name) {
  return !name.empty() && std::islower(static_cast<unsigned char>(name[0])) &&
         is_alnum_tail(name, true) && name != "all" && name != "exists";
}

Term Term::variable(std::string name) {
  if (!is_variable_name(name)) throw FormatError("invalid variable name '" + name + "'");
  return Term{Kind::variable, std::move(name)};
}

Term Term::constant(std::string name) {
  if (!is_constant_name(name)) throw FormatError("invalid constant name '" + name + "'");
  return Term{Kind::constant, std::move(name)};
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  if (!is_predicate_name(predicate)) throw FormatError("invalid predicate name '" + predicate + "'");
  if (args.empty()) throw ArityError("predicate '" + predicate + "' needs at least one argument");
  return Formula(std::make_shared<const Node>(Node{Kind::atom, std::move(predicate), std::move(args), {}}));
}

Formula Formula::negation(Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::negation, {}, {}, {std::move(body)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::conjunction, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::disjunction, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::implication, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  if (!is_variable_name(var)) throw FormatError("invalid variable name '" + var + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::forall, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists(std::string var, Formula body) {
  if (!is_variable_name(var)) throw FormatError("invalid variable name '" + var + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::exists, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::conjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) throw FormatError("empty conjunction");
  Formula result = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) result = conjunction(result, parts[i]);
  return result;
}

bool Formula::is_binary() const {
  return kind() == Kind::conjunction || kind() == Kind::disjunction || kind() == Kind::implication;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.args == y.args && x.children == y.children;
}

std::string_view to_string(Comparison cmp) {
  switch (cmp) {
    case Comparison::ge: return ">=";
    case Comparison::le: return "<=";
    case Comparison::eq: return "==";
    case Comparison::gt: return ">";
    case Comparison::lt: return "<";
  }
  return "?";
}

std::optional<Comparison> parse_comparison(std::string_view text) {
  if (text == ">=") return Comparison::ge;
  if (text == "<=") return Comparison::le;
  if (text == "==") return Comparison::eq;
  if (text == ">") return Comparison::gt;
  if (text == "<") return Comparison::lt;
  return std::nullopt;
}

bool compare(std::int64_t lhs, Comparison cmp, std::int64_t rhs) {
  switch (cmp) {
    case Comparison::ge: return lhs >= rhs;
    case Comparison::le: return lhs <= rhs;
    case Comparison::eq: return lhs == rhs;
    case Comparison::gt: return lhs > rhs;
    case Comparison::lt: return lhs < rhs;
  }
  return false;
}

std::string_view to_string(SentenceKind kind) {
  switch (kind) {
    case SentenceKind::command: return "command";
    case SentenceKind::query: return "query";
    case SentenceKind::invalid: return "invalid";
  }
  return "invalid";
}

SentenceIR SentenceIR::invalid() { return SentenceIR{}; }

SentenceIR SentenceIR::query(std::vector<QueryExpr> expressions) {
  SentenceIR ir;
  ir.kind = SentenceKind::query;
  ir.query_expressions = std::move(expressions);
  return ir;
}

SentenceIR SentenceIR::command(std::vector<CardConstraint> constraints, Formula command) {
  SentenceIR ir;
  ir.kind = SentenceKind::command;
  ir.command_expressions.push_back(std::move(constraints));
  ir.commands.push_back(std::move(command));
  return ir;
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void walk_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      for (const auto& t : f.args())
        if (t.is_variable() && !bound.count(t.name)) out.insert(t.name);
      return;
    case Formula::Kind::negation:
      walk_free(f.body(), bound, out);
      return;
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      const bool fresh = bound.insert(f.variable()).second;
      walk_free(f.body(), bound, out);
      if (fresh) bound.erase(f.variable());
      return;
    }
    default:
      walk_free(f.lhs(), bound, out);
      walk_free(f.rhs(), bound, out);
  }
}

void walk_bound(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::atom: return;
    case Formula::Kind::negation: walk_bound(f.body(), out); return;
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      out.insert(f.variable());
      walk_bound(f.body(), out);
      return;
    default:
      walk_bound(f.lhs(), out);
      walk_bound(f.rhs(), out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  walk_free(f, bound, out);
  return out;
}

std::set<std::string> bound_vars(const Formula& f) {
  std::set<std::string> out;
  walk_bound(f, out);
  return out;
}

bool is_closed(const Formula& f) { return free_vars(f).empty(); }

void collect_arities(const Formula& f, std::map<std::string, std::size_t>& arities) {
  switch (f.kind()) {
    case Formula::Kind::atom: {
      auto [it, inserted] = arities.emplace(f.predicate(), f.args().size());
      if (!inserted && it->second != f.args().size())
        throw ArityError("predicate '" + f.predicate() + "' used with arity " + std::to_string(f.args().size()) +
                         " and " + std::to_string(it->second));
      return;
    }
    case Formula::Kind::negation:
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      collect_arities(f.body(), arities);
      return;
    default:
      collect_arities(f.lhs(), arities);
      collect_arities(f.rhs(), arities);
  }
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atom()) {
      for (const auto& t : g.args())
        if (t.is_constant()) out.insert(t.name);
    } else if (g.is_binary()) {
      walk(g.lhs());
      walk(g.rhs());
    } else {
      walk(g.body());
    }
  };
  walk(f);
  return out;
}

namespace {

Formula substitute_free(const Formula& f, const std::string& var, const Term& c) {
  switch (f.kind()) {
    case Formula::Kind::atom: {
      std::vector<Term> args = f.args();
      for (auto& t : args)
        if (t.is_variable() && t.name == var) t = c;
      return Formula::atom(f.predicate(), std::move(args));
    }
    case Formula::Kind::negation:
      return Formula::negation(substitute_free(f.body(), var, c));
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      if (f.variable() == var) return f;
      return f.kind() == Formula::Kind::forall ? Formula::forall(f.variable(), substitute_free(f.body(), var, c))
                                               : Formula::exists(f.variable(), substitute_free(f.body(), var, c));
    case Formula::Kind::conjunction:
      return Formula::conjunction(substitute_free(f.lhs(), var, c), substitute_free(f.rhs(), var, c));
    case Formula::Kind::disjunction:
      return Formula::disjunction(substitute_free(f.lhs(), var, c), substitute_free(f.rhs(), var, c));
    case Formula::Kind::implication:
      return Formula::implication(substitute_free(f.lhs(), var, c), substitute_free(f.rhs(), var, c));
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& f, const std::string& var, const Term& c) {
  if (!c.is_constant()) throw FormatError("substitute expects a constant, got '" + c.name + "'");
  if (!free_vars(f).count(var)) return f;
  if (bound_vars(f).count(var))
    throw CaptureError("variable '" + var + "' occurs both free and bound in '" + format_formula(f) + "'");
  return substitute_free(f, var, c);
}

// ---------------------------------------------------------------------------
// Validated constructors

Card make_card(std::string var, Formula body) {
  if (!is_variable_name(var)) throw FormatError("invalid cardinality variable '" + var + "'");
  const auto fv = free_vars(body);
  if (fv != std::set<std::string>{var}) {
    std::string got;
    for (const auto& v : fv) got += (got.empty() ? "" : ", ") + v;
    throw ArityError("cardinality body must have exactly the free variable '" + var + "', found {" + got + "}");
  }
  return Card{std::move(var), std::move(body)};
}

ScaledCard make_scaled(std::int64_t factor, Card inner) {
  if (factor < 1) throw FormatError("scaling factor must be positive, got " + std::to_string(factor));
  return ScaledCard{factor, std::move(inner)};
}

CardConstraint make_constraint(CardTerm lhs, Comparison cmp, CardTerm rhs) {
  if (std::holds_alternative<IntLit>(lhs) && std::holds_alternative<IntLit>(rhs))
    throw FormatError("constraint compares two integer literals");
  for (const CardTerm* t : {&lhs, &rhs})
    if (const auto* lit = std::get_if<IntLit>(t); lit && lit->value < 0)
      throw FormatError("negative integer literal in constraint");
  return CardConstraint{std::move(lhs), cmp, std::move(rhs)};
}

BoolQuery make_bool_query(Formula formula) {
  const auto fv = free_vars(formula);
  if (!fv.empty()) throw FreeVariableError("query formula has free variable '" + *fv.begin() + "'");
  return BoolQuery{std::move(formula)};
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f.kind() != Formula::Kind::conjunction) return {f};
  auto out = conjuncts(f.lhs());
  auto rest = conjuncts(f.rhs());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::optional<CommandShape> command_shape(const Formula& command) {
  if (command.kind() != Formula::Kind::implication || !command.rhs().is_atom()) return std::nullopt;
  return CommandShape{conjuncts(command.lhs()), command.rhs()};
}

void check_ir(const SentenceIR& ir) {
  switch (ir.kind) {
    case SentenceKind::invalid:
      if (!ir.command_expressions.empty() || !ir.query_expressions.empty() || !ir.commands.empty())
        throw FormatError("an invalid sentence carries no expressions or commands");
      return;
    case SentenceKind::query:
      if (ir.query_expressions.empty()) throw FormatError("a query needs at least one expression");
      if (!ir.command_expressions.empty() || !ir.commands.empty())
        throw FormatError("a query carries no commands");
      return;
    case SentenceKind::command:
      if (!ir.query_expressions.empty()) throw FormatError("a command uses nested expression lists");
      if (ir.commands.size() != 1 || ir.command_expressions.size() != 1)
        throw FormatError("a command carries exactly one command and one expression list");
      for (const auto& c : ir.commands)
        if (!command_shape(c)) throw FormatError("command '" + format_formula(c) + "' is not an implication with an atom consequent");
      return;
  }
}

// ---------------------------------------------------------------------------
// Canonical renaming

namespace {

class Renamer {
 public:
  // Starts a new top-level formula: free variables get fresh names again.
  void begin_formula() { free_.clear(); }

  Formula rename(const Formula& f) { return walk(f); }

  // Command constraints bind the command's own variables: `|exists x1 ...|`
  // next to `cut(x0, x1, x2)` counts the objects x1 ranges over.
  void link(std::map<std::string, std::string> names) { links_ = std::move(names); }
  const std::map<std::string, std::string>& free_names() const { return free_; }

  Card rename(const Card& c) {
    const auto linked = links_.find(c.var);
    const std::string fresh = linked != links_.end() ? linked->second : next();
    scopes_.emplace_back(c.var, fresh);
    Formula body = walk(c.body);
    scopes_.pop_back();
    return Card{fresh, std::move(body)};
  }

  CardTerm rename(const CardTerm& t) {
    return std::visit(
        [&](const auto& v) -> CardTerm {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, IntLit>) return v;
          else if constexpr (std::is_same_v<T, Card>) return rename(v);
          else return ScaledCard{v.factor, rename(v.inner)};
        },
        t);
  }

  CardConstraint rename(const CardConstraint& c) {
    CardTerm lhs = rename(c.lhs);
    CardTerm rhs = rename(c.rhs);
    return CardConstraint{std::move(lhs), c.cmp, std::move(rhs)};
  }

  QueryExpr rename(const QueryExpr& q) {
    return std::visit(
        [&](const auto& v) -> QueryExpr {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, BoolQuery>) return BoolQuery{rename(v.formula)};
          else if constexpr (std::is_same_v<T, CardConstraint>) return rename(v);
          else return CountQuery{rename(v.card)};
        },
        q);
  }

 private:
  std::string next() { return "x" + std::to_string(counter_++); }

  std::string lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
      if (it->first == name) return it->second;
    auto found = free_.find(name);
    if (found != free_.end()) return found->second;
    return free_[name] = next();
  }

  Formula walk(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::atom: {
        std::vector<Term> args = f.args();
        for (auto& t : args)
          if (t.is_variable()) t.name = lookup(t.name);
        return Formula::atom(f.predicate(), std::move(args));
      }
      case Formula::Kind::negation:
        return Formula::negation(walk(f.body()));
      case Formula::Kind::forall:
      case Formula::Kind::exists: {
        const std::string fresh = next();
        scopes_.emplace_back(f.variable(), fresh);
        Formula body = walk(f.body());
        scopes_.pop_back();
        return f.kind() == Formula::Kind::forall ? Formula::forall(fresh, std::move(body))
                                                 : Formula::exists(fresh, std::move(body));
      }
      case Formula::Kind::conjunction: {
        Formula l = walk(f.lhs());
        return Formula::conjunction(std::move(l), walk(f.rhs()));
      }
      case Formula::Kind::disjunction: {
        Formula l = walk(f.lhs());
        return Formula::disjunction(std::move(l), walk(f.rhs()));
      }
      case Formula::Kind::implication: {
        Formula l = walk(f.lhs());
        return Formula::implication(std::move(l), walk(f.rhs()));
      }
    }
    return f;
  }

  int counter_ = 0;
  std::map<std::string, std::string> free_;
  std::vector<std::pair<std::string, std::string>> scopes_;
  std::map<std::string, std::string> links_;
};

}  // namespace

SentenceIR canonical_rename(const SentenceIR& ir) {
  Renamer r;
  SentenceIR out;
  out.kind = ir.kind;
  std::map<std::string, std::string> command_vars;
  for (const auto& c : ir.commands) {
    r.begin_formula();
    out.commands.push_back(r.rename(c));
    command_vars.insert(r.free_names().begin(), r.free_names().end());
  }
  r.link(std::move(command_vars));
  for (const auto& group : ir.command_expressions) {
    std::vector<CardConstraint> renamed;
    for (const auto& c : group) {
      r.begin_formula();
      renamed.push_back(r.rename(c));
    }
    out.command_expressions.push_back(std::move(renamed));
  }
  r.link({});
  for (const auto& q : ir.query_expressions) {
    r.begin_formula();
    out.query_expressions.push_back(r.rename(q));
  }
  return out;
}

bool alpha_equivalent(const SentenceIR& a, const SentenceIR& b) {
  return canonical_rename(a) == canonical_rename(b);
}

}  // namespace cardinal
