#include "cardinal/reasoner.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "cardinal/error.hpp"

namespace cardinal {

std::size_t Interpretation::index_of(const std::string& constant) const {
  auto it = index_.find(constant);
  if (it == index_.end()) throw UnknownConstant("unknown constant '" + constant + "'");
  return it->second;
}

const std::set<Tuple>& Interpretation::extension(const std::string& predicate) const {
  auto it = extensions_.find(predicate);
  if (it == extensions_.end()) throw UnknownPredicate("unknown predicate '" + predicate + "'");
  return it->second.tuples;
}

bool Interpretation::holds(const std::string& predicate, const Tuple& args) const {
  auto it = extensions_.find(predicate);
  if (it == extensions_.end()) throw UnknownPredicate("unknown predicate '" + predicate + "'");
  if (it->second.arity != args.size())
    throw ArityError("predicate '" + predicate + "' has arity " + std::to_string(it->second.arity) + ", applied to " +
                     std::to_string(args.size()) + " arguments");
  return it->second.tuples.count(args) > 0;
}

std::vector<std::string> Interpretation::members(const std::string& predicate) const {
  std::vector<std::string> out;
  for (const auto& t : extension(predicate))
    if (t.size() == 1) out.push_back(domain_[t[0]]);
  return out;
}

std::map<std::string, std::size_t> Interpretation::arities() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [name, ext] : extensions_) out.emplace(name, ext.arity);
  return out;
}

namespace {

std::string describe_assignment(const std::vector<std::string>& vars, const Tuple& values,
                                const std::vector<std::string>& domain) {
  if (vars.empty()) return "the world";
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ", ";
    out += vars[i] + "=" + domain[values[i]];
  }
  return out;
}

// Calls visit for every tuple in domain^arity, lexicographically.
void for_each_tuple(std::size_t domain, std::size_t arity, const std::function<bool(const Tuple&)>& visit) {
  if (arity > 0 && domain == 0) return;
  Tuple t(arity, 0);
  for (;;) {
    if (!visit(t)) return;
    std::size_t i = arity;
    while (i > 0) {
      if (++t[i - 1] < domain) break;
      t[i - 1] = 0;
      --i;
    }
    if (i == 0) return;
  }
}

}  // namespace

Interpretation build_interpretation(const SensorsDoc& sensors, const KnowledgeDoc& knowledge) {
  check_sensors(sensors);
  Interpretation w;
  w.domain_ = sensors.distinct;
  for (std::size_t i = 0; i < w.domain_.size(); ++i) w.index_.emplace(w.domain_[i], i);

  std::map<std::string, std::size_t> arities = knowledge.arities();
  for (const auto& f : sensors.facts) collect_arities(f, arities);
  for (const auto& [name, arity] : arities) w.extensions_[name].arity = arity;

  // unary premise -> consequents
  std::map<std::string, std::vector<std::string>> implied;
  for (const auto& rule : knowledge.classification)
    implied[rule.lhs().predicate()].push_back(rule.rhs().predicate());

  std::deque<std::pair<std::string, std::size_t>> agenda;
  for (const auto& fact : sensors.facts) {
    Tuple t;
    for (const auto& a : fact.args()) t.push_back(w.index_of(a.name));
    if (w.extensions_[fact.predicate()].tuples.insert(t).second && t.size() == 1)
      agenda.emplace_back(fact.predicate(), t[0]);
  }
  while (!agenda.empty()) {
    auto [pred, element] = agenda.front();
    agenda.pop_front();
    auto it = implied.find(pred);
    if (it == implied.end()) continue;
    for (const auto& consequent : it->second)
      if (w.extensions_[consequent].tuples.insert(Tuple{element}).second) agenda.emplace_back(consequent, element);
  }

  for (const auto& rule : knowledge.distinction) {
    const auto fv = free_vars(rule);
    const std::vector<std::string> vars(fv.begin(), fv.end());
    for_each_tuple(w.size(), vars.size(), [&](const Tuple& values) {
      Env env;
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = values[i];
      if (!eval_formula(w, rule, env))
        throw InconsistentWorld(format_formula(rule), describe_assignment(vars, values, w.domain_));
      return true;
    });
  }
  return w;
}

namespace {

bool eval(const Interpretation& w, const Formula& f, Env& env) {
  switch (f.kind()) {
    case Formula::Kind::atom: {
      Tuple t;
      t.reserve(f.args().size());
      for (const auto& a : f.args()) {
        if (a.is_constant()) {
          t.push_back(w.index_of(a.name));
        } else {
          auto it = env.find(a.name);
          if (it == env.end()) throw FreeVariableError("unbound variable '" + a.name + "'");
          t.push_back(it->second);
        }
      }
      return w.holds(f.predicate(), t);
    }
    case Formula::Kind::negation: return !eval(w, f.body(), env);
    case Formula::Kind::conjunction: return eval(w, f.lhs(), env) && eval(w, f.rhs(), env);
    case Formula::Kind::disjunction: return eval(w, f.lhs(), env) || eval(w, f.rhs(), env);
    case Formula::Kind::implication: return !eval(w, f.lhs(), env) || eval(w, f.rhs(), env);
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      const bool universal = f.kind() == Formula::Kind::forall;
      auto saved = env.find(f.variable());
      const bool had = saved != env.end();
      const std::size_t old = had ? saved->second : 0;
      bool result = universal;
      for (std::size_t d = 0; d < w.size(); ++d) {
        env[f.variable()] = d;
        if (eval(w, f.body(), env) != universal) {
          result = !universal;
          break;
        }
      }
      if (had) env[f.variable()] = old;
      else env.erase(f.variable());
      return result;
    }
  }
  return false;
}

}  // namespace

bool eval_formula(const Interpretation& world, const Formula& f, const Env& env) {
  Env scratch = env;
  return eval(world, f, scratch);
}

std::int64_t count_witnesses(const Interpretation& world, const Card& card) {
  Env env;
  std::int64_t n = 0;
  for (std::size_t d = 0; d < world.size(); ++d) {
    env[card.var] = d;
    if (eval(world, card.body, env)) ++n;
  }
  return n;
}

std::int64_t eval_card_term(const Interpretation& world, const CardTerm& term) {
  return std::visit(
      [&](const auto& v) -> std::int64_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntLit>) return v.value;
        else if constexpr (std::is_same_v<T, Card>) return count_witnesses(world, v);
        else return v.factor * count_witnesses(world, v.inner);
      },
      term);
}

bool eval_constraint(const Interpretation& world, const CardConstraint& c) {
  return compare(eval_card_term(world, c.lhs), c.cmp, eval_card_term(world, c.rhs));
}

QueryValue eval_query(const Interpretation& world, const QueryExpr& q) {
  return std::visit(
      [&](const auto& v) -> QueryValue {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoolQuery>) return eval_formula(world, v.formula);
        else if constexpr (std::is_same_v<T, CardConstraint>) return eval_constraint(world, v);
        else return count_witnesses(world, v.card);
      },
      q);
}

QueryValue answer_query(const Interpretation& world, const SentenceIR& ir) {
  if (ir.kind != SentenceKind::query) throw FormatError("not a query");
  if (ir.query_expressions.size() == 1) return eval_query(world, ir.query_expressions.front());
  bool all = true;
  for (const auto& q : ir.query_expressions) {
    const QueryValue v = eval_query(world, q);
    if (!std::holds_alternative<bool>(v)) throw FormatError("a count query cannot be combined with other expressions");
    all = all && std::get<bool>(v);
  }
  return all;
}

std::string format_value(const QueryValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::to_string(std::get<std::int64_t>(v));
}

// ---------------------------------------------------------------------------
// Enumeration oracle. Deliberately naive: ground atoms as strings, saturation
// by repeated passes, ground evaluation by substitution.

namespace {

using GroundFacts = std::set<std::string>;

std::string ground_key(const std::string& predicate, const std::vector<std::string>& args) {
  std::string key = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) key += (i ? "," : "") + args[i];
  return key + ")";
}

bool ground_eval(const Formula& f, const GroundFacts& facts, const std::set<std::string>& known) {
  switch (f.kind()) {
    case Formula::Kind::atom: {
      std::vector<std::string> args;
      for (const auto& a : f.args()) {
        if (!a.is_constant()) throw FreeVariableError("unbound variable '" + a.name + "'");
        args.push_back(a.name);
      }
      if (!known.count(f.predicate())) throw UnknownPredicate("unknown predicate '" + f.predicate() + "'");
      return facts.count(ground_key(f.predicate(), args)) > 0;
    }
    case Formula::Kind::negation: return !ground_eval(f.body(), facts, known);
    case Formula::Kind::conjunction: return ground_eval(f.lhs(), facts, known) && ground_eval(f.rhs(), facts, known);
    case Formula::Kind::disjunction: return ground_eval(f.lhs(), facts, known) || ground_eval(f.rhs(), facts, known);
    case Formula::Kind::implication: return !ground_eval(f.lhs(), facts, known) || ground_eval(f.rhs(), facts, known);
    default: throw FormatError("enumeration goal body must be quantifier-free");
  }
}

bool quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  if (f.is_atom()) return true;
  if (f.kind() == Formula::Kind::negation) return quantifier_free(f.body());
  return quantifier_free(f.lhs()) && quantifier_free(f.rhs());
}

}  // namespace

std::vector<Assignment> enumerate_models(const SensorsDoc& sensors, const KnowledgeDoc& knowledge,
                                         const Formula& goal) {
  check_sensors(sensors);
  if (sensors.domain_size > kMaxEnumerationDomain)
    throw ScaleError("enumeration oracle supports at most " + std::to_string(kMaxEnumerationDomain) + " elements");

  std::vector<std::string> vars;
  const Formula* body = &goal;
  while (body->kind() == Formula::Kind::exists) {
    vars.push_back(body->variable());
    body = &body->body();
  }
  if (!quantifier_free(*body)) throw FormatError("goal must be an existential prefix over a quantifier-free body");
  {
    std::set<std::string> left = free_vars(*body);
    for (const auto& v : vars) left.erase(v);
    if (!left.empty()) throw FreeVariableError("goal has free variable '" + *left.begin() + "'");
  }

  std::set<std::string> known = knowledge.predicates();
  GroundFacts facts;
  for (const auto& f : sensors.facts) {
    std::vector<std::string> args;
    for (const auto& a : f.args()) args.push_back(a.name);
    facts.insert(ground_key(f.predicate(), args));
    known.insert(f.predicate());
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& rule : knowledge.classification) {
      const std::string var = rule.lhs().args()[0].name;
      for (const auto& c : sensors.distinct) {
        const Term t = Term::constant(c);
        if (ground_eval(substitute(rule.lhs(), var, t), facts, known) &&
            facts.insert(ground_key(rule.rhs().predicate(), {c})).second)
          changed = true;
      }
    }
  }

  std::vector<Assignment> out;
  const std::size_t n = sensors.distinct.size();
  std::vector<std::size_t> idx(vars.size(), 0);
  if (n == 0 && !vars.empty()) return out;
  for (;;) {
    Formula ground = *body;
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      ground = substitute(ground, vars[i], Term::constant(sensors.distinct[idx[i]]));
      a.emplace_back(vars[i], sensors.distinct[idx[i]]);
    }
    if (ground_eval(ground, facts, known)) out.push_back(std::move(a));
    std::size_t i = vars.size();
    while (i > 0) {
      if (++idx[i - 1] < n) break;
      idx[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

}  // namespace cardinal
