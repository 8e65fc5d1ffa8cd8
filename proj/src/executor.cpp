#include "cardinal/executor.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "cardinal/error.hpp"

namespace cardinal {

namespace {

using ojson = nlohmann::ordered_json;

std::string format_call(const std::string& action, const std::vector<std::string>& args) {
  std::string out = action + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i];
  return out + ")";
}

bool holds_unary(const Interpretation& world, const std::string& predicate, std::size_t element) {
  if (!world.knows(predicate)) return false;
  return world.holds(predicate, {element});
}

// How many objects a variable asks for, read off the `>= n` style
// constraints on it.
std::optional<std::size_t> requested_count(const std::vector<CardConstraint>& constraints, const std::string& var) {
  std::optional<std::size_t> n;
  for (const auto& c : constraints) {
    const auto* card = std::get_if<Card>(&c.lhs);
    const auto* lit = std::get_if<IntLit>(&c.rhs);
    if (!card || !lit || card->var != var) continue;
    std::int64_t want = 0;
    switch (c.cmp) {
      case Comparison::ge:
      case Comparison::eq: want = lit->value; break;
      case Comparison::gt: want = lit->value + 1; break;
      default: continue;
    }
    if (want > 0) n = std::max<std::size_t>(n.value_or(0), static_cast<std::size_t>(want));
  }
  return n;
}

}  // namespace

std::vector<std::string> select_objects(const Interpretation& world, const std::string& type_predicate, std::size_t n) {
  std::vector<std::string> members = world.knows(type_predicate) ? world.members(type_predicate)
                                                                 : std::vector<std::string>{};
  if (members.size() < n) throw Insufficient(members.size(), n);
  members.resize(n);
  return members;
}

std::optional<std::string> blocked_by(const KnowledgeDoc& knowledge, const Interpretation& world,
                                      const std::string& action, const std::vector<std::string>& args) {
  bool permitted = false;
  for (const auto& rule : knowledge.commands) {
    if (rule.kind() != Formula::Kind::implication) continue;
    const bool negative = rule.rhs().kind() == Formula::Kind::negation;
    const Formula& head = negative ? rule.rhs().body() : rule.rhs();
    if (!head.is_atom() || head.predicate() != action || head.args().size() != args.size()) continue;
    Env env;
    bool matches = true;
    for (std::size_t i = 0; i < args.size() && matches; ++i) {
      const Term& t = head.args()[i];
      if (t.is_constant()) {
        matches = t.name == args[i];
        continue;
      }
      const std::size_t element = world.index_of(args[i]);
      auto [it, inserted] = env.emplace(t.name, element);
      matches = inserted || it->second == element;
    }
    if (!matches || !eval_formula(world, rule.lhs(), env)) continue;
    if (negative) return "blocked by command rule '" + format_formula(rule) + "' for " + format_call(action, args);
    permitted = true;
  }
  if (!permitted) return "no command rule permits " + format_call(action, args);
  return std::nullopt;
}

ValidationResult validate(const SentenceIR& ir, const Interpretation& world, const KnowledgeDoc& knowledge,
                          const SelectionOptions& options) {
  ValidationResult result;
  if (ir.kind != SentenceKind::command || ir.commands.size() != 1 || ir.command_expressions.size() != 1) {
    result.reasons.push_back("not a single command");
    return result;
  }
  const auto& constraints = ir.command_expressions.front();
  bool all_hold = true;
  for (const auto& c : constraints) {
    ConstraintCheck check{format_constraint(c), false};
    try {
      check.holds = eval_constraint(world, c);
    } catch (const Error& e) {
      result.reasons.push_back(check.text + ": " + e.what());
    }
    if (!check.holds) {
      all_hold = false;
      result.reasons.push_back("constraint " + check.text + " is false");
    }
    result.constraints.push_back(std::move(check));
  }

  const auto shape = command_shape(ir.commands.front());
  if (!shape) {
    result.reasons.push_back("command is not an implication with an action atom");
    return result;
  }
  result.action = shape->action.predicate();
  const auto& args = shape->action.args();

  // Unary restrictions per argument.
  std::map<Term, std::vector<std::string>> restrictions;
  for (const auto& atom : shape->antecedent) {
    if (!atom.is_atom() || atom.args().size() != 1) {
      result.reasons.push_back("unsupported antecedent '" + format_formula(atom) + "'");
      return result;
    }
    restrictions[atom.args().front()].push_back(atom.predicate());
  }

  auto satisfies = [&](const Term& t, std::size_t element) {
    for (const auto& p : restrictions[t])
      if (!holds_unary(world, p, element)) return false;
    return true;
  };

  std::map<Term, std::vector<std::string>> candidates;
  for (const auto& [term, preds] : restrictions) {
    std::vector<std::string>& cands = candidates[term];
    if (term.is_constant()) {
      if (!world.has_constant(term.name)) {
        result.reasons.push_back("unknown object " + term.name);
        continue;
      }
      if (satisfies(term, world.index_of(term.name))) cands.push_back(term.name);
      else result.reasons.push_back(term.name + " is not a " + preds.front());
      continue;
    }
    for (std::size_t e = 0; e < world.size(); ++e)
      if (satisfies(term, e)) cands.push_back(world.domain()[e]);
    std::stable_partition(cands.begin(), cands.end(),
                          [&](const std::string& c) { return !options.deprioritized.count(c); });
    if (cands.empty()) {
      std::string what;
      for (const auto& p : preds) what += (what.empty() ? "" : " & ") + p;
      result.reasons.push_back("no object satisfies " + what + " for " + term.name);
    }
  }
  for (const auto& t : args) {
    if (restrictions.count(t)) continue;
    std::vector<std::string>& cands = candidates[t];
    if (t.is_constant()) {
      if (world.has_constant(t.name)) cands.push_back(t.name);
      else result.reasons.push_back("unknown object " + t.name);
    } else {
      cands = world.domain();
    }
  }
  for (const auto& [term, cands] : candidates)
    if (cands.empty()) return result;

  // Objects acted on: the first non-agent argument.
  std::vector<std::string> patients;
  if (args.size() > 1) {
    const Term& p = args[1];
    const auto& cands = candidates[p];
    if (p.is_constant()) {
      patients = cands;
    } else {
      const auto n = requested_count(constraints, p.name);
      if (!n) {
        patients = cands;
      } else if (cands.size() < *n) {
        result.reasons.push_back(Insufficient(cands.size(), *n).what());
      } else {
        patients.assign(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(*n));
      }
    }
  }

  auto ground = [&](const std::optional<std::string>& patient) -> std::optional<std::vector<std::string>> {
    std::vector<std::string> tuple(args.size());
    std::map<std::string, std::string> bound;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const Term& t = args[i];
      if (i == 1 && patient) {
        tuple[i] = *patient;
      } else if (t.is_constant()) {
        tuple[i] = t.name;
      } else if (auto it = bound.find(t.name); it != bound.end()) {
        tuple[i] = it->second;
      } else {
        const auto& cands = candidates[t];
        auto pick = std::find_if(cands.begin(), cands.end(), [&](const std::string& c) {
          return std::find(tuple.begin(), tuple.begin() + static_cast<std::ptrdiff_t>(i), c) ==
                 tuple.begin() + static_cast<std::ptrdiff_t>(i);
        });
        if (pick == cands.end()) return std::nullopt;
        tuple[i] = *pick;
      }
      if (t.is_variable()) bound.emplace(t.name, tuple[i]);
    }
    return tuple;
  };

  if (args.size() > 1) {
    for (const auto& p : patients) {
      auto tuple = ground(p);
      if (!tuple) {
        result.reasons.push_back("no distinct objects left to complete " + result.action + " on " + p);
        continue;
      }
      result.tuples.push_back(*tuple);
      result.selected.push_back(p);
    }
  } else if (auto tuple = ground(std::nullopt)) {
    result.tuples.push_back(*tuple);
  }

  for (const auto& tuple : result.tuples)
    if (auto why = blocked_by(knowledge, world, result.action, tuple)) result.reasons.push_back(*why);

  result.valid = all_hold && result.reasons.empty() && !result.tuples.empty();
  if (result.tuples.empty() && result.reasons.empty()) result.reasons.push_back("nothing to act on");
  return result;
}

std::string_view to_string(ExecutionReport::Status status) {
  switch (status) {
    case ExecutionReport::Status::ok: return "ok";
    case ExecutionReport::Status::rejected: return "rejected";
    case ExecutionReport::Status::error: return "error";
  }
  return "error";
}

std::string ExecutionReport::to_json() const {
  ojson out;
  out["status"] = std::string(to_string(status));
  out["constraints"] = ojson::array();
  for (const auto& c : constraints) out["constraints"].push_back(ojson{{"text", c.text}, {"holds", c.holds}});
  out["selected"] = selected;
  out["actions"] = ojson::array();
  for (const auto& a : actions)
    out["actions"].push_back(ojson{{"action", a.action}, {"args", a.args}, {"outcome", a.outcome}});
  out["reasons"] = reasons;
  return out.dump();
}

bool needs_counter(const std::string& action) {
  return action == "cut" || action == "mix" || action == "line" || action == "sprinkle" || action == "shape";
}

namespace {

ActionOutcome issue(Simulator& simulator, const std::string& action, const std::vector<std::string>& args) {
  const ojson body{{"command", "to-" + action}, {"args", args}};
  const HttpResponse response = simulator.handle_http({"POST", "/abe-sim-command", body.dump()});
  ActionOutcome out{action, args, "ok"};
  if (response.status != 200) {
    const ojson reply = ojson::parse(response.body, nullptr, false);
    out.outcome = reply.is_object() && reply.contains("reason") ? reply["reason"].get<std::string>()
                                                              : "simulator returned " + std::to_string(response.status);
  }
  return out;
}

}  // namespace

ExecutionReport run_command(const SentenceIR& ir, Simulator& simulator, const KnowledgeDoc& knowledge) {
  ExecutionReport report;
  const World before = simulator.snapshot();
  ValidationResult v;
  try {
    const Interpretation world = build_interpretation(before.to_sensors(), knowledge);
    SelectionOptions options;
    const auto shape = ir.commands.empty() ? std::nullopt : command_shape(ir.commands.front());
    if (shape && shape->action.predicate() == "fetch")
      for (const auto& o : before.objects())
        if (o.at == kCounterTop) options.deprioritized.insert(o.constant);
    v = validate(ir, world, knowledge, options);
  } catch (const Error& e) {
    report.reasons.push_back(e.what());
    return report;
  }
  report.constraints = v.constraints;
  report.selected = v.selected;
  report.reasons = v.reasons;
  if (!v.valid) {
    report.status = ExecutionReport::Status::rejected;
    return report;
  }

  for (const auto& tuple : v.tuples) {
    if (needs_counter(v.action) && tuple.size() > 1) {
      const World now = simulator.snapshot();
      const WorldObject* target = now.find(tuple[1]);
      if (target && target->at != kCounterTop) {
        report.actions.push_back(issue(simulator, "fetch", {tuple[0], tuple[1]}));
        if (report.actions.back().outcome != "ok") {
          report.reasons.push_back(report.actions.back().outcome);
          return report;
        }
      }
    }
    report.actions.push_back(issue(simulator, v.action, tuple));
    if (report.actions.back().outcome != "ok") {
      report.reasons.push_back(report.actions.back().outcome);
      return report;
    }
  }
  report.status = ExecutionReport::Status::ok;
  return report;
}

}  // namespace cardinal
