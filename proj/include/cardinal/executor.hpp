#pragma once

// Command execution: check a command's cardinality preconditions and the
// knowledge base's command rules, pick concrete objects, and drive the
// simulator.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cardinal/logic.hpp"
#include "cardinal/reasoner.hpp"
#include "cardinal/sim.hpp"
#include "cardinal/text.hpp"

namespace cardinal {

struct ConstraintCheck {
  std::string text;
  bool holds = false;

  friend bool operator==(const ConstraintCheck&, const ConstraintCheck&) = default;
};

struct SelectionOptions {
  // Candidates pushed behind all others (stable), e.g. objects already on
  // the counter when fetching.
  std::set<std::string> deprioritized;
};

struct ValidationResult {
  bool valid = false;
  std::vector<ConstraintCheck> constraints;
  std::string action;
  // Ground argument tuples, agent first, one per object acted on.
  std::vector<std::vector<std::string>> tuples;
  // Objects acted on (the first non-agent argument of each tuple).
  std::vector<std::string> selected;
  std::vector<std::string> reasons;
};

// First n members of a unary predicate in domain order. Throws Insufficient.
std::vector<std::string> select_objects(const Interpretation& world, const std::string& type_predicate, std::size_t n);

// nullopt when some command rule permits the ground action and none forbids
// it; otherwise the reason it is blocked.
std::optional<std::string> blocked_by(const KnowledgeDoc& knowledge, const Interpretation& world,
                                      const std::string& action, const std::vector<std::string>& args);

// A quantified argument acts on n objects where the sentence asks for n
// (`>= n` constraint on its variable); an unconstrained variable in the first
// object position acts on every match; other unconstrained variables take the
// lowest-index match. Never throws for command IRs; other kinds come back
// invalid with a reason.
ValidationResult validate(const SentenceIR& ir, const Interpretation& world, const KnowledgeDoc& knowledge,
                          const SelectionOptions& options = {});

struct ActionOutcome {
  std::string action;
  std::vector<std::string> args;
  std::string outcome;  // "ok" or the simulator's reason

  friend bool operator==(const ActionOutcome&, const ActionOutcome&) = default;
};

struct ExecutionReport {
  enum class Status { ok, rejected, error };

  Status status = Status::error;
  std::vector<ConstraintCheck> constraints;
  std::vector<std::string> selected;
  std::vector<ActionOutcome> actions;
  std::vector<std::string> reasons;

  std::string to_json() const;
};

std::string_view to_string(ExecutionReport::Status status);

// Actions that need their object on the counter; the executor fetches it
// first when it is elsewhere.
bool needs_counter(const std::string& action);

// Validates against the simulator's current state and, when valid, issues the
// actions through its HTTP interface. A rejected command leaves the world
// untouched; a simulator failure stops the run and reports what was done.
ExecutionReport run_command(const SentenceIR& ir, Simulator& simulator, const KnowledgeDoc& knowledge);

}  // namespace cardinal
