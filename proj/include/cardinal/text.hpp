#pragma once

// Text layer: Mace4-style formula syntax, the cardinality surface syntax, the
// sensors / background knowledge / expression files, and the JSON wire format
// of SentenceIR.
//
// Formula syntax: `-` (negation) binds tighter than `&`, then `|`, then `->`
// (right associative). `all v body` / `exists v body` scope as far right as
// possible. Lowercase identifiers in argument position are variables,
// capitalized ones are constants.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cardinal/logic.hpp"

namespace cardinal {

// One `.`-terminated sentence. Free variables are allowed here; callers decide
// what they mean.
Formula parse_formula(std::string_view text);
// Formula text without the trailing `.`.
std::string format_formula(const Formula& f);

QueryExpr parse_query_expr(std::string_view text);
CardConstraint parse_constraint(std::string_view text);
std::string format_card(const Card& c);
std::string format_card_term(const CardTerm& t);
std::string format_constraint(const CardConstraint& c);
// BoolQuery gets the `.` terminator, cardinality forms do not.
std::string format_query_expr(const QueryExpr& q);

struct SensorsDoc {
  std::size_t domain_size = 0;
  std::vector<std::string> distinct;
  std::vector<Formula> facts;  // ground atoms

  friend bool operator==(const SensorsDoc&, const SensorsDoc&) = default;
};

// Free variables in knowledge rules are implicitly universally quantified.
struct KnowledgeDoc {
  std::vector<Formula> classification;
  std::vector<Formula> distinction;
  std::vector<Formula> commands;

  // Every predicate mentioned by any rule.
  std::set<std::string> predicates() const;
  // Predicates occurring as consequents of command rules.
  std::set<std::string> actions() const;
  std::map<std::string, std::size_t> arities() const;

  friend bool operator==(const KnowledgeDoc&, const KnowledgeDoc&) = default;
};

SensorsDoc parse_sensors(std::string_view text);
KnowledgeDoc parse_knowledge(std::string_view text);
// `formulas(expressions). ... end_of_list.`
std::vector<Formula> parse_expressions(std::string_view text);

std::string format_sensors(const SensorsDoc& doc);
std::string format_knowledge(const KnowledgeDoc& doc);
std::string format_expressions(const std::vector<Formula>& formulas);

// Checks the SensorsDoc invariants (throws DomainMismatch / UnknownConstant /
// FormatError).
void check_sensors(const SensorsDoc& doc);

std::string serialize_ir(const SentenceIR& ir);
// Accepts strict JSON and the single-quoted variant used in hand-written logs.
SentenceIR parse_ir(std::string_view text);

// Whitespace-insensitive normal form of a wire-format document: insignificant
// JSON whitespace removed, whitespace runs inside strings collapsed, quotes
// normalized. Two documents are byte-identical translations iff their
// canonical forms are equal.
std::string canonical_wire(std::string_view text);

// Collapses every whitespace run to one space and trims the ends.
std::string normalize_whitespace(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace cardinal
