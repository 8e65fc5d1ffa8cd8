#pragma once

// Finite closed-world interpretations built from a sensors document and the
// background knowledge, and evaluation of formulas and cardinality terms over
// them.
//
// Every object in the sensors document is a distinct domain element, and the
// classification rules are unary Horn clauses, so the saturated facts form the
// single intended model. Counting the witnesses of `exists x (phi)` over that
// model gives the same number a model finder returns for the expression under
// the distinct-constants setup.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cardinal/logic.hpp"
#include "cardinal/text.hpp"

namespace cardinal {

using Tuple = std::vector<std::size_t>;

class Interpretation {
 public:
  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }

  // Throws UnknownConstant.
  std::size_t index_of(const std::string& constant) const;
  bool has_constant(const std::string& constant) const { return index_.count(constant) > 0; }

  bool knows(const std::string& predicate) const { return extensions_.count(predicate) > 0; }
  // Throws UnknownPredicate / ArityError.
  bool holds(const std::string& predicate, const Tuple& args) const;
  const std::set<Tuple>& extension(const std::string& predicate) const;
  // Constants of a unary predicate's extension, in domain order.
  std::vector<std::string> members(const std::string& predicate) const;
  std::map<std::string, std::size_t> arities() const;

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  friend Interpretation build_interpretation(const SensorsDoc&, const KnowledgeDoc&);

  struct Extension {
    std::size_t arity = 0;
    std::set<Tuple> tuples;
    friend bool operator==(const Extension&, const Extension&) = default;
  };

  std::vector<std::string> domain_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, Extension> extensions_;
};

// Forward-chains the classification rules from the sensor facts to their least
// fixpoint and checks every distinction rule. Command rules are not used.
// Throws InconsistentWorld, ArityError, UnknownConstant.
Interpretation build_interpretation(const SensorsDoc& sensors, const KnowledgeDoc& knowledge);

using Env = std::map<std::string, std::size_t>;

// Tarskian truth over the finite domain. Free variables must be bound in env.
bool eval_formula(const Interpretation& world, const Formula& f, const Env& env = {});

std::int64_t count_witnesses(const Interpretation& world, const Card& card);
std::int64_t eval_card_term(const Interpretation& world, const CardTerm& term);
bool eval_constraint(const Interpretation& world, const CardConstraint& c);

using QueryValue = std::variant<bool, std::int64_t>;

QueryValue eval_query(const Interpretation& world, const QueryExpr& q);

// Answer to a whole query sentence: the count for a single count query,
// otherwise the conjunction of its expressions. Throws FormatError for other
// sentence kinds.
QueryValue answer_query(const Interpretation& world, const SentenceIR& ir);

std::string format_value(const QueryValue& v);

// Variable -> constant, in the order the existential prefix binds them.
using Assignment = std::vector<std::pair<std::string, std::string>>;

inline constexpr std::size_t kMaxEnumerationDomain = 12;

// Brute-force enumeration oracle: every assignment of the goal's existential
// prefix making its quantifier-free body true, in lexicographic domain order.
// Grounds and saturates independently of build_interpretation. Throws
// ScaleError when the domain exceeds kMaxEnumerationDomain and FormatError when
// the goal is not an existential prefix over a quantifier-free body.
std::vector<Assignment> enumerate_models(const SensorsDoc& sensors, const KnowledgeDoc& knowledge,
                                         const Formula& goal);

}  // namespace cardinal
