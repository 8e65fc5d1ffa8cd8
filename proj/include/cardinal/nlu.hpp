#pragma once

// Grammar-based translation of English kitchen commands and queries into
// SentenceIR.
//
// Lexicon file, one entry per line (`#` starts a comment):
//
//   noun <surface>|<plural> -> <predicate>
//   verb <surface> -> <action>(<role>:<type>:<explicit|implicit>, ...)
//   quant <lexeme> -> <kind>[:<value>]
//
// Commands put the agent in x0 and role i in xi. Query templates bind x0 in
// every cardinality term.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cardinal/logic.hpp"
#include "cardinal/text.hpp"

namespace cardinal {

struct Token {
  enum class Kind { word, number, constant };

  Kind kind = Kind::word;
  std::string text;
  std::int64_t value = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Lowercases words, keeps named constants (capitalized, ending in digits)
// verbatim, turns digit strings and the words zero..twenty into numbers and
// drops punctuation.
std::vector<Token> tokenize(std::string_view text);

enum class QuantKind {
  forall,
  none,
  at_least,
  at_most,
  exactly,
  most,
  times,
  more_than_pred,
  less_than_pred,
  between,
  many_threshold,
  fixed_value,
  half_of,
  count_query,
  dozen,
};

std::string_view to_string(QuantKind kind);
std::optional<QuantKind> parse_quant_kind(std::string_view name);

// A quantifier entry. Numeric payloads come either from the lexicon (fixed
// values, thresholds, dozens, `twice`) or from the sentence (`at least 5`).
struct QuantTemplate {
  std::string lexeme;
  QuantKind kind = QuantKind::exactly;
  std::optional<std::int64_t> value;
  std::optional<std::int64_t> upper;  // between
  Comparison cmp = Comparison::eq;    // half_of

  friend bool operator==(const QuantTemplate&, const QuantTemplate&) = default;
};

struct Role {
  enum class Source { explicit_, implicit };

  std::string name;
  std::string type;
  Source source = Source::explicit_;

  friend bool operator==(const Role&, const Role&) = default;
};

struct ActionTemplate {
  std::string action;
  std::vector<Role> roles;  // roles[0] is the agent
  std::vector<std::string> verbs;

  friend bool operator==(const ActionTemplate&, const ActionTemplate&) = default;
};

class Lexicon {
 public:
  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::string& path);

  // Longest noun starting at tokens[pos]: predicate and token count.
  std::optional<std::pair<std::string, std::size_t>> match_noun(const std::vector<Token>& tokens,
                                                                std::size_t pos) const;
  std::optional<std::pair<QuantTemplate, std::size_t>> match_quant(const std::vector<Token>& tokens,
                                                                   std::size_t pos) const;
  const ActionTemplate* verb(const std::string& word) const;

  const std::map<std::vector<std::string>, std::string>& nouns() const { return nouns_; }
  const std::map<std::vector<std::string>, QuantTemplate>& quantifiers() const { return quants_; }
  // action name -> template
  const std::map<std::string, ActionTemplate>& actions() const { return actions_; }

  // Throws LexiconError if a noun, role type or action is not declared by the
  // knowledge document or an action's arity disagrees with its rules.
  void check_against(const KnowledgeDoc& knowledge) const;

 private:
  std::map<std::vector<std::string>, std::string> nouns_;
  std::map<std::vector<std::string>, QuantTemplate> quants_;
  std::map<std::string, ActionTemplate> actions_;
  std::map<std::string, std::string> verbs_;  // surface -> action
  std::size_t longest_noun_ = 0;
  std::size_t longest_quant_ = 0;
};

// A unary property: a conjunction of possibly negated predicates.
struct Property {
  struct Literal {
    std::string predicate;
    bool negated = false;
    friend bool operator==(const Literal&, const Literal&) = default;
  };

  std::vector<Literal> literals;

  static Property of(std::string predicate, bool negated = false);
  Property complement() const;  // single-literal properties only
  Property and_also(const Property& other) const;
  Formula at(const std::string& var) const;

  friend bool operator==(const Property&, const Property&) = default;
};

// Instantiates a quantifier with a restrictor and an optional scope. For
// times / more_than_pred / less_than_pred without a numeric payload the scope
// is the compared property; for the other kinds it is conjoined with the
// restrictor. Throws MissingScope or UnknownQuantifier.
std::vector<QueryExpr> build_constraint(const QuantTemplate& q, const Property& restrictor,
                                        const std::optional<Property>& scope, const std::string& var = "x0");

// Never throws on bad input: untranslatable sentences map to kind=invalid.
SentenceIR translate(std::string_view text, const Lexicon& lexicon);

}  // namespace cardinal
