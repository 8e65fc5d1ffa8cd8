#pragma once

// Translation assessment: compare a produced SentenceIR with a golden one and
// sort it into identical / equivalent / wrong, then aggregate over a corpus.
//
// Equivalence has a fast syntactic path (alpha-equivalence) and a bounded
// semantic one: both IRs are evaluated on every small world built from the
// knowledge base's types, and must give the same answers there.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cardinal/logic.hpp"
#include "cardinal/nlu.hpp"
#include "cardinal/text.hpp"

namespace cardinal {

enum class Verdict { identical, equivalent, wrong };

std::string_view to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::wrong;
  // Set when the bounded check could not run and the verdict rests on
  // syntax alone.
  bool needs_review = false;
  std::string reason;
};

struct OracleOptions {
  // Worlds hold up to max(min_domain, largest integer literal + 1 + r) elements,
  // where r counts the non-patient roles of the widest command.
  std::size_t min_domain = 5;
  std::size_t world_cap = 100000;
};

// Outcome of the bounded check: nullopt when the IRs agree on every world,
// otherwise a description of a separating world. Throws OracleScaleError
// when more than world_cap worlds would be needed.
std::optional<std::string> find_separating_world(const SentenceIR& a, const SentenceIR& b,
                                                 const KnowledgeDoc& knowledge, const OracleOptions& options = {});

Classification classify(const SentenceIR& golden, const SentenceIR& produced, const KnowledgeDoc& knowledge,
                        const OracleOptions& options = {});

// Wire-level entry point: identical is decided on the canonical wire text;
// an unparsable produced document is wrong.
Classification classify_wire(std::string_view golden, std::string_view produced, const KnowledgeDoc& knowledge,
                             const OracleOptions& options = {});

struct CorpusPair {
  std::string prompt;
  std::string completion;  // wire text
  std::string category;    // command | query | invalid
  std::string tag;
  std::optional<std::string> produced;  // pre-recorded output; else translated
};

// JSON lines {prompt, completion, category, tag[, produced]}; completion and
// produced may be JSON objects or wire strings. Throws FormatError with the
// line number for malformed records or a category that disagrees with the
// completion's type.
std::vector<CorpusPair> parse_corpus(std::string_view text);
std::vector<CorpusPair> load_corpus(const std::string& path);

struct Tally {
  std::size_t identical = 0;
  std::size_t equivalent = 0;
  std::size_t wrong = 0;
  std::size_t review = 0;

  std::size_t total() const { return identical + equivalent + wrong; }
  // (identical + equivalent) / total, 0 for an empty tally.
  double accuracy() const;
  void add(const Classification& c);
};

// 0.80303 -> "80.30%"
std::string format_percent(double fraction);

struct PairResult {
  std::string prompt;
  std::string category;
  std::string tag;
  std::string produced;
  Classification classification;
};

struct CorpusReport {
  Tally overall;
  std::map<std::string, Tally> by_category;
  std::map<std::string, Tally> by_tag;
  std::vector<PairResult> pairs;

  std::string table() const;
  std::string to_json() const;
};

CorpusReport run_corpus(const std::vector<CorpusPair>& pairs, const Lexicon& lexicon, const KnowledgeDoc& knowledge,
                        const OracleOptions& options = {});

}  // namespace cardinal
