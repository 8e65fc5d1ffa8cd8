#pragma once

// The interactive front end: one Service owns the knowledge base, the lexicon
// and the simulator, and answers REPL lines and HTTP requests from the same
// code path.
//
//   POST /interpret {"text": ...}  -> SentenceIR wire form
//   POST /query     {"text": ...}  -> {"answer": ..., "ir": ...}
//   POST /command   {"text": ...}  -> execution report plus "ir"
//   GET  /state                    -> simulator objects
//   GET  /history                  -> sentences handled so far

#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "cardinal/executor.hpp"
#include "cardinal/nlu.hpp"
#include "cardinal/reasoner.hpp"
#include "cardinal/sim.hpp"
#include "cardinal/text.hpp"

namespace cardinal {

struct ServiceConfig {
  std::string world;
  std::string knowledge;
  std::string lexicon;
};

struct ServiceResponse {
  int status = 200;
  std::string body;
};

class Service {
 public:
  // Throws LexiconError when the lexicon disagrees with the knowledge base.
  Service(KnowledgeDoc knowledge, Lexicon lexicon, World world);
  static Service load(const ServiceConfig& config);

  SentenceIR interpret(const std::string& text) const;
  // Evaluated against freshly exported sensors. Throws FormatError for
  // non-query IRs and InconsistentWorld for a broken state.
  QueryValue answer(const SentenceIR& ir) const;
  // Serialized with every other command.
  ExecutionReport execute(const SentenceIR& ir);

  ServiceResponse handle(const std::string& method, const std::string& path, const std::string& body);

  // One REPL line; sets quit on /quit.
  std::string repl_line(const std::string& line, bool& quit);
  void repl(std::istream& in, std::ostream& out);

  const KnowledgeDoc& knowledge() const { return knowledge_; }
  const Lexicon& lexicon() const { return lexicon_; }
  Simulator& simulator() { return simulator_; }
  std::string history_json() const;

 private:
  void record(const std::string& text, const SentenceIR& ir, const std::string& result);

  KnowledgeDoc knowledge_;
  Lexicon lexicon_;
  Simulator simulator_;
  std::mutex command_mutex_;
  mutable std::mutex history_mutex_;
  std::vector<std::string> history_;  // JSON records
};

std::string format_report(const ExecutionReport& report);
std::string format_state(const World& world);

// Blocks serving HTTP on host:port until the process stops.
void serve(Service& service, const std::string& host, int port);

}  // namespace cardinal
