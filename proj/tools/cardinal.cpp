// cardinal: interactive kitchen robot interpreter.
//
//   cardinal repl
//   cardinal eval --sentence "How many tomatoes are there?"
//   cardinal serve --port 8080
//   cardinal corpus run data/golden.jsonl --report report.json
//
// Every subcommand accepts --world, --kb and --lexicon.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cardinal/error.hpp"
#include "cardinal/harness.hpp"
#include "cardinal/service.hpp"

namespace {

struct Paths {
  std::string world = CARDINAL_DATA_DIR "/scenarios/kitchen.scn";
  std::string kb = CARDINAL_DATA_DIR "/kitchen.kb";
  std::string lexicon = CARDINAL_DATA_DIR "/kitchen.lex";
};

void add_paths(CLI::App* app, Paths& paths) {
  app->add_option("--world", paths.world, "scenario file")->capture_default_str();
  app->add_option("--kb", paths.kb, "background knowledge file")->capture_default_str();
  app->add_option("--lexicon", paths.lexicon, "lexicon file")->capture_default_str();
}

cardinal::Service open_service(const Paths& p) { return cardinal::Service::load({p.world, p.kb, p.lexicon}); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural-language kitchen commands and queries over first-order logic with cardinality"};
  app.require_subcommand(1);

  Paths paths;
  auto* repl = app.add_subcommand("repl", "read sentences from standard input");
  add_paths(repl, paths);

  std::string sentence;
  auto* eval = app.add_subcommand("eval", "translate and run one sentence");
  add_paths(eval, paths);
  eval->add_option("--sentence,-s", sentence, "the sentence")->required();

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "HTTP API for the console");
  add_paths(serve, paths);
  serve->add_option("--port,-p", port, "port")->capture_default_str();
  serve->add_option("--host", host, "bind address")->capture_default_str();

  std::string corpus_file;
  std::string report_file;
  double min_accuracy = -1;
  auto* corpus = app.add_subcommand("corpus", "translation accuracy over a corpus");
  auto* run = corpus->add_subcommand("run", "classify every pair of a corpus file");
  corpus->require_subcommand(1);
  add_paths(run, paths);
  run->add_option("file", corpus_file, "JSON-lines corpus")->required()->check(CLI::ExistingFile);
  run->add_option("--report", report_file, "write the JSON report here");
  run->add_option("--min-accuracy", min_accuracy, "exit 1 when practical accuracy (0..1) falls below");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*repl) {
      auto service = open_service(paths);
      service.repl(std::cin, std::cout);
    } else if (*eval) {
      auto service = open_service(paths);
      bool quit = false;
      std::cout << service.repl_line(sentence, quit);
    } else if (*serve) {
      auto service = open_service(paths);
      cardinal::serve(service, host, port);
    } else if (*run) {
      const auto kb = cardinal::parse_knowledge(cardinal::read_file(paths.kb));
      const auto lexicon = cardinal::Lexicon::load(paths.lexicon);
      lexicon.check_against(kb);
      const auto report = cardinal::run_corpus(cardinal::load_corpus(corpus_file), lexicon, kb);
      std::cout << report.table();
      if (!report_file.empty()) {
        std::ofstream out(report_file);
        if (!out) throw cardinal::Error("cannot write " + report_file);
        out << report.to_json() << "\n";
      }
      if (min_accuracy >= 0 && report.overall.accuracy() < min_accuracy) return 1;
    }
  } catch (const cardinal::Error& e) {
    std::cerr << "cardinal: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
