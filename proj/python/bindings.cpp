#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cardinal/error.hpp"
#include "cardinal/executor.hpp"
#include "cardinal/harness.hpp"
#include "cardinal/nlu.hpp"
#include "cardinal/reasoner.hpp"
#include "cardinal/service.hpp"
#include "cardinal/sim.hpp"
#include "cardinal/text.hpp"

namespace py = pybind11;
using namespace cardinal;

namespace {

py::object to_python(const QueryValue& v) {
  if (const auto* b = std::get_if<bool>(&v)) return py::bool_(*b);
  return py::int_(std::get<std::int64_t>(v));
}

QueryValue evaluate_text(const Interpretation& world, const std::string& text) {
  return eval_query(world, parse_query_expr(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "First-order logic with cardinality for kitchen robot commands";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<SyntaxError>(m, "ParseError", base.ptr());
  py::register_exception<InconsistentWorld>(m, "InconsistentWorld", base.ptr());

  py::class_<KnowledgeDoc>(m, "KnowledgeBase")
      .def_static("parse", &parse_knowledge, py::arg("text"))
      .def_static("load", [](const std::string& path) { return parse_knowledge(read_file(path)); }, py::arg("path"))
      .def("predicates", &KnowledgeDoc::predicates)
      .def("actions", &KnowledgeDoc::actions)
      .def("arities", &KnowledgeDoc::arities)
      .def("__str__", &format_knowledge);

  py::class_<Lexicon>(m, "Lexicon")
      .def_static("parse", &Lexicon::parse, py::arg("text"))
      .def_static("load", &Lexicon::load, py::arg("path"))
      .def("check_against", &Lexicon::check_against, py::arg("knowledge"));

  py::class_<SentenceIR>(m, "SentenceIR")
      .def_property_readonly("kind", [](const SentenceIR& ir) { return std::string(to_string(ir.kind)); })
      .def("to_wire", &serialize_ir)
      .def("canonical", [](const SentenceIR& ir) { return serialize_ir(canonical_rename(ir)); })
      .def("__eq__", [](const SentenceIR& a, const SentenceIR& b) { return a == b; })
      .def("__repr__", [](const SentenceIR& ir) { return "SentenceIR(" + serialize_ir(ir) + ")"; });

  m.def("translate", &translate, py::arg("text"), py::arg("lexicon"));
  m.def("parse_ir", &parse_ir, py::arg("wire"));
  m.def("canonical_wire", &canonical_wire, py::arg("wire"));
  m.def("alpha_equivalent", &alpha_equivalent, py::arg("a"), py::arg("b"));
  m.def("normalize_formula", [](const std::string& text) { return format_formula(parse_formula(text)) + "."; },
        py::arg("text"), "Parses a `.`-terminated formula and prints it back in normal form.");

  py::class_<Interpretation>(m, "Interpretation")
      .def(py::init([](const std::string& sensors, const KnowledgeDoc& kb) {
             return build_interpretation(parse_sensors(sensors), kb);
           }),
           py::arg("sensors"), py::arg("knowledge"))
      .def_property_readonly("domain", &Interpretation::domain)
      .def("members", &Interpretation::members, py::arg("predicate"))
      .def("count", [](const Interpretation& w, const std::string& card) {
             const QueryExpr q = parse_query_expr(card);
             const auto* c = std::get_if<CountQuery>(&q);
             if (!c) throw FormatError("expected a cardinality term |exists x (...).|");
             return count_witnesses(w, c->card);
           },
           py::arg("card"))
      .def("evaluate", [](const Interpretation& w, const std::string& text) { return to_python(evaluate_text(w, text)); },
           py::arg("expression"))
      .def("answer", [](const Interpretation& w, const SentenceIR& ir) { return to_python(answer_query(w, ir)); },
           py::arg("ir"));

  m.def("enumerate_models",
        [](const std::string& sensors, const KnowledgeDoc& kb, const std::string& goal) {
          return enumerate_models(parse_sensors(sensors), kb, parse_formula(goal));
        },
        py::arg("sensors"), py::arg("knowledge"), py::arg("goal"));

  py::class_<Simulator>(m, "Simulator")
      .def(py::init([](const std::string& scenario, const KnowledgeDoc& kb) {
             return std::make_unique<Simulator>(World::load_scenario(scenario, kb));
           }),
           py::arg("scenario"), py::arg("knowledge"))
      .def("handle", [](Simulator& s, const std::string& method, const std::string& path, const std::string& body) {
             const HttpResponse r = s.handle_http({method, path, body});
             return py::make_tuple(r.status, r.body);
           },
           py::arg("method"), py::arg("path"), py::arg("body") = "")
      .def("state_json", [](const Simulator& s) { return s.snapshot().state_json(); })
      .def("sensors", [](const Simulator& s) { return format_sensors(s.sensors()); });

  m.def("run_command",
        [](const SentenceIR& ir, Simulator& sim, const KnowledgeDoc& kb) { return run_command(ir, sim, kb).to_json(); },
        py::arg("ir"), py::arg("simulator"), py::arg("knowledge"), "Returns the execution report as JSON text.");

  m.def("classify",
        [](const std::string& golden, const std::string& produced, const KnowledgeDoc& kb) {
          const Classification c = classify_wire(golden, produced, kb);
          return py::make_tuple(std::string(to_string(c.verdict)), c.needs_review, c.reason);
        },
        py::arg("golden"), py::arg("produced"), py::arg("knowledge"));
  m.def("run_corpus",
        [](const std::string& path, const Lexicon& lex, const KnowledgeDoc& kb) {
          return run_corpus(load_corpus(path), lex, kb).to_json();
        },
        py::arg("path"), py::arg("lexicon"), py::arg("knowledge"), "Returns the corpus report as JSON text.");
  m.def("format_percent", &format_percent, py::arg("fraction"));

  py::class_<Service>(m, "Service")
      .def(py::init([](const std::string& world, const std::string& kb, const std::string& lexicon) {
             KnowledgeDoc k = parse_knowledge(read_file(kb));
             World w = World::load(world, k);
             return std::make_unique<Service>(std::move(k), Lexicon::load(lexicon), std::move(w));
           }),
           py::arg("world"), py::arg("knowledge"), py::arg("lexicon"))
      .def("handle", [](Service& s, const std::string& method, const std::string& path, const std::string& body) {
             const ServiceResponse r = s.handle(method, path, body);
             return py::make_tuple(r.status, r.body);
           },
           py::arg("method"), py::arg("path"), py::arg("body") = "")
      .def("repl_line", [](Service& s, const std::string& line) {
        bool quit = false;
        std::string out = s.repl_line(line, quit);
        return py::make_tuple(out, quit);
      });
}
