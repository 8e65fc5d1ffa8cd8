#include "cardinal/service.hpp"

#include <iostream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "cardinal/error.hpp"

namespace cardinal {

namespace {

using ojson = nlohmann::ordered_json;

ojson answer_json(const QueryValue& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::int64_t>(v);
}

ojson ir_json(const SentenceIR& ir) { return ojson::parse(serialize_ir(ir)); }

ServiceResponse reply(int status, const ojson& body) { return {status, body.dump()}; }

ServiceResponse failure(int status, const std::string& message) { return reply(status, ojson{{"error", message}}); }

ServiceResponse ir_failure(const SentenceIR& ir, const std::string& message) {
  ojson body = ir_json(ir);
  body["error"] = message;
  return reply(422, body);
}

}  // namespace

Service::Service(KnowledgeDoc knowledge, Lexicon lexicon, World world)
    : knowledge_(std::move(knowledge)), lexicon_(std::move(lexicon)), simulator_(std::move(world)) {
  lexicon_.check_against(knowledge_);
}

Service Service::load(const ServiceConfig& config) {
  KnowledgeDoc kb = parse_knowledge(read_file(config.knowledge));
  Lexicon lex = Lexicon::load(config.lexicon);
  World world = World::load(config.world, kb);
  return Service(std::move(kb), std::move(lex), std::move(world));
}

SentenceIR Service::interpret(const std::string& text) const { return translate(text, lexicon_); }

QueryValue Service::answer(const SentenceIR& ir) const {
  const Interpretation world = build_interpretation(simulator_.sensors(), knowledge_);
  return answer_query(world, ir);
}

ExecutionReport Service::execute(const SentenceIR& ir) {
  std::lock_guard lock(command_mutex_);
  return run_command(ir, simulator_, knowledge_);
}

void Service::record(const std::string& text, const SentenceIR& ir, const std::string& result) {
  ojson entry{{"text", text}, {"kind", std::string(to_string(ir.kind))}, {"ir", ir_json(ir)}, {"result", result}};
  std::lock_guard lock(history_mutex_);
  history_.push_back(entry.dump());
}

std::string Service::history_json() const {
  std::lock_guard lock(history_mutex_);
  std::string out = "[";
  for (std::size_t i = 0; i < history_.size(); ++i) out += (i ? "," : "") + history_[i];
  return out + "]";
}

ServiceResponse Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  if (method == "GET" && path == "/state") return {200, simulator_.snapshot().state_json()};
  if (method == "GET" && path == "/history") return {200, history_json()};
  if (path != "/interpret" && path != "/query" && path != "/command" && path != "/state" && path != "/history")
    return failure(404, "no such endpoint: " + path);
  if (method != "POST" || path == "/state" || path == "/history") return failure(405, method + " not allowed on " + path);

  const ojson request = ojson::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object() || !request.contains("text") || !request["text"].is_string())
    return failure(400, "expected a JSON object with a string 'text'");
  const std::string text = request["text"].get<std::string>();
  const SentenceIR ir = interpret(text);

  if (path == "/interpret") {
    record(text, ir, "interpreted");
    return {200, serialize_ir(ir)};
  }
  if (path == "/query") {
    if (ir.kind != SentenceKind::query) {
      record(text, ir, "not a query");
      return ir_failure(ir, ir.kind == SentenceKind::invalid ? "sentence could not be interpreted" : "not a query");
    }
    try {
      const QueryValue v = answer(ir);
      record(text, ir, format_value(v));
      return reply(200, ojson{{"answer", answer_json(v)}, {"ir", ir_json(ir)}});
    } catch (const Error& e) {
      record(text, ir, e.what());
      return ir_failure(ir, e.what());
    }
  }
  if (ir.kind != SentenceKind::command) {
    record(text, ir, "not a command");
    return ir_failure(ir, ir.kind == SentenceKind::invalid ? "sentence could not be interpreted" : "not a command");
  }
  const ExecutionReport report = execute(ir);
  record(text, ir, std::string(to_string(report.status)));
  ojson out = ojson::parse(report.to_json());
  out["ir"] = ir_json(ir);
  return reply(200, out);
}

std::string format_report(const ExecutionReport& report) {
  std::ostringstream out;
  out << "status: " << to_string(report.status) << "\n";
  for (const auto& c : report.constraints) out << "  " << (c.holds ? "holds " : "fails ") << c.text << "\n";
  if (!report.selected.empty()) {
    out << "  selected:";
    for (const auto& s : report.selected) out << " " << s;
    out << "\n";
  }
  for (const auto& a : report.actions) {
    out << "  " << a.action << "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) out << (i ? ", " : "") << a.args[i];
    out << "): " << a.outcome << "\n";
  }
  for (const auto& r : report.reasons) out << "  reason: " << r << "\n";
  return out.str();
}

std::string format_state(const World& world) {
  std::ostringstream out;
  for (const auto& o : world.objects()) {
    out << o.constant << " : " << o.type << " @ " << o.at;
    const Attributes& a = o.attributes;
    std::string flags;
    for (const auto& [on, name] : {std::pair{a.cut, "cut"}, {a.mixed, "mixed"}, {a.baked, "baked"},
                                   {a.lined, "lined"}, {a.sprinkled, "sprinkled"}, {a.shaped, "shaped"}})
      if (on) flags += flags.empty() ? name : std::string(" ") + name;
    if (!flags.empty()) out << " [" << flags << "]";
    out << "\n";
  }
  return out.str();
}

std::string Service::repl_line(const std::string& raw, bool& quit) {
  const std::string line = normalize_whitespace(raw);
  if (line.empty()) return "";
  if (line == "/quit" || line == "/exit") {
    quit = true;
    return "bye\n";
  }
  if (line == "/state") return format_state(simulator_.snapshot());
  if (line == "/history") return history_json() + "\n";
  if (line.rfind("/ir", 0) == 0 && (line.size() == 3 || line[3] == ' ')) {
    if (line.size() <= 4) return "usage: /ir <sentence>\n";
    return serialize_ir(interpret(line.substr(4))) + "\n";
  }
  if (line.front() == '/') return "unknown meta-command " + line + " (try /state, /ir <sentence>, /quit)\n";

  const SentenceIR ir = interpret(line);
  std::string out = "ir: " + serialize_ir(ir) + "\n";
  switch (ir.kind) {
    case SentenceKind::invalid:
      record(line, ir, "invalid");
      return out + "cannot interpret this sentence as a kitchen command or query\n";
    case SentenceKind::query:
      try {
        const std::string v = format_value(answer(ir));
        record(line, ir, v);
        return out + "answer: " + v + "\n";
      } catch (const Error& e) {
        record(line, ir, e.what());
        return out + "error: " + e.what() + "\n";
      }
    case SentenceKind::command: {
      const ExecutionReport report = execute(ir);
      record(line, ir, std::string(to_string(report.status)));
      return out + format_report(report);
    }
  }
  return out;
}

void Service::repl(std::istream& in, std::ostream& out) {
  bool quit = false;
  out << "> " << std::flush;
  for (std::string line; !quit && std::getline(in, line);) {
    out << repl_line(line, quit);
    if (!quit) out << "> " << std::flush;
  }
}

void serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  auto cors = [](httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  };
  auto dispatch = [&service, cors](const httplib::Request& req, httplib::Response& res) {
    const ServiceResponse r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
    cors(res);
  };
  server.Get(".*", dispatch);
  server.Post(".*", dispatch);
  server.Options(".*", [cors](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    cors(res);
  });
  server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    std::cerr << req.method << " " << req.path << " -> " << res.status << "\n";
  });
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace cardinal
