#include "cardinal/sim.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <json.hpp>

#include "cardinal/error.hpp"

namespace cardinal {

namespace {

using ojson = nlohmann::ordered_json;

struct AttributeSlot {
  std::string_view predicate;
  bool Attributes::*flag;
};

constexpr std::array<AttributeSlot, 6> kAttributes = {{
    {"cutObject", &Attributes::cut},
    {"mixedContainer", &Attributes::mixed},
    {"bakedObject", &Attributes::baked},
    {"linedTray", &Attributes::lined},
    {"sprinkledObject", &Attributes::sprinkled},
    {"shapedObject", &Attributes::shaped},
}};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void scenario_error(std::size_t line, const std::string& message) {
  throw ScenarioError("scenario line " + std::to_string(line) + ": " + message);
}

}  // namespace

const std::map<std::string, std::size_t>& action_arities() {
  static const std::map<std::string, std::size_t> arities = {
      {"fetch", 2}, {"cut", 3}, {"mix", 3}, {"transfer", 3}, {"bake", 3}, {"line", 3}, {"sprinkle", 3}, {"shape", 2},
  };
  return arities;
}

const std::set<std::string>& default_locations() {
  static const std::set<std::string> locations = {"Kitchen", "CounterTop", "Fridge", "Drawer", "Pantry",
                                                  "Cupboard", "Table", "Shelf", "Sink"};
  return locations;
}

World World::load_scenario(std::string_view text, const KnowledgeDoc& knowledge) {
  World w;
  w.locations_ = default_locations();

  std::map<std::string, std::set<std::string>> parents;
  for (const auto& rule : knowledge.classification)
    if (rule.kind() == Formula::Kind::implication && rule.lhs().is_atom() && rule.rhs().is_atom())
      parents[rule.lhs().predicate()].insert(rule.rhs().predicate());
  const auto predicates = knowledge.predicates();
  auto close = [&](const std::string& start) {
    std::set<std::string> seen{start};
    std::vector<std::string> todo{start};
    while (!todo.empty()) {
      const std::string p = todo.back();
      todo.pop_back();
      if (auto it = parents.find(p); it != parents.end())
        for (const auto& q : it->second)
          if (seen.insert(q).second) todo.push_back(q);
    }
    return seen;
  };
  for (const auto& p : predicates) w.closure_[p] = close(p);
  for (const auto& a : kAttributes) w.closure_.try_emplace(std::string(a.predicate), close(std::string(a.predicate)));

  std::vector<std::pair<std::size_t, std::string>> placements;  // line, location
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto c = line.find_first_of("%#"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("location ", 0) == 0) {
      const std::string name = trim(line.substr(9));
      if (!is_constant_name(name)) scenario_error(line_no, "invalid location name '" + name + "'");
      w.locations_.insert(name);
      continue;
    }
    const auto colon = line.find(':');
    const auto at = line.find('@');
    if (colon == std::string::npos || at == std::string::npos || at < colon)
      scenario_error(line_no, "expected '<Constant> : <type> @ <location>'");
    WorldObject o;
    o.constant = trim(line.substr(0, colon));
    o.type = trim(line.substr(colon + 1, at - colon - 1));
    o.at = trim(line.substr(at + 1));
    if (!is_constant_name(o.constant)) scenario_error(line_no, "invalid constant '" + o.constant + "'");
    if (!predicates.count(o.type))
      throw UnknownType("scenario line " + std::to_string(line_no) + ": type '" + o.type +
                        "' is not declared in the knowledge base");
    if (w.index_.count(o.constant))
      throw DuplicateConstant("scenario line " + std::to_string(line_no) + ": '" + o.constant + "' declared twice");
    w.index_.emplace(o.constant, w.objects_.size());
    placements.emplace_back(line_no, o.at);
    w.objects_.push_back(std::move(o));
  }
  for (const auto& [line, loc] : placements)
    if (!w.locations_.count(loc) && !w.index_.count(loc))
      throw UnknownLocation("scenario line " + std::to_string(line) + ": unknown location '" + loc + "'");
  for (const auto& loc : w.locations_)
    if (w.index_.count(loc)) throw DuplicateConstant("'" + loc + "' is both a location and an object");
  const bool has_robot = std::any_of(w.objects_.begin(), w.objects_.end(),
                                     [&](const WorldObject& o) { return w.kinds(o.type).count("robot"); });
  if (!has_robot) throw NoRobot("the scenario has no robot");
  return w;
}

World World::load(const std::string& path, const KnowledgeDoc& knowledge) {
  return load_scenario(read_file(path), knowledge);
}

const WorldObject* World::find(const std::string& constant) const {
  auto it = index_.find(constant);
  return it == index_.end() ? nullptr : &objects_[it->second];
}

WorldObject& World::object(const std::string& constant) {
  auto it = index_.find(constant);
  if (it == index_.end()) throw UnknownObject("unknown object '" + constant + "'");
  return objects_[it->second];
}

const std::set<std::string>& World::kinds(const std::string& type) const {
  static const std::set<std::string> empty;
  auto it = closure_.find(type);
  return it == closure_.end() ? empty : it->second;
}

void World::require_kinds_for(const WorldObject& o, const std::string& attribute) const {
  const auto& have = kinds(o.type);
  for (const auto& needed : kinds(attribute))
    if (needed != attribute && !have.count(needed))
      throw PreconditionFailed(o.constant + " is not a " + needed + ", so it cannot become " + attribute);
}

void World::apply_action(const std::string& action, const std::vector<std::string>& args) {
  auto arity = action_arities().find(action);
  if (arity == action_arities().end()) throw PreconditionFailed("unknown command '" + action + "'");
  if (args.size() != arity->second)
    throw ArityError(action + " takes " + std::to_string(arity->second) + " arguments, got " +
                     std::to_string(args.size()));
  std::vector<WorldObject*> a;
  for (const auto& name : args) a.push_back(&object(name));

  WorldObject& agent = *a[0];
  if (!kinds(agent.type).count("robot")) throw PreconditionFailed(agent.constant + " is not a robot");
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] == &agent) throw PreconditionFailed(agent.constant + " cannot act on itself");
    if (kinds(a[i]->type).count("robot")) throw PreconditionFailed(a[i]->constant + " is a robot");
  }
  auto on_counter = [](const WorldObject& o) {
    if (o.at != kCounterTop) throw PreconditionFailed(o.constant + " is not at " + std::string(kCounterTop));
  };
  auto tool = [&](const WorldObject& o, const std::string& type) {
    if (closure_.count(type) && !kinds(o.type).count(type)) throw PreconditionFailed(o.constant + " is not a " + type);
  };

  if (action == "fetch") {
    a[1]->at = std::string(kCounterTop);
  } else if (action == "cut") {
    on_counter(*a[1]);
    if (a[1]->attributes.cut) throw PreconditionFailed(a[1]->constant + " is already cut");
    if (!kinds(a[1]->type).count("ingredient")) throw PreconditionFailed(a[1]->constant + " is not an ingredient");
    require_kinds_for(*a[1], "cutObject");
    tool(*a[2], "cookingKnife");
    a[1]->attributes.cut = true;
  } else if (action == "mix") {
    on_counter(*a[1]);
    require_kinds_for(*a[1], "mixedContainer");
    tool(*a[2], "whisk");
    a[1]->attributes.mixed = true;
  } else if (action == "transfer") {
    WorldObject& src = *a[1];
    WorldObject& dst = *a[2];
    if (&src == &dst) throw PreconditionFailed("source and destination are both " + src.constant);
    const WorldObject* holder = find(dst.at);
    for (std::size_t hops = 0; holder && hops < objects_.size(); ++hops, holder = find(holder->at))
      if (holder == &src) throw PreconditionFailed(dst.constant + " is inside " + src.constant);
    for (auto& o : objects_)
      if (o.at == src.constant) o.at = dst.constant;
  } else if (action == "bake") {
    require_kinds_for(*a[1], "bakedObject");
    tool(*a[2], "oven");
    a[1]->attributes.baked = true;
    a[1]->at = a[2]->constant;
  } else if (action == "line") {
    on_counter(*a[1]);
    require_kinds_for(*a[1], "linedTray");
    tool(*a[2], "bakingPaper");
    a[1]->attributes.lined = true;
    a[2]->at = a[1]->constant;
  } else if (action == "sprinkle") {
    on_counter(*a[1]);
    if (a[1] == a[2]) throw PreconditionFailed(a[1]->constant + " cannot be sprinkled with itself");
    require_kinds_for(*a[1], "sprinkledObject");
    a[1]->attributes.sprinkled = true;
  } else if (action == "shape") {
    on_counter(*a[1]);
    require_kinds_for(*a[1], "shapedObject");
    a[1]->attributes.shaped = true;
  }
  log_.push_back({action, args});
}

SensorsDoc World::to_sensors() const {
  SensorsDoc doc;
  doc.domain_size = objects_.size();
  for (const auto& o : objects_) {
    doc.distinct.push_back(o.constant);
    doc.facts.push_back(Formula::atom(o.type, {Term::constant(o.constant)}));
  }
  for (const auto& o : objects_)
    for (const auto& a : kAttributes)
      if (o.attributes.*a.flag) doc.facts.push_back(Formula::atom(std::string(a.predicate), {Term::constant(o.constant)}));
  return doc;
}

namespace {

ojson to_json(const WorldObject& o) {
  ojson attrs = ojson::object();
  attrs["cut"] = o.attributes.cut;
  attrs["mixed"] = o.attributes.mixed;
  attrs["baked"] = o.attributes.baked;
  attrs["lined"] = o.attributes.lined;
  attrs["sprinkled"] = o.attributes.sprinkled;
  attrs["shaped"] = o.attributes.shaped;
  return ojson{{"name", o.constant}, {"type", o.type}, {"at", o.at}, {"attributes", attrs}};
}

HttpResponse json_response(int status, const ojson& body) { return {status, body.dump()}; }

HttpResponse error_response(int status, const std::string& reason) {
  return json_response(status, ojson{{"status", "error"}, {"reason", reason}});
}

}  // namespace

std::string World::state_json() const {
  ojson out = ojson::array();
  for (const auto& o : objects_) out.push_back(to_json(o));
  return out.dump();
}

HttpResponse Simulator::handle_http(const HttpRequest& request) {
  static const std::string kCommand = "/abe-sim-command";
  static const std::string kState = "/abe-sim-command/state";
  if (request.path == kState) {
    if (request.method != "GET") return error_response(405, "use GET for " + kState);
    std::lock_guard lock(mutex_);
    return {200, world_.state_json()};
  }
  if (request.path != kCommand) return error_response(404, "no such endpoint: " + request.path);
  if (request.method != "POST") return error_response(405, "use POST for " + kCommand);

  ojson body = ojson::parse(request.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) return error_response(400, "body must be a JSON object");
  if (!body.contains("command") || !body["command"].is_string()) return error_response(400, "missing string 'command'");
  std::vector<std::string> args;
  if (body.contains("args")) {
    if (!body["args"].is_array()) return error_response(400, "'args' must be an array of names");
    for (const auto& a : body["args"]) {
      if (!a.is_string()) return error_response(400, "'args' must be an array of names");
      args.push_back(a.get<std::string>());
    }
  }
  const std::string command = body["command"].get<std::string>();
  if (command.rfind("to-", 0) != 0 || !action_arities().count(command.substr(3)))
    return error_response(422, "unknown command '" + command + "'");
  try {
    std::lock_guard lock(mutex_);
    world_.apply_action(command.substr(3), args);
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
  return json_response(200, ojson{{"status", "ok"}});
}

World Simulator::snapshot() const {
  std::lock_guard lock(mutex_);
  return world_;
}

SensorsDoc Simulator::sensors() const {
  std::lock_guard lock(mutex_);
  return world_.to_sensors();
}

}  // namespace cardinal
