#pragma once

// Symbolic kitchen world: typed objects with an `at` location and scripted
// action effects, driven through a small HTTP-style command interface.
//
// Scenario file, one object per line (`%` or `#` start a comment):
//
//   location Oven1Shelf
//   Robot1 : robot @ Kitchen
//   Tomato1 : tomato @ Fridge
//   Grain1 : sugar @ Bowl1        (an object may sit in/on another object)

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cardinal/text.hpp"

namespace cardinal {

inline constexpr std::string_view kCounterTop = "CounterTop";

struct Attributes {
  bool cut = false;
  bool mixed = false;
  bool baked = false;
  bool lined = false;
  bool sprinkled = false;
  bool shaped = false;

  friend bool operator==(const Attributes&, const Attributes&) = default;
};

struct WorldObject {
  std::string constant;
  std::string type;
  std::string at;
  Attributes attributes;

  friend bool operator==(const WorldObject&, const WorldObject&) = default;
};

struct ActionCall {
  std::string action;
  std::vector<std::string> args;

  friend bool operator==(const ActionCall&, const ActionCall&) = default;
};

// Arity of every simulator action, agent included.
const std::map<std::string, std::size_t>& action_arities();

class World {
 public:
  // Throws DuplicateConstant, NoRobot, UnknownType, UnknownLocation,
  // ScenarioError (syntax).
  static World load_scenario(std::string_view text, const KnowledgeDoc& knowledge);
  static World load(const std::string& path, const KnowledgeDoc& knowledge);

  const std::vector<WorldObject>& objects() const { return objects_; }
  const std::set<std::string>& locations() const { return locations_; }
  const std::vector<ActionCall>& log() const { return log_; }
  // nullptr when absent.
  const WorldObject* find(const std::string& constant) const;

  // Throws UnknownObject, ArityError, PreconditionFailed. The world is left
  // untouched when an exception escapes.
  void apply_action(const std::string& action, const std::vector<std::string>& args);

  SensorsDoc to_sensors() const;

  // JSON array of {name, type, at, attributes}.
  std::string state_json() const;

  friend bool operator==(const World&, const World&) = default;

 private:
  WorldObject& object(const std::string& constant);
  // Every predicate the type is classified under, itself included.
  const std::set<std::string>& kinds(const std::string& type) const;
  void require_kinds_for(const WorldObject& o, const std::string& attribute) const;

  std::vector<WorldObject> objects_;
  std::map<std::string, std::size_t> index_;
  std::set<std::string> locations_;
  std::vector<ActionCall> log_;
  std::map<std::string, std::set<std::string>> closure_;
};

const std::set<std::string>& default_locations();

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

// Thread-safe owner of a World. Mutations are serialized; snapshot() copies
// the current state.
class Simulator {
 public:
  explicit Simulator(World world) : world_(std::move(world)) {}

  // POST /abe-sim-command {"command": "to-<action>", "args": [...]}
  // GET  /abe-sim-command/state
  HttpResponse handle_http(const HttpRequest& request);

  World snapshot() const;
  SensorsDoc sensors() const;

 private:
  mutable std::mutex mutex_;
  World world_;
};

}  // namespace cardinal
