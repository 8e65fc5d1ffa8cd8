#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cardinal/nlu.hpp"
#include "cardinal/reasoner.hpp"
#include "cardinal/sim.hpp"
#include "cardinal/text.hpp"

namespace cardinal::testing {

inline std::string data_path(std::string_view rel) { return std::string(CARDINAL_DATA_DIR) + "/" + std::string(rel); }
inline std::string fixture_path(std::string_view rel) {
  return std::string(CARDINAL_FIXTURE_DIR) + "/" + std::string(rel);
}

inline const KnowledgeDoc& kitchen_kb() {
  static const KnowledgeDoc kb = parse_knowledge(read_file(data_path("kitchen.kb")));
  return kb;
}

inline const Lexicon& kitchen_lexicon() {
  static const Lexicon lex = Lexicon::load(data_path("kitchen.lex"));
  return lex;
}

inline const KnowledgeDoc& tomato_kb() {
  static const KnowledgeDoc kb = parse_knowledge(read_file(fixture_path("tomato_world.kb")));
  return kb;
}

// Scenario text with Robot1 in the kitchen plus `count` objects of each type,
// named after the type (greenPepper -> GreenPepper1, GreenPepper2, ...).
inline std::string scenario_text(const std::vector<std::pair<std::string, int>>& counts,
                                 const std::string& where = "Fridge") {
  std::string out = "Robot1 : robot @ Kitchen\n";
  for (const auto& [type, n] : counts) {
    std::string stem = type;
    stem[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(stem[0])));
    for (int i = 1; i <= n; ++i) out += stem + std::to_string(i) + " : " + type + " @ " + where + "\n";
  }
  return out;
}

inline World kitchen_world(const std::vector<std::pair<std::string, int>>& counts, const std::string& where = "Fridge") {
  return World::load_scenario(scenario_text(counts, where), kitchen_kb());
}

inline Interpretation interpret(const World& w, const KnowledgeDoc& kb = kitchen_kb()) {
  return build_interpretation(w.to_sensors(), kb);
}

inline SentenceIR tr(std::string_view sentence) { return translate(sentence, kitchen_lexicon()); }

inline std::string wire(std::string_view sentence) { return serialize_ir(tr(sentence)); }

}  // namespace cardinal::testing
