#include "cardinal/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cardinal/error.hpp"
#include "cardinal/executor.hpp"
#include "cardinal/reasoner.hpp"

namespace cardinal {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::identical: return "identical";
    case Verdict::equivalent: return "equivalent";
    case Verdict::wrong: return "wrong";
  }
  return "wrong";
}

namespace {

void for_each_formula(const SentenceIR& ir, const std::function<void(const Formula&)>& f) {
  auto term = [&](const CardTerm& t) {
    if (const auto* c = std::get_if<Card>(&t)) f(c->body);
    if (const auto* s = std::get_if<ScaledCard>(&t)) f(s->inner.body);
  };
  for (const auto& c : ir.commands) f(c);
  for (const auto& group : ir.command_expressions)
    for (const auto& c : group) {
      term(c.lhs);
      term(c.rhs);
    }
  for (const auto& q : ir.query_expressions) {
    if (const auto* b = std::get_if<BoolQuery>(&q)) f(b->formula);
    if (const auto* c = std::get_if<CardConstraint>(&q)) {
      term(c->lhs);
      term(c->rhs);
    }
    if (const auto* n = std::get_if<CountQuery>(&q)) f(n->card.body);
  }
}

std::int64_t largest_literal(const SentenceIR& ir) {
  std::int64_t best = 0;
  auto term = [&](const CardTerm& t) {
    if (const auto* i = std::get_if<IntLit>(&t)) best = std::max(best, i->value);
  };
  for (const auto& group : ir.command_expressions)
    for (const auto& c : group) {
      term(c.lhs);
      term(c.rhs);
    }
  for (const auto& q : ir.query_expressions)
    if (const auto* c = std::get_if<CardConstraint>(&q)) {
      term(c->lhs);
      term(c->rhs);
    }
  return best;
}

struct TypeClass {
  std::string representative;
  std::set<std::string> signature;
};

// What one IR does in one world, as comparable text.
std::string behaviour(const SentenceIR& ir, const Interpretation& world, const KnowledgeDoc& knowledge) {
  try {
    if (ir.kind == SentenceKind::query) return format_value(answer_query(world, ir));
    if (ir.kind == SentenceKind::command) {
      const ValidationResult v = validate(ir, world, knowledge);
      if (!v.valid) return "rejected";
      std::string out = "runs";
      for (const auto& t : v.tuples) {
        out += " " + v.action + "(";
        for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + t[i];
        out += ")";
      }
      return out;
    }
    return "invalid";
  } catch (const Error& e) {
    return std::string("error: ") + e.what();
  }
}

}  // namespace

std::optional<std::string> find_separating_world(const SentenceIR& a, const SentenceIR& b,
                                                 const KnowledgeDoc& knowledge, const OracleOptions& options) {
  if (a.kind != b.kind) return "the sentence kinds differ";
  if (a.kind == SentenceKind::invalid) return std::nullopt;

  const auto actions = knowledge.actions();
  std::set<std::string> mentioned;
  std::set<std::string> constants;
  for (const SentenceIR* ir : {&a, &b})
    for_each_formula(*ir, [&](const Formula& f) {
      std::map<std::string, std::size_t> arities;
      collect_arities(f, arities);
      for (const auto& [p, n] : arities)
        if (!actions.count(p)) mentioned.insert(p);
      for (const auto& c : constants_of(f)) constants.insert(c);
    });

  // Command rules of the actions involved decide admissibility, so their
  // predicates also separate types.
  for (const SentenceIR* ir : {&a, &b})
    for (const auto& c : ir->commands) {
      const auto shape = command_shape(c);
      if (!shape) continue;
      for (const auto& rule : knowledge.commands) {
        std::map<std::string, std::size_t> arities;
        collect_arities(rule, arities);
        if (!arities.count(shape->action.predicate())) continue;
        for (const auto& [p, n] : arities)
          if (!actions.count(p)) mentioned.insert(p);
      }
    }

  // Element types, merged when they agree on every mentioned predicate.
  std::vector<TypeClass> classes;
  {
    std::set<std::set<std::string>> seen;
    for (const auto& [p, arity] : knowledge.arities()) {
      if (arity != 1 || actions.count(p)) continue;
      SensorsDoc one{1, {"Probe1"}, {Formula::atom(p, {Term::constant("Probe1")})}};
      std::set<std::string> signature;
      try {
        const Interpretation w = build_interpretation(one, knowledge);
        for (const auto& m : mentioned)
          if (w.knows(m) && w.extension(m).count({0})) signature.insert(m);
      } catch (const Error&) {
        continue;
      }
      if (seen.insert(signature).second) classes.push_back({p, signature});
    }
  }
  if (classes.empty()) return std::nullopt;

  // A command also needs room for its agent and the other roles beside the
  // counted patients.
  std::size_t roles = 0;
  for (const SentenceIR* ir : {&a, &b})
    for (const auto& c : ir->commands)
      if (const auto shape = command_shape(c)) roles = std::max(roles, shape->action.args().size() - 1);
  const std::size_t bound =
      std::max<std::size_t>(options.min_domain,
                            static_cast<std::size_t>(std::max(largest_literal(a), largest_literal(b))) + 1 + roles);
  const std::size_t k = classes.size();
  const std::size_t named = constants.size();
  const std::size_t anonymous = bound > named ? bound - named : 0;

  // |classes|^named * C(anonymous + k, k) worlds.
  double worlds = std::pow(static_cast<double>(k), static_cast<double>(named));
  double multisets = 1;
  for (std::size_t i = 1; i <= k; ++i) multisets = multisets * static_cast<double>(anonymous + i) / static_cast<double>(i);
  worlds *= multisets;
  if (worlds > static_cast<double>(options.world_cap)) {
    std::ostringstream msg;
    msg << "bounded check needs " << static_cast<long long>(worlds) << " worlds (" << k << " types, domain " << bound
        << "), cap is " << options.world_cap;
    throw OracleScaleError(msg.str());
  }

  std::vector<std::string> named_list(constants.begin(), constants.end());
  std::vector<std::size_t> named_class(named, 0);
  std::vector<std::size_t> counts(k, 0);
  std::optional<std::string> separation;

  auto describe = [&](const std::string& ra, const std::string& rb) {
    std::ostringstream out;
    out << "world {";
    bool first = true;
    for (std::size_t i = 0; i < named; ++i) {
      out << (first ? "" : ", ") << named_list[i] << ":" << classes[named_class[i]].representative;
      first = false;
    }
    for (std::size_t c = 0; c < k; ++c)
      if (counts[c]) {
        out << (first ? "" : ", ") << counts[c] << " x " << classes[c].representative;
        first = false;
      }
    out << "}: golden gives " << ra << ", produced gives " << rb;
    return out.str();
  };

  auto check_world = [&] {
    SensorsDoc doc;
    for (std::size_t i = 0; i < named; ++i) {
      doc.distinct.push_back(named_list[i]);
      doc.facts.push_back(Formula::atom(classes[named_class[i]].representative, {Term::constant(named_list[i])}));
    }
    std::size_t serial = 0;
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < counts[c]; ++j) {
        std::string name;
        do name = "Elem" + std::to_string(++serial);
        while (constants.count(name));
        doc.distinct.push_back(name);
        doc.facts.push_back(Formula::atom(classes[c].representative, {Term::constant(name)}));
      }
    doc.domain_size = doc.distinct.size();
    Interpretation world;
    try {
      world = build_interpretation(doc, knowledge);
    } catch (const InconsistentWorld&) {
      return false;
    }
    const std::string ra = behaviour(a, world, knowledge);
    const std::string rb = behaviour(b, world, knowledge);
    if (ra == rb) return false;
    separation = describe(ra, rb);
    return true;
  };

  std::function<bool(std::size_t, std::size_t)> anon = [&](std::size_t c, std::size_t left) {
    if (c == k) return check_world();
    for (std::size_t n = 0; n <= left; ++n) {
      counts[c] = n;
      if (anon(c + 1, left - n)) return true;
    }
    counts[c] = 0;
    return false;
  };
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == named) return anon(0, anonymous);
    for (std::size_t c = 0; c < k; ++c) {
      named_class[i] = c;
      if (assign(i + 1)) return true;
    }
    return false;
  };
  assign(0);
  return separation;
}

Classification classify(const SentenceIR& golden, const SentenceIR& produced, const KnowledgeDoc& knowledge,
                        const OracleOptions& options) {
  if (canonical_wire(serialize_ir(golden)) == canonical_wire(serialize_ir(produced)))
    return {Verdict::identical, false, "same wire form"};
  if (golden.kind != produced.kind)
    return {Verdict::wrong, false,
            "expected a " + std::string(to_string(golden.kind)) + ", got a " + std::string(to_string(produced.kind))};
  if (alpha_equivalent(golden, produced)) return {Verdict::equivalent, false, "alpha-equivalent"};
  try {
    if (auto world = find_separating_world(golden, produced, knowledge, options)) return {Verdict::wrong, false, *world};
  } catch (const OracleScaleError& e) {
    return {Verdict::wrong, true, std::string("not alpha-equivalent and ") + e.what()};
  }
  return {Verdict::equivalent, false, "same answers on every bounded world"};
}

Classification classify_wire(std::string_view golden, std::string_view produced, const KnowledgeDoc& knowledge,
                             const OracleOptions& options) {
  SentenceIR g = SentenceIR::invalid();
  try {
    g = parse_ir(golden);
  } catch (const Error& e) {
    return {Verdict::wrong, true, std::string("golden completion does not parse: ") + e.what()};
  }
  try {
    if (canonical_wire(golden) == canonical_wire(produced)) return {Verdict::identical, false, "same wire form"};
  } catch (const Error&) {
  }
  SentenceIR p = SentenceIR::invalid();
  try {
    p = parse_ir(produced);
  } catch (const Error& e) {
    return {Verdict::wrong, false, std::string("produced completion does not parse: ") + e.what()};
  }
  return classify(g, p, knowledge, options);
}

// ---------------------------------------------------------------------------
// Corpus

namespace {

std::string wire_text(const nlohmann::json& value, std::size_t line, const char* field) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_object()) return value.dump();
  throw FormatError("corpus line " + std::to_string(line) + ": '" + field + "' must be an object or a string");
}

}  // namespace

std::vector<CorpusPair> parse_corpus(std::string_view text) {
  std::vector<CorpusPair> pairs;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (normalize_whitespace(line).empty()) continue;
    const auto record = nlohmann::json::parse(line, nullptr, false);
    const std::string where = "corpus line " + std::to_string(line_no);
    if (record.is_discarded() || !record.is_object()) throw FormatError(where + ": not a JSON object");
    for (const char* key : {"prompt", "completion", "category", "tag"})
      if (!record.contains(key)) throw FormatError(where + ": missing '" + key + "'");
    if (!record["prompt"].is_string() || !record["category"].is_string() || !record["tag"].is_string())
      throw FormatError(where + ": prompt, category and tag must be strings");
    CorpusPair p;
    p.prompt = record["prompt"].get<std::string>();
    p.completion = wire_text(record["completion"], line_no, "completion");
    p.category = record["category"].get<std::string>();
    p.tag = record["tag"].get<std::string>();
    if (record.contains("produced")) p.produced = wire_text(record["produced"], line_no, "produced");
    SentenceIR golden = SentenceIR::invalid();
    try {
      golden = parse_ir(p.completion);
    } catch (const Error& e) {
      throw FormatError(where + ": completion does not parse: " + e.what());
    }
    if (to_string(golden.kind) != p.category)
      throw FormatError(where + ": category '" + p.category + "' but the completion is a " +
                        std::string(to_string(golden.kind)));
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<CorpusPair> load_corpus(const std::string& path) { return parse_corpus(read_file(path)); }

double Tally::accuracy() const {
  return total() == 0 ? 0.0 : static_cast<double>(identical + equivalent) / static_cast<double>(total());
}

void Tally::add(const Classification& c) {
  switch (c.verdict) {
    case Verdict::identical: ++identical; break;
    case Verdict::equivalent: ++equivalent; break;
    case Verdict::wrong: ++wrong; break;
  }
  if (c.needs_review) ++review;
}

std::string format_percent(double fraction) {
  char buf[32];
  // Round half away from zero at the hundredths of a percent.
  const double scaled = std::floor(fraction * 10000.0 + 0.5) / 100.0;
  std::snprintf(buf, sizeof buf, "%.2f%%", scaled);
  return buf;
}

CorpusReport run_corpus(const std::vector<CorpusPair>& pairs, const Lexicon& lexicon, const KnowledgeDoc& knowledge,
                        const OracleOptions& options) {
  CorpusReport report;
  for (const auto& pair : pairs) {
    PairResult r{pair.prompt, pair.category, pair.tag, {}, {}};
    try {
      r.produced = pair.produced ? *pair.produced : serialize_ir(translate(pair.prompt, lexicon));
      r.classification = classify_wire(pair.completion, r.produced, knowledge, options);
    } catch (const std::exception& e) {
      r.classification = {Verdict::wrong, true, std::string("evaluation failed: ") + e.what()};
    }
    report.overall.add(r.classification);
    report.by_category[pair.category].add(r.classification);
    report.by_tag[pair.tag].add(r.classification);
    report.pairs.push_back(std::move(r));
  }
  return report;
}

namespace {

void table_row(std::ostringstream& out, const std::string& name, const Tally& t) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-22s %9zu %10zu %6zu %6zu %9s\n", name.c_str(), t.identical, t.equivalent, t.wrong,
                t.total(), format_percent(t.accuracy()).c_str());
  out << buf;
}

nlohmann::ordered_json tally_json(const Tally& t) {
  return {{"identical", t.identical},       {"equivalent", t.equivalent}, {"wrong", t.wrong},
          {"total", t.total()},             {"needs_review", t.review},   {"practical_accuracy", format_percent(t.accuracy())},
          {"accuracy_fraction", t.accuracy()}};
}

}  // namespace

std::string CorpusReport::table() const {
  std::ostringstream out;
  char head[160];
  std::snprintf(head, sizeof head, "%-22s %9s %10s %6s %6s %9s\n", "group", "identical", "equivalent", "wrong", "total",
                "accuracy");
  out << head;
  table_row(out, "all", overall);
  for (const auto& [name, t] : by_category) table_row(out, "category:" + name, t);
  for (const auto& [name, t] : by_tag) table_row(out, "tag:" + name, t);
  for (const auto& p : pairs)
    if (p.classification.verdict == Verdict::wrong || p.classification.needs_review)
      out << to_string(p.classification.verdict) << (p.classification.needs_review ? " (review)" : "") << ": "
          << p.prompt << " -- " << p.classification.reason << "\n";
  return out.str();
}

std::string CorpusReport::to_json() const {
  nlohmann::ordered_json out;
  out["overall"] = tally_json(overall);
  out["by_category"] = nlohmann::ordered_json::object();
  for (const auto& [name, t] : by_category) out["by_category"][name] = tally_json(t);
  out["by_tag"] = nlohmann::ordered_json::object();
  for (const auto& [name, t] : by_tag) out["by_tag"][name] = tally_json(t);
  out["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : pairs)
    out["pairs"].push_back({{"prompt", p.prompt},
                            {"category", p.category},
                            {"tag", p.tag},
                            {"produced", p.produced},
                            {"verdict", std::string(to_string(p.classification.verdict))},
                            {"needs_review", p.classification.needs_review},
                            {"reason", p.classification.reason}});
  return out.dump(2);
}

}  // namespace cardinal
