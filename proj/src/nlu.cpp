#include "cardinal/nlu.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

#include "cardinal/error.hpp"

namespace cardinal {

// ---------------------------------------------------------------------------
// Tokens

namespace {

constexpr std::array<std::string_view, 21> kNumberWords = {
    "zero", "one",    "two",    "three",    "four",     "five",    "six",
    "seven", "eight", "nine",   "ten",      "eleven",   "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen", "twenty"};

bool looks_like_constant(std::string_view w) {
  if (w.size() < 2 || !std::isupper(static_cast<unsigned char>(w.front())) ||
      !std::isdigit(static_cast<unsigned char>(w.back())))
    return false;
  return std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isalnum(c); });
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(lower(w));
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    Token t;
    if (std::all_of(word.begin(), word.end(), [](unsigned char c) { return std::isdigit(c); })) {
      t.kind = Token::Kind::number;
      t.text = word;
      t.value = word.size() > 18 ? INT64_MAX : std::stoll(word);
    } else if (looks_like_constant(word)) {
      t.kind = Token::Kind::constant;
      t.text = word;
    } else {
      t.text = lower(word);
      const auto it = std::find(kNumberWords.begin(), kNumberWords.end(), t.text);
      if (it != kNumberWords.end()) {
        t.kind = Token::Kind::number;
        t.value = it - kNumberWords.begin();
      }
    }
    out.push_back(std::move(t));
    word.clear();
  };
  for (const char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) word += c;
    else if (c == '\'' && !word.empty()) continue;  // aren't -> arent
    else flush();
  }
  flush();
  return out;
}

// ---------------------------------------------------------------------------
// Quantifier kinds

namespace {

constexpr std::array<std::pair<QuantKind, std::string_view>, 15> kQuantKinds = {{
    {QuantKind::forall, "forall"},
    {QuantKind::none, "none"},
    {QuantKind::at_least, "at_least"},
    {QuantKind::at_most, "at_most"},
    {QuantKind::exactly, "exactly"},
    {QuantKind::most, "most"},
    {QuantKind::times, "times"},
    {QuantKind::more_than_pred, "more_than_pred"},
    {QuantKind::less_than_pred, "less_than_pred"},
    {QuantKind::between, "between"},
    {QuantKind::many_threshold, "many_threshold"},
    {QuantKind::fixed_value, "fixed_value"},
    {QuantKind::half_of, "half_of"},
    {QuantKind::count_query, "count_query"},
    {QuantKind::dozen, "dozen"},
}};

}  // namespace

std::string_view to_string(QuantKind kind) {
  for (const auto& [k, name] : kQuantKinds)
    if (k == kind) return name;
  return "?";
}

std::optional<QuantKind> parse_quant_kind(std::string_view name) {
  for (const auto& [k, n] : kQuantKinds)
    if (n == name) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexicon

namespace {

const std::map<std::string, std::vector<std::string>>& role_markers() {
  static const std::map<std::string, std::vector<std::string>> markers = {
      {"tool", {"using", "with"}},
      {"liner", {"with"}},
      {"topping", {"with"}},
      {"source", {"from"}},
      {"destination", {"to", "into", "onto", "in"}},
      {"oven", {"in"}},
  };
  return markers;
}

[[noreturn]] void lexicon_error(std::size_t line, const std::string& message) {
  throw LexiconError("lexicon line " + std::to_string(line) + ": " + message);
}

ActionTemplate parse_action(std::size_t line, const std::string& spec) {
  const auto open = spec.find('(');
  const auto close = spec.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open || trim(spec.substr(close + 1)) != "")
    lexicon_error(line, "expected <action>(<role>:<type>:<explicit|implicit>, ...)");
  ActionTemplate t;
  t.action = trim(spec.substr(0, open));
  if (!is_predicate_name(t.action)) lexicon_error(line, "invalid action name '" + t.action + "'");
  std::istringstream roles(spec.substr(open + 1, close - open - 1));
  for (std::string item; std::getline(roles, item, ',');) {
    item = trim(item);
    const auto a = item.find(':');
    const auto b = item.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) lexicon_error(line, "role '" + item + "' needs role:type:source");
    Role r;
    r.name = trim(item.substr(0, a));
    r.type = trim(item.substr(a + 1, b - a - 1));
    const std::string source = trim(item.substr(b + 1));
    if (source == "explicit") r.source = Role::Source::explicit_;
    else if (source == "implicit") r.source = Role::Source::implicit;
    else lexicon_error(line, "role source must be explicit or implicit, got '" + source + "'");
    if (!is_predicate_name(r.type)) lexicon_error(line, "invalid role type '" + r.type + "'");
    t.roles.push_back(std::move(r));
  }
  if (t.roles.empty() || t.roles.front().name != "agent" || t.roles.front().type != "robot")
    lexicon_error(line, "the first role of '" + t.action + "' must be agent:robot");
  return t;
}

}  // namespace

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto space = line.find(' ');
    const auto arrow = line.find("->");
    if (space == std::string::npos || arrow == std::string::npos || arrow < space)
      lexicon_error(line_no, "expected '<noun|verb|quant> <surface> -> <target>'");
    const std::string entry = line.substr(0, space);
    const std::string surface = trim(line.substr(space + 1, arrow - space - 1));
    const std::string target = trim(line.substr(arrow + 2));
    if (surface.empty() || target.empty()) lexicon_error(line_no, "empty surface or target");

    if (entry == "noun") {
      if (!is_predicate_name(target)) lexicon_error(line_no, "invalid predicate '" + target + "'");
      std::istringstream forms(surface);
      for (std::string form; std::getline(forms, form, '|');) {
        auto words = split_words(form);
        if (words.empty()) lexicon_error(line_no, "empty noun form");
        lex.longest_noun_ = std::max(lex.longest_noun_, words.size());
        auto [it, inserted] = lex.nouns_.emplace(words, target);
        if (!inserted && it->second != target) lexicon_error(line_no, "noun '" + trim(form) + "' maps to two predicates");
      }
    } else if (entry == "verb") {
      ActionTemplate t = parse_action(line_no, target);
      const auto words = split_words(surface);
      if (words.size() != 1) lexicon_error(line_no, "verbs are single words");
      auto [it, inserted] = lex.actions_.emplace(t.action, t);
      if (!inserted && (it->second.roles != t.roles))
        lexicon_error(line_no, "action '" + t.action + "' declared with different roles");
      it->second.verbs.push_back(words.front());
      if (!lex.verbs_.emplace(words.front(), t.action).second)
        lexicon_error(line_no, "verb '" + words.front() + "' declared twice");
    } else if (entry == "quant") {
      QuantTemplate q;
      const auto colon = target.find(':');
      const auto kind = parse_quant_kind(target.substr(0, colon));
      if (!kind) lexicon_error(line_no, "unknown quantifier kind '" + target.substr(0, colon) + "'");
      q.kind = *kind;
      q.lexeme = normalize_whitespace(lower(surface));
      if (colon != std::string::npos) {
        const std::string payload = target.substr(colon + 1);
        if (q.kind == QuantKind::half_of) {
          const auto cmp = parse_comparison(payload);
          if (!cmp) lexicon_error(line_no, "half_of payload must be a comparison");
          q.cmp = *cmp;
        } else {
          try {
            q.value = std::stoll(payload);
          } catch (const std::exception&) {
            lexicon_error(line_no, "numeric payload expected, got '" + payload + "'");
          }
        }
      }
      if ((q.kind == QuantKind::fixed_value || q.kind == QuantKind::many_threshold || q.kind == QuantKind::dozen) &&
          !q.value)
        lexicon_error(line_no, std::string(to_string(q.kind)) + " needs a value");
      auto words = split_words(surface);
      lex.longest_quant_ = std::max(lex.longest_quant_, words.size());
      if (!lex.quants_.emplace(words, q).second) lexicon_error(line_no, "quantifier '" + surface + "' declared twice");
    } else {
      lexicon_error(line_no, "unknown entry '" + entry + "'");
    }
  }
  return lex;
}

Lexicon Lexicon::load(const std::string& path) { return parse(read_file(path)); }

namespace {

// Words of a token as the lexicon sees them (numbers written as words match
// entries like "half a dozen" only through their surface text).
std::string surface_of(const Token& t) { return t.kind == Token::Kind::constant ? std::string() : lower(t.text); }

}  // namespace

std::optional<std::pair<std::string, std::size_t>> Lexicon::match_noun(const std::vector<Token>& tokens,
                                                                       std::size_t pos) const {
  for (std::size_t len = std::min(longest_noun_, tokens.size() - std::min(pos, tokens.size())); len > 0; --len) {
    std::vector<std::string> words;
    bool ok = true;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (tokens[i].kind != Token::Kind::word) {
        ok = false;
        break;
      }
      words.push_back(tokens[i].text);
    }
    if (!ok) continue;
    if (auto it = nouns_.find(words); it != nouns_.end()) return std::make_pair(it->second, len);
  }
  return std::nullopt;
}

std::optional<std::pair<QuantTemplate, std::size_t>> Lexicon::match_quant(const std::vector<Token>& tokens,
                                                                          std::size_t pos) const {
  for (std::size_t len = std::min(longest_quant_, tokens.size() - std::min(pos, tokens.size())); len > 0; --len) {
    std::vector<std::string> words;
    for (std::size_t i = pos; i < pos + len; ++i) words.push_back(surface_of(tokens[i]));
    if (auto it = quants_.find(words); it != quants_.end()) return std::make_pair(it->second, len);
  }
  return std::nullopt;
}

const ActionTemplate* Lexicon::verb(const std::string& word) const {
  auto it = verbs_.find(word);
  if (it == verbs_.end()) return nullptr;
  return &actions_.at(it->second);
}

void Lexicon::check_against(const KnowledgeDoc& knowledge) const {
  const auto predicates = knowledge.predicates();
  const auto actions = knowledge.actions();
  const auto arities = knowledge.arities();
  for (const auto& [words, predicate] : nouns_)
    if (!predicates.count(predicate))
      throw LexiconError("noun predicate '" + predicate + "' is not declared in the knowledge base");
  for (const auto& [name, t] : actions_) {
    if (!actions.count(name)) throw LexiconError("action '" + name + "' has no command rule");
    if (arities.at(name) != t.roles.size())
      throw LexiconError("action '" + name + "' has " + std::to_string(t.roles.size()) + " roles but arity " +
                         std::to_string(arities.at(name)) + " in the knowledge base");
    for (const auto& r : t.roles)
      if (!predicates.count(r.type))
        throw LexiconError("role type '" + r.type + "' of '" + name + "' is not declared in the knowledge base");
  }
}

// ---------------------------------------------------------------------------
// Properties and quantifier templates

Property Property::of(std::string predicate, bool negated) { return Property{{{std::move(predicate), negated}}}; }

Property Property::complement() const {
  if (literals.size() != 1) throw FormatError("only single-literal properties have a literal complement");
  return Property{{{literals.front().predicate, !literals.front().negated}}};
}

Property Property::and_also(const Property& other) const {
  Property p = *this;
  p.literals.insert(p.literals.end(), other.literals.begin(), other.literals.end());
  return p;
}

Formula Property::at(const std::string& var) const {
  std::vector<Formula> parts;
  for (const auto& l : literals) {
    Formula a = Formula::atom(l.predicate, {Term::variable(var)});
    parts.push_back(l.negated ? Formula::negation(std::move(a)) : std::move(a));
  }
  return Formula::conjunction_of(parts);
}

namespace {

Card card_of(const Property& p, const std::string& var) { return make_card(var, p.at(var)); }

Property narrowed(const Property& restrictor, const std::optional<Property>& scope) {
  return scope ? restrictor.and_also(*scope) : restrictor;
}

std::int64_t need_value(const QuantTemplate& q) {
  if (!q.value) throw UnknownQuantifier("quantifier '" + q.lexeme + "' needs a number");
  return *q.value;
}

const Property& need_scope(const QuantTemplate& q, const std::optional<Property>& scope) {
  if (!scope) throw MissingScope("quantifier '" + q.lexeme + "' (" + std::string(to_string(q.kind)) + ") needs a scope");
  return *scope;
}

QueryExpr numeric(const Property& p, const std::string& var, Comparison cmp, std::int64_t n) {
  return make_constraint(card_of(p, var), cmp, IntLit{n});
}

}  // namespace

std::vector<QueryExpr> build_constraint(const QuantTemplate& q, const Property& restrictor,
                                        const std::optional<Property>& scope, const std::string& var) {
  switch (q.kind) {
    case QuantKind::forall: {
      const Property& s = need_scope(q, scope);
      return {make_bool_query(Formula::forall(var, Formula::implication(restrictor.at(var), s.at(var))))};
    }
    case QuantKind::none:
      return {make_bool_query(Formula::negation(Formula::exists(var, narrowed(restrictor, scope).at(var))))};
    case QuantKind::at_least:
    case QuantKind::fixed_value:
    case QuantKind::many_threshold:
      return {numeric(narrowed(restrictor, scope), var, Comparison::ge, need_value(q))};
    case QuantKind::at_most:
      return {numeric(narrowed(restrictor, scope), var, Comparison::le, need_value(q))};
    case QuantKind::exactly:
    case QuantKind::dozen:
      return {numeric(narrowed(restrictor, scope), var, Comparison::eq, need_value(q))};
    case QuantKind::most: {
      const Property& s = need_scope(q, scope);
      const Formula against = s.literals.size() == 1 ? s.complement().at(var) : Formula::negation(s.at(var));
      std::vector<Formula> parts = conjuncts(restrictor.at(var));
      parts.push_back(against);
      return {make_constraint(card_of(restrictor.and_also(s), var), Comparison::gt,
                              make_card(var, Formula::conjunction_of(parts)))};
    }
    case QuantKind::times: {
      const Property& other = need_scope(q, scope);
      return {make_constraint(card_of(restrictor, var), Comparison::eq,
                              make_scaled(need_value(q), card_of(other, var)))};
    }
    case QuantKind::more_than_pred:
    case QuantKind::less_than_pred: {
      const Comparison cmp = q.kind == QuantKind::more_than_pred ? Comparison::gt : Comparison::lt;
      if (q.value) return {numeric(narrowed(restrictor, scope), var, cmp, *q.value)};
      const Property& other = need_scope(q, scope);
      return {make_constraint(card_of(restrictor, var), cmp, card_of(other, var))};
    }
    case QuantKind::between: {
      if (!q.upper) throw UnknownQuantifier("between needs two bounds");
      const Property p = narrowed(restrictor, scope);
      return {numeric(p, var, Comparison::ge, need_value(q)), numeric(p, var, Comparison::le, *q.upper)};
    }
    case QuantKind::half_of: {
      const Property& s = need_scope(q, scope);
      return {make_constraint(make_scaled(2, card_of(restrictor.and_also(s), var)), q.cmp, card_of(restrictor, var))};
    }
    case QuantKind::count_query:
      return {CountQuery{card_of(narrowed(restrictor, scope), var)}};
  }
  throw UnknownQuantifier("unsupported quantifier '" + q.lexeme + "'");
}

// ---------------------------------------------------------------------------
// Sentence grammar

namespace {

struct NoParse {};

class Cursor {
 public:
  Cursor(const Lexicon& lex, std::vector<Token> tokens) : lex_(lex), t_(std::move(tokens)) {}

  bool done() const { return pos_ >= t_.size(); }
  std::size_t pos() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }
  const Token* peek(std::size_t ahead = 0) const { return pos_ + ahead < t_.size() ? &t_[pos_ + ahead] : nullptr; }

  bool is_word(const std::string& w, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->kind == Token::Kind::word && t->text == w;
  }

  bool word(const std::string& w) {
    if (!is_word(w)) return false;
    ++pos_;
    return true;
  }

  bool words(std::initializer_list<const char*> ws) {
    std::size_t i = 0;
    for (const char* w : ws)
      if (!is_word(w, i++)) return false;
    pos_ += ws.size();
    return true;
  }

  void expect_word(const std::string& w) {
    if (!word(w)) throw NoParse{};
  }

  void expect_done() const {
    if (!done()) throw NoParse{};
  }

  std::optional<std::int64_t> number() {
    const Token* t = peek();
    if (!t || t->kind != Token::Kind::number) return std::nullopt;
    ++pos_;
    return t->value;
  }

  std::optional<QuantTemplate> quant() {
    auto m = lex_.match_quant(t_, pos_);
    if (!m) return std::nullopt;
    pos_ += m->second;
    return m->first;
  }

  std::optional<std::string> noun() {
    auto m = lex_.match_noun(t_, pos_);
    if (!m) return std::nullopt;
    pos_ += m->second;
    return m->first;
  }

  std::string expect_noun() {
    auto n = noun();
    if (!n) throw NoParse{};
    return *n;
  }

  std::optional<std::string> constant() {
    const Token* t = peek();
    if (!t || t->kind != Token::Kind::constant) return std::nullopt;
    ++pos_;
    return t->text;
  }

  // A count: digits / number word, or a dozen lexeme.
  std::int64_t expect_amount() {
    if (auto n = number()) return *n;
    const std::size_t save = pos_;
    if (auto q = quant(); q && q->kind == QuantKind::dozen) return *q->value;
    pos_ = save;
    throw NoParse{};
  }

 private:
  const Lexicon& lex_;
  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

const std::set<std::string>& unsupported_words() {
  static const std::set<std::string> words = {"and", "it", "them", "this", "that", "these", "those", "they",
                                              "something", "nothing", "anything", "everything", "someone"};
  return words;
}

std::vector<Token> strip_fillers(std::vector<Token> t) {
  static const std::set<std::string> leading = {"please", "next", "now", "then"};
  while (!t.empty() && t.front().kind == Token::Kind::word && leading.count(t.front().text)) t.erase(t.begin());
  while (!t.empty() && t.back().kind == Token::Kind::word && t.back().text == "please") t.pop_back();
  auto ends_with = [&](std::initializer_list<const char*> tail) {
    if (t.size() < tail.size()) return false;
    std::size_t i = t.size() - tail.size();
    for (const char* w : tail)
      if (t[i].kind != Token::Kind::word || t[i++].text != w) return false;
    return true;
  };
  if (ends_with({"in", "the", "kitchen"})) t.resize(t.size() - 3);
  else if (ends_with({"in", "kitchen"})) t.resize(t.size() - 2);
  return t;
}

// --- commands ---------------------------------------------------------------

struct ObjectPhrase {
  std::optional<std::string> predicate;
  std::optional<std::string> constant;
  std::int64_t count = 1;
  bool every = false;
};

ObjectPhrase parse_object(const Lexicon& lex, std::vector<Token> tokens) {
  if (tokens.empty()) throw NoParse{};
  Cursor c(lex, std::move(tokens));
  ObjectPhrase np;
  bool quantified = false;
  if (auto q = c.quant()) {
    switch (q->kind) {
      case QuantKind::forall: np.every = true; break;
      case QuantKind::at_least:
      case QuantKind::exactly: np.count = c.expect_amount(); break;
      case QuantKind::fixed_value:
      case QuantKind::many_threshold:
      case QuantKind::dozen: np.count = *q->value; break;
      default: throw NoParse{};
    }
    quantified = true;
  } else if (auto n = c.number()) {
    np.count = *n;
    quantified = true;
  } else if (!(c.word("the") || c.word("a") || c.word("an"))) {
    // bare noun or named object
  }
  if (quantified) {
    c.word("of");
    c.word("the");
  }
  np.predicate = c.noun();
  np.constant = c.constant();
  c.expect_done();
  if (np.constant && quantified) throw NoParse{};
  if (!np.constant && !np.predicate) throw NoParse{};
  if (np.count <= 0) throw NoParse{};
  return np;
}

std::vector<Token> strip_contents_of(std::vector<Token> seg) {
  std::size_t i = 0;
  if (i < seg.size() && seg[i].text == "the") ++i;
  if (i + 1 < seg.size() && (seg[i].text == "contents" || seg[i].text == "content") && seg[i + 1].text == "of")
    return std::vector<Token>(seg.begin() + static_cast<std::ptrdiff_t>(i + 2), seg.end());
  return seg;
}

SentenceIR parse_command(const Lexicon& lex, const ActionTemplate& t, std::vector<Token> rest) {
  for (const auto& tok : rest)
    if (tok.kind == Token::Kind::word && unsupported_words().count(tok.text)) throw NoParse{};

  std::map<std::string, std::size_t> marker_role;
  for (std::size_t i = 1; i < t.roles.size(); ++i) {
    auto it = role_markers().find(t.roles[i].name);
    if (it == role_markers().end()) continue;
    for (const auto& m : it->second) marker_role.emplace(m, i);
  }

  std::vector<Token> direct;
  std::map<std::size_t, std::vector<Token>> marked;
  std::optional<std::size_t> current;
  for (auto& tok : rest) {
    if (tok.kind == Token::Kind::word) {
      if (auto it = marker_role.find(tok.text); it != marker_role.end()) {
        if (marked.count(it->second)) throw NoParse{};
        current = it->second;
        marked[it->second];
        continue;
      }
    }
    (current ? marked[*current] : direct).push_back(std::move(tok));
  }

  std::map<std::size_t, ObjectPhrase> filled;
  for (auto& [role, seg] : marked) filled.emplace(role, parse_object(lex, std::move(seg)));
  direct = strip_contents_of(std::move(direct));
  if (!direct.empty()) {
    std::optional<std::size_t> slot;
    for (std::size_t i = 1; i < t.roles.size() && !slot; ++i)
      if (t.roles[i].source == Role::Source::explicit_ && !filled.count(i)) slot = i;
    if (!slot) throw NoParse{};
    filled.emplace(*slot, parse_object(lex, std::move(direct)));
  }

  std::vector<Formula> antecedent{Formula::atom(t.roles[0].type, {Term::variable("x0")})};
  std::vector<Term> args{Term::variable("x0")};
  std::vector<CardConstraint> constraints;
  for (std::size_t i = 1; i < t.roles.size(); ++i) {
    const Role& role = t.roles[i];
    const std::string var = "x" + std::to_string(i);
    auto it = filled.find(i);
    if (it == filled.end()) {
      if (role.source == Role::Source::explicit_) throw NoParse{};
      antecedent.push_back(Formula::atom(role.type, {Term::variable(var)}));
      args.push_back(Term::variable(var));
      continue;
    }
    const ObjectPhrase& np = it->second;
    if (np.constant) {
      const Term c = Term::constant(*np.constant);
      if (np.predicate) antecedent.push_back(Formula::atom(*np.predicate, {c}));
      args.push_back(c);
      continue;
    }
    if (np.every && i != 1) throw NoParse{};
    antecedent.push_back(Formula::atom(*np.predicate, {Term::variable(var)}));
    args.push_back(Term::variable(var));
    if (!np.every)
      constraints.push_back(make_constraint(card_of(Property::of(*np.predicate), var), Comparison::ge, IntLit{np.count}));
  }
  Formula command = Formula::implication(Formula::conjunction_of(antecedent), Formula::atom(t.action, std::move(args)));
  return SentenceIR::command(std::move(constraints), std::move(command));
}

// --- queries ----------------------------------------------------------------

// [other] noun, as the compared side of a comparative.
Property compared_property(Cursor& c, const std::string& restrictor) {
  const bool other = c.word("other");
  const std::string noun = c.expect_noun();
  if (!other) return Property::of(noun);
  return Property{{{restrictor, true}, {noun, false}}};
}

// (are|is) [not] [a|an] noun
Property copula_scope(Cursor& c, bool copula_consumed) {
  bool negated = false;
  if (!copula_consumed) {
    if (c.word("arent") || c.word("isnt")) negated = true;
    else if (!(c.word("are") || c.word("is"))) throw NoParse{};
  }
  if (c.word("not")) negated = true;
  if (!(c.word("a") || c.word("an"))) c.word("the");
  return Property::of(c.expect_noun(), negated);
}

SentenceIR query_of(std::vector<QueryExpr> exprs) { return SentenceIR::query(std::move(exprs)); }

// How many R [are there | ...] / How many R are [not] S
SentenceIR parse_count(Cursor& c) {
  if (!(c.word("the") || c.words({"all", "the"}))) c.word("of");
  const std::string r = c.expect_noun();
  QuantTemplate q{"how many", QuantKind::count_query, {}, {}, Comparison::eq};
  if (c.done() || c.words({"are", "there"}) || c.words({"is", "there"}) || c.words({"there", "are"}) ||
      c.words({"do", "we", "have"}) || c.word("exist")) {
    c.expect_done();
    return query_of(build_constraint(q, Property::of(r), std::nullopt));
  }
  Property s = copula_scope(c, false);
  c.expect_done();
  return query_of(build_constraint(q, Property::of(r), s));
}

// After "there are" / "are there": quantity R [than ...]
SentenceIR parse_existential(Cursor& c) {
  const std::size_t start = c.pos();
  if (auto q = c.quant()) {
    switch (q->kind) {
      case QuantKind::none:
      case QuantKind::many_threshold:
      case QuantKind::fixed_value:
      case QuantKind::dozen: {
        const std::string r = c.expect_noun();
        c.expect_done();
        return query_of(build_constraint(*q, Property::of(r), std::nullopt));
      }
      case QuantKind::at_least:
      case QuantKind::at_most:
      case QuantKind::exactly: {
        q->value = c.expect_amount();
        const std::string r = c.expect_noun();
        c.expect_done();
        return query_of(build_constraint(*q, Property::of(r), std::nullopt));
      }
      case QuantKind::between: {
        q->value = c.expect_amount();
        c.expect_word("and");
        q->upper = c.expect_amount();
        const std::string r = c.expect_noun();
        c.expect_done();
        return query_of(build_constraint(*q, Property::of(r), std::nullopt));
      }
      case QuantKind::more_than_pred:
      case QuantKind::less_than_pred: {
        if (q->lexeme.ends_with("than")) {
          q->value = c.expect_amount();
          const std::string r = c.expect_noun();
          c.expect_done();
          return query_of(build_constraint(*q, Property::of(r), std::nullopt));
        }
        const std::string r = c.expect_noun();
        c.expect_word("than");
        Property other = compared_property(c, r);
        c.expect_done();
        return query_of(build_constraint(*q, Property::of(r), other));
      }
      case QuantKind::times: {
        if (!q->value) throw NoParse{};
        if (!c.words({"as", "many"})) c.expect_word("more");
        const std::string r = c.expect_noun();
        if (!c.word("as")) c.expect_word("than");
        Property other = compared_property(c, r);
        c.expect_done();
        return query_of(build_constraint(*q, Property::of(r), other));
      }
      default:
        throw NoParse{};
    }
  }
  c.reset(start);
  if (auto n = c.number()) {
    if (c.word("times")) {
      QuantTemplate q{"times", QuantKind::times, *n, {}, Comparison::eq};
      if (!c.words({"as", "many"})) c.expect_word("more");
      const std::string r = c.expect_noun();
      if (!c.word("as")) c.expect_word("than");
      Property other = compared_property(c, r);
      c.expect_done();
      return query_of(build_constraint(q, Property::of(r), other));
    }
    QuantTemplate q{std::to_string(*n), QuantKind::exactly, *n, {}, Comparison::eq};
    const std::string r = c.expect_noun();
    c.expect_done();
    return query_of(build_constraint(q, Property::of(r), std::nullopt));
  }
  if (c.word("a") || c.word("an") || c.word("any")) {
    QuantTemplate q{"a", QuantKind::at_least, 1, {}, Comparison::eq};
    const std::string r = c.expect_noun();
    c.expect_done();
    return query_of(build_constraint(q, Property::of(r), std::nullopt));
  }
  throw NoParse{};
}

// Q R (are|is) [not] S, with the copula possibly moved to the front.
SentenceIR parse_subject_predicate(Cursor& c, bool copula_consumed) {
  QuantTemplate q;
  if (auto lexeme = c.quant()) {
    q = *lexeme;
    switch (q.kind) {
      case QuantKind::forall:
      case QuantKind::none:
      case QuantKind::most:
      case QuantKind::half_of:
      case QuantKind::fixed_value:
      case QuantKind::many_threshold:
      case QuantKind::dozen:
        break;
      case QuantKind::at_least:
      case QuantKind::at_most:
      case QuantKind::exactly:
        q.value = c.expect_amount();
        break;
      case QuantKind::more_than_pred:
      case QuantKind::less_than_pred:
        if (!q.lexeme.ends_with("than")) throw NoParse{};
        q.value = c.expect_amount();
        break;
      case QuantKind::between:
        q.value = c.expect_amount();
        c.expect_word("and");
        q.upper = c.expect_amount();
        break;
      default:
        throw NoParse{};
    }
  } else if (auto n = c.number()) {
    q = QuantTemplate{std::to_string(*n), QuantKind::exactly, *n, {}, Comparison::eq};
  } else {
    throw NoParse{};
  }
  if (q.kind != QuantKind::forall && q.kind != QuantKind::none && q.kind != QuantKind::most &&
      q.kind != QuantKind::half_of) {
    c.word("of");
    c.word("the");
  }
  const std::string r = c.expect_noun();
  Property s = copula_scope(c, copula_consumed);
  c.expect_done();
  return query_of(build_constraint(q, Property::of(r), s));
}

SentenceIR parse_query(Cursor& c) {
  if (auto q = c.quant(); q && q->kind == QuantKind::count_query) return parse_count(c);
  c.reset(0);
  if (c.words({"there", "are"}) || c.words({"there", "is"}) || c.words({"are", "there"}) ||
      c.words({"is", "there"}) || c.words({"do", "we", "have"}) || c.words({"we", "have"}))
    return parse_existential(c);
  c.reset(0);
  if (c.word("are") || c.word("is")) return parse_subject_predicate(c, true);
  return parse_subject_predicate(c, false);
}

}  // namespace

SentenceIR translate(std::string_view text, const Lexicon& lexicon) {
  std::vector<Token> tokens = strip_fillers(tokenize(text));
  if (tokens.empty()) return SentenceIR::invalid();
  try {
    if (tokens.front().kind == Token::Kind::word) {
      if (const ActionTemplate* t = lexicon.verb(tokens.front().text))
        return parse_command(lexicon, *t, std::vector<Token>(tokens.begin() + 1, tokens.end()));
    }
    Cursor c(lexicon, std::move(tokens));
    return parse_query(c);
  } catch (const NoParse&) {
  } catch (const Error&) {
  }
  return SentenceIR::invalid();
}

}  // namespace cardinal
