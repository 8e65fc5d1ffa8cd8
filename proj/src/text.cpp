#include "cardinal/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cardinal/error.hpp"

namespace cardinal {

namespace {

enum class Tok { ident, integer, lparen, rparen, lbracket, rbracket, comma, dot, bar, amp, minus, arrow, star, cmp, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::bar: return "'|'";
    case Tok::amp: return "'&'";
    case Tok::minus: return "'-'";
    case Tok::arrow: return "'->'";
    case Tok::star: return "'*'";
    case Tok::cmp: return "comparison";
    case Tok::end: return "end of input";
  }
  return "token";
}

// `%` starts a comment running to the end of the line.
std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto single = [&](Tok k) {
    out.push_back({k, std::string(1, s[i]), i});
    ++i;
  };
  while (i < s.size()) {
    const unsigned char c = s[i];
    if (std::isspace(c)) {
      ++i;
    } else if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isalpha(c) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
    } else if (std::isdigit(c)) {
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::integer, std::string(s.substr(start, i - start)), start});
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", i});
      i += 2;
    } else if ((c == '>' || c == '<' || c == '=') && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::cmp, std::string(s.substr(i, 2)), i});
      i += 2;
    } else if (c == '>' || c == '<') {
      single(Tok::cmp);
    } else {
      switch (c) {
        case '(': single(Tok::lparen); break;
        case ')': single(Tok::rparen); break;
        case '[': single(Tok::lbracket); break;
        case ']': single(Tok::rbracket); break;
        case ',': single(Tok::comma); break;
        case '.': single(Tok::dot); break;
        case '|': single(Tok::bar); break;
        case '&': single(Tok::amp); break;
        case '-': single(Tok::minus); break;
        case '*': single(Tok::star); break;
        default:
          throw SyntaxError(std::string("unexpected character '") + static_cast<char>(c) + "'", i);
      }
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view name) const { return at(Tok::ident) && peek().text == name; }

  Token next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }

  Token expect(Tok k) {
    if (!at(k)) fail("expected " + std::string(describe(k)) + ", found " + found());
    return next();
  }

  void expect_ident(std::string_view name) {
    if (!at_ident(name)) fail("expected '" + std::string(name) + "', found " + found());
    next();
  }

  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, peek().offset); }

  std::string found() const {
    return at(Tok::end) ? std::string("end of input") : "'" + peek().text + "'";
  }

  std::int64_t integer() {
    const Token t = expect(Tok::integer);
    try {
      return std::stoll(t.text);
    } catch (const std::out_of_range&) {
      throw SyntaxError("integer out of range", t.offset);
    }
  }

  Formula formula() { return implication(); }

  Card card_atom() {
    expect(Tok::bar);
    expect_ident("exists");
    const Token var = expect(Tok::ident);
    if (!is_variable_name(var.text)) throw SyntaxError("expected a variable, found '" + var.text + "'", var.offset);
    bind(var);
    expect(Tok::lparen);
    Formula body = formula();
    expect(Tok::rparen);
    unbind();
    if (at(Tok::dot)) next();
    expect(Tok::bar);
    return make_card(var.text, std::move(body));
  }

  CardTerm card_term() {
    if (at(Tok::integer)) {
      const std::int64_t n = integer();
      if (!at(Tok::star)) return IntLit{n};
      next();
      return make_scaled(n, card_atom());
    }
    return card_atom();
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (!at(Tok::arrow)) return lhs;
    next();
    return Formula::implication(std::move(lhs), implication());
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (at(Tok::bar)) {
      next();
      lhs = Formula::disjunction(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (at(Tok::amp)) {
      next();
      lhs = Formula::conjunction(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    if (at(Tok::minus)) {
      next();
      return Formula::negation(unary());
    }
    return primary();
  }

  Formula primary() {
    if (at(Tok::lparen)) {
      next();
      Formula inner = formula();
      expect(Tok::rparen);
      return inner;
    }
    if (at_ident("all") || at_ident("exists")) return quantified();
    return atom();
  }

  Formula quantified() {
    const bool universal = next().text == "all";
    std::vector<std::string> vars;
    do {
      const Token v = expect(Tok::ident);
      if (!is_variable_name(v.text)) throw SyntaxError("expected a variable, found '" + v.text + "'", v.offset);
      bind(v);
      vars.push_back(v.text);
    } while (at(Tok::ident) && !at_ident("all") && !at_ident("exists") && !atom_ahead());
    Formula body = formula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      unbind();
      body = universal ? Formula::forall(*it, std::move(body)) : Formula::exists(*it, std::move(body));
    }
    return body;
  }

  // ident '(' ident (',' | ')') starts an atom; anything else after a
  // quantified variable is another variable.
  bool atom_ahead() const {
    return peek(1).kind == Tok::lparen && peek(2).kind == Tok::ident &&
           (peek(3).kind == Tok::comma || peek(3).kind == Tok::rparen);
  }

  Formula atom() {
    const Token name = expect(Tok::ident);
    if (!is_predicate_name(name.text))
      throw SyntaxError("expected a predicate, found '" + name.text + "'", name.offset);
    expect(Tok::lparen);
    std::vector<Term> args;
    for (;;) {
      const Token t = expect(Tok::ident);
      if (is_variable_name(t.text)) args.push_back(Term{Term::Kind::variable, t.text});
      else if (is_constant_name(t.text)) args.push_back(Term{Term::Kind::constant, t.text});
      else throw SyntaxError("expected a variable or constant, found '" + t.text + "'", t.offset);
      if (at(Tok::comma)) {
        next();
        continue;
      }
      expect(Tok::rparen);
      break;
    }
    return Formula::atom(name.text, std::move(args));
  }

  void bind(const Token& v) {
    for (const auto& b : bound_)
      if (b == v.text)
        throw ShadowingError("variable '" + v.text + "' rebound at offset " + std::to_string(v.offset));
    bound_.push_back(v.text);
  }
  void unbind() { bound_.pop_back(); }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::forall:
    case Formula::Kind::exists: return 0;
    case Formula::Kind::implication: return 1;
    case Formula::Kind::disjunction: return 2;
    case Formula::Kind::conjunction: return 3;
    case Formula::Kind::negation: return 4;
    case Formula::Kind::atom: return 5;
  }
  return 5;
}

void format_into(const Formula& f, std::string& out);

void format_wrapped(const Formula& f, bool wrap, std::string& out) {
  if (wrap) out += '(';
  format_into(f, out);
  if (wrap) out += ')';
}

void format_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::atom:
      out += f.predicate();
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ", ";
        out += f.args()[i].name;
      }
      out += ')';
      return;
    case Formula::Kind::negation:
      out += '-';
      format_wrapped(f.body(), !f.body().is_atom(), out);
      return;
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      out += f.kind() == Formula::Kind::forall ? "all " : "exists ";
      out += f.variable();
      out += " (";
      format_into(f.body(), out);
      out += ')';
      return;
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
    case Formula::Kind::implication: {
      const int p = precedence(f);
      const bool right_assoc = f.kind() == Formula::Kind::implication;
      const int pl = precedence(f.lhs());
      const int pr = precedence(f.rhs());
      format_wrapped(f.lhs(), pl == 0 || (right_assoc ? pl <= p : pl < p), out);
      out += f.kind() == Formula::Kind::conjunction ? " & " : f.kind() == Formula::Kind::disjunction ? " | " : " -> ";
      format_wrapped(f.rhs(), pr == 0 || (right_assoc ? pr < p : pr <= p), out);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Document-level parsing over the same token stream.

class DocParser {
 public:
  explicit DocParser(std::string_view text) : p_(text) {}

  bool done() const { return p_.at(Tok::end); }
  Parser& tokens() { return p_; }

  bool at_end_of_list() const { return p_.at_ident("end_of_list") && p_.peek(1).kind == Tok::dot; }

  // name(arg).
  std::string directive(std::string_view name) {
    p_.expect_ident(name);
    p_.expect(Tok::lparen);
    std::string arg = p_.expect(Tok::ident).text;
    return arg;
  }

  std::vector<Formula> formulas_until_end() {
    std::vector<Formula> out;
    while (!at_end_of_list()) {
      if (p_.at(Tok::end)) p_.fail("missing end_of_list");
      out.push_back(p_.formula());
      p_.expect(Tok::dot);
    }
    p_.next();
    p_.next();
    return out;
  }

 private:
  Parser p_;
};

std::string joined(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.expect(Tok::dot);
  p.expect(Tok::end);
  return f;
}

std::string format_formula(const Formula& f) {
  std::string out;
  format_into(f, out);
  return out;
}

QueryExpr parse_query_expr(std::string_view text) {
  Parser p(text);
  if (p.at(Tok::integer) || p.at(Tok::bar)) {
    CardTerm lhs = p.card_term();
    if (p.at(Tok::cmp)) {
      const auto cmp = parse_comparison(p.next().text);
      CardTerm rhs = p.card_term();
      p.expect(Tok::end);
      return make_constraint(std::move(lhs), *cmp, std::move(rhs));
    }
    p.expect(Tok::end);
    if (auto* card = std::get_if<Card>(&lhs)) return CountQuery{std::move(*card)};
    throw FormatError("a bare cardinality query must be a single |exists ...| term");
  }
  Formula f = p.formula();
  p.expect(Tok::dot);
  p.expect(Tok::end);
  return make_bool_query(std::move(f));
}

CardConstraint parse_constraint(std::string_view text) {
  QueryExpr q = parse_query_expr(text);
  if (auto* c = std::get_if<CardConstraint>(&q)) return std::move(*c);
  throw FormatError("expected a cardinality constraint: '" + std::string(text) + "'");
}

std::string format_card(const Card& c) {
  return "|exists " + c.var + " (" + format_formula(c.body) + ").|";
}

std::string format_card_term(const CardTerm& t) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntLit>) return std::to_string(v.value);
        else if constexpr (std::is_same_v<T, Card>) return format_card(v);
        else return std::to_string(v.factor) + " * " + format_card(v.inner);
      },
      t);
}

std::string format_constraint(const CardConstraint& c) {
  return format_card_term(c.lhs) + " " + std::string(to_string(c.cmp)) + " " + format_card_term(c.rhs);
}

std::string format_query_expr(const QueryExpr& q) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoolQuery>) return format_formula(v.formula) + ".";
        else if constexpr (std::is_same_v<T, CardConstraint>) return format_constraint(v);
        else return format_card(v.card);
      },
      q);
}

// ---------------------------------------------------------------------------
// Knowledge documents

std::set<std::string> KnowledgeDoc::predicates() const {
  std::set<std::string> out;
  for (const auto& [name, arity] : arities()) out.insert(name);
  return out;
}

std::set<std::string> KnowledgeDoc::actions() const {
  std::set<std::string> out;
  for (const auto& rule : commands) {
    const Formula& head = rule.rhs().kind() == Formula::Kind::negation ? rule.rhs().body() : rule.rhs();
    out.insert(head.predicate());
  }
  return out;
}

std::map<std::string, std::size_t> KnowledgeDoc::arities() const {
  std::map<std::string, std::size_t> out;
  for (const auto* section : {&classification, &distinction, &commands})
    for (const auto& f : *section) collect_arities(f, out);
  return out;
}

namespace {

void check_classification(const Formula& f) {
  const auto form = format_formula(f);
  if (f.kind() != Formula::Kind::implication || !f.lhs().is_atom() || !f.rhs().is_atom())
    throw FormatError("classification rule must be 'p(x) -> q(x)': " + form);
  const auto& a = f.lhs().args();
  const auto& b = f.rhs().args();
  if (a.size() != 1 || b.size() != 1 || !a[0].is_variable() || a[0] != b[0])
    throw FormatError("classification rule must relate one shared variable: " + form);
}

void check_distinction(const Formula& f) {
  if (f.kind() != Formula::Kind::implication || f.rhs().kind() != Formula::Kind::negation || !f.rhs().body().is_atom())
    throw FormatError("distinction rule must have a negated atom consequent: " + format_formula(f));
}

void check_command_rule(const Formula& f) {
  const auto form = format_formula(f);
  if (f.kind() != Formula::Kind::implication) throw FormatError("command rule must be an implication: " + form);
  const Formula& head = f.rhs().kind() == Formula::Kind::negation ? f.rhs().body() : f.rhs();
  if (!head.is_atom()) throw FormatError("command rule consequent must be an (optionally negated) atom: " + form);
  std::set<std::string> head_vars;
  for (const auto& t : head.args()) {
    if (!t.is_variable()) throw FormatError("command rule consequent must only use variables: " + form);
    head_vars.insert(t.name);
  }
  for (const auto& v : free_vars(f.lhs()))
    if (!head_vars.count(v)) throw FormatError("antecedent variable '" + v + "' not in consequent: " + form);
}

}  // namespace

SensorsDoc parse_sensors(std::string_view text) {
  DocParser d(text);
  Parser& p = d.tokens();
  SensorsDoc doc;
  bool have_size = false;
  bool have_list = false;
  while (!d.done()) {
    if (p.at_ident("assign")) {
      const std::string key = d.directive("assign");
      if (key != "domain_size") p.fail("unsupported assign key '" + key + "'");
      p.expect(Tok::comma);
      const std::int64_t n = p.integer();
      if (n <= 0) p.fail("domain_size must be positive");
      p.expect(Tok::rparen);
      p.expect(Tok::dot);
      doc.domain_size = static_cast<std::size_t>(n);
      have_size = true;
    } else if (p.at_ident("list")) {
      const std::string key = d.directive("list");
      if (key != "distinct") throw UnknownSection("unknown list '" + key + "'");
      p.expect(Tok::rparen);
      p.expect(Tok::dot);
      while (!d.at_end_of_list()) {
        p.expect(Tok::lbracket);
        if (!p.at(Tok::rbracket)) {
          for (;;) {
            const Token c = p.expect(Tok::ident);
            if (!is_constant_name(c.text)) throw SyntaxError("expected a constant, found '" + c.text + "'", c.offset);
            doc.distinct.push_back(c.text);
            if (!p.at(Tok::comma)) break;
            p.next();
          }
        }
        p.expect(Tok::rbracket);
        p.expect(Tok::dot);
      }
      p.next();
      p.next();
      have_list = true;
    } else if (p.at_ident("formulas")) {
      const std::string name = d.directive("formulas");
      if (name != "sensors") throw UnknownSection("unknown sensors section '" + name + "'");
      p.expect(Tok::rparen);
      p.expect(Tok::dot);
      auto facts = d.formulas_until_end();
      doc.facts.insert(doc.facts.end(), facts.begin(), facts.end());
    } else {
      p.fail("expected assign, list or formulas, found " + p.found());
    }
  }
  if (!have_size) throw FormatError("sensors file lacks assign(domain_size, N)");
  if (!have_list) throw FormatError("sensors file lacks list(distinct)");
  check_sensors(doc);
  return doc;
}

void check_sensors(const SensorsDoc& doc) {
  if (doc.distinct.size() != doc.domain_size)
    throw DomainMismatch("domain_size is " + std::to_string(doc.domain_size) + " but " +
                         std::to_string(doc.distinct.size()) + " distinct constants are listed");
  std::set<std::string> names(doc.distinct.begin(), doc.distinct.end());
  if (names.size() != doc.distinct.size()) throw DomainMismatch("duplicate constant in list(distinct)");
  std::map<std::string, std::size_t> arities;
  for (const auto& f : doc.facts) {
    if (!f.is_atom()) throw FormatError("sensor fact must be a ground atom: " + format_formula(f));
    collect_arities(f, arities);
    for (const auto& t : f.args()) {
      if (!t.is_constant()) throw FormatError("sensor fact must be ground: " + format_formula(f));
      if (!names.count(t.name)) throw UnknownConstant("constant '" + t.name + "' is not in list(distinct)");
    }
  }
}

KnowledgeDoc parse_knowledge(std::string_view text) {
  DocParser d(text);
  Parser& p = d.tokens();
  KnowledgeDoc doc;
  while (!d.done()) {
    if (!p.at_ident("formulas")) p.fail("expected formulas(...), found " + p.found());
    const std::string name = d.directive("formulas");
    p.expect(Tok::rparen);
    p.expect(Tok::dot);
    std::vector<Formula>* target = nullptr;
    if (name == "background_knowledge_classification") target = &doc.classification;
    else if (name == "background_knowledge_distinction") target = &doc.distinction;
    else if (name == "background_knowledge_commands") target = &doc.commands;
    else throw UnknownSection("unknown knowledge section '" + name + "'");
    auto rules = d.formulas_until_end();
    target->insert(target->end(), rules.begin(), rules.end());
  }
  for (const auto& f : doc.classification) check_classification(f);
  for (const auto& f : doc.distinction) check_distinction(f);
  for (const auto& f : doc.commands) check_command_rule(f);
  doc.arities();
  return doc;
}

std::vector<Formula> parse_expressions(std::string_view text) {
  DocParser d(text);
  Parser& p = d.tokens();
  std::vector<Formula> out;
  while (!d.done()) {
    const std::string name = d.directive("formulas");
    if (name != "expressions") throw UnknownSection("unknown expression section '" + name + "'");
    p.expect(Tok::rparen);
    p.expect(Tok::dot);
    auto fs = d.formulas_until_end();
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

namespace {

void format_section(std::string& out, std::string_view name, const std::vector<Formula>& fs) {
  out += "formulas(";
  out += name;
  out += ").\n";
  for (const auto& f : fs) out += "    " + format_formula(f) + ".\n";
  out += "end_of_list.\n";
}

}  // namespace

std::string format_sensors(const SensorsDoc& doc) {
  std::string out = "assign(domain_size, " + std::to_string(doc.domain_size) + ").\n\n";
  out += "list(distinct).\n    [" + joined(doc.distinct, ", ") + "].\nend_of_list.\n\n";
  format_section(out, "sensors", doc.facts);
  return out;
}

std::string format_knowledge(const KnowledgeDoc& doc) {
  std::string out;
  format_section(out, "background_knowledge_classification", doc.classification);
  out += '\n';
  format_section(out, "background_knowledge_distinction", doc.distinction);
  out += '\n';
  format_section(out, "background_knowledge_commands", doc.commands);
  return out;
}

std::string format_expressions(const std::vector<Formula>& formulas) {
  std::string out;
  format_section(out, "expressions", formulas);
  return out;
}

// ---------------------------------------------------------------------------
// Wire format

namespace {

using nlohmann::json;

std::string json_quote(const std::string& s) { return json(s).dump(); }

// Rewrites single-quoted strings as JSON strings; double-quoted ones pass.
std::string requote(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"') j += text[j] == '\\' ? 2 : 1;
      out.append(text.substr(i, std::min(j, text.size() - 1) - i + 1));
      i = j;
    } else if (c == '\'') {
      std::string inner;
      std::size_t j = i + 1;
      for (; j < text.size() && text[j] != '\''; ++j) {
        if (text[j] == '\\' && j + 1 < text.size()) ++j;
        inner += text[j];
      }
      if (j >= text.size()) throw FormatError("unterminated single-quoted string");
      out += json_quote(inner);
      i = j;
    } else {
      out += c;
    }
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(requote(text));
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

const json& string_array(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  for (const auto& e : j)
    if (!e.is_string()) throw FormatError(std::string(what) + " must contain strings");
  return j;
}

void normalize_strings(json& j) {
  if (j.is_string()) {
    j = normalize_whitespace(j.get<std::string>());
  } else if (j.is_array() || j.is_object()) {
    for (auto& e : j) normalize_strings(e);
  }
}

}  // namespace

std::string serialize_ir(const SentenceIR& ir) {
  check_ir(ir);
  std::string out = "{\"type\": " + json_quote(std::string(to_string(ir.kind)));
  if (ir.kind == SentenceKind::query) {
    out += ", \"expressions\": [";
    for (std::size_t i = 0; i < ir.query_expressions.size(); ++i)
      out += (i ? ", " : "") + json_quote(format_query_expr(ir.query_expressions[i]));
    out += "]";
  } else if (ir.kind == SentenceKind::command) {
    out += ", \"expressions\": [";
    for (std::size_t g = 0; g < ir.command_expressions.size(); ++g) {
      out += g ? ", [" : "[";
      const auto& group = ir.command_expressions[g];
      for (std::size_t i = 0; i < group.size(); ++i) out += (i ? ", " : "") + json_quote(format_constraint(group[i]));
      out += "]";
    }
    out += "], \"commands\": [";
    for (std::size_t i = 0; i < ir.commands.size(); ++i)
      out += (i ? ", " : "") + json_quote(format_formula(ir.commands[i]) + ".");
    out += "]";
  }
  out += "}";
  return out;
}

SentenceIR parse_ir(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw FormatError("sentence representation must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "type" && key != "expressions" && key != "commands") throw FormatError("unknown key '" + key + "'");
  if (!j.contains("type") || !j["type"].is_string()) throw FormatError("missing string 'type'");
  const auto type = j["type"].get<std::string>();
  SentenceIR ir;
  if (type == "invalid") {
    if (j.contains("expressions") || j.contains("commands"))
      throw FormatError("an invalid sentence carries no expressions or commands");
    ir.kind = SentenceKind::invalid;
  } else if (type == "query") {
    ir.kind = SentenceKind::query;
    if (j.contains("commands")) throw FormatError("a query carries no commands");
    if (!j.contains("expressions")) throw FormatError("a query needs 'expressions'");
    for (const auto& e : string_array(j["expressions"], "query expressions"))
      ir.query_expressions.push_back(parse_query_expr(e.get<std::string>()));
  } else if (type == "command") {
    ir.kind = SentenceKind::command;
    if (!j.contains("expressions") || !j.contains("commands"))
      throw FormatError("a command needs 'expressions' and 'commands'");
    const json& groups = j["expressions"];
    if (!groups.is_array()) throw FormatError("command expressions must be an array of arrays");
    for (const auto& group : groups) {
      if (!group.is_array()) throw FormatError("command expressions must be an array of arrays");
      std::vector<CardConstraint> constraints;
      for (const auto& e : string_array(group, "command expressions"))
        constraints.push_back(parse_constraint(e.get<std::string>()));
      ir.command_expressions.push_back(std::move(constraints));
    }
    for (const auto& c : string_array(j["commands"], "commands"))
      ir.commands.push_back(parse_formula(c.get<std::string>()));
  } else {
    throw FormatError("unknown sentence type '" + type + "'");
  }
  check_ir(ir);
  return ir;
}

std::string canonical_wire(std::string_view text) {
  json j = parse_json(text);
  normalize_strings(j);
  return j.dump();
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
    } else {
      if (pending) out += ' ';
      pending = false;
      out += c;
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cardinal
