#include "cfgkat/frontend.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_set>
#include <variant>

namespace cfgkat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind;
  std::string text;
  long long num = 0;
  SourceLoc loc;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  uint32_t line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
      if (i + 1 >= src.size()) throw SyntaxError({line, col}, "end of comment");
      advance(2);
      continue;
    }
    SourceLoc loc{line, col};
    if (is_ident_start(c)) {
      size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      out.push_back({Token::Kind::Ident, src.substr(i, j - i), 0, loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      int base = 10;
      if (c == '0' && j + 1 < src.size() && (src[j + 1] == 'x' || src[j + 1] == 'X')) {
        base = 16;
        j += 2;
        while (j < src.size() && std::isxdigit(static_cast<unsigned char>(src[j]))) ++j;
      } else {
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      std::string text = src.substr(i, j - i);
      long long value = std::stoll(text, nullptr, base);
      out.push_back({Token::Kind::Number, text, value, loc});
      advance(j - i);
      continue;
    }
    // Multi-character operators that matter to the grammar; everything else
    // is a single-character punct.
    static const char* two_char[] = {"==", "!=", "&&", "||", "+=", "-=", "<=", ">=",
                                     "->", "++", "--", "<<", ">>"};
    std::string text(1, c);
    if (i + 1 < src.size()) {
      std::string pair = src.substr(i, 2);
      for (const char* op : two_char)
        if (pair == op) {
          text = pair;
          break;
        }
    }
    out.push_back({Token::Kind::Punct, text, 0, loc});
    advance(text.size());
  }
  out.push_back({Token::Kind::End, "", 0, {line, col}});
  return out;
}

CCondPtr make_cond(CCond::Node node, SourceLoc loc) {
  return std::make_shared<CCond>(CCond{std::move(node), loc});
}
CStmtPtr make_stmt(CStmt::Node node, SourceLoc loc) {
  return std::make_shared<CStmt>(CStmt{std::move(node), loc});
}

const std::unordered_set<std::string> kIntTypes = {"int", "long", "short", "unsigned", "signed"};
const std::unordered_set<std::string> kUnsupported = {"switch", "continue", "case", "default"};

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  explicit Parser(const std::string& src) : toks(tokenize(src)) {}

  const Token& peek(size_t k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
  const Token& get() { return toks[std::min(pos++, toks.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool is_punct(const char* s, size_t k = 0) const {
    return peek(k).kind == Token::Kind::Punct && peek(k).text == s;
  }
  bool is_kw(const char* s, size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == s;
  }

  void expect_punct(const char* s) {
    if (!is_punct(s)) throw SyntaxError(peek().loc, std::string("'") + s + "'");
    ++pos;
  }
  std::string expect_ident() {
    if (peek().kind != Token::Kind::Ident) throw SyntaxError(peek().loc, "identifier");
    return get().text;
  }
  long long expect_number() {
    if (peek().kind != Token::Kind::Number) throw SyntaxError(peek().loc, "integer literal");
    return get().num;
  }

  // Canonical text of a token range: token texts joined by single spaces.
  std::string span_text(size_t from, size_t to) const {
    std::string out;
    for (size_t k = from; k < to; ++k) {
      if (!out.empty()) out += ' ';
      out += toks[k].text;
    }
    return out;
  }

  [[noreturn]] void unsupported(const std::string& what) {
    throw UnsupportedConstructError(peek().loc, what);
  }

  // --- conditions ---------------------------------------------------------

  CCondPtr parse_cond() { return parse_cond_or(); }

  CCondPtr parse_cond_or() {
    CCondPtr lhs = parse_cond_and();
    while (is_punct("||")) {
      SourceLoc loc = get().loc;
      lhs = make_cond(CCond::Or{lhs, parse_cond_and()}, loc);
    }
    return lhs;
  }

  CCondPtr parse_cond_and() {
    CCondPtr lhs = parse_cond_unary();
    while (is_punct("&&")) {
      SourceLoc loc = get().loc;
      lhs = make_cond(CCond::And{lhs, parse_cond_unary()}, loc);
    }
    return lhs;
  }

  CCondPtr parse_cond_unary() {
    if (is_punct("!")) {
      SourceLoc loc = get().loc;
      return make_cond(CCond::Not{parse_cond_unary()}, loc);
    }
    if (is_punct("(")) {
      // Try a parenthesized structured condition; fall back to a raw atom
      // if the contents do not close cleanly.
      size_t save = pos;
      try {
        get();
        CCondPtr inner = parse_cond();
        expect_punct(")");
        return inner;
      } catch (const SyntaxError&) {
        pos = save;
        return parse_cond_raw();
      }
    }
    return parse_cond_atom();
  }

  CCondPtr parse_cond_atom() {
    SourceLoc loc = peek().loc;
    if (peek().kind == Token::Kind::Number) {
      if (peek().num == 0 || peek().num == 1)
        return make_cond(CCond::ConstBool{get().num == 1}, loc);
      return parse_cond_raw();
    }
    if (is_kw("pbool") && is_punct("(", 1) && peek(2).kind == Token::Kind::Number &&
        is_punct(")", 3)) {
      get();
      get();
      long long id = get().num;
      get();
      return make_cond(CCond::Pbool{id}, loc);
    }
    if (peek().kind == Token::Kind::Ident &&
        (is_punct("==", 1) || is_punct("!=", 1)) && peek(2).kind == Token::Kind::Number) {
      std::string var = get().text;
      bool negated = get().text == "!=";
      long long value = get().num;
      return make_cond(CCond::Compare{var, negated, value}, loc);
    }
    return parse_cond_raw();
  }

  // Consumes a condition atom outside the subset: everything up to a
  // depth-0 '&&', '||', ')', or ';'.
  CCondPtr parse_cond_raw() {
    SourceLoc loc = peek().loc;
    size_t from = pos;
    int depth = 0;
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Punct) {
        if (t.text == "(") ++depth;
        if (t.text == ")") {
          if (depth == 0) break;
          --depth;
        }
        if (depth == 0 && (t.text == "&&" || t.text == "||" || t.text == ";")) break;
        if (t.text == "?") unsupported("ternary operator");
      }
      ++pos;
    }
    if (pos == from) throw SyntaxError(loc, "condition");
    return make_cond(CCond::Raw{span_text(from, pos)}, loc);
  }

  // --- statements ---------------------------------------------------------

  CStmtPtr parse_block() {
    SourceLoc loc = peek().loc;
    expect_punct("{");
    std::vector<CStmtPtr> stmts;
    while (!is_punct("}")) {
      if (at_end()) throw SyntaxError(peek().loc, "'}'");
      stmts.push_back(parse_stmt());
    }
    expect_punct("}");
    return make_stmt(CStmt::Block{std::move(stmts)}, loc);
  }

  CStmtPtr parse_stmt() {
    SourceLoc loc = peek().loc;
    if (is_punct("{")) return parse_block();
    if (is_punct(";")) {
      get();
      return make_stmt(CStmt::Empty{}, loc);
    }
    if (peek().kind == Token::Kind::Ident && kUnsupported.count(peek().text))
      unsupported(peek().text);
    if (is_kw("if")) {
      get();
      expect_punct("(");
      CCondPtr cond = parse_cond();
      expect_punct(")");
      CStmtPtr then_branch = parse_stmt();
      CStmtPtr else_branch;
      if (is_kw("else")) {
        get();
        else_branch = parse_stmt();
      }
      return make_stmt(CStmt::If{cond, then_branch, else_branch}, loc);
    }
    if (is_kw("while")) {
      get();
      expect_punct("(");
      CCondPtr cond = parse_cond();
      expect_punct(")");
      return make_stmt(CStmt::While{cond, parse_stmt()}, loc);
    }
    if (is_kw("for")) {
      get();
      expect_punct("(");
      CStmtPtr init = is_punct(";") ? nullptr : parse_for_clause(true);
      expect_punct(";");
      CCondPtr cond = is_punct(";") ? nullptr : parse_cond();
      expect_punct(";");
      CStmtPtr step = is_punct(")") ? nullptr : parse_for_clause(false);
      expect_punct(")");
      return make_stmt(CStmt::For{init, cond, step, parse_stmt()}, loc);
    }
    if (is_kw("do")) {
      get();
      CStmtPtr body = parse_stmt();
      if (!is_kw("while")) throw SyntaxError(peek().loc, "'while'");
      get();
      expect_punct("(");
      CCondPtr cond = parse_cond();
      expect_punct(")");
      expect_punct(";");
      return make_stmt(CStmt::DoWhile{body, cond}, loc);
    }
    if (is_kw("goto")) {
      get();
      std::string label = expect_ident();
      expect_punct(";");
      return make_stmt(CStmt::Goto{label}, loc);
    }
    if (is_kw("break")) {
      get();
      expect_punct(";");
      return make_stmt(CStmt::Break{}, loc);
    }
    if (is_kw("return")) {
      get();
      expect_punct(";");
      return make_stmt(CStmt::Return{}, loc);
    }
    if (is_kw("pact") && is_punct("(", 1) && peek(2).kind == Token::Kind::Number &&
        is_punct(")", 3) && is_punct(";", 4)) {
      get();
      get();
      long long id = get().num;
      get();
      get();
      return make_stmt(CStmt::Pact{id}, loc);
    }
    if (is_kw("pbool")) {
      CCondPtr cond = parse_cond();
      expect_punct(";");
      return make_stmt(CStmt::CondExpr{cond}, loc);
    }
    // Labeled statement.
    if (peek().kind == Token::Kind::Ident && is_punct(":", 1)) {
      std::string label = get().text;
      get();
      return make_stmt(CStmt::LabelStmt{label, parse_stmt()}, loc);
    }
    // Structured integer assignment.
    if (peek().kind == Token::Kind::Ident && is_punct("=", 1) &&
        peek(2).kind == Token::Kind::Number && is_punct(";", 3)) {
      std::string var = get().text;
      get();
      long long value = get().num;
      get();
      return make_stmt(CStmt::AssignInt{var, value}, loc);
    }
    // Single-variable integer declaration.
    if (peek().kind == Token::Kind::Ident && kIntTypes.count(peek().text)) {
      size_t save = pos;
      try {
        while (peek().kind == Token::Kind::Ident && kIntTypes.count(peek().text)) get();
        std::string var = expect_ident();
        std::optional<long long> init;
        if (is_punct("=")) {
          get();
          init = expect_number();
        }
        expect_punct(";");
        return make_stmt(CStmt::Decl{var, init}, loc);
      } catch (const SyntaxError&) {
        pos = save;  // not a simple declaration; treat as a raw statement
      }
    }
    return parse_raw_stmt();
  }

  CStmtPtr parse_for_clause(bool is_init) {
    SourceLoc loc = peek().loc;
    if (is_kw("pact") && is_punct("(", 1) && peek(2).kind == Token::Kind::Number &&
        is_punct(")", 3)) {
      get();
      get();
      long long id = get().num;
      get();
      return make_stmt(CStmt::Pact{id}, loc);
    }
    if (is_kw("pbool")) return make_stmt(CStmt::CondExpr{parse_cond()}, loc);
    if (peek().kind == Token::Kind::Ident && is_punct("=", 1) &&
        peek(2).kind == Token::Kind::Number) {
      std::string var = get().text;
      get();
      long long value = get().num;
      return make_stmt(CStmt::AssignInt{var, value}, loc);
    }
    if (is_init && peek().kind == Token::Kind::Ident && kIntTypes.count(peek().text)) {
      size_t save = pos;
      try {
        while (peek().kind == Token::Kind::Ident && kIntTypes.count(peek().text)) get();
        std::string var = expect_ident();
        std::optional<long long> init;
        if (is_punct("=")) {
          get();
          init = expect_number();
        }
        if (!is_punct(";")) throw SyntaxError(peek().loc, "';'");
        return make_stmt(CStmt::Decl{var, init}, loc);
      } catch (const SyntaxError&) {
        pos = save;
      }
    }
    // Raw clause: up to the closing ';' (init) or ')' (step).
    size_t from = pos;
    int depth = 0;
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Punct) {
        if (t.text == "(") ++depth;
        if (t.text == ")") {
          if (depth == 0) break;
          --depth;
        }
        if (depth == 0 && t.text == ";") break;
        if (t.text == "?") unsupported("ternary operator");
      }
      ++pos;
    }
    if (pos == from) throw SyntaxError(loc, is_init ? "for-init" : "for-step");
    return make_stmt(CStmt::Raw{span_text(from, pos)}, loc);
  }

  CStmtPtr parse_raw_stmt() {
    SourceLoc loc = peek().loc;
    size_t from = pos;
    int paren = 0, brace = 0;
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Punct) {
        if (t.text == "(") ++paren;
        if (t.text == ")") --paren;
        if (t.text == "{") ++brace;
        if (t.text == "}") --brace;
        if (t.text == "?") unsupported("ternary operator");
        if (t.text == ";" && paren == 0 && brace == 0) break;
      }
      ++pos;
    }
    if (at_end() || pos == from) throw SyntaxError(loc, "statement");
    std::string text = span_text(from, pos);
    get();  // ';'
    return make_stmt(CStmt::Raw{std::move(text)}, loc);
  }

  // --- functions ----------------------------------------------------------

  std::optional<SourceFunction> parse_function_def() {
    // Return type and qualifiers: a run of identifiers where the last one
    // before '(' is the function name.
    if (is_punct("#")) unsupported("preprocessor directive");
    std::string name;
    while (peek().kind == Token::Kind::Ident) {
      name = get().text;
      if (is_punct("(")) break;
      if (is_punct("*")) get();  // tolerate pointer return types
    }
    if (!is_punct("(")) throw SyntaxError(peek().loc, "'(' after function name");
    get();
    int depth = 1;
    while (depth > 0) {
      if (at_end()) throw SyntaxError(peek().loc, "')'");
      if (is_punct("(")) ++depth;
      if (is_punct(")")) --depth;
      get();
    }
    if (is_punct(";")) {  // prototype, no body
      get();
      return std::nullopt;
    }
    SourceFunction fn;
    fn.name = name;
    fn.body = parse_block();
    collect_decls(*fn.body, fn.int_decls);
    return fn;
  }

  static void collect_decls(const CStmt& s,
                            std::vector<std::pair<std::string, SourceLoc>>& out) {
    std::visit(overloaded{
                   [&](const CStmt::Block& b) {
                     for (const auto& st : b.stmts) collect_decls(*st, out);
                   },
                   [&](const CStmt::Decl& d) { out.emplace_back(d.var, SourceLoc{}); },
                   [&](const CStmt::If& i) {
                     collect_decls(*i.then_branch, out);
                     if (i.else_branch) collect_decls(*i.else_branch, out);
                   },
                   [&](const CStmt::While& w) { collect_decls(*w.body, out); },
                   [&](const CStmt::For& f) {
                     if (f.init) collect_decls(*f.init, out);
                     if (f.step) collect_decls(*f.step, out);
                     collect_decls(*f.body, out);
                   },
                   [&](const CStmt::DoWhile& d) { collect_decls(*d.body, out); },
                   [&](const CStmt::LabelStmt& l) { collect_decls(*l.stmt, out); },
                   [&](const auto&) {},
               },
               s.node);
  }
};

}  // namespace

std::string canonical_text(const std::string& text) {
  std::string out;
  bool in_space = true;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty()) in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += c;
  }
  while (!out.empty() && (out.back() == ';' || out.back() == ' ')) out.pop_back();
  return out;
}

std::vector<SourceFunction> parse_file(const std::string& text) {
  Parser p(text);
  std::vector<SourceFunction> fns;
  while (!p.at_end()) {
    auto fn = p.parse_function_def();
    if (fn) fns.push_back(std::move(*fn));
  }
  return fns;
}

SourceFunction parse_function(const std::string& text, const std::string& name) {
  auto fns = parse_file(text);
  for (auto& fn : fns)
    if (fn.name == name) return std::move(fn);
  throw Error("no function named '" + name + "' in input");
}

namespace {

// Word-boundary membership of `var` in canonical (space-joined) raw text.
bool mentions(const std::string& text, const std::string& var) {
  size_t at = 0;
  while ((at = text.find(var, at)) != std::string::npos) {
    bool left_ok = at == 0 || !is_ident_char(text[at - 1]);
    size_t end = at + var.size();
    bool right_ok = end >= text.size() || !is_ident_char(text[end]);
    if (left_ok && right_ok) return true;
    at = end;
  }
  return false;
}

struct RawTexts {
  std::vector<std::string> texts;

  void walk_cond(const CCond& c) {
    std::visit(overloaded{
                   [&](const CCond::Not& n) { walk_cond(*n.arg); },
                   [&](const CCond::And& a) {
                     walk_cond(*a.lhs);
                     walk_cond(*a.rhs);
                   },
                   [&](const CCond::Or& o) {
                     walk_cond(*o.lhs);
                     walk_cond(*o.rhs);
                   },
                   [&](const CCond::Raw& r) { texts.push_back(r.text); },
                   [&](const auto&) {},
               },
               c.node);
  }

  void walk(const CStmt& s) {
    std::visit(overloaded{
                   [&](const CStmt::Block& b) {
                     for (const auto& st : b.stmts) walk(*st);
                   },
                   [&](const CStmt::If& i) {
                     walk_cond(*i.cond);
                     walk(*i.then_branch);
                     if (i.else_branch) walk(*i.else_branch);
                   },
                   [&](const CStmt::While& w) {
                     walk_cond(*w.cond);
                     walk(*w.body);
                   },
                   [&](const CStmt::For& f) {
                     if (f.init) walk(*f.init);
                     if (f.cond) walk_cond(*f.cond);
                     if (f.step) walk(*f.step);
                     walk(*f.body);
                   },
                   [&](const CStmt::DoWhile& d) {
                     walk(*d.body);
                     walk_cond(*d.cond);
                   },
                   [&](const CStmt::LabelStmt& l) { walk(*l.stmt); },
                   [&](const CStmt::Raw& r) { texts.push_back(r.text); },
                   [&](const CStmt::CondExpr& ce) { walk_cond(*ce.cond); },
                   [&](const auto&) {},
               },
               s.node);
  }
};

}  // namespace

IndicatorScan scan_indicators(const SourceFunction& fn) {
  IndicatorScan scan;
  RawTexts raws;
  raws.walk(*fn.body);

  std::set<std::string> seen;
  for (const auto& [var, loc] : fn.int_decls) {
    if (!seen.insert(var).second) continue;
    bool escapes = false;
    for (const std::string& text : raws.texts)
      if (mentions(text, var)) {
        escapes = true;
        break;
      }
    if (escapes) {
      scan.rejected.push_back(var);
    } else {
      scan.qualifying.push_back(var);
      if (!scan.chosen) scan.chosen = var;
    }
  }
  return scan;
}

std::optional<std::string> detect_indicator(const SourceFunction& fn) {
  return scan_indicators(fn).chosen;
}

namespace {

struct Lifter {
  const std::optional<std::string>& indicator;
  const BlindingTable* blinding;

  [[noreturn]] void not_blindable(SourceLoc loc, const std::string& text) const {
    throw NonBlindableStatementError(loc, text);
  }

  ExpPtr blinded_action(const std::string& text, SourceLoc loc) const {
    if (blinding) {
      auto it = blinding->actions.find(text);
      if (it != blinding->actions.end()) return exp::act(std::to_string(it->second), loc);
    }
    not_blindable(loc, text);
  }

  BExpPtr blinded_test(const std::string& text, SourceLoc loc) const {
    if (blinding) {
      auto it = blinding->tests.find(text);
      if (it != blinding->tests.end()) return bexp::prim(std::to_string(it->second), loc);
    }
    not_blindable(loc, text);
  }

  BExpPtr lift_cond(const CCond& c) const {
    return std::visit(
        overloaded{
            [&](const CCond::Pbool& p) { return bexp::prim(std::to_string(p.id), c.loc); },
            [&](const CCond::Compare& cmp) {
              if (indicator && cmp.var == *indicator) {
                BExpPtr eq = bexp::ind_eq(Indicator::of(cmp.value), c.loc);
                return cmp.negated ? bexp::not_(eq, c.loc) : eq;
              }
              std::string text = cmp.var + (cmp.negated ? " != " : " == ") +
                                 std::to_string(cmp.value);
              return blinded_test(canonical_text(text), c.loc);
            },
            [&](const CCond::Not& n) { return bexp::not_(lift_cond(*n.arg), c.loc); },
            [&](const CCond::And& a) {
              return bexp::and_(lift_cond(*a.lhs), lift_cond(*a.rhs), c.loc);
            },
            [&](const CCond::Or& o) {
              return bexp::or_(lift_cond(*o.lhs), lift_cond(*o.rhs), c.loc);
            },
            [&](const CCond::ConstBool& b) {
              return b.value ? bexp::true_(c.loc) : bexp::false_(c.loc);
            },
            [&](const CCond::Raw& r) { return blinded_test(canonical_text(r.text), c.loc); },
        },
        c.node);
  }

  static bool has_break_or_label(const CStmt& s) {
    return std::visit(
        overloaded{
            [&](const CStmt::Block& b) {
              return std::any_of(b.stmts.begin(), b.stmts.end(),
                                 [](const CStmtPtr& st) { return has_break_or_label(*st); });
            },
            [&](const CStmt::If& i) {
              return has_break_or_label(*i.then_branch) ||
                     (i.else_branch && has_break_or_label(*i.else_branch));
            },
            [&](const CStmt::While& w) { return has_break_or_label(*w.body); },
            [&](const CStmt::For& f) { return has_break_or_label(*f.body); },
            [&](const CStmt::DoWhile& d) { return has_break_or_label(*d.body); },
            [&](const CStmt::LabelStmt&) { return true; },
            [&](const CStmt::Break&) { return true; },
            [&](const auto&) { return false; },
        },
        s.node);
  }

  // Statements that lift to nothing return null; blocks drop them.
  ExpPtr lift_stmt(const CStmt& s) const {
    return std::visit(
        overloaded{
            [&](const CStmt::Block& b) -> ExpPtr {
              std::vector<ExpPtr> items;
              for (const auto& st : b.stmts) {
                ExpPtr lifted = lift_stmt(*st);
                if (lifted) items.push_back(std::move(lifted));
              }
              if (items.empty()) return exp::skip(s.loc);
              return exp::seq_all(std::move(items), s.loc);
            },
            [&](const CStmt::Pact& p) -> ExpPtr {
              return exp::act(std::to_string(p.id), s.loc);
            },
            [&](const CStmt::AssignInt& a) -> ExpPtr {
              if (indicator && a.var == *indicator)
                return exp::assign(Indicator::of(a.value), s.loc);
              return blinded_action(canonical_text(a.var + " = " + std::to_string(a.value)),
                                    s.loc);
            },
            [&](const CStmt::Decl& d) -> ExpPtr {
              if (!d.init) return nullptr;  // pure declaration, no behavior
              if (indicator && d.var == *indicator)
                return exp::assign(Indicator::of(*d.init), s.loc);
              return blinded_action(
                  canonical_text("int " + d.var + " = " + std::to_string(*d.init)), s.loc);
            },
            [&](const CStmt::If& i) -> ExpPtr {
              ExpPtr then_branch = lift_stmt(*i.then_branch);
              if (!then_branch) then_branch = exp::skip(s.loc);
              ExpPtr else_branch = i.else_branch ? lift_stmt(*i.else_branch) : nullptr;
              if (!else_branch) else_branch = exp::skip(s.loc);
              return exp::if_(lift_cond(*i.cond), then_branch, else_branch, s.loc);
            },
            [&](const CStmt::While& w) -> ExpPtr {
              ExpPtr body = lift_stmt(*w.body);
              if (!body) body = exp::skip(s.loc);
              return exp::while_(lift_cond(*w.cond), body, s.loc);
            },
            [&](const CStmt::For& f) -> ExpPtr {
              // for (init; cond; step) body  =>  init; while (cond) { body; step }
              BExpPtr guard = f.cond ? lift_cond(*f.cond) : bexp::true_(s.loc);
              ExpPtr body = lift_stmt(*f.body);
              ExpPtr step = f.step ? lift_stmt(*f.step) : nullptr;
              std::vector<ExpPtr> body_items;
              if (body) body_items.push_back(body);
              if (step) body_items.push_back(step);
              ExpPtr loop_body =
                  body_items.empty() ? exp::skip(s.loc) : exp::seq_all(body_items, s.loc);
              ExpPtr loop = exp::while_(guard, loop_body, s.loc);
              ExpPtr init = f.init ? lift_stmt(*f.init) : nullptr;
              return init ? exp::seq(init, loop, s.loc) : loop;
            },
            [&](const CStmt::DoWhile& d) -> ExpPtr {
              // do body while (cond)  =>  body; while (cond) body
              // Only admissible when the body contains no break and no label.
              if (has_break_or_label(*d.body)) throw DoWhileWithBreakOrLabelError(s.loc);
              ExpPtr body = lift_stmt(*d.body);
              if (!body) body = exp::skip(s.loc);
              return exp::seq(body, exp::while_(lift_cond(*d.cond), body, s.loc), s.loc);
            },
            [&](const CStmt::Goto& g) -> ExpPtr { return exp::goto_(g.label, s.loc); },
            [&](const CStmt::LabelStmt& l) -> ExpPtr {
              ExpPtr inner = lift_stmt(*l.stmt);
              ExpPtr lab = exp::label(l.label, s.loc);
              return inner ? exp::seq(lab, inner, s.loc) : lab;
            },
            [&](const CStmt::Break&) -> ExpPtr { return exp::break_(s.loc); },
            [&](const CStmt::Return&) -> ExpPtr { return exp::return_(s.loc); },
            [&](const CStmt::Empty&) -> ExpPtr { return nullptr; },
            [&](const CStmt::Raw& r) -> ExpPtr {
              return blinded_action(canonical_text(r.text), s.loc);
            },
            [&](const CStmt::CondExpr&) -> ExpPtr {
              return nullptr;  // tests are pure; evaluating one is a no-op
            },
        },
        s.node);
  }
};

}  // namespace

ExpPtr lift_to_exp(const SourceFunction& fn, const std::optional<std::string>& indicator,
                   const BlindingTable* blinding) {
  Lifter lifter{indicator, blinding};
  ExpPtr e = lifter.lift_stmt(*fn.body);
  return e ? e : exp::skip();
}

namespace {

struct Blinder {
  BlindingTable& table;
  const std::optional<std::string>& indicator;

  long long action_id(const std::string& canonical) {
    auto [it, inserted] = table.actions.emplace(canonical, table.next_id);
    if (inserted) ++table.next_id;
    return it->second;
  }
  long long test_id(const std::string& canonical) {
    auto [it, inserted] = table.tests.emplace(canonical, table.next_id);
    if (inserted) ++table.next_id;
    return it->second;
  }

  CCondPtr blind_cond(const CCond& c) {
    return std::visit(
        overloaded{
            [&](const CCond::Compare& cmp) -> CCondPtr {
              if (indicator && cmp.var == *indicator) return make_cond(cmp, c.loc);
              std::string text = canonical_text(cmp.var + (cmp.negated ? " != " : " == ") +
                                                std::to_string(cmp.value));
              return make_cond(CCond::Pbool{test_id(text)}, c.loc);
            },
            [&](const CCond::Not& n) -> CCondPtr {
              return make_cond(CCond::Not{blind_cond(*n.arg)}, c.loc);
            },
            [&](const CCond::And& a) -> CCondPtr {
              return make_cond(CCond::And{blind_cond(*a.lhs), blind_cond(*a.rhs)}, c.loc);
            },
            [&](const CCond::Or& o) -> CCondPtr {
              return make_cond(CCond::Or{blind_cond(*o.lhs), blind_cond(*o.rhs)}, c.loc);
            },
            [&](const CCond::Raw& r) -> CCondPtr {
              return make_cond(CCond::Pbool{test_id(canonical_text(r.text))}, c.loc);
            },
            [&](const auto& other) -> CCondPtr { return make_cond(other, c.loc); },
        },
        c.node);
  }

  CStmtPtr blind_stmt(const CStmt& s) {
    return std::visit(
        overloaded{
            [&](const CStmt::Block& b) -> CStmtPtr {
              CStmt::Block out;
              for (const auto& st : b.stmts) out.stmts.push_back(blind_stmt(*st));
              return make_stmt(std::move(out), s.loc);
            },
            [&](const CStmt::AssignInt& a) -> CStmtPtr {
              if (indicator && a.var == *indicator) return make_stmt(a, s.loc);
              std::string text = canonical_text(a.var + " = " + std::to_string(a.value));
              return make_stmt(CStmt::Pact{action_id(text)}, s.loc);
            },
            [&](const CStmt::Decl& d) -> CStmtPtr {
              if (!d.init || (indicator && d.var == *indicator)) return make_stmt(d, s.loc);
              std::string text =
                  canonical_text("int " + d.var + " = " + std::to_string(*d.init));
              return make_stmt(CStmt::Pact{action_id(text)}, s.loc);
            },
            [&](const CStmt::If& i) -> CStmtPtr {
              return make_stmt(
                  CStmt::If{blind_cond(*i.cond), blind_stmt(*i.then_branch),
                            i.else_branch ? blind_stmt(*i.else_branch) : nullptr},
                  s.loc);
            },
            [&](const CStmt::While& w) -> CStmtPtr {
              return make_stmt(CStmt::While{blind_cond(*w.cond), blind_stmt(*w.body)}, s.loc);
            },
            [&](const CStmt::For& f) -> CStmtPtr {
              return make_stmt(CStmt::For{f.init ? blind_stmt(*f.init) : nullptr,
                                          f.cond ? blind_cond(*f.cond) : nullptr,
                                          f.step ? blind_stmt(*f.step) : nullptr,
                                          blind_stmt(*f.body)},
                               s.loc);
            },
            [&](const CStmt::DoWhile& d) -> CStmtPtr {
              return make_stmt(CStmt::DoWhile{blind_stmt(*d.body), blind_cond(*d.cond)}, s.loc);
            },
            [&](const CStmt::LabelStmt& l) -> CStmtPtr {
              return make_stmt(CStmt::LabelStmt{l.label, blind_stmt(*l.stmt)}, s.loc);
            },
            [&](const CStmt::Raw& r) -> CStmtPtr {
              return make_stmt(CStmt::Pact{action_id(canonical_text(r.text))}, s.loc);
            },
            [&](const CStmt::CondExpr& ce) -> CStmtPtr {
              return make_stmt(CStmt::CondExpr{blind_cond(*ce.cond)}, s.loc);
            },
            [&](const auto& other) -> CStmtPtr { return make_stmt(other, s.loc); },
        },
        s.node);
  }

  void collect_explicit_ids(const CStmt& s, long long& max_id) {
    std::visit(overloaded{
                   [&](const CStmt::Block& b) {
                     for (const auto& st : b.stmts) collect_explicit_ids(*st, max_id);
                   },
                   [&](const CStmt::Pact& p) { max_id = std::max(max_id, p.id); },
                   [&](const CStmt::If& i) {
                     collect_cond_ids(*i.cond, max_id);
                     collect_explicit_ids(*i.then_branch, max_id);
                     if (i.else_branch) collect_explicit_ids(*i.else_branch, max_id);
                   },
                   [&](const CStmt::While& w) {
                     collect_cond_ids(*w.cond, max_id);
                     collect_explicit_ids(*w.body, max_id);
                   },
                   [&](const CStmt::For& f) {
                     if (f.init) collect_explicit_ids(*f.init, max_id);
                     if (f.cond) collect_cond_ids(*f.cond, max_id);
                     if (f.step) collect_explicit_ids(*f.step, max_id);
                     collect_explicit_ids(*f.body, max_id);
                   },
                   [&](const CStmt::DoWhile& d) {
                     collect_explicit_ids(*d.body, max_id);
                     collect_cond_ids(*d.cond, max_id);
                   },
                   [&](const CStmt::LabelStmt& l) { collect_explicit_ids(*l.stmt, max_id); },
                   [&](const CStmt::CondExpr& ce) { collect_cond_ids(*ce.cond, max_id); },
                   [&](const auto&) {},
               },
               s.node);
  }

  static void collect_cond_ids(const CCond& c, long long& max_id) {
    std::visit(overloaded{
                   [&](const CCond::Pbool& p) { max_id = std::max(max_id, p.id); },
                   [&](const CCond::Not& n) { collect_cond_ids(*n.arg, max_id); },
                   [&](const CCond::And& a) {
                     collect_cond_ids(*a.lhs, max_id);
                     collect_cond_ids(*a.rhs, max_id);
                   },
                   [&](const CCond::Or& o) {
                     collect_cond_ids(*o.lhs, max_id);
                     collect_cond_ids(*o.rhs, max_id);
                   },
                   [&](const auto&) {},
               },
               c.node);
  }
};

}  // namespace

AutoBlindResult auto_blind(const SourceFunction& a, const SourceFunction& b) {
  AutoBlindResult result;

  long long max_id = -1;
  Blinder probe{result.table, std::nullopt};
  probe.collect_explicit_ids(*a.body, max_id);
  probe.collect_explicit_ids(*b.body, max_id);
  result.table.next_id = max_id + 1;

  result.first_indicator = detect_indicator(a);
  result.second_indicator = detect_indicator(b);

  Blinder blinder_a{result.table, result.first_indicator};
  result.first = a;
  result.first.body = blinder_a.blind_stmt(*a.body);

  Blinder blinder_b{result.table, result.second_indicator};
  result.second = b;
  result.second.body = blinder_b.blind_stmt(*b.body);

  return result;
}

}  // namespace cfgkat
