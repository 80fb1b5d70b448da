#include "swcalc/cli/script.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace swcalc::cli {

namespace {

const std::set<std::string> kWhats = {"sw", "sw_at_one", "alexander", "invariants", "geography", "expr"};
const std::set<std::string> kKnotNames = {"trefoil", "figure8", "hopf", "unknot"};
const std::set<std::string> kManifoldNames = {"CP2", "CP2bar", "S2xS2"};
const std::set<std::string> kKnotCalls = {"twist", "torus", "mirror", "braid", "pd"};
const std::set<std::string> kManifoldCalls = {"E",         "H",            "blowup",        "connected_sum",
                                              "fiber_sum", "torus_surgery", "log_transform", "knot_surgery",
                                              "rational_blowdown", "reverse"};
const std::set<std::string> kSWCalls = {"chamber_series", "e1_twist", "double_log_transform"};

std::string span_text(Span s) { return std::to_string(s.line) + ":" + std::to_string(s.col); }

[[noreturn]] void raise(ErrorKind k, Span at, const std::string& msg) { throw ScriptError(k, at, msg); }

struct Token {
  enum class T { Ident, Int, String, Sym, End };
  T t = T::End;
  std::string text;
  Span span;
};

std::string describe(const Token& tok) {
  switch (tok.t) {
    case Token::T::End: return "end of line";
    case Token::T::String: return "a string";
    default: return "'" + tok.text + "'";
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex_line(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::size_t pos) { return Span{lineno, static_cast<int>(pos) + 1}; };
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < line.size() && ident_char(line[i])) ++i;
      out.push_back({Token::T::Ident, std::string(line.substr(start, i - start)), at(start)});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      out.push_back({Token::T::Int, std::string(line.substr(start, i - start)), at(start)});
    } else if (c == '"') {
      std::string s;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '\\' && i + 1 < line.size()) {
          s += line[i + 1];
          i += 2;
        } else if (line[i] == '"') {
          ++i;
          closed = true;
          break;
        } else {
          s += line[i++];
        }
      }
      if (!closed) raise(ErrorKind::SyntaxError, at(start), "unterminated string");
      out.push_back({Token::T::String, s, at(start)});
    } else if ((c == '=' || c == '!') && i + 1 < line.size() && line[i + 1] == '=') {
      out.push_back({Token::T::Sym, std::string(line.substr(i, 2)), at(i)});
      i += 2;
    } else if (std::string_view("()=,+-*/>;").find(c) != std::string_view::npos) {
      out.push_back({Token::T::Sym, std::string(1, c), at(i)});
      ++i;
      // The rest of an emit line is a raw output path.
      if (c == '>' && out.front().t == Token::T::Ident && out.front().text == "emit") {
        i = line.size();
        break;
      }
    } else {
      raise(ErrorKind::SyntaxError, at(i), std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::T::End, "", at(std::min(i, line.size()))});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::string_view raw) : toks_(std::move(toks)), raw_(raw) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_sym(std::string_view s) const { return peek().t == Token::T::Sym && peek().text == s; }
  bool at_ident(std::string_view s) const { return peek().t == Token::T::Ident && peek().text == s; }

  [[noreturn]] void expected(const std::string& what) const {
    raise(ErrorKind::SyntaxError, peek().span, "expected " + what + ", found " + describe(peek()));
  }
  Token expect_sym(std::string_view s) {
    if (!at_sym(s)) expected("'" + std::string(s) + "'");
    return take();
  }
  Token expect_ident(const std::string& what) {
    if (peek().t != Token::T::Ident) expected(what);
    return take();
  }
  void expect_end() {
    if (peek().t != Token::T::End) expected("end of line");
  }
  std::int64_t parse_int_token() {
    if (peek().t != Token::T::Int) expected("an integer");
    const Token t = take();
    if (t.text.size() > 15) raise(ErrorKind::SyntaxError, t.span, "integer too large");
    return std::stoll(t.text);
  }
  std::string rest_after(const Token& t) const {
    std::string s(raw_.substr(static_cast<std::size_t>(t.span.col)));
    const auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }

  ExprPtr parse_expr();

 private:
  ExprPtr parse_atom();

  std::vector<Token> toks_;
  std::string_view raw_;
  std::size_t pos_ = 0;
};

ExprPtr LineParser::parse_atom() {
  const Token t = expect_ident("an expression");
  auto e = std::make_shared<Expr>();
  e->span = t.span;
  e->name = t.text;
  if (!at_sym("(")) {
    e->kind = Expr::Kind::Ident;
    return e;
  }
  take();
  e->kind = Expr::Kind::Call;
  if (!at_sym(")")) {
    e->args.push_back(parse_expr());
    while (at_sym(",")) {
      take();
      e->args.push_back(parse_expr());
    }
  }
  expect_sym(")");
  return e;
}

// sum := ['-'] term (('+' | '-') term)*
// term := INT ['*'] [atom] ['/' INT] | atom ['/' INT]
ExprPtr LineParser::parse_expr() {
  struct Term {
    Rational coeff = 1;
    ExprPtr atom;  // null for a bare integer
    bool plain = true;
  };
  const Span start = peek().span;
  std::vector<Term> terms;
  bool first = true;
  for (;;) {
    int sign = 1;
    bool signed_term = false;
    if (first && at_sym("-")) {
      take();
      sign = -1;
      signed_term = true;
    } else if (!first) {
      if (at_sym("+")) {
        take();
      } else if (at_sym("-")) {
        take();
        sign = -1;
      } else {
        break;
      }
      signed_term = true;
    }
    first = false;
    Term term;
    term.plain = !signed_term;
    std::optional<std::int64_t> k;
    if (peek().t == Token::T::Int) {
      k = parse_int_token();
      if (at_sym("*")) take();
    }
    if (peek().t == Token::T::Ident) term.atom = parse_atom();
    if (!k && !term.atom) expected("an expression");
    term.coeff = Rational(sign) * Rational(k.value_or(1));
    if (term.atom && k) term.plain = false;
    if (term.atom && at_sym("/")) {
      take();
      const Token dt = peek();
      const std::int64_t d = parse_int_token();
      if (d == 0) raise(ErrorKind::SyntaxError, dt.span, "division by zero");
      term.coeff /= d;
      term.plain = false;
    }
    terms.push_back(std::move(term));
  }

  if (terms.size() == 1 && !terms[0].atom) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Int;
    e->span = start;
    e->value = static_cast<std::int64_t>(numerator(terms[0].coeff));
    return e;
  }
  if (terms.size() == 1 && terms[0].plain) return terms[0].atom;

  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Combo;
  e->span = start;
  for (const auto& t : terms) {
    if (!t.atom || t.atom->kind != Expr::Kind::Ident)
      raise(ErrorKind::SyntaxError, t.atom ? t.atom->span : start, "class expressions combine surface labels only");
    e->combo.add(t.atom->name, t.coeff);
    if (std::find(e->order.begin(), e->order.end(), t.atom->name) == e->order.end()) e->order.push_back(t.atom->name);
  }
  if (e->combo.is_zero()) raise(ErrorKind::SyntaxError, start, "class expression is zero");
  return e;
}

// Names and kinds, checked statement by statement.
class Checker {
 public:
  void statement(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Bind:
        switch (s.bind) {
          case BindKind::Knot: knot(*s.expr); break;
          case BindKind::Manifold: manifold(*s.expr); break;
          case BindKind::SW: sw(*s.expr); break;
        }
        env_[s.name] = s.bind;
        break;
      case Stmt::Kind::Print:
        value(s.what, *s.expr);
        break;
      case Stmt::Kind::Assert:
        if (s.op.empty()) {
          predicate(*s.expr);
        } else {
          value(s.what, *s.expr);
        }
        break;
      case Stmt::Kind::Emit: break;
    }
  }

 private:
  static const char* kind_name(BindKind k) {
    switch (k) {
      case BindKind::Knot: return "knot";
      case BindKind::Manifold: return "manifold";
      case BindKind::SW: return "sw";
    }
    return "";
  }

  void value(const std::string& what, const Expr& e) {
    if (what == "alexander") return knot(e);
    if (what == "sw" || what == "sw_at_one") return sw(e);
    if (what == "invariants" || what == "geography" || what == "expr") return manifold(e);
    // Bare `print X`: whatever X is.
    if (e.kind == Expr::Kind::Ident) {
      if (auto it = env_.find(e.name); it != env_.end()) return;
      if (kKnotNames.count(e.name) || kManifoldNames.count(e.name)) return;
      raise(ErrorKind::NameError, e.span, "unbound name '" + e.name + "'");
    }
    if (e.kind == Expr::Kind::Call && kKnotCalls.count(e.name)) return knot(e);
    if (e.kind == Expr::Kind::Call && kSWCalls.count(e.name)) return sw(e);
    manifold(e);
  }

  void predicate(const Expr& e) {
    if (e.kind != Expr::Kind::Call || (e.name != "homeo" && e.name != "sw_equal"))
      raise(ErrorKind::SyntaxError, e.span, "expected homeo(...) or sw_equal(...)");
    arity(e, 2, 2);
    if (e.name == "homeo") {
      manifold(*e.args[0]);
      manifold(*e.args[1]);
    } else {
      sw(*e.args[0]);
      sw(*e.args[1]);
    }
  }

  void arity(const Expr& e, std::size_t lo, std::size_t hi) {
    if (e.args.size() < lo || e.args.size() > hi) {
      const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
      raise(ErrorKind::SyntaxError, e.span, e.name + " takes " + want + " arguments, got " + std::to_string(e.args.size()));
    }
  }

  void variable(const Expr& e, BindKind want, bool manifold_ok = false) {
    auto it = env_.find(e.name);
    if (it == env_.end()) raise(ErrorKind::NameError, e.span, "unbound name '" + e.name + "'");
    if (it->second == want || (manifold_ok && it->second == BindKind::Manifold)) return;
    raise(ErrorKind::KindError, e.span,
          "'" + e.name + "' is a " + kind_name(it->second) + ", expected a " + kind_name(want));
  }

  [[noreturn]] void wrong_kind(const Expr& e, const char* want) {
    const char* got = kKnotCalls.count(e.name) || kKnotNames.count(e.name) ? "knot"
                      : kSWCalls.count(e.name)                                ? "sw"
                                                                              : "manifold";
    raise(ErrorKind::KindError, e.span, e.name + " is a " + std::string(got) + ", expected a " + want);
  }

  bool known(const std::string& n) const {
    return kKnotCalls.count(n) || kManifoldCalls.count(n) || kSWCalls.count(n) || kKnotNames.count(n) ||
           kManifoldNames.count(n);
  }

  void integer(const Expr& e) {
    if (e.kind != Expr::Kind::Int) raise(ErrorKind::KindError, e.span, "expected an integer");
  }
  void label(const Expr& e) {
    if (e.kind != Expr::Kind::Ident) raise(ErrorKind::KindError, e.span, "expected a surface label");
  }
  void klass(const Expr& e) {
    if (e.kind != Expr::Kind::Ident && e.kind != Expr::Kind::Combo)
      raise(ErrorKind::KindError, e.span, "expected a class such as F - 2E1");
  }
  static bool is_type(const Expr& e) { return e.kind == Expr::Kind::Ident && (e.name == "even" || e.name == "odd"); }

  void knot(const Expr& e) {
    if (e.kind == Expr::Kind::Ident) {
      if (env_.count(e.name)) return variable(e, BindKind::Knot);
      if (kKnotNames.count(e.name)) return;
      if (known(e.name)) wrong_kind(e, "knot");
      raise(ErrorKind::NameError, e.span, "unbound name '" + e.name + "'");
    }
    if (e.kind != Expr::Kind::Call) raise(ErrorKind::KindError, e.span, "expected a knot");
    if (!kKnotCalls.count(e.name)) {
      if (known(e.name)) wrong_kind(e, "knot");
      raise(ErrorKind::NameError, e.span, "unknown function '" + e.name + "'");
    }
    if (e.name == "twist") {
      arity(e, 1, 1);
      integer(*e.args[0]);
    } else if (e.name == "torus") {
      arity(e, 2, 2);
      integer(*e.args[0]);
      integer(*e.args[1]);
    } else if (e.name == "mirror") {
      arity(e, 1, 1);
      knot(*e.args[0]);
    } else if (e.name == "braid") {
      arity(e, 1, 10000);
      for (const auto& a : e.args) integer(*a);
    } else {  // pd
      arity(e, 1, 10000);
      for (const auto& a : e.args) {
        if (a->kind != Expr::Kind::Call || a->name != "X")
          raise(ErrorKind::SyntaxError, a->span, "pd expects crossings X(a,b,c,d)");
        arity(*a, 4, 4);
        for (const auto& x : a->args) integer(*x);
      }
    }
  }

  void manifold(const Expr& e) {
    if (e.kind == Expr::Kind::Ident) {
      if (env_.count(e.name)) return variable(e, BindKind::Manifold);
      if (kManifoldNames.count(e.name)) return;
      if (known(e.name)) wrong_kind(e, "manifold");
      raise(ErrorKind::NameError, e.span, "unbound name '" + e.name + "'");
    }
    if (e.kind != Expr::Kind::Call) raise(ErrorKind::KindError, e.span, "expected a manifold");
    if (!kManifoldCalls.count(e.name)) {
      if (known(e.name)) wrong_kind(e, "manifold");
      raise(ErrorKind::NameError, e.span, "unknown function '" + e.name + "'");
    }
    const auto& a = e.args;
    if (e.name == "E") {
      arity(e, 1, 1);
      integer(*a[0]);
    } else if (e.name == "H") {
      arity(e, 2, 2);
      integer(*a[0]);
      integer(*a[1]);
    } else if (e.name == "blowup") {
      arity(e, 2, 2);
      manifold(*a[0]);
      integer(*a[1]);
    } else if (e.name == "connected_sum") {
      arity(e, 2, 2);
      manifold(*a[0]);
      manifold(*a[1]);
    } else if (e.name == "fiber_sum") {
      arity(e, 3, 6);
      manifold(*a[0]);
      manifold(*a[1]);
      integer(*a[2]);
      std::size_t n = a.size();
      if (n == 4 || n == 6) {
        if (!is_type(*a[n - 1])) raise(ErrorKind::KindError, a[n - 1]->span, "expected even or odd");
        --n;
      }
      if (n == 4) raise(ErrorKind::SyntaxError, e.span, "fiber_sum takes both fiber labels or neither");
      for (std::size_t i = 3; i < n; ++i) label(*a[i]);
    } else if (e.name == "torus_surgery") {
      arity(e, 5, 5);
      manifold(*a[0]);
      label(*a[1]);
      for (std::size_t i = 2; i < 5; ++i) integer(*a[i]);
    } else if (e.name == "log_transform") {
      arity(e, 2, 2);
      manifold(*a[0]);
      integer(*a[1]);
    } else if (e.name == "knot_surgery") {
      arity(e, 3, 3);
      manifold(*a[0]);
      label(*a[1]);
      knot(*a[2]);
    } else if (e.name == "rational_blowdown") {
      arity(e, 2, 10000);
      manifold(*a[0]);
      integer(*a[1]);
      std::size_t n = a.size();
      if (n > 2 && is_type(*a[n - 1])) --n;
      for (std::size_t i = 2; i < n; ++i) klass(*a[i]);
    } else {  // reverse
      arity(e, 1, 1);
      manifold(*a[0]);
    }
  }

  void sw(const Expr& e) {
    if (e.kind == Expr::Kind::Ident && env_.count(e.name)) return variable(e, BindKind::SW, true);
    if (e.kind == Expr::Kind::Call && kSWCalls.count(e.name)) {
      const auto& a = e.args;
      if (e.name == "chamber_series") {
        arity(e, 2, 2);
        integer(*a[0]);
        if (a[1]->kind != Expr::Kind::Ident || (a[1]->name != "plus" && a[1]->name != "minus"))
          raise(ErrorKind::KindError, a[1]->span, "expected plus or minus");
      } else if (e.name == "e1_twist") {
        arity(e, 1, 1);
        integer(*a[0]);
      } else {
        arity(e, 3, 3);
        for (const auto& x : a) integer(*x);
      }
      return;
    }
    manifold(e);
  }

  std::map<std::string, BindKind> env_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

Stmt parse_statement(LineParser& p) {
  Stmt s;
  const Token kw = p.expect_ident("a statement keyword");
  s.span = kw.span;
  if (kw.text == "knot" || kw.text == "manifold" || kw.text == "sw") {
    s.kind = Stmt::Kind::Bind;
    s.bind = kw.text == "knot" ? BindKind::Knot : kw.text == "manifold" ? BindKind::Manifold : BindKind::SW;
    s.name = p.expect_ident("a name").text;
    p.expect_sym("=");
    s.expr = p.parse_expr();
  } else if (kw.text == "print") {
    s.kind = Stmt::Kind::Print;
    if (p.peek().t == Token::T::Ident && kWhats.count(p.peek().text) && p.peek(1).t != Token::T::End &&
        !(p.peek(1).t == Token::T::Sym && p.peek(1).text == "("))
      s.what = p.take().text;
    s.expr = p.parse_expr();
  } else if (kw.text == "assert") {
    s.kind = Stmt::Kind::Assert;
    if (p.at_ident("not")) {
      p.take();
      s.negate = true;
    }
    if (p.peek().t == Token::T::Ident && kWhats.count(p.peek().text) && p.peek(1).t == Token::T::Ident) {
      s.what = p.take().text;
      s.expr = p.parse_expr();
      if (!p.at_sym("==") && !p.at_sym("!=")) p.expected("'==' or '!='");
      s.op = p.take().text;
      if (p.peek().t != Token::T::String) p.expected("a quoted value");
      s.expected = p.take().text;
    } else {
      s.expr = p.parse_expr();
    }
  } else if (kw.text == "emit") {
    s.kind = Stmt::Kind::Emit;
    const Token what = p.expect_ident("'geography'");
    if (what.text != "geography") raise(ErrorKind::SyntaxError, what.span, "expected 'geography', found '" + what.text + "'");
    s.chi_max = p.parse_int_token();
    const Token gt = p.expect_sym(">");
    s.path = p.rest_after(gt);
    if (s.path.empty()) raise(ErrorKind::SyntaxError, gt.span, "expected an output path");
    return s;
  } else {
    raise(ErrorKind::SyntaxError, kw.span, "expected knot, manifold, sw, print, assert or emit, found '" + kw.text + "'");
  }
  p.expect_end();
  return s;
}

}  // namespace

ScriptError::ScriptError(ErrorKind kind, Span at, const std::string& what)
    : Error(kind, "at " + span_text(at) + ": " + what), span_(at), detail_(what) {}

Script parse_script(std::string_view text) {
  Script script;
  Checker checker;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    auto toks = lex_line(line, lineno);
    if (toks.front().t != Token::T::End) {
      LineParser p(std::move(toks), line);
      Stmt s = parse_statement(p);
      checker.statement(s);
      script.statements.push_back(std::move(s));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return script;
}

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Ident: return e.name;
    case Expr::Kind::Int: return std::to_string(e.value);
    case Expr::Kind::Combo: return manifolds::to_string(e.combo, e.order);
    case Expr::Kind::Call: {
      std::string out = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? ", " : "") + print_expr(*e.args[i]);
      return out + ")";
    }
  }
  return {};
}

std::string print_stmt(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Bind: {
      const char* kw = s.bind == BindKind::Knot ? "knot" : s.bind == BindKind::Manifold ? "manifold" : "sw";
      return std::string(kw) + " " + s.name + " = " + print_expr(*s.expr);
    }
    case Stmt::Kind::Print: return "print " + (s.what.empty() ? "" : s.what + " ") + print_expr(*s.expr);
    case Stmt::Kind::Assert: {
      std::string out = std::string("assert ") + (s.negate ? "not " : "");
      if (s.op.empty()) return out + print_expr(*s.expr);
      return out + s.what + " " + print_expr(*s.expr) + " " + s.op + " " + quote(s.expected);
    }
    case Stmt::Kind::Emit: return "emit geography " + std::to_string(s.chi_max) + " > " + s.path;
  }
  return {};
}

std::string print_script(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) out += print_stmt(st) + "\n";
  return out;
}

}  // namespace swcalc::cli
