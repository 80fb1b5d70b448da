#pragma once

// Construction scripts: one statement per line.
//
//   knot K = twist(2)
//   manifold X = knot_surgery(E(2), F, K)
//   sw S = X
//   print sw X
//   assert not sw_equal(X, E(2))
//   assert sw X == "t^4 - 2*t^2 + 3 - 2*t^-2 + t^-4"
//   emit geography 12 > chart.tsv
//
// Expressions use call syntax. Class arguments are integer or rational
// combinations of labels (`F - 2E1 - E2`, `2F + S/2`). `#` starts a comment.

#include "swcalc/errors.hpp"
#include "swcalc/manifolds/lattice.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace swcalc::cli {

struct Span {
  int line = 1;
  int col = 1;
};

/// Error raised by parsing or running a script, located at a source span.
class ScriptError : public Error {
 public:
  ScriptError(ErrorKind kind, Span at, const std::string& what);
  Span span() const noexcept { return span_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Span span_;
  std::string detail_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Ident, Int, Call, Combo };
  Kind kind = Kind::Ident;
  Span span;
  std::string name;               // Ident, Call
  std::int64_t value = 0;         // Int
  std::vector<ExprPtr> args;      // Call
  manifolds::ClassVector combo;   // Combo
  std::vector<std::string> order; // Combo labels in source order
};

enum class BindKind { Knot, Manifold, SW };

struct Stmt {
  enum class Kind { Bind, Print, Assert, Emit };
  Kind kind = Kind::Print;
  Span span;

  // Bind
  BindKind bind = BindKind::Manifold;
  std::string name;

  // Print and comparison asserts: sw, sw_at_one, alexander, invariants, geography, expr.
  std::string what;
  ExprPtr expr;

  // Assert: predicate call (homeo / sw_equal) or `what expr op "text"`.
  bool negate = false;
  std::string op;  // "==" or "!=" for comparisons, empty for predicates
  std::string expected;

  // Emit
  std::int64_t chi_max = 0;
  std::string path;
};

struct Script {
  std::vector<Stmt> statements;
};

/// Parses and checks names and kinds. SyntaxError, NameError and KindError
/// come out as ScriptError with the offending span.
Script parse_script(std::string_view text);

std::string print_expr(const Expr& e);
std::string print_stmt(const Stmt& s);
/// One statement per line, canonical spacing.
std::string print_script(const Script& s);

}  // namespace swcalc::cli
