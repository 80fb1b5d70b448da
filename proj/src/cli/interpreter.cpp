#include "swcalc/cli/interpreter.hpp"

#include "swcalc/geography/geography.hpp"
#include "swcalc/knots/alexander.hpp"
#include "swcalc/manifolds/manifold.hpp"
#include "swcalc/parallel.hpp"
#include "swcalc/sw/evaluate.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <variant>

namespace swcalc::cli {

namespace {

using nlohmann::json;
using manifolds::ManifoldPtr;

struct KnotValue {
  knots::LinkDiagram diagram;
  std::string text;
};

using Value = std::variant<KnotValue, ManifoldPtr, sw::SWInvariant>;

int to_int(std::int64_t v, Span at) {
  if (v < -1'000'000 || v > 1'000'000) throw ScriptError(ErrorKind::InvalidParameters, at, "integer out of range");
  return static_cast<int>(v);
}

std::string join_tags(const std::vector<std::string>& tags) {
  std::string out;
  for (std::size_t i = 0; i < tags.size(); ++i) out += (i ? "," : "") + tags[i];
  return out;
}

std::string invariants_text(const manifolds::CharInvariants& v) {
  return "e=" + std::to_string(v.e) + " sigma=" + std::to_string(v.sigma) + " b+=" + std::to_string(v.b_plus) +
         " b-=" + std::to_string(v.b_minus) + " chi_h=" + swcalc::to_string(v.chi_h()) + " c=" + std::to_string(v.c()) +
         " t=" + std::to_string(v.t) + " spin=" + (v.spin ? "yes" : "no");
}

json invariants_json(const manifolds::CharInvariants& v) {
  return {{"e", v.e},         {"sigma", v.sigma}, {"b_plus", v.b_plus}, {"b_minus", v.b_minus},
          {"chi_h", swcalc::to_string(v.chi_h())}, {"c", v.c()}, {"t", v.t}, {"spin", v.spin}};
}

json sw_json(const sw::SWInvariant& s) {
  json basis = json::array();
  for (const auto& k : s.basis.classes) basis.push_back(manifolds::to_string(k));
  json j = {{"basis", basis}, {"vars", s.basis.vars.names()}, {"poly", to_string(s.poly)}};
  if (s.regime == sw::Regime::BPlusEq1)
    j["chamber"] = s.chamber.metric + (s.chamber.sign > 0 ? "+" : s.chamber.sign < 0 ? "-" : "");
  return j;
}

class Interpreter {
 public:
  Interpreter(const RunOptions& opts, std::ostream& out, std::ostream& err) : opts_(opts), out_(out), err_(err) {
    eval_.skein.node_budget = opts.node_budget;
  }

  int run(const Script& script) {
    int code = kExitOk;
    for (const auto& s : script.statements) {
      try {
        if (!execute(s)) code = kExitAssert;
      } catch (const ScriptError& e) {
        report(e.kind(), e.span(), e.detail());
        return kExitError;
      } catch (const Error& e) {
        const std::string what = e.what();
        const std::string prefix = std::string(to_string(e.kind())) + ": ";
        report(e.kind(), s.span, what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what);
        return kExitError;
      }
    }
    return code;
  }

  void report(ErrorKind kind, Span at, const std::string& msg) {
    if (opts_.json) {
      out_ << json{{"error", {{"kind", std::string(to_string(kind))}, {"line", at.line}, {"col", at.col}, {"message", msg}}}}.dump()
           << "\n";
    } else {
      err_ << "error " << at.line << ":" << at.col << ": " << to_string(kind) << ": " << msg << "\n";
    }
  }

 private:
  // Returns false for a failed assertion.
  bool execute(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Bind: bind(s); return true;
      case Stmt::Kind::Print: print(s); return true;
      case Stmt::Kind::Assert: return assertion(s);
      case Stmt::Kind::Emit: emit(s); return true;
    }
    return true;
  }

  void bind(const Stmt& s) {
    switch (s.bind) {
      case BindKind::Knot: env_[s.name] = knot(*s.expr); break;
      case BindKind::Manifold: env_[s.name] = manifold(*s.expr); break;
      case BindKind::SW: env_[s.name] = sw(*s.expr); break;
    }
    if (opts_.json) out_ << json{{"line", s.span.line}, {"statement", print_stmt(s)}, {"bound", s.name}}.dump() << "\n";
  }

  // What a bare `print X` shows.
  std::string default_what(const Expr& e) const {
    if (e.kind == Expr::Kind::Ident) {
      if (auto it = env_.find(e.name); it != env_.end()) {
        if (std::holds_alternative<KnotValue>(it->second)) return "alexander";
        if (std::holds_alternative<sw::SWInvariant>(it->second)) return "sw";
        return "invariants";
      }
      return e.name == "trefoil" || e.name == "figure8" || e.name == "hopf" || e.name == "unknot" ? "alexander"
                                                                                                    : "invariants";
    }
    if (e.kind == Expr::Kind::Call) {
      if (e.name == "twist" || e.name == "torus" || e.name == "mirror" || e.name == "braid" || e.name == "pd")
        return "alexander";
      if (e.name == "chamber_series" || e.name == "e1_twist" || e.name == "double_log_transform") return "sw";
    }
    return "invariants";
  }

  // Display text and comparison text of `what` applied to e, plus JSON.
  struct Shown {
    std::string display;
    std::string compare;
    json data;
  };

  Shown show(const std::string& what, const Expr& e) {
    if (what == "sw") {
      const auto s = sw(e);
      return {to_string(s), to_string(s.poly), sw_json(s)};
    }
    if (what == "sw_at_one") {
      const auto s = sw(e);
      if (s.kind != sw::Kind::Closed) fail(ErrorKind::InvalidParameters, "sw_at_one needs a closed invariant");
      const std::string v = eval_at_one(s.poly).str();
      return {v, v, v};
    }
    if (what == "alexander") {
      const auto k = knot(e);
      const std::string v = to_string(knots::alexander_skein(k.diagram, eval_.skein));
      return {v, v, v};
    }
    const ManifoldPtr m = manifold(e);
    if (what == "invariants") {
      const std::string v = invariants_text(m->inv);
      return {v, v, invariants_json(m->inv)};
    }
    if (what == "geography") {
      const auto p = geography::point_of(*m);
      const std::string tags = join_tags(geography::classify(p));
      const std::string v = "(chi_h, c, t) = (" + std::to_string(p.chi_h) + ", " + std::to_string(p.c) + ", " +
                            std::to_string(p.t) + ") " + tags;
      return {v, v, json{{"chi_h", p.chi_h}, {"c", p.c}, {"t", p.t}, {"tags", geography::classify(p)}}};
    }
    const std::string v = m->expr();  // expr
    return {v, v, v};
  }

  void print(const Stmt& s) {
    const std::string what = s.what.empty() ? default_what(*s.expr) : s.what;
    const Shown v = show(what, *s.expr);
    const std::string target = print_expr(*s.expr);
    if (opts_.json) {
      out_ << json{{"line", s.span.line}, {"statement", print_stmt(s)}, {"what", what}, {"target", target}, {"value", v.data}}.dump()
           << "\n";
    } else {
      out_ << what << " " << target << ": " << v.display << "\n";
    }
  }

  bool assertion(const Stmt& s) {
    bool holds = false;
    std::vector<std::pair<std::string, std::string>> detail;
    if (s.op.empty()) {
      const Expr& call = *s.expr;
      if (call.name == "homeo") {
        const ManifoldPtr a = manifold(*call.args[0]);
        const ManifoldPtr b = manifold(*call.args[1]);
        holds = manifolds::homeo_equal(*a, *b);
        detail = {{"left", invariants_text(a->inv)}, {"right", invariants_text(b->inv)}};
      } else {
        const auto a = sw(*call.args[0]);
        const auto b = sw(*call.args[1]);
        holds = sw::sw_equal(a, b);
        detail = {{"left", to_string(a)}, {"right", to_string(b)}};
      }
    } else {
      const Shown v = show(s.what, *s.expr);
      holds = (v.compare == s.expected) == (s.op == "==");
      detail = {{"got", v.compare}, {"want", (s.op == "!=" ? "not " : "") + s.expected}};
    }
    if (s.negate) holds = !holds;

    if (opts_.json) {
      json j = {{"line", s.span.line}, {"statement", print_stmt(s)}, {"assert", holds ? "pass" : "fail"}};
      for (const auto& [k, v] : detail) j[k] = v;
      out_ << j.dump() << "\n";
    } else if (holds) {
      out_ << "ok " << print_stmt(s) << "\n";
    } else {
      out_ << "FAIL " << s.span.line << ":" << s.span.col << " " << print_stmt(s) << "\n";
      for (const auto& [k, v] : detail) out_ << "  " << k << ": " << v << "\n";
    }
    return holds;
  }

  void emit(const Stmt& s) {
    const auto rows = geography::chart_rows(s.chi_max);
    std::ofstream f(s.path, std::ios::binary);
    if (!f) throw ScriptError(ErrorKind::InvalidParameters, s.span, "cannot write '" + s.path + "'");
    f << geography::format_chart(rows);
    if (!f) throw ScriptError(ErrorKind::InvalidParameters, s.span, "cannot write '" + s.path + "'");
    if (opts_.json)
      out_ << json{{"line", s.span.line}, {"statement", print_stmt(s)}, {"rows", rows.size()}, {"path", s.path}}.dump() << "\n";
    else
      out_ << "emit geography " << s.chi_max << ": " << rows.size() << " rows > " << s.path << "\n";
  }

  KnotValue knot(const Expr& e) {
    if (e.kind == Expr::Kind::Ident) {
      if (auto it = env_.find(e.name); it != env_.end()) return std::get<KnotValue>(it->second);
      return {knots::builtin_knot(e.name), e.name};
    }
    const auto& a = e.args;
    if (e.name == "twist") return {knots::twist_knot(to_int(a[0]->value, a[0]->span)), print_expr(e)};
    if (e.name == "torus")
      return {knots::torus_knot(to_int(a[0]->value, a[0]->span), to_int(a[1]->value, a[1]->span)), print_expr(e)};
    if (e.name == "mirror") {
      const KnotValue k = knot(*a[0]);
      return {knots::mirror(k.diagram), "mirror(" + k.text + ")"};
    }
    if (e.name == "braid") {
      std::vector<int> word;
      for (const auto& x : a) {
        if (x->value == 0) throw ScriptError(ErrorKind::InvalidParameters, x->span, "braid generators are nonzero");
        word.push_back(to_int(x->value, x->span));
      }
      return {knots::braid_closure(word), print_expr(e)};
    }
    std::string pd;  // pd(X(...), ...)
    for (const auto& x : a) {
      pd += "X(";
      for (std::size_t i = 0; i < 4; ++i) pd += (i ? "," : "") + std::to_string(x->args[i]->value);
      pd += ") ";
    }
    return {knots::parse_pd(pd), print_expr(e)};
  }

  static std::optional<int> type_arg(const Expr& e) {
    if (e.kind == Expr::Kind::Ident && e.name == "even") return 0;
    if (e.kind == Expr::Kind::Ident && e.name == "odd") return 1;
    return std::nullopt;
  }

  ManifoldPtr manifold(const Expr& e) {
    if (e.kind == Expr::Kind::Ident) {
      if (auto it = env_.find(e.name); it != env_.end()) return std::get<ManifoldPtr>(it->second);
      return manifolds::primitive(e.name);
    }
    const auto& a = e.args;
    auto i = [&](std::size_t k) { return to_int(a[k]->value, a[k]->span); };
    if (e.name == "E") return manifolds::elliptic(i(0));
    if (e.name == "H") return manifolds::horikawa(i(0), i(1));
    if (e.name == "blowup") return manifolds::blowup(manifold(*a[0]), i(1));
    if (e.name == "connected_sum") return manifolds::connected_sum(manifold(*a[0]), manifold(*a[1]));
    if (e.name == "fiber_sum") {
      std::size_t n = a.size();
      std::optional<int> type;
      if (n == 4 || n == 6) type = type_arg(*a[--n]);
      const std::string la = n == 5 ? a[3]->name : "F";
      const std::string lb = n == 5 ? a[4]->name : "F";
      return manifolds::fiber_sum(manifold(*a[0]), manifold(*a[1]), i(2), la, lb, type);
    }
    if (e.name == "torus_surgery") return manifolds::torus_surgery(manifold(*a[0]), a[1]->name, i(2), i(3), i(4));
    if (e.name == "log_transform") return manifolds::torus_surgery(manifold(*a[0]), "F", 0, 1, i(1));
    if (e.name == "knot_surgery") {
      const KnotValue k = knot(*a[2]);
      return manifolds::knot_surgery(manifold(*a[0]), a[1]->name, k.diagram, k.text);
    }
    if (e.name == "rational_blowdown") {
      std::size_t n = a.size();
      std::optional<int> type;
      if (n > 2 && type_arg(*a[n - 1])) type = type_arg(*a[--n]);
      std::optional<manifolds::BlowdownConfig> cfg;
      if (n > 2) {
        cfg = manifolds::BlowdownConfig{i(1), {}};
        for (std::size_t k = 2; k < n; ++k)
          cfg->spheres.push_back(a[k]->kind == Expr::Kind::Combo ? a[k]->combo : manifolds::ClassVector::of(a[k]->name));
      }
      return manifolds::rational_blowdown(manifold(*a[0]), i(1), cfg, type);
    }
    return manifolds::orientation_reverse(manifold(*a[0]));  // reverse
  }

  sw::SWInvariant sw(const Expr& e) {
    if (e.kind == Expr::Kind::Ident) {
      if (auto it = env_.find(e.name); it != env_.end() && std::holds_alternative<sw::SWInvariant>(it->second))
        return std::get<sw::SWInvariant>(it->second);
    }
    if (e.kind == Expr::Kind::Call) {
      const auto& a = e.args;
      auto i = [&](std::size_t k) { return to_int(a[k]->value, a[k]->span); };
      if (e.name == "chamber_series") return sw::chamber_series_E1(i(0), a[1]->name == "plus" ? 1 : -1);
      if (e.name == "e1_twist") return sw::sw_E1_twist_knot(i(0));
      if (e.name == "double_log_transform") return sw::double_log_transform(i(0), i(1), i(2));
    }
    return sw::sw_of(manifold(e), eval_);
  }

  const RunOptions& opts_;
  std::ostream& out_;
  std::ostream& err_;
  sw::EvalOptions eval_;
  std::map<std::string, Value> env_;
};

}  // namespace

int run(const Script& script, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  const int saved = num_threads();
  set_num_threads(opts.threads);
  Interpreter in(opts, out, err);
  const int code = in.run(script);
  set_num_threads(saved);
  return code;
}

int run_text(std::string_view text, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  Script script;
  try {
    script = parse_script(text);
  } catch (const ScriptError& e) {
    Interpreter(opts, out, err).report(e.kind(), e.span(), e.detail());
    return kExitError;
  }
  return run(script, opts, out, err);
}

}  // namespace swcalc::cli
