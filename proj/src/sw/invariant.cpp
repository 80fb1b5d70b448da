#include "swcalc/sw/invariant.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace swcalc::sw {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Label coordinates shared by a set of class vectors.
std::vector<std::string> label_axes(const std::vector<ClassVector>& vs) {
  std::set<std::string> names;
  for (const auto& v : vs)
    for (const auto& [n, c] : v.coeffs()) names.insert(n);
  return {names.begin(), names.end()};
}

std::vector<Rational> dense(const ClassVector& v, const std::vector<std::string>& axes) {
  std::vector<Rational> out;
  out.reserve(axes.size());
  for (const auto& a : axes) out.push_back(v.coefficient(a));
  return out;
}

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = 0; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const std::vector<ClassVector>& vs) {
  const auto axes = label_axes(vs);
  Matrix m;
  for (const auto& v : vs) m.push_back(dense(v, axes));
  return row_reduce(m, axes.size()).size();
}

bool integral(const std::vector<Rational>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](const Rational& x) { return denominator(x) == 1; });
}

std::optional<std::vector<Integer>> integral_coordinates(const std::vector<ClassVector>& classes,
                                                         const ClassVector& k) {
  auto c = coordinates(classes, k);
  if (!c || !integral(*c)) return std::nullopt;
  std::vector<Integer> out;
  for (const auto& x : *c) out.push_back(numerator(x));
  return out;
}

std::int64_t to_i64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() / 4 || v < std::numeric_limits<std::int64_t>::min() / 4)
    fail(ErrorKind::ResourceLimit, "exponent " + v.str() + " out of range");
  return static_cast<std::int64_t>(v);
}

LaurentPoly with_names(const LaurentPoly& p, const VarBasis& vars) {
  LaurentPoly r(vars);
  for (const auto& [e, c] : p.terms()) r.add_term(e, c);
  return r;
}

LaurentPoly one(const VarBasis& vars) { return LaurentPoly::constant(vars, 1); }

// x^-1 - x for the monomial x = t_k.
LaurentPoly inv_minus(const ClassBasis& b, const ClassVector& k) {
  return class_monomial(b, k, -1) - class_monomial(b, k, 1);
}

bool is_label_name(const std::string& s) {
  return !s.empty() && std::isalpha(static_cast<unsigned char>(s[0])) &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string describe(const ClassVector& k) {
  if (k.coeffs().size() == 1 && k.coeffs().begin()->second == 1) return "t_" + k.coeffs().begin()->first;
  return "t_[" + manifolds::to_string(k) + "]";
}

void require_closed(const SWInvariant& s, const char* what) {
  if (s.kind != Kind::Closed) fail(ErrorKind::InvalidParameters, std::string(what) + " needs a closed invariant");
}

SWInvariant with_meta(SWInvariant out, const SWInvariant& like) {
  out.regime = like.regime;
  out.chamber = like.chamber;
  out.simple_type = like.simple_type;
  return out;
}

}  // namespace

ClassBasis make_basis(std::vector<ClassVector> classes) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::string name = "t" + std::to_string(i + 1);
    const auto& cs = classes[i].coeffs();
    if (classes.size() == 1) {
      name = "t";
    } else if (cs.size() == 1 && cs.begin()->second == 1) {
      const std::string& label = cs.begin()->first;
      std::string lower;
      for (char ch : label) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (label == "F")
        name = "t";
      else if (is_label_name(lower))
        name = lower;
    }
    while (std::find(names.begin(), names.end(), name) != names.end()) name = "t" + std::to_string(i + 1) + "_";
    names.push_back(name);
  }
  return {std::move(classes), VarBasis(std::move(names))};
}

std::optional<std::vector<Rational>> coordinates(const std::vector<ClassVector>& classes, const ClassVector& k) {
  std::vector<ClassVector> all = classes;
  all.push_back(k);
  const auto axes = label_axes(all);
  const std::size_t n = classes.size();
  // One row per label axis: [class coefficients | k coefficient].
  Matrix m(axes.size(), std::vector<Rational>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = dense(classes[j], axes);
    for (std::size_t i = 0; i < axes.size(); ++i) m[i][j] = col[i];
  }
  const auto kc = dense(k, axes);
  for (std::size_t i = 0; i < axes.size(); ++i) m[i][n] = kc[i];
  const auto pivots = row_reduce(m, n);
  for (std::size_t r = pivots.size(); r < m.size(); ++r)
    if (m[r][n] != 0) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][n];
  return x;
}

std::vector<ClassVector> lattice_basis(const std::vector<ClassVector>& gens) {
  const auto axes = label_axes(gens);
  Integer den = 1;
  for (const auto& g : gens)
    for (const auto& [n, c] : g.coeffs()) den = boost::multiprecision::lcm(den, denominator(c));
  std::vector<std::vector<Integer>> m;
  for (const auto& g : gens) {
    std::vector<Integer> row;
    for (const auto& a : axes) row.push_back(numerator(g.coefficient(a) * den));
    m.push_back(std::move(row));
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < axes.size() && row < m.size(); ++col) {
    while (true) {
      // Smallest nonzero entry at or below `row` becomes the pivot.
      std::size_t sel = m.size();
      for (std::size_t r = row; r < m.size(); ++r)
        if (m[r][col] != 0 && (sel == m.size() || abs(m[r][col]) < abs(m[sel][col]))) sel = r;
      if (sel == m.size()) break;
      std::swap(m[sel], m[row]);
      bool done = true;
      for (std::size_t r = row + 1; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        const Integer q = m[r][col] / m[row][col];
        for (std::size_t j = 0; j < axes.size(); ++j) m[r][j] -= q * m[row][j];
        if (m[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[row][col] == 0) continue;
    if (m[row][col] < 0)
      for (auto& x : m[row]) x = -x;
    for (std::size_t r = 0; r < row; ++r) {
      Integer q = m[r][col] / m[row][col];
      if (m[r][col] - q * m[row][col] < 0) --q;
      for (std::size_t j = 0; j < axes.size(); ++j) m[r][j] -= q * m[row][j];
    }
    ++row;
  }
  std::vector<ClassVector> out;
  for (std::size_t r = 0; r < row; ++r) {
    ClassVector v;
    for (std::size_t j = 0; j < axes.size(); ++j)
      if (m[r][j] != 0) v.add(axes[j], Rational(m[r][j]) / Rational(den));
    out.push_back(std::move(v));
  }
  return out;
}

ClassBasis unify(const ClassBasis& a, const ClassBasis& b) {
  auto spans = [](const ClassBasis& x, const ClassBasis& y) {
    return std::all_of(y.classes.begin(), y.classes.end(),
                       [&](const ClassVector& k) { return integral_coordinates(x.classes, k).has_value(); });
  };
  if (spans(a, b)) return a;
  if (spans(b, a)) return b;
  std::vector<ClassVector> all = a.classes;
  for (const auto& k : b.classes)
    if (std::find(all.begin(), all.end(), k) == all.end()) all.push_back(k);
  if (rank(all) == all.size()) return make_basis(std::move(all));
  return make_basis(lattice_basis(all));
}

LaurentPoly express(const LaurentPoly& p, const ClassBasis& from, const ClassBasis& to) {
  if (from == to) return with_names(p, to.vars);
  std::vector<std::vector<Integer>> image;
  for (const auto& k : from.classes) {
    auto c = integral_coordinates(to.classes, k);
    if (!c) fail(ErrorKind::BasisMismatch, "class " + manifolds::to_string(k) + " is not integral in the target basis");
    image.push_back(*std::move(c));
  }
  LaurentPoly r(to.vars);
  for (const auto& [e, c] : p.terms()) {
    Exponents out(to.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += e[i] * to_i64(image[i][j]);
    r.add_term(out, c);
  }
  return r;
}

LaurentPoly class_monomial(const ClassBasis& basis, const ClassVector& k, std::int64_t power) {
  auto c = integral_coordinates(basis.classes, k);
  if (!c) fail(ErrorKind::InvalidParameters, "class " + manifolds::to_string(k) + " is not integral in the basis");
  Exponents e;
  for (const auto& x : *c) e.push_back(2 * power * to_i64(x));
  return LaurentPoly::monomial(basis.vars, e);
}

SWInvariant closed(ClassBasis basis, LaurentPoly poly) {
  SWInvariant s;
  s.poly = with_names(poly, basis.vars);
  s.basis = std::move(basis);
  return s;
}

ClassSums class_sums(const SWInvariant& s) {
  require_closed(s, "class sums");
  ClassSums out;
  for (const auto& [e, c] : s.poly.terms()) {
    ClassVector k;
    for (std::size_t i = 0; i < e.size(); ++i) k = k + Rational(e[i], 2) * s.basis.classes[i];
    out[k] += c;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

SWInvariant from_class_sums(const ClassSums& sums, const std::vector<ClassVector>& preferred) {
  std::vector<ClassVector> pref;
  for (const auto& k : preferred)
    if (!k.is_zero() && std::find(pref.begin(), pref.end(), k) == pref.end()) pref.push_back(k);
  std::vector<ClassVector> support;
  for (const auto& [k, c] : sums)
    if (c != 0 && !k.is_zero()) support.push_back(k);

  bool keep = rank(pref) == pref.size();
  if (keep)
    for (const auto& k : support)
      if (!integral_coordinates(pref, k)) keep = false;
  std::vector<ClassVector> classes = pref;
  if (!keep) {
    std::vector<ClassVector> gens = pref;
    gens.insert(gens.end(), support.begin(), support.end());
    classes = lattice_basis(gens);
  }
  ClassBasis basis = make_basis(std::move(classes));
  LaurentPoly poly(basis.vars);
  for (const auto& [k, c] : sums) {
    if (c == 0) continue;
    auto x = integral_coordinates(basis.classes, k);
    if (!x) fail(ErrorKind::BasisMismatch, "class " + manifolds::to_string(k) + " outside the rebuilt basis");
    Exponents e;
    for (const auto& v : *x) e.push_back(2 * to_i64(v));
    poly.add_term(e, c);
  }
  return closed(std::move(basis), std::move(poly));
}

SWInvariant rename_labels(const SWInvariant& s, const std::map<std::string, std::string>& rename) {
  std::vector<ClassVector> classes;
  for (const auto& k : s.basis.classes) {
    ClassVector r;
    for (const auto& [n, c] : k.coeffs()) {
      auto it = rename.find(n);
      r.add(it == rename.end() ? n : it->second, c);
    }
    classes.push_back(std::move(r));
  }
  SWInvariant out = s;
  out.basis = make_basis(std::move(classes));
  out.poly = with_names(s.poly, out.basis.vars);
  if (s.denominator) out.denominator = with_names(*s.denominator, out.basis.vars);
  return out;
}

bool sw_equal(const SWInvariant& a, const SWInvariant& b) {
  if (a.regime != b.regime || (a.regime == Regime::BPlusEq1 && !(a.chamber == b.chamber)))
    fail(ErrorKind::ChamberMismatch, "invariants from different regimes or chambers are not comparable");
  return class_sums(a) == class_sums(b);
}

std::string to_string(const SWInvariant& s) {
  std::string out = "basis: ";
  if (s.basis.size() == 0) out += "(none)";
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    if (i) out += ", ";
    if (s.basis.size() > 1) out += s.basis.vars[i] + "=";
    out += describe(s.basis.classes[i]);
  }
  if (s.kind == Kind::Relative) {
    out += " | SW_rel: " + to_string(s.poly);
    if (s.denominator && *s.denominator != one(s.basis.vars)) out = out + " / (" + to_string(*s.denominator) + ")";
  } else {
    out += " | SW: " + to_string(s.poly);
  }
  if (s.regime == Regime::BPlusEq1) {
    out += " | chamber: " + s.chamber.metric;
    if (s.chamber.sign) out += s.chamber.sign > 0 ? "+" : "-";
  }
  return out;
}

SWInvariant sw_elliptic(int n) {
  if (n == 1) fail(ErrorKind::RegimeError, "E(1) has b+ = 1; use the chamber series");
  if (n < 1) fail(ErrorKind::InvalidParameters, "E(n) needs n >= 1");
  ClassBasis b = make_basis({ClassVector::of("F")});
  const LaurentPoly t = LaurentPoly::variable(b.vars, "t");
  const LaurentPoly ti = LaurentPoly::variable(b.vars, "t", -1);
  return closed(b, pow(t - ti, static_cast<unsigned>(n - 2)));
}

SWInvariant blowup_formula(const SWInvariant& s, const ClassVector& e) {
  require_closed(s, "blowup formula");
  if (!s.simple_type) fail(ErrorKind::SimpleTypeRequired, "blowup formula needs simple type");
  const ClassBasis b = unify(s.basis, make_basis({e}));
  const LaurentPoly p = express(s.poly, s.basis, b);
  return with_meta(closed(b, p * (class_monomial(b, e) + class_monomial(b, e, -1))), s);
}

SWInvariant knot_surgery_formula(const SWInvariant& s, const ClassVector& torus, const LaurentPoly& delta) {
  require_closed(s, "knot surgery");
  if (s.regime != Regime::BPlusGt1) fail(ErrorKind::RegimeError, "knot surgery formula needs b+ > 1");
  if (delta.basis().size() != 1 || !is_symmetric(delta, 1) || abs(eval_at_one(delta)) != 1)
    fail(ErrorKind::NotSymmetric, "'" + to_string(delta) + "' is not a symmetrized Alexander polynomial");
  const ClassBasis b = unify(s.basis, make_basis({torus}));
  LaurentPoly d(b.vars);
  // t^(e/2) -> t_T^e, so half units of Delta become whole powers of t_T.
  for (const auto& [e, c] : delta.terms()) d = d + c * class_monomial(b, torus, e[0]);
  return with_meta(closed(b, express(s.poly, s.basis, b) * d), s);
}

SWInvariant relative_from_closed(const SWInvariant& s, const ClassVector& torus) {
  require_closed(s, "relative_from_closed");
  const ClassBasis b = unify(s.basis, make_basis({torus}));
  SWInvariant out = with_meta(closed(b, express(s.poly, s.basis, b) * inv_minus(b, torus)), s);
  out.kind = Kind::Relative;
  out.denominator = one(b.vars);
  return out;
}

SWInvariant seed_E1_complement() {
  ClassBasis b = make_basis({ClassVector::of("F")});
  SWInvariant out = closed(b, LaurentPoly::constant(b.vars, -1));
  out.kind = Kind::Relative;
  out.denominator = one(b.vars);
  return out;
}

SWInvariant sw_T2xD2(const ClassVector& torus) {
  ClassBasis b = make_basis({torus});
  SWInvariant out = closed(b, one(b.vars));
  out.kind = Kind::Relative;
  out.denominator = inv_minus(b, torus);
  return out;
}

SWInvariant glue(const SWInvariant& a, const SWInvariant& b) {
  if (a.kind != Kind::Relative || b.kind != Kind::Relative)
    fail(ErrorKind::InvalidParameters, "gluing needs two relative invariants");
  const ClassBasis u = unify(a.basis, b.basis);
  const LaurentPoly num = express(a.poly, a.basis, u) * express(b.poly, b.basis, u);
  const LaurentPoly den = express(*a.denominator, a.basis, u) * express(*b.denominator, b.basis, u);
  SWInvariant out = closed(u, exact_div(num, den));
  out.simple_type = a.simple_type && b.simple_type;
  return out;
}

SWInvariant log_transform(const SWInvariant& s, const ClassVector& torus, int r) {
  if (r < 1) fail(ErrorKind::InvalidParameters, "log transform multiplicity must be >= 1");
  SWInvariant out = glue(relative_from_closed(s, torus), sw_T2xD2(Rational(1, r) * torus));
  return with_meta(out, s);
}

SWInvariant double_log_transform(int n, int r, int s) {
  if (n == 1) fail(ErrorKind::RegimeError, "E(1;r,s) has b+ = 1");
  if (n < 1 || r < 1 || s < 1 || std::gcd(r, s) != 1)
    fail(ErrorKind::InvalidParameters, "need n >= 2, r, s >= 1 and gcd(r, s) = 1");
  ClassBasis b = make_basis({Rational(1, r * s) * ClassVector::of("F")});
  auto x = [&](std::int64_t k) { return LaurentPoly::variable(b.vars, "t", k); };
  const LaurentPoly num = pow(x(r * s) - x(-r * s), static_cast<unsigned>(n));
  const LaurentPoly den = (x(r) - x(-r)) * (x(s) - x(-s));
  return closed(b, exact_div(num, den));
}

ClassSums mms_combine(const Integer& p, const Integer& q, const Integer& r, const ClassSums& s100,
                      const ClassSums& s010, const ClassSums& s001) {
  std::optional<std::set<std::string>> labels;
  for (const ClassSums* s : {&s100, &s010, &s001}) {
    std::set<std::string> here;
    for (const auto& [k, c] : *s)
      for (const auto& [n, v] : k.coeffs()) here.insert(n);
    if (here.empty()) continue;  // only the zero class
    if (labels && *labels != here) fail(ErrorKind::BasisMismatch, "surgery families use different class labels");
    labels = here;
  }
  ClassSums out;
  for (auto [w, s] : {std::pair{&p, &s100}, std::pair{&q, &s010}, std::pair{&r, &s001}})
    for (const auto& [k, c] : *s) out[k] += *w * c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

bool adjunction_check(std::int64_t k_dot_sigma, std::int64_t sigma_square, int genus) {
  if (sigma_square < 0 || genus < 1)
    fail(ErrorKind::InvalidParameters, "adjunction needs a surface of genus >= 1 and square >= 0");
  return 2 * std::int64_t(genus) - 2 >= sigma_square + std::abs(k_dot_sigma);
}

std::int64_t sw_dimension(std::int64_t k_square, std::int64_t e, std::int64_t sigma) {
  const std::int64_t num = k_square - (3 * sigma + 2 * e);
  if (num % 4 != 0)
    fail(ErrorKind::NonIntegralDimension, "(k^2 - c) = " + std::to_string(num) + " is not divisible by 4");
  return num / 4;
}

int wall_crossing_delta(std::int64_t d) {
  if (d < 0 || d % 2 != 0) fail(ErrorKind::InvalidParameters, "wall crossing needs an even nonnegative dimension");
  return (d / 2) % 2 == 0 ? -1 : 1;
}

SWInvariant chamber_series_E1(int cutoff, int sign) {
  if (cutoff < 1 || (sign != 1 && sign != -1))
    fail(ErrorKind::InvalidParameters, "chamber series needs N >= 1 and sign +-1");
  ClassBasis b = make_basis({ClassVector::of("F")});
  LaurentPoly p(b.vars);
  for (int m = 0; m <= cutoff; ++m) {
    if (sign < 0)
      p = p + LaurentPoly::variable(b.vars, "t", 2 * m + 1);
    else
      p = p - LaurentPoly::variable(b.vars, "t", -(2 * m + 1));
  }
  SWInvariant out = closed(b, p);
  out.regime = Regime::BPlusEq1;
  out.chamber = {"H", sign};
  return out;
}

SWInvariant sw_E1_twist_knot(int n) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "twist knots are indexed from 1");
  ClassBasis b = make_basis({ClassVector::of("F")});
  const Integer k = n;
  SWInvariant out = closed(b, -k * LaurentPoly::variable(b.vars, "t") + k * LaurentPoly::variable(b.vars, "t", -1));
  out.regime = Regime::BPlusEq1;
  out.chamber = {"h", 0};
  return out;
}

std::size_t count_basic_classes(const SWInvariant& s) { return class_sums(s).size(); }

bool is_minimal_heuristic(const SWInvariant& s, const std::vector<ClassVector>& exceptional) {
  require_closed(s, "minimality test");
  for (const auto& e : exceptional) {
    const ClassBasis b = unify(s.basis, make_basis({e}));
    if (try_exact_div(express(s.poly, s.basis, b), class_monomial(b, e) + class_monomial(b, e, -1))) return false;
  }
  return true;
}

bool sign_symmetric(const SWInvariant& s, std::int64_t chi_h) {
  return invert_variables(s.poly) == Integer(chi_h % 2 == 0 ? 1 : -1) * s.poly;
}

}  // namespace swcalc::sw
