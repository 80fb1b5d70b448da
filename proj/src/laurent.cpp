#include "swcalc/laurent.hpp"
#include "swcalc/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace swcalc {

// ---------------------------------------------------------------- VarBasis

VarBasis::VarBasis() : names_(std::make_shared<const std::vector<std::string>>()) {}

VarBasis::VarBasis(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) fail(ErrorKind::InvalidParameters, "empty variable name");
    if (!seen.insert(n).second) fail(ErrorKind::InvalidParameters, "duplicate variable '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarBasis::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

VarBasis VarBasis::extended(const std::string& name) const {
  auto v = *names_;
  v.push_back(name);
  return VarBasis(std::move(v));
}

// ------------------------------------------------------------- LaurentPoly

namespace {

void require_same_basis(const LaurentPoly& a, const LaurentPoly& b) {
  if (!(a.basis() == b.basis())) fail(ErrorKind::BasisMismatch, "operands use different class bases");
}

Exponents add_exp(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

LaurentPoly LaurentPoly::constant(VarBasis basis, const Integer& c) {
  Exponents zero(basis.size(), 0);
  return monomial(std::move(basis), std::move(zero), c);
}

LaurentPoly LaurentPoly::monomial(VarBasis basis, Exponents half_units, const Integer& c) {
  if (half_units.size() != basis.size())
    fail(ErrorKind::BasisMismatch, "exponent vector length does not match basis");
  LaurentPoly p(std::move(basis));
  p.add_term(half_units, c);
  return p;
}

LaurentPoly LaurentPoly::variable(VarBasis basis, std::string_view name, std::int64_t power) {
  auto idx = basis.index_of(name);
  if (!idx) fail(ErrorKind::UnknownVariable, std::string(name));
  Exponents e(basis.size(), 0);
  e[*idx] = 2 * power;
  return monomial(std::move(basis), std::move(e));
}

Integer LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

void LaurentPoly::add_term(const Exponents& e, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(basis_);
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_basis(a, b);
  LaurentPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_basis(a, b);
  if (a.size() * b.size() >= kParallelMulThreshold && num_threads() > 1)
    return kernels::mul_parallel(a, b);
  return kernels::mul_serial(a, b);
}

LaurentPoly operator*(const Integer& k, const LaurentPoly& p) {
  LaurentPoly r(p.basis());
  if (k == 0) return r;
  for (const auto& [e, c] : p.terms()) r.add_term(e, k * c);
  return r;
}

namespace kernels {

LaurentPoly mul_serial(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_basis(a, b);
  LaurentPoly r(a.basis());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) r.add_term(add_exp(ea, eb), ca * cb);
  return r;
}

LaurentPoly mul_parallel(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_basis(a, b);
  std::vector<const std::pair<const Exponents, Integer>*> left;
  left.reserve(a.size());
  for (const auto& t : a.terms()) left.push_back(&t);

  const int nthreads = std::max(1, num_threads());
  std::vector<LaurentPoly> partial(nthreads, LaurentPoly(a.basis()));
  const auto n = static_cast<std::int64_t>(left.size());

#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (std::int64_t i = 0; i < n; ++i) {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    const auto& [ea, ca] = *left[i];
    for (const auto& [eb, cb] : b.terms()) partial[tid].add_term(add_exp(ea, eb), ca * cb);
  }

  LaurentPoly r(a.basis());
  for (const auto& part : partial)
    for (const auto& [e, c] : part.terms()) r.add_term(e, c);
  return r;
}

}  // namespace kernels

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly pow(const LaurentPoly& p, unsigned n) {
  LaurentPoly result = LaurentPoly::constant(p.basis(), 1);
  LaurentPoly base = p;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- division

namespace {

Exponents min_exponents(const LaurentPoly& p) {
  Exponents m(p.basis().size(), 0);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

LaurentPoly shift(const LaurentPoly& p, const Exponents& by, int sign) {
  LaurentPoly r(p.basis());
  for (const auto& [e, c] : p.terms()) {
    Exponents s(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) s[i] = e[i] + sign * by[i];
    r.add_term(s, c);
  }
  return r;
}

}  // namespace

std::optional<LaurentPoly> try_exact_div(const LaurentPoly& num, const LaurentPoly& den) {
  require_same_basis(num, den);
  if (den.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
  LaurentPoly quotient(num.basis());
  if (num.is_zero()) return quotient;

  // Shift both operands to ordinary polynomials whose minimal exponent in each
  // variable is 0; an exact Laurent quotient is then an ordinary polynomial.
  const Exponents num_min = min_exponents(num);
  const Exponents den_min = min_exponents(den);
  LaurentPoly rem = shift(num, num_min, -1);
  const LaurentPoly d = shift(den, den_min, -1);
  const auto& [lead_e, lead_c] = *d.terms().begin();

  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().begin();
    Exponents qe(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      qe[i] = re[i] - lead_e[i];
      if (qe[i] < 0) return std::nullopt;
    }
    if (rc % lead_c != 0) return std::nullopt;
    const Integer qc = rc / lead_c;
    quotient.add_term(qe, qc);
    for (const auto& [de, dc] : d.terms()) rem.add_term(add_exp(qe, de), -qc * dc);
  }

  Exponents back(num_min.size());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] = num_min[i] - den_min[i];
  return shift(quotient, back, +1);
}

LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den) {
  auto q = try_exact_div(num, den);
  if (!q) fail(ErrorKind::InexactDivision, "(" + to_string(num) + ") / (" + to_string(den) + ") leaves a remainder");
  return *std::move(q);
}

// ------------------------------------------------------------ substitution

LaurentPoly substitute_power(const LaurentPoly& p, std::string_view var, std::int64_t k) {
  auto idx = p.basis().index_of(var);
  if (!idx) fail(ErrorKind::UnknownVariable, std::string(var));
  if (k == 0) fail(ErrorKind::InvalidParameters, "substitution power must be nonzero");
  LaurentPoly r(p.basis());
  for (const auto& [e, c] : p.terms()) {
    Exponents s = e;
    s[*idx] *= k;
    r.add_term(s, c);
  }
  return r;
}

LaurentPoly invert_variables(const LaurentPoly& p) {
  LaurentPoly r(p.basis());
  for (const auto& [e, c] : p.terms()) {
    Exponents s = e;
    for (auto& x : s) x = -x;
    r.add_term(s, c);
  }
  return r;
}

Integer eval_at_one(const LaurentPoly& p) {
  Integer s = 0;
  for (const auto& [e, c] : p.terms()) s += c;
  return s;
}

bool is_symmetric(const LaurentPoly& p, int sign) {
  return invert_variables(p) == Integer(sign) * p;
}

std::vector<std::pair<Exponents, Integer>> support(const LaurentPoly& p) {
  return {p.terms().begin(), p.terms().end()};
}

LaurentPoly rebase(const LaurentPoly& p, const VarBasis& target) {
  std::vector<std::size_t> map(p.basis().size());
  for (std::size_t i = 0; i < p.basis().size(); ++i) {
    auto j = target.index_of(p.basis()[i]);
    if (!j) fail(ErrorKind::BasisMismatch, "variable '" + p.basis()[i] + "' missing from target basis");
    map[i] = *j;
  }
  LaurentPoly r(target);
  for (const auto& [e, c] : p.terms()) {
    Exponents s(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) s[map[i]] = e[i];
    r.add_term(s, c);
  }
  return r;
}

// ---------------------------------------------------------------- printing

namespace {

std::string exponent_text(std::int64_t half) {
  if (half % 2 == 0) return std::to_string(half / 2);
  return "(" + std::to_string(half) + "/2)";
}

std::string monomial_text(const VarBasis& basis, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += basis[i];
    if (e[i] != 2) out += "^" + exponent_text(e[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < 0;
    const Integer mag = negative ? Integer(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_text(p.basis(), e);
    if (mono.empty()) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + "*";
      out += mono;
    }
  }
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VarBasis* fixed) : s_(text), fixed_(fixed) {}

  LaurentPoly run() {
    struct RawTerm {
      Integer coeff;
      std::vector<std::pair<std::string, std::int64_t>> factors;
    };
    std::vector<RawTerm> raw;
    skip();
    if (at_end()) error("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (at_end()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        error("expected '+' or '-'");
      }
      first = false;
      RawTerm t{Integer(sign), {}};
      bool have_any = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.coeff *= read_int();
        have_any = true;
        skip();
        if (peek() == '*') {
          ++pos_;
          skip();
          if (!is_ident_start(peek())) error("expected variable after '*'");
        }
      }
      while (is_ident_start(peek())) {
        std::string name = read_ident();
        std::int64_t half = 2;
        skip();
        if (peek() == '^') {
          ++pos_;
          skip();
          half = read_exponent();
          skip();
        }
        t.factors.emplace_back(std::move(name), half);
        have_any = true;
        if (peek() == '*') {
          ++pos_;
          skip();
          if (!is_ident_start(peek())) error("expected variable after '*'");
        } else {
          break;
        }
      }
      if (!have_any) error("expected a term");
      raw.push_back(std::move(t));
    }

    VarBasis basis;
    if (fixed_) {
      basis = *fixed_;
    } else {
      std::vector<std::string> names;
      for (const auto& t : raw)
        for (const auto& f : t.factors)
          if (std::find(names.begin(), names.end(), f.first) == names.end()) names.push_back(f.first);
      basis = VarBasis(std::move(names));
    }
    LaurentPoly p(basis);
    for (const auto& t : raw) {
      Exponents e(basis.size(), 0);
      for (const auto& [name, half] : t.factors) {
        auto idx = basis.index_of(name);
        if (!idx) fail(ErrorKind::UnknownVariable, name);
        e[*idx] += half;
      }
      p.add_term(e, t.coeff);
    }
    return p;
  }

 private:
  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::SyntaxError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  Integer read_int() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) error("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  std::int64_t read_small_int() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    Integer v = read_int();
    if (v > Integer(1) << 40) error("exponent too large");
    auto r = static_cast<std::int64_t>(v);
    return neg ? -r : r;
  }
  std::string read_ident() {
    std::size_t start = pos_;
    while (is_ident_char(peek())) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  std::int64_t read_exponent() {
    if (peek() == '(') {
      ++pos_;
      skip();
      std::int64_t n = read_small_int();
      skip();
      std::int64_t half = 2 * n;
      if (peek() == '/') {
        ++pos_;
        skip();
        if (read_small_int() != 2) error("only half-integer exponents are supported");
        skip();
        half = n;
      }
      if (peek() != ')') error("expected ')'");
      ++pos_;
      return half;
    }
    return 2 * read_small_int();
  }

  std::string_view s_;
  const VarBasis* fixed_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text, const VarBasis& basis) { return PolyParser(text, &basis).run(); }
LaurentPoly parse_laurent(std::string_view text) { return PolyParser(text, nullptr).run(); }

}  // namespace swcalc
