#pragma once

// Integral group ring Z[H] of a free abelian class basis, realised as Laurent
// polynomials with exponents counted in half units so that t^(1/2) is exact.

#include "swcalc/errors.hpp"
#include "swcalc/numbers.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace swcalc {

/// Ordered list of distinct variable names. Cheap to copy; immutable.
class VarBasis {
 public:
  VarBasis();
  explicit VarBasis(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_->size(); }
  const std::vector<std::string>& names() const noexcept { return *names_; }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const noexcept;

  /// New basis with `name` appended.
  VarBasis extended(const std::string& name) const;

  friend bool operator==(const VarBasis& a, const VarBasis& b) noexcept {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exponent vector, one entry per basis variable, stored as 2 * exponent.
using Exponents = std::vector<std::int64_t>;

struct DescendingLex {
  bool operator()(const Exponents& a, const Exponents& b) const noexcept { return a > b; }
};

class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Integer, DescendingLex>;

  LaurentPoly() = default;
  explicit LaurentPoly(VarBasis basis) : basis_(std::move(basis)) {}

  static LaurentPoly constant(VarBasis basis, const Integer& c);
  /// Single term; `half_units` holds 2 * exponent per variable.
  static LaurentPoly monomial(VarBasis basis, Exponents half_units, const Integer& c = 1);
  /// name^power with an integer power.
  static LaurentPoly variable(VarBasis basis, std::string_view name, std::int64_t power = 1);

  const VarBasis& basis() const noexcept { return basis_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Integer coefficient(const Exponents& e) const;

  /// Adds c * monomial(e) in place; drops the term if it cancels.
  void add_term(const Exponents& e, const Integer& c);

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Integer& k, const LaurentPoly& p);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

 private:
  VarBasis basis_;
  TermMap terms_;
};

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly pow(const LaurentPoly& p, unsigned n);

/// q with q * den == num, by long division; throws InexactDivision otherwise.
LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den);
/// Like exact_div but returns nullopt instead of throwing on a remainder.
std::optional<LaurentPoly> try_exact_div(const LaurentPoly& num, const LaurentPoly& den);

/// Replaces var by var^k (k may be negative).
LaurentPoly substitute_power(const LaurentPoly& p, std::string_view var, std::int64_t k);
/// Every variable replaced by its inverse.
LaurentPoly invert_variables(const LaurentPoly& p);

Integer eval_at_one(const LaurentPoly& p);
bool is_symmetric(const LaurentPoly& p, int sign);

/// Terms in canonical (descending lexicographic) order. Exponents in half units.
std::vector<std::pair<Exponents, Integer>> support(const LaurentPoly& p);

/// Re-expresses p over a basis containing all of p's variables (by name).
LaurentPoly rebase(const LaurentPoly& p, const VarBasis& target);

/// Canonical text form, e.g. `t^4 + t^2 + 1 + t^-2 + t^-4`, `2*t^(3/2)`.
std::string to_string(const LaurentPoly& p);
/// Parses the canonical grammar over a fixed basis.
LaurentPoly parse_laurent(std::string_view text, const VarBasis& basis);
/// Parses and infers the basis from variables in order of first appearance.
LaurentPoly parse_laurent(std::string_view text);

namespace kernels {
// Reference product, and the OpenMP product that splits the left operand
// across threads and merges the partial sums in thread order.
LaurentPoly mul_serial(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul_parallel(const LaurentPoly& a, const LaurentPoly& b);
}  // namespace kernels

}  // namespace swcalc
