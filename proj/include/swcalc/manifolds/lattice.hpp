#pragma once

// Named homology classes tracked through constructions, with their pairwise
// intersection numbers. Classes built from labels are rational combinations.

#include "swcalc/errors.hpp"
#include "swcalc/numbers.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swcalc::manifolds {

struct SurfaceLabel {
  std::string name;
  int genus = 0;
  /// False once the surface has been consumed (e.g. blown down). Its class
  /// is kept so combinations built before the operation remain meaningful.
  bool active = true;
  /// k with w2(X) = k * PD(label) mod 2, when known. k = 1 means the label is
  /// characteristic; k = 0 means X is even.
  std::optional<int> w2_multiple;
};

/// Rational combination of labels, e.g. 2F + S/2. Zero coefficients are dropped.
class ClassVector {
 public:
  ClassVector() = default;
  static ClassVector of(const std::string& label, const Rational& coeff = 1);

  const std::map<std::string, Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coefficient(const std::string& label) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_integral() const;

  ClassVector& add(const std::string& label, const Rational& c);
  friend ClassVector operator+(ClassVector a, const ClassVector& b);
  friend ClassVector operator-(ClassVector a, const ClassVector& b);
  friend ClassVector operator*(const Rational& k, ClassVector v);
  friend bool operator==(const ClassVector& a, const ClassVector& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator<(const ClassVector& a, const ClassVector& b) { return a.coeffs_ < b.coeffs_; }

 private:
  std::map<std::string, Rational> coeffs_;
};

/// `F - 2E1 - E2`, `2F + S/2`, `-E3`, `0`.
ClassVector parse_class(std::string_view text);
/// Canonical form; labels in the order given, then alphabetically.
std::string to_string(const ClassVector& v, const std::vector<std::string>& order = {});

class LabelLattice {
 public:
  const std::vector<SurfaceLabel>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const noexcept;
  const SurfaceLabel& label(std::string_view name) const;  // MissingLabel
  bool has(std::string_view name) const noexcept { return index_of(name).has_value(); }
  /// Names in declaration order.
  std::vector<std::string> names(bool active_only = false) const;

  /// Appends a label; `products` gives its intersection with earlier labels
  /// (missing entries are 0). Duplicate names raise InvalidParameters.
  void add(SurfaceLabel label, std::int64_t square, const std::map<std::string, std::int64_t>& products = {});
  void set_w2_multiple(std::string_view name, std::optional<int> k);
  void deactivate(std::string_view name);
  void negate();

  std::int64_t dot(std::string_view a, std::string_view b) const;
  Rational dot(const ClassVector& a, const ClassVector& b) const;
  Rational square(const ClassVector& a) const { return dot(a, a); }
  /// MissingLabel if the vector names an unknown label.
  void check(const ClassVector& v) const;

 private:
  std::vector<SurfaceLabel> labels_;
  std::vector<std::vector<std::int64_t>> gram_;
};

}  // namespace swcalc::manifolds
