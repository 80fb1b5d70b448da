#pragma once

// Seiberg-Witten invariants as Laurent polynomials in group-ring variables
// t_k, one per class of a tracked basis, and the transformation formulas that
// act on them.

#include "swcalc/laurent.hpp"
#include "swcalc/manifolds/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace swcalc::sw {

using manifolds::ClassVector;

/// Classes whose group-ring variables generate an invariant. The classes are
/// linearly independent; `vars` names one variable per class.
struct ClassBasis {
  std::vector<ClassVector> classes;
  VarBasis vars;

  std::size_t size() const noexcept { return classes.size(); }
  friend bool operator==(const ClassBasis& a, const ClassBasis& b) { return a.classes == b.classes; }
};

/// Names variables `t` for a single class, `t` for F, `e<i>` for E<i>, the
/// lowercased label for other single labels, and `t<i>` otherwise.
ClassBasis make_basis(std::vector<ClassVector> classes);

/// Rational coordinates of k in the span of `classes`, or nullopt when k is
/// outside it.
std::optional<std::vector<Rational>> coordinates(const std::vector<ClassVector>& classes, const ClassVector& k);

/// Hermite basis of the lattice generated by `gens`, pivots in label order.
std::vector<ClassVector> lattice_basis(const std::vector<ClassVector>& gens);

/// Smallest basis containing both: `a` if it already spans `b`'s classes
/// integrally, the union if independent, a Hermite basis otherwise.
ClassBasis unify(const ClassBasis& a, const ClassBasis& b);

/// p re-expressed over `to`; every class of `from` must be integral in `to`.
LaurentPoly express(const LaurentPoly& p, const ClassBasis& from, const ClassBasis& to);

/// t_k^power over `basis`; InvalidParameters if k is not integral there.
LaurentPoly class_monomial(const ClassBasis& basis, const ClassVector& k, std::int64_t power = 1);

enum class Regime { BPlusGt1, BPlusEq1 };
enum class Kind { Closed, Relative };

/// Metric chamber of a b+ = 1 invariant. `sign` is -1 or +1 for the two
/// chambers of a period point H, 0 for the small-perturbation value.
struct Chamber {
  std::string metric = "H";
  int sign = 0;
  friend bool operator==(const Chamber&, const Chamber&) = default;
};

struct SWInvariant {
  ClassBasis basis;
  LaurentPoly poly;
  /// Relative invariants only; numerator / denominator kept exact.
  std::optional<LaurentPoly> denominator;
  Kind kind = Kind::Closed;
  Regime regime = Regime::BPlusGt1;
  Chamber chamber;
  bool simple_type = true;
};

/// Coefficient of each class, as SW(k) summed over the support.
using ClassSums = std::map<ClassVector, Integer>;

SWInvariant closed(ClassBasis basis, LaurentPoly poly);
ClassSums class_sums(const SWInvariant& s);
/// Rebuilds a closed invariant from class sums. `preferred` classes become
/// the basis when they span the support integrally; otherwise a Hermite
/// basis of the lattice they generate together with the support is used.
SWInvariant from_class_sums(const ClassSums& sums, const std::vector<ClassVector>& preferred);
/// Class vectors renamed label by label (e.g. after a sum renames labels).
SWInvariant rename_labels(const SWInvariant& s, const std::map<std::string, std::string>& rename);

/// Basis-independent equality of closed invariants. ChamberMismatch when the
/// regimes or chambers differ.
bool sw_equal(const SWInvariant& a, const SWInvariant& b);

/// `basis: t_F | SW: t^2 - 1 + t^-2`; composite classes print as t_[F/5].
std::string to_string(const SWInvariant& s);

/// (t - t^-1)^(n-2) in t = t_F. RegimeError for n = 1.
SWInvariant sw_elliptic(int n);
/// Multiplies by (e + e^-1) for e = t_E.
SWInvariant blowup_formula(const SWInvariant& s, const ClassVector& e);
/// Multiplies by Delta(t_T^2).
SWInvariant knot_surgery_formula(const SWInvariant& s, const ClassVector& torus, const LaurentPoly& delta);

/// SW of the complement of a torus neighbourhood: s * (t_T^-1 - t_T).
SWInvariant relative_from_closed(const SWInvariant& s, const ClassVector& torus);
/// The fixed complement E(1) minus a fiber neighbourhood: -1 in t_F.
SWInvariant seed_E1_complement();
/// T^2 x D^2: 1 / (t_T^-1 - t_T).
SWInvariant sw_T2xD2(const ClassVector& torus);
/// Product of two relative invariants, which must reduce to a polynomial.
SWInvariant glue(const SWInvariant& a, const SWInvariant& b);

/// Multiplicity-r log transform along T: the result lives in the multiple
/// fiber class T/r.
SWInvariant log_transform(const SWInvariant& s, const ClassVector& torus, int r);
/// E(n;r,s) from the closed form (t^rs - t^-rs)^n / ((t^r - t^-r)(t^s - t^-s)).
SWInvariant double_log_transform(int n, int r, int s);

/// p * s100 + q * s010 + r * s001, class by class.
ClassSums mms_combine(const Integer& p, const Integer& q, const Integer& r, const ClassSums& s100,
                      const ClassSums& s010, const ClassSums& s001);

/// 2g - 2 >= Sigma^2 + |k.Sigma|.
bool adjunction_check(std::int64_t k_dot_sigma, std::int64_t sigma_square, int genus);
/// (k^2 - (3 sigma + 2 e)) / 4.
std::int64_t sw_dimension(std::int64_t k_square, std::int64_t e, std::int64_t sigma);

/// SW+ - SW- = (-1)^(1 + d/2) for even d >= 0.
int wall_crossing_delta(std::int64_t d);
/// E(1) in the chamber `sign` of H, truncated after m = N:
/// minus: sum t^(2m+1), plus: -sum t^-(2m+1).
SWInvariant chamber_series_E1(int cutoff, int sign);
/// -n t + n t^-1 for the twist-knot surgeries E(1)_{K_n}.
SWInvariant sw_E1_twist_knot(int n);

std::size_t count_basic_classes(const SWInvariant& s);
/// False when the polynomial is divisible by (e + e^-1) for some given class.
bool is_minimal_heuristic(const SWInvariant& s, const std::vector<ClassVector>& exceptional);
/// poly(t -> t^-1) == (-1)^chi_h poly.
bool sign_symmetric(const SWInvariant& s, std::int64_t chi_h);

}  // namespace swcalc::sw
