#pragma once

// Construction DAG of simply connected 4-manifolds. Every node caches its
// classical invariants and the lattice of tracked surface labels; nodes are
// immutable once built and shared between parents.

#include "swcalc/knots/diagram.hpp"
#include "swcalc/manifolds/lattice.hpp"
#include "swcalc/numbers.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace swcalc::manifolds {

struct CharInvariants {
  std::int64_t e = 0;
  std::int64_t sigma = 0;
  std::int64_t b_plus = 0;
  std::int64_t b_minus = 0;
  int t = 0;  // 0 even, 1 odd
  bool spin = false;
  bool simply_connected = true;

  std::int64_t c() const noexcept { return 3 * sigma + 2 * e; }
  Rational chi_h() const { return Rational(e + sigma) / 4; }
  bool chi_h_integral() const noexcept { return (e + sigma) % 4 == 0; }
  /// NonIntegralResult when (e + sigma) / 4 is not an integer.
  std::int64_t chi_h_int() const;

  friend bool operator==(const CharInvariants&, const CharInvariants&) = default;
};

/// Invariants from (e, sigma, t) with b+ and b- solved from the simply
/// connected relations.
CharInvariants from_e_sigma(std::int64_t e, std::int64_t sigma, int t, bool simply_connected = true);

enum class Op {
  Primitive,
  ConnectedSum,
  Blowup,
  FiberSum,
  TorusSurgery,
  KnotSurgery,
  RationalBlowdown,
  Reverse,
};

/// Spheres U_0, ..., U_{p-2} of a linear plumbing C_p, as label classes.
struct BlowdownConfig {
  int p = 2;
  std::vector<ClassVector> spheres;
};

struct Manifold;
using ManifoldPtr = std::shared_ptr<const Manifold>;

struct Manifold {
  Op op = Op::Primitive;
  /// Primitive name (`E`, `CP2`, `CP2bar`, `S2xS2`, `H`) or empty for operations.
  std::string name;
  /// Primitive parameters, or the integer arguments of the operation.
  std::vector<std::int64_t> params;
  /// Label arguments (surgery torus, glued fibers).
  std::vector<std::string> label_args;
  std::vector<ManifoldPtr> children;
  /// Label renaming applied to the second child of a sum.
  std::map<std::string, std::string> rename;
  std::optional<knots::LinkDiagram> knot;
  std::string knot_text;
  std::optional<BlowdownConfig> config;
  std::optional<int> type_override;

  CharInvariants inv;
  LabelLattice lattice;

  /// Deterministic script expression that rebuilds this node.
  std::string expr() const;
};

ManifoldPtr elliptic(int n);
ManifoldPtr cp2();
ManifoldPtr cp2bar();
ManifoldPtr s2xs2();
ManifoldPtr horikawa(int m, int n);
/// `E` (one parameter), `H` (two), `CP2`, `CP2bar`, `S2xS2` (none).
ManifoldPtr primitive(const std::string& name, const std::vector<std::int64_t>& params = {});

ManifoldPtr connected_sum(const ManifoldPtr& a, const ManifoldPtr& b);
/// k copies of CP2bar, adding exceptional labels E1, E2, ... after any
/// already present.
ManifoldPtr blowup(const ManifoldPtr& a, int k);
/// Sum along genus-g square-zero labels. `type` overrides the parity rule.
ManifoldPtr fiber_sum(const ManifoldPtr& a, const ManifoldPtr& b, int g, const std::string& label_a = "F",
                      const std::string& label_b = "F", std::optional<int> type = std::nullopt);
ManifoldPtr torus_surgery(const ManifoldPtr& a, const std::string& torus, std::int64_t p, std::int64_t q,
                          std::int64_t r);
/// `knot_text` is the script spelling of the knot, used by expr().
ManifoldPtr knot_surgery(const ManifoldPtr& a, const std::string& torus, const knots::LinkDiagram& k,
                         std::string knot_text = {});
/// Replaces a C_p by the rational ball B_p. When `config` is given its spheres
/// are checked against the plumbing and retired from the label set. `type`
/// forces the parity of the result.
ManifoldPtr rational_blowdown(const ManifoldPtr& a, int p, std::optional<BlowdownConfig> config = std::nullopt,
                              std::optional<int> type = std::nullopt);
ManifoldPtr orientation_reverse(const ManifoldPtr& a);

/// (c, chi_h) of a d-fold cyclic cover of a base with invariants (c, chi_h)
/// branched over a smooth curve B with Euler characteristic eB and square B2.
std::pair<std::int64_t, std::int64_t> branched_cover(std::pair<std::int64_t, std::int64_t> base, std::int64_t d,
                                                     std::int64_t eB, std::int64_t B2);

/// Freedman: (e, sigma, t) decide the homeomorphism type.
bool homeo_equal(const Manifold& a, const Manifold& b);

/// Label of a square-zero genus-1 torus, or MissingLabel / InvalidParameters.
const SurfaceLabel& require_torus(const Manifold& m, const std::string& label);

}  // namespace swcalc::manifolds
