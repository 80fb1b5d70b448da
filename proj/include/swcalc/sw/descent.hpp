#pragma once

// Seiberg-Witten invariants of a rational blowdown X_(p), read off from those
// of X: a basic class k of X descends when its intersections with the plumbing
// C_p agree with those of one of the extensions lambda_m, and its image is the
// projection of k orthogonal to the plumbing spheres.

#include "swcalc/manifolds/lattice.hpp"
#include "swcalc/sw/invariant.hpp"

#include <vector>

namespace swcalc::sw {

struct ConfigIntersections {
  int p = 2;
  /// U_0 (square -(p+2)) followed by U_1 .. U_{p-2} (square -2).
  std::vector<ClassVector> spheres;
  /// Intersection form on the labels the spheres and classes use.
  manifolds::LabelLattice lattice;
  /// Caller asserts every basic class meets U_0 at most p times and misses
  /// the other spheres; violations raise NotTaut.
  bool taut = false;
};

/// Intersection vectors (lambda'_m . u_0, ..., lambda'_m . u_{p-2}) over the
/// admissible m (-p < m < p, m odd for even p and even for odd p).
std::vector<std::vector<std::int64_t>> lambda_vectors(int p);

/// Descended class of a lift k~ with intersection vector v = (k~ . U_j):
/// k~ minus its component in the span of the spheres.
ClassVector descend_class(const ClassVector& k, const std::vector<std::int64_t>& v, const ConfigIntersections& cfg);

/// SW of the blowdown. MissingIntersectionData when the configuration or a
/// needed label product is absent; InconsistentLifts when two lifts of one
/// class carry different values.
SWInvariant rational_blowdown_descent(const SWInvariant& s, const ConfigIntersections& cfg);

namespace kernels {
// Per-class filtering and projection on the calling thread, and split across
// OpenMP threads with an ordered merge. Both return identical results.
SWInvariant descent_serial(const SWInvariant& s, const ConfigIntersections& cfg);
SWInvariant descent_parallel(const SWInvariant& s, const ConfigIntersections& cfg);
}  // namespace kernels

}  // namespace swcalc::sw
