#pragma once

// Seiberg-Witten invariants of construction DAG nodes, computed bottom-up
// from the gluing seed, the blowup, knot surgery and log transform formulas,
// and rational blowdown descent.

#include "swcalc/knots/alexander.hpp"
#include "swcalc/manifolds/manifold.hpp"
#include "swcalc/sw/descent.hpp"
#include "swcalc/sw/invariant.hpp"

namespace swcalc::sw {

struct EvalOptions {
  knots::SkeinOptions skein;
  /// Treat every blowdown configuration as taut (raises NotTaut if not).
  bool taut = false;
};

/// RegimeError for b+ = 1 nodes without a fixture, NotComputable for nodes the
/// formulas do not reach (orientation reversal, higher-genus sums, ...).
SWInvariant sw_of(const manifolds::ManifoldPtr& m, const EvalOptions& opts = {});

/// SW of the complement of a torus label, seeded for the fiber of E(1).
SWInvariant relative_of(const manifolds::ManifoldPtr& m, const std::string& torus, const EvalOptions& opts = {});

}  // namespace swcalc::sw
