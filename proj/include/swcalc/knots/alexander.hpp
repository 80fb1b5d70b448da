#pragma once

// Symmetrized Alexander polynomial, by skein resolution and by Fox calculus.

#include "swcalc/knots/diagram.hpp"
#include "swcalc/laurent.hpp"

#include <cstddef>
#include <memory>
#include <optional>

namespace swcalc::knots {

/// Basis {t} shared by every Alexander polynomial.
const VarBasis& alexander_basis();
/// t^(1/2) - t^(-1/2)
LaurentPoly skein_z();

enum class Strategy {
  // Basepoint at each component's smallest label, components in ascending
  // order, resolve the first crossing first met from below.
  FirstBad,
  // Basepoint at the largest label, components in descending order, resolve
  // the last crossing first met from below.
  LastBad,
};

struct SkeinOptions {
  std::size_t node_budget = 1'000'000;
  Strategy strategy = Strategy::FirstBad;
  bool memoize = true;
};

/// Index of the crossing the strategy resolves next, or nullopt when the
/// diagram is descending.
std::optional<std::size_t> bad_crossing(const LinkDiagram& d, Strategy s);

LaurentPoly alexander_skein(const LinkDiagram& d, const SkeinOptions& opts = {});
/// Wirtinger presentation, one Fox row per crossing, normalized so the
/// result is symmetric and positive at t = 1. Knots only.
LaurentPoly alexander_fox(const LinkDiagram& d);

enum class NodeKind { Internal, LeafUnknot, LeafUnlink, LeafSplit };

struct ResolutionNode {
  LinkDiagram diagram;  // with curls removed
  NodeKind kind = NodeKind::LeafUnknot;
  std::size_t crossing = 0;  // internal nodes only
  int sign = 0;
  std::unique_ptr<ResolutionNode> switched;
  std::unique_ptr<ResolutionNode> smoothed;
};

/// Full (unshared) resolution tree. Throws ResourceLimit past the budget.
std::unique_ptr<ResolutionNode> resolution_tree(const LinkDiagram& d, const SkeinOptions& opts = {});
std::size_t node_count(const ResolutionNode& root);
/// Bottom-up evaluation of a tree: leaves give 1 or 0, internal nodes apply
/// the skein relation.
LaurentPoly evaluate_tree(const ResolutionNode& root);

namespace kernels {
// Memoized skein evaluation on the calling thread, and with the two children
// of shallow nodes evaluated as OpenMP tasks. Both return identical results.
LaurentPoly skein_serial(const LinkDiagram& d, const SkeinOptions& opts = {});
LaurentPoly skein_parallel(const LinkDiagram& d, const SkeinOptions& opts = {});
}  // namespace kernels

}  // namespace swcalc::knots
