#pragma once

// Oriented planar diagrams in PD notation.
//
// A crossing X(i,j,k,l) lists its four arc labels counterclockwise starting
// from the incoming under-arc, so the under strand runs i -> k. The over strand
// runs either j -> l or l -> j; the direction is inferred from the traversal
// when a diagram is parsed and carried explicitly afterwards. A crossing whose
// over strand runs j -> l has sign +1.

#include "swcalc/errors.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace swcalc::knots {

struct Crossing {
  std::array<int, 4> arcs{};
  bool over_j_to_l = true;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

class LinkDiagram {
 public:
  LinkDiagram() = default;
  /// Takes oriented crossings as-is; `free_loops` counts crossingless unknotted
  /// components. Validates arc usage and orientation consistency.
  LinkDiagram(std::vector<Crossing> crossings, int free_loops = 0, std::string name = {});

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  int free_loops() const noexcept { return free_loops_; }
  const std::string& name() const noexcept { return name_; }
  LinkDiagram named(std::string name) const;

  /// Number of link components including free loops.
  int component_count() const;
  /// Arc labels of each crossing-carrying component in traversal order,
  /// components ordered by their smallest label, each starting at it.
  std::vector<std::vector<int>> components() const;

  int sign(std::size_t i) const;
  int writhe() const;
  /// True if every component shares a crossing chain with every other one.
  bool is_connected() const;

  std::string to_pd() const;

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_loops_ == b.free_loops_;
  }

 private:
  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::string name_;
};

/// `X(a,b,c,d) X(...) ...`, whitespace separated. Rejects labels that do not
/// appear exactly twice, labels repeated inside one tuple, and tuples whose
/// orientations cannot be made consistent.
LinkDiagram parse_pd(std::string_view text);
/// `braid: 1 1 -2 ...` (or just the integers); generator i joins strands i, i+1.
LinkDiagram parse_braid(std::string_view text);

int crossing_sign(const LinkDiagram& d, std::size_t i);
LinkDiagram switch_crossing(const LinkDiagram& d, std::size_t i);
/// Oriented (Seifert) smoothing at crossing i.
LinkDiagram smooth_crossing(const LinkDiagram& d, std::size_t i);
/// Removes Reidemeister-I curls until none are left.
LinkDiagram remove_kinks(const LinkDiagram& d);
LinkDiagram mirror(const LinkDiagram& d);
LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b);
/// Renumbers arcs 1, 2, ... along the traversal, components in order.
LinkDiagram relabel(const LinkDiagram& d);
/// Lexicographically minimal relabelling over all basepoints.
std::string canonical_key(const LinkDiagram& d);

/// Closure of a braid word on `strands` strands (defaults to max|g|+1).
LinkDiagram braid_closure(const std::vector<int>& word, int strands = 0);
/// Plat closure of a braid word on an even number of strands: cups join
/// positions (0,1), (2,3), ... below the word and caps join them above.
LinkDiagram plat_closure(const std::vector<int>& word, int strands);

LinkDiagram unknot();
LinkDiagram trefoil();
LinkDiagram figure_eight();
LinkDiagram hopf_link();
/// Twist knot K_n with Alexander polynomial n t - (2n-1) + n t^-1, n >= 1.
LinkDiagram twist_knot(int n);
/// Torus knot T(p,q) as the closure of (s_1 ... s_{p-1})^q.
LinkDiagram torus_knot(int p, int q);

/// Resolves `unknot`, `trefoil`, `figure8`, `hopf`, `twist(n)`, `torus(p,q)`.
LinkDiagram builtin_knot(std::string_view text);

struct NamedDiagram {
  std::string name;
  LinkDiagram diagram;
};
/// One `name: X(...) ...` (optionally `name: pd X(...)` or `name: braid ...`)
/// per line; `#` starts a comment.
std::vector<NamedDiagram> parse_knot_table(std::string_view text);

}  // namespace swcalc::knots
