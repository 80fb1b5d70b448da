#include "swcalc/sw/evaluate.hpp"

#include <map>

namespace swcalc::sw {

namespace {

using manifolds::Manifold;
using manifolds::ManifoldPtr;
using manifolds::Op;

class Evaluator {
 public:
  explicit Evaluator(const EvalOptions& opts) : opts_(opts) {}

  SWInvariant closed_of(const ManifoldPtr& m) {
    if (auto it = cache_.find(m.get()); it != cache_.end()) return it->second;
    if (m->inv.b_plus == 0) fail(ErrorKind::NotComputable, "SW is not defined for b+ = 0 (" + m->expr() + ")");
    SWInvariant s = dispatch(*m);
    if (m->inv.b_plus == 1) s.regime = Regime::BPlusEq1;
    cache_.emplace(m.get(), s);
    return s;
  }

  SWInvariant relative(const ManifoldPtr& m, const std::string& torus) {
    manifolds::require_torus(*m, torus);
    if (m->op == Op::Primitive && m->name == "E" && m->params.at(0) == 1 && torus == "F") return seed_E1_complement();
    return relative_from_closed(closed_of(m), ClassVector::of(torus));
  }

 private:
  SWInvariant dispatch(const Manifold& m) {
    switch (m.op) {
      case Op::Primitive: return primitive(m);
      case Op::Blowup: return blowup(m);
      case Op::ConnectedSum: return connected_sum(m);
      case Op::FiberSum: return fiber_sum(m);
      case Op::TorusSurgery: return torus_surgery(m);
      case Op::KnotSurgery: return knot_surgery(m);
      case Op::RationalBlowdown: return blowdown(m);
      case Op::Reverse: break;
    }
    fail(ErrorKind::NotComputable, "no formula reaches " + m.expr());
  }

  static SWInvariant zero() { return closed(make_basis({}), LaurentPoly(VarBasis{})); }

  SWInvariant primitive(const Manifold& m) {
    if (m.name == "E") {
      const auto n = m.params.at(0);
      if (n == 1) fail(ErrorKind::RegimeError, "E(1) has b+ = 1; use the chamber series");
      // E(n) = E(1) #_F ... #_F E(1), glued from the fixed complement.
      SWInvariant rel = seed_E1_complement();
      SWInvariant s;
      for (std::int64_t k = 2; k <= n; ++k) {
        s = glue(rel, seed_E1_complement());
        rel = relative_from_closed(s, ClassVector::of("F"));
      }
      return s;
    }
    if (m.name == "H") {
      if (!m.lattice.has("K")) fail(ErrorKind::NotComputable, "no canonical class tracked for " + m.expr());
      // Minimal surface of general type: basic classes +-K, SW(-K) = (-1)^chi SW(K).
      const ClassBasis b = make_basis({ClassVector::of("K")});
      const Integer sign = m.inv.chi_h_int() % 2 == 0 ? 1 : -1;
      return closed(b, class_monomial(b, ClassVector::of("K")) + sign * class_monomial(b, ClassVector::of("K"), -1));
    }
    if (m.name == "CP2" || m.name == "S2xS2")
      fail(ErrorKind::RegimeError, m.name + " has b+ = 1 and positive scalar curvature chambers only");
    fail(ErrorKind::NotComputable, "no formula reaches " + m.expr());
  }

  SWInvariant blowup(const Manifold& m) {
    const auto& child = m.children.at(0);
    SWInvariant s = closed_of(child);
    for (const auto& l : m.lattice.labels())
      if (!child->lattice.has(l.name)) s = blowup_formula(s, ClassVector::of(l.name));
    return s;
  }

  SWInvariant connected_sum(const Manifold& m) {
    const auto& a = m.children.at(0);
    const auto& b = m.children.at(1);
    auto is_cp2bar = [](const ManifoldPtr& x) { return x->op == Op::Primitive && x->name == "CP2bar"; };
    if (is_cp2bar(b)) return blowup_formula(closed_of(a), ClassVector::of(m.rename.at("E")));
    if (is_cp2bar(a)) return blowup_formula(rename_labels(closed_of(b), m.rename), ClassVector::of("E"));
    // Both summands with b+ >= 1: the invariant vanishes.
    if (a->inv.b_plus >= 1 && b->inv.b_plus >= 1) return zero();
    fail(ErrorKind::NotComputable, "no formula reaches " + m.expr());
  }

  SWInvariant fiber_sum(const Manifold& m) {
    if (m.params.at(0) != 1) fail(ErrorKind::NotComputable, "fiber sums only along tori are supported");
    const SWInvariant ra = relative(m.children.at(0), m.label_args.at(0));
    const SWInvariant rb = rename_labels(relative(m.children.at(1), m.label_args.at(1)), m.rename);
    return glue(ra, rb);
  }

  SWInvariant torus_surgery(const Manifold& m) {
    const std::int64_t r = m.params.at(2);
    if (r == 0) fail(ErrorKind::NotComputable, "surgery with r = 0 leaves the simple type regime");
    if (m.inv.b_plus <= 1) fail(ErrorKind::RegimeError, "torus surgery formula needs b+ > 1");
    // The torus sits in a cusp neighbourhood, so only the multiplicity |r| matters.
    const std::string& t = m.label_args.at(0);
    const ClassVector torus = ClassVector::of(t);
    const SWInvariant rel = relative(m.children.at(0), t);
    return glue(rel, sw_T2xD2(Rational(1, static_cast<long long>(r < 0 ? -r : r)) * torus));
  }

  SWInvariant knot_surgery(const Manifold& m) {
    const auto& child = m.children.at(0);
    const std::string& t = m.label_args.at(0);
    const LaurentPoly delta = knots::alexander_skein(*m.knot, opts_.skein);
    if (child->inv.b_plus > 1) return knot_surgery_formula(closed_of(child), ClassVector::of(t), delta);
    if (child->op == Op::Primitive && child->name == "E" && child->params.at(0) == 1 && t == "F") {
      // Twist-knot family n t - (2n-1) + n t^-1 has a chamber independent value.
      const VarBasis& vb = delta.basis();
      const Integer n = delta.coefficient({2});
      const LaurentPoly want = n * LaurentPoly::variable(vb, vb[0]) - (2 * n - 1) * LaurentPoly::constant(vb, 1) +
                               n * LaurentPoly::variable(vb, vb[0], -1);
      if (n >= 0 && delta == want) {
        if (n > 0) return sw_E1_twist_knot(static_cast<int>(n));
        SWInvariant z = closed(make_basis({ClassVector::of("F")}), LaurentPoly(VarBasis({"t"})));
        z.regime = Regime::BPlusEq1;
        z.chamber = {"h", 0};
        return z;
      }
      fail(ErrorKind::NotComputable, "E(1)_K is only tabulated for twist knots");
    }
    fail(ErrorKind::RegimeError, "knot surgery formula needs b+ > 1");
  }

  SWInvariant blowdown(const Manifold& m) {
    if (!m.config) fail(ErrorKind::MissingIntersectionData, "rational blowdown without a C_p configuration");
    const auto& child = m.children.at(0);
    ConfigIntersections cfg{m.config->p, m.config->spheres, child->lattice, opts_.taut};
    return rational_blowdown_descent(closed_of(child), cfg);
  }

  const EvalOptions& opts_;
  std::map<const Manifold*, SWInvariant> cache_;
};

}  // namespace

SWInvariant sw_of(const manifolds::ManifoldPtr& m, const EvalOptions& opts) {
  Evaluator ev(opts);
  return ev.closed_of(m);
}

SWInvariant relative_of(const manifolds::ManifoldPtr& m, const std::string& torus, const EvalOptions& opts) {
  Evaluator ev(opts);
  return ev.relative(m, torus);
}

}  // namespace swcalc::sw
