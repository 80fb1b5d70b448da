#include "doctest.h"

#include "swcalc/knots/alexander.hpp"
#include "swcalc/manifolds/manifold.hpp"
#include "swcalc/parallel.hpp"
#include "swcalc/sw/descent.hpp"
#include "swcalc/sw/evaluate.hpp"
#include "swcalc/sw/invariant.hpp"

#include <algorithm>
#include <random>

using namespace swcalc;
using namespace swcalc::sw;
using manifolds::parse_class;

namespace {

ClassVector F() { return ClassVector::of("F"); }

// Class sums of sum_j c_j t^(j) in the variable of `unit`.
ClassSums sums_in(const ClassVector& unit, const std::map<std::int64_t, Integer>& coeffs) {
  ClassSums out;
  for (const auto& [j, c] : coeffs)
    if (c != 0) out[Rational(j) * unit] = c;
  for (auto it = out.begin(); it != out.end();) it = it->first.is_zero() && it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Integer binomial(int n, int k) {
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// (t - t^-1)^m expanded by the binomial theorem.
std::map<std::int64_t, Integer> elliptic_oracle(int m) {
  std::map<std::int64_t, Integer> out;
  for (int j = 0; j <= m; ++j) out[m - 2 * j] += (j % 2 ? -1 : 1) * binomial(m, j);
  return out;
}

// Product of polynomials given as exponent -> coefficient maps.
std::map<std::int64_t, Integer> times(const std::map<std::int64_t, Integer>& a, const std::map<std::int64_t, Integer>& b) {
  std::map<std::int64_t, Integer> out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out[i + j] += x * y;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Delta(t^2) read off a one-variable Alexander polynomial (half units).
std::map<std::int64_t, Integer> doubled(const LaurentPoly& delta) {
  std::map<std::int64_t, Integer> out;
  for (const auto& [e, c] : delta.terms()) out[e[0]] = c;
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidParameters;
}

manifolds::BlowdownConfig c5_config() {
  return {5, {parse_class("F - 2E1 - E2 - E3 - E4"), parse_class("E1 - E2"), parse_class("E2 - E3"), parse_class("E3 - E4")}};
}

}  // namespace

TEST_CASE("elliptic surfaces") {
  CHECK(to_string(sw_elliptic(2)) == "basis: t_F | SW: 1");
  CHECK(to_string(sw_elliptic(3)) == "basis: t_F | SW: t - t^-1");
  CHECK(to_string(sw_elliptic(4)) == "basis: t_F | SW: t^2 - 2 + t^-2");
  CHECK(kind_of([] { sw_elliptic(1); }) == ErrorKind::RegimeError);
  CHECK(kind_of([] { sw_elliptic(0); }) == ErrorKind::InvalidParameters);

  for (int n = 2; n <= 10; ++n) {
    CAPTURE(n);
    const auto want = sums_in(F(), elliptic_oracle(n - 2));
    CHECK(class_sums(sw_elliptic(n)) == want);
    // Iterated gluing from the E(1) complement, both in the primitive and
    // through an explicit chain of fiber sums.
    CHECK(class_sums(sw_of(manifolds::elliptic(n))) == want);
    manifolds::ManifoldPtr x = manifolds::elliptic(1);
    for (int k = 2; k <= n; ++k) x = manifolds::fiber_sum(x, manifolds::elliptic(1), 1);
    CHECK(class_sums(sw_of(x)) == want);
  }
}

TEST_CASE("gluing") {
  const SWInvariant seed = seed_E1_complement();
  CHECK(to_string(glue(seed, seed)) == "basis: t_F | SW: 1");
  const SWInvariant rel2 = relative_from_closed(sw_elliptic(2), F());
  CHECK(to_string(rel2) == "basis: t_F | SW_rel: -t + t^-1");
  CHECK(sw_equal(glue(rel2, seed), sw_elliptic(3)));
  CHECK(to_string(sw_T2xD2(F())) == "basis: t_F | SW_rel: 1 / (-t + t^-1)");

  // Cutting out a fiber and gluing T^2 x D^2 back recovers the closed value.
  for (int n = 2; n <= 8; ++n) {
    const SWInvariant s = sw_elliptic(n);
    CHECK(sw_equal(glue(relative_from_closed(s, F()), sw_T2xD2(F())), s));
  }
  CHECK(kind_of([&] { glue(sw_elliptic(2), seed); }) == ErrorKind::InvalidParameters);
  // Two copies of T^2 x D^2 do not close up.
  CHECK(kind_of([] { glue(sw_T2xD2(F()), sw_T2xD2(F())); }) == ErrorKind::InexactDivision);
}

TEST_CASE("blowup formula") {
  SWInvariant s = sw_elliptic(2);
  for (int i = 1; i <= 4; ++i) {
    const std::size_t before = count_basic_classes(s);
    s = blowup_formula(s, ClassVector::of("E" + std::to_string(i)));
    CHECK(count_basic_classes(s) == 2 * before);
    CHECK_FALSE(is_minimal_heuristic(s, {ClassVector::of("E" + std::to_string(i))}));
  }
  CHECK(count_basic_classes(s) == 16);
  // Support is exactly the sums of +-e_i, each with coefficient 1.
  for (const auto& [k, c] : class_sums(s)) {
    CHECK(c == 1);
    CHECK(k.coeffs().size() == 4);
    for (const auto& [n, x] : k.coeffs()) CHECK(abs(x) == 1);
  }
  CHECK(sw_equal(s, sw_of(manifolds::blowup(manifolds::elliptic(2), 4))));
  // The connected sum with CP2bar is the same blowup.
  CHECK(sw_equal(sw_of(manifolds::connected_sum(manifolds::elliptic(2), manifolds::cp2bar())),
                 blowup_formula(sw_elliptic(2), ClassVector::of("E"))));

  SWInvariant zero = from_class_sums({}, {});
  CHECK(blowup_formula(zero, ClassVector::of("E")).poly.is_zero());

  SWInvariant nonsimple = sw_elliptic(3);
  nonsimple.simple_type = false;
  CHECK(kind_of([&] { blowup_formula(nonsimple, ClassVector::of("E")); }) == ErrorKind::SimpleTypeRequired);
}

TEST_CASE("knot surgery") {
  const auto k3 = manifolds::elliptic(2);
  struct Case {
    knots::LinkDiagram k;
    const char* text;
  };
  std::vector<Case> cases = {{knots::trefoil(), "trefoil"}, {knots::figure_eight(), "figure8"}};
  for (int n = 1; n <= 6; ++n) cases.push_back({knots::twist_knot(n), "twist"});
  cases.push_back({knots::torus_knot(2, 5), "torus(2,5)"});

  for (const auto& [k, text] : cases) {
    CAPTURE(text);
    // Oracle: Fox calculus, independent of the skein evaluator.
    const auto want = sums_in(F(), doubled(knots::alexander_fox(k)));
    const SWInvariant s = sw_of(manifolds::knot_surgery(k3, "F", k, text));
    CHECK(class_sums(s) == want);
    CHECK(abs(eval_at_one(s.poly)) == 1);
    CHECK(sign_symmetric(s, 2));
    // Mirror images give the same invariant.
    CHECK(sw_equal(s, sw_of(manifolds::knot_surgery(k3, "F", knots::mirror(k)))));
  }
  CHECK(to_string(sw_of(manifolds::knot_surgery(k3, "F", knots::trefoil()))) == "basis: t_F | SW: t^2 - 1 + t^-2");
  CHECK(sw_equal(sw_of(manifolds::knot_surgery(k3, "F", knots::unknot())), sw_elliptic(2)));

  // Knot surgery on E(3) multiplies (t - t^-1) by Delta(t^2).
  const auto e3k = sw_of(manifolds::knot_surgery(manifolds::elliptic(3), "F", knots::twist_knot(2)));
  CHECK(class_sums(e3k) == sums_in(F(), times(elliptic_oracle(1), doubled(knots::alexander_fox(knots::twist_knot(2))))));

  // Two knot surgeries on parallel fibers multiply.
  const auto twice = manifolds::knot_surgery(manifolds::knot_surgery(manifolds::elliptic(3), "F", knots::trefoil()),
                                             "F", knots::trefoil());
  const auto tre = doubled(knots::alexander_fox(knots::trefoil()));
  CHECK(class_sums(sw_of(twice)) == sums_in(F(), times(elliptic_oracle(1), times(tre, tre))));

  const VarBasis& ab = knots::alexander_basis();
  CHECK(kind_of([&] { knot_surgery_formula(sw_elliptic(2), F(), parse_laurent("t + 1", ab)); }) == ErrorKind::NotSymmetric);
  CHECK(kind_of([&] { knot_surgery_formula(sw_elliptic(2), F(), parse_laurent("t - 4 + t^-1", ab)); }) ==
        ErrorKind::NotSymmetric);
  CHECK(kind_of([&] { knot_surgery_formula(chamber_series_E1(2, -1), F(), parse_laurent("1", ab)); }) ==
        ErrorKind::RegimeError);
}

TEST_CASE("log transforms") {
  const SWInvariant e25 = log_transform(sw_elliptic(2), F(), 5);
  CHECK(to_string(e25) == "basis: t_[F/5] | SW: t^4 + t^2 + 1 + t^-2 + t^-4");
  CHECK(eval_at_one(e25.poly) == 5);
  CHECK(sw_equal(log_transform(sw_elliptic(4), F(), 1), sw_elliptic(4)));

  for (int n = 2; n <= 5; ++n)
    for (int r = 1; r <= 7; ++r) {
      CAPTURE(n);
      CAPTURE(r);
      // Oracle: (t - t^-1)^(n-2) times t^(r-1) + t^(r-3) + ... + t^(1-r), in F/r.
      std::map<std::int64_t, Integer> geom;
      for (int j = r - 1; j >= 1 - r; j -= 2) geom[j] = 1;
      std::map<std::int64_t, Integer> base;
      for (const auto& [j, c] : elliptic_oracle(n - 2)) base[j * r] = c;
      const auto want = sums_in(Rational(1, r) * F(), times(base, geom));
      const SWInvariant lt = log_transform(sw_elliptic(n), F(), r);
      CHECK(class_sums(lt) == want);
      // The DAG route through torus_surgery agrees, for either sign of r.
      for (int sgn : {1, -1}) {
        const auto x = manifolds::torus_surgery(manifolds::elliptic(n), "F", 0, 1, sgn * r);
        CHECK(class_sums(sw_of(x)) == want);
      }
      if (n == 2) CHECK(eval_at_one(lt.poly) == r);
    }

  CHECK(kind_of([] { log_transform(sw_elliptic(2), F(), 0); }) == ErrorKind::InvalidParameters);
  CHECK(kind_of([] { sw_of(manifolds::torus_surgery(manifolds::elliptic(2), "F", 1, 0, 0)); }) ==
        ErrorKind::NotComputable);
  CHECK(kind_of([] { sw_of(manifolds::torus_surgery(manifolds::elliptic(1), "F", 0, 1, 2)); }) ==
        ErrorKind::RegimeError);
}

TEST_CASE("double log transforms") {
  for (auto [n, r, s] : {std::tuple{2, 2, 3}, std::tuple{3, 2, 3}, std::tuple{4, 3, 5}, std::tuple{2, 1, 4}}) {
    CAPTURE(n);
    const SWInvariant d = double_log_transform(n, r, s);
    // Multiply back: the quotient times the denominator is the numerator.
    const VarBasis& vb = d.basis.vars;
    auto x = [&](std::int64_t k) { return LaurentPoly::variable(vb, vb[0], k); };
    CHECK(d.poly * (x(r) - x(-r)) * (x(s) - x(-s)) == pow(x(r * s) - x(-r * s), static_cast<unsigned>(n)));
    CHECK(d.basis.classes.at(0) == Rational(1, r * s) * F());
    // Iterated single transforms on two fibers agree.
    const auto dag = manifolds::torus_surgery(manifolds::torus_surgery(manifolds::elliptic(n), "F", 0, 1, r), "F", 0, 1, s);
    CHECK(sw_equal(sw_of(dag), d));
    CHECK(eval_at_one(d.poly) == (n == 2 ? Integer(r * s) : Integer(0)));
  }
  CHECK(kind_of([] { double_log_transform(1, 2, 3); }) == ErrorKind::RegimeError);
  CHECK(kind_of([] { double_log_transform(2, 2, 4); }) == ErrorKind::InvalidParameters);

  // E(2)_{2,3} and E(2)_{T(2,3)} are homeomorphic with different invariants.
  const auto d23 = manifolds::torus_surgery(manifolds::torus_surgery(manifolds::elliptic(2), "F", 0, 1, 2), "F", 0, 1, 3);
  const auto kt = manifolds::knot_surgery(manifolds::elliptic(2), "F", knots::torus_knot(2, 3));
  CHECK(manifolds::homeo_equal(*d23, *kt) == (d23->inv.t == kt->inv.t));
  CHECK_FALSE(sw_equal(sw_of(d23), sw_of(kt)));
}

TEST_CASE("rational blowdown descent") {
  SUBCASE("Y(4)") {
    const auto y4 = manifolds::rational_blowdown(manifolds::elliptic(4), 2, manifolds::BlowdownConfig{2, {parse_class("S")}});
    const SWInvariant s = sw_of(y4);
    CHECK(to_string(s) == "basis: t_[2F + S/2] | SW: t + t^-1");
    CHECK(is_minimal_heuristic(s, {ClassVector::of("E")}));
    const auto e4 = manifolds::elliptic(4);
    const manifolds::LabelLattice& lat = e4->lattice;
    const ClassVector k = s.basis.classes.at(0);
    CHECK(lat.square(k) == lat.square(ClassVector::of("F", 2)) + 1);
    // Taut claim holds: 2F meets S twice, 0 meets it not at all.
    EvalOptions taut;
    taut.taut = true;
    CHECK(sw_equal(sw_of(y4, taut), s));
  }

  SUBCASE("C5 inside E(2) # 4 CP2bar") {
    const auto x = manifolds::rational_blowdown(manifolds::blowup(manifolds::elliptic(2), 4), 5, c5_config(), 0);
    const SWInvariant s = sw_of(x);
    CHECK(to_string(s) == "basis: t_[F/5] | SW: t^4 + t^2 + 1 + t^-2 + t^-4");
    // Log transform of multiplicity 5 gives the same polynomial.
    CHECK(sw_equal(s, log_transform(sw_elliptic(2), F(), 5)));
    // Every descended class squares to its lift's square plus p - 1.
    const auto parent = manifolds::blowup(manifolds::elliptic(2), 4);
    ConfigIntersections cfg{5, c5_config().spheres, parent->lattice, false};
    for (const auto& [k, c] : class_sums(sw_of(parent))) {
      const auto v = cfg.lattice.dot(k, cfg.spheres[0]);
      bool all = true;
      for (std::size_t j = 1; j < cfg.spheres.size(); ++j) all = all && cfg.lattice.dot(k, cfg.spheres[j]) == 0;
      if (!all || abs(v) != 5) continue;
      std::vector<std::int64_t> vec{static_cast<std::int64_t>(numerator(v)), 0, 0, 0};
      const ClassVector img = descend_class(k, vec, cfg);
      CHECK(cfg.lattice.square(img) == cfg.lattice.square(k) + 4);
    }
    // Classes like -E1 - E2 - E3 + E4 meet U_3 twice, so a taut claim is refuted.
    EvalOptions taut;
    taut.taut = true;
    CHECK(kind_of([&] { sw_of(x, taut); }) == ErrorKind::NotTaut);
  }

  SUBCASE("coefficient conservation") {
    const auto parent = manifolds::blowup(manifolds::elliptic(2), 4);
    ConfigIntersections cfg{5, c5_config().spheres, parent->lattice, false};
    const SWInvariant before = sw_of(parent);
    const auto lambdas = lambda_vectors(5);
    std::vector<Integer> kept;
    std::map<ClassVector, std::vector<Integer>> by_image;
    for (const auto& [k, c] : class_sums(before)) {
      std::vector<std::int64_t> v;
      for (const auto& u : cfg.spheres) v.push_back(static_cast<std::int64_t>(numerator(cfg.lattice.dot(k, u))));
      if (std::find(lambdas.begin(), lambdas.end(), v) == lambdas.end()) continue;
      kept.push_back(c);
      by_image[descend_class(k, v, cfg)].push_back(c);
    }
    std::vector<Integer> out;
    for (const auto& [k, c] : class_sums(rational_blowdown_descent(before, cfg))) out.push_back(c);
    // One lift per image here, so kept and output coefficients match as multisets.
    std::vector<Integer> merged;
    for (const auto& [img, cs] : by_image) {
      CHECK(cs.size() == 1);
      merged.push_back(cs.front());
    }
    std::sort(kept.begin(), kept.end());
    std::sort(out.begin(), out.end());
    CHECK(kept == out);
    CHECK(merged.size() == out.size());
  }

  SUBCASE("lambda vectors") {
    CHECK(lambda_vectors(2) == std::vector<std::vector<std::int64_t>>{{2}, {-2}});
    for (int p = 2; p <= 9; ++p) {
      const auto ls = lambda_vectors(p);
      CHECK(ls.size() == static_cast<std::size_t>(p));
      // First and last cases are the taut extremes +-p with zeros elsewhere.
      CHECK(ls.front()[0] == p);
      CHECK(ls.back()[0] == -p);
      for (std::size_t j = 1; j < ls.front().size(); ++j) CHECK(ls.front()[j] == 0);
    }
  }

  SUBCASE("errors") {
    const SWInvariant e4 = sw_elliptic(4);
    manifolds::LabelLattice lat = manifolds::elliptic(4)->lattice;
    CHECK(kind_of([&] { rational_blowdown_descent(e4, {2, {}, lat, false}); }) == ErrorKind::MissingIntersectionData);
    CHECK(kind_of([&] { rational_blowdown_descent(e4, {2, {parse_class("Q")}, lat, false}); }) ==
          ErrorKind::MissingIntersectionData);
    CHECK(kind_of([&] { rational_blowdown_descent(e4, {2, {parse_class("F")}, lat, false}); }) ==
          ErrorKind::InvalidParameters);
    // A -4 sphere meeting F twice sees 2F four times: not taut.
    manifolds::LabelLattice bisection;
    bisection.add({"F", 1, true, std::nullopt}, 0);
    bisection.add({"B", 0, true, std::nullopt}, -4, {{"F", 2}});
    CHECK(kind_of([&] { rational_blowdown_descent(e4, {2, {parse_class("B")}, bisection, true}); }) ==
          ErrorKind::NotTaut);
    // Without the taut claim such classes are simply dropped.
    CHECK(rational_blowdown_descent(e4, {2, {parse_class("B")}, bisection, false}).poly.is_zero());
    CHECK(rational_blowdown_descent(from_class_sums({}, {}), {2, {parse_class("S")}, lat, false}).poly.is_zero());
    CHECK(kind_of([] { sw_of(manifolds::rational_blowdown(manifolds::elliptic(4), 2)); }) ==
          ErrorKind::MissingIntersectionData);
  }
}

TEST_CASE("descent kernels agree") {
  const auto parent = manifolds::blowup(manifolds::elliptic(5), 6);
  manifolds::BlowdownConfig cfg{5, {parse_class("F - 2E1 - E2 - E3 - E4"), parse_class("E1 - E2"), parse_class("E2 - E3"),
                                    parse_class("E3 - E4")}};
  ConfigIntersections ci{5, cfg.spheres, parent->lattice, false};
  const SWInvariant s = sw_of(parent);
  REQUIRE(s.poly.size() >= 64);
  const int saved = num_threads();
  for (int t : {1, 2, 4}) {
    set_num_threads(t);
    CHECK(to_string(sw::kernels::descent_parallel(s, ci)) == to_string(sw::kernels::descent_serial(s, ci)));
  }
  set_num_threads(saved);
}

TEST_CASE("Horikawa surfaces") {
  const auto h = manifolds::horikawa(3, 4);
  const SWInvariant s = sw_of(h);
  const auto chi = h->inv.chi_h_int();
  CHECK(class_sums(s) == ClassSums{{ClassVector::of("K"), 1}, {ClassVector::of("K", -1), chi % 2 ? -1 : 1}});
  CHECK(sign_symmetric(s, chi));
  CHECK(kind_of([] { sw_of(manifolds::horikawa(2, 4)); }) == ErrorKind::NotComputable);
}

TEST_CASE("regimes and unreachable nodes") {
  CHECK(kind_of([] { sw_of(manifolds::elliptic(1)); }) == ErrorKind::RegimeError);
  CHECK(kind_of([] { sw_of(manifolds::cp2()); }) == ErrorKind::RegimeError);
  CHECK(kind_of([] { sw_of(manifolds::cp2bar()); }) == ErrorKind::NotComputable);
  CHECK(kind_of([] { sw_of(manifolds::orientation_reverse(manifolds::elliptic(2))); }) == ErrorKind::NotComputable);
  CHECK(kind_of([] { sw_of(manifolds::fiber_sum(manifolds::horikawa(3, 3), manifolds::horikawa(3, 3), 5, "K", "K")); }) !=
        ErrorKind::InexactDivision);
  // Connected sums of two b+ >= 1 pieces vanish.
  const SWInvariant z = sw_of(manifolds::connected_sum(manifolds::elliptic(2), manifolds::elliptic(2)));
  CHECK(z.poly.is_zero());
}

TEST_CASE("sign symmetry on generated invariants") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    manifolds::ManifoldPtr x = manifolds::elliptic(std::uniform_int_distribution<int>(2, 5)(rng));
    const int steps = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < steps; ++i) {
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: x = manifolds::blowup(x, 1); break;
        case 1: x = manifolds::knot_surgery(x, "F", knots::twist_knot(std::uniform_int_distribution<int>(1, 3)(rng))); break;
        case 2: x = manifolds::torus_surgery(x, "F", 0, 1, std::uniform_int_distribution<int>(1, 4)(rng)); break;
        default: x = manifolds::fiber_sum(x, manifolds::elliptic(1), 1); break;
      }
      // Knot surgery and odd log transforms retire labels; keep F usable.
      if (!x->lattice.has("F") || !x->lattice.label("F").active) break;
    }
    CAPTURE(x->expr());
    SWInvariant s;
    try {
      s = sw_of(x);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingLabel);
      continue;
    }
    CHECK(sign_symmetric(s, x->inv.chi_h_int()));
  }
}

TEST_CASE("basic class count bound on elliptic surfaces") {
  for (int n = 3; n <= 10; ++n) {
    const auto x = manifolds::elliptic(n);
    const SWInvariant s = sw_of(x);
    CHECK(count_basic_classes(s) == static_cast<std::size_t>(n - 1));
    CHECK(static_cast<std::int64_t>(count_basic_classes(s)) >= x->inv.chi_h_int() - x->inv.c() - 2);
  }
}

TEST_CASE("adjunction and dimension") {
  CHECK(adjunction_check(0, 0, 1));
  CHECK_FALSE(adjunction_check(2, 0, 1));
  // mF against a genus g+1 torus-like surface of square 0 in E(2)_K: |m| <= 2g.
  for (int g = 1; g <= 4; ++g)
    for (int m = -3 * g; m <= 3 * g; ++m) CHECK(adjunction_check(m, 0, g + 1) == (std::abs(m) <= 2 * g));
  CHECK(kind_of([] { adjunction_check(0, -1, 1); }) == ErrorKind::InvalidParameters);
  CHECK(kind_of([] { adjunction_check(0, 0, 0); }) == ErrorKind::InvalidParameters);

  CHECK(sw_dimension(0, 24, -16) == 0);
  for (int n = 2; n <= 6; ++n) CHECK(sw_dimension(0, 12 * n, -8 * n) == 0);
  CHECK(kind_of([] { sw_dimension(2, 24, -16); }) == ErrorKind::NonIntegralDimension);
}

TEST_CASE("b+ = 1 chambers") {
  CHECK(wall_crossing_delta(0) == -1);
  CHECK(wall_crossing_delta(2) == 1);
  CHECK(wall_crossing_delta(4) == -1);
  CHECK(kind_of([] { wall_crossing_delta(1); }) == ErrorKind::InvalidParameters);
  CHECK(kind_of([] { wall_crossing_delta(-2); }) == ErrorKind::InvalidParameters);

  const SWInvariant minus = chamber_series_E1(3, -1);
  CHECK(to_string(minus) == "basis: t_F | SW: t^7 + t^5 + t^3 + t | chamber: H-");
  const SWInvariant plus = chamber_series_E1(3, 1);
  CHECK(to_string(plus) == "basis: t_F | SW: -t^-1 - t^-3 - t^-5 - t^-7 | chamber: H+");
  // Each class k = (2m+1)F has k^2 = 0 in E(1), so d = (0 - (3(-8) + 2(12)))/4 = 0 and the
  // difference across the wall is -1 for every class in the truncated range.
  const auto sm = class_sums(minus);
  const auto sp = class_sums(plus);
  for (int m = -3; m <= 3; ++m) {
    const ClassVector k = ClassVector::of("F", 2 * m + 1);
    const Integer a = sp.count(k) ? sp.at(k) : Integer(0);
    const Integer b = sm.count(k) ? sm.at(k) : Integer(0);
    CHECK(a - b == wall_crossing_delta(sw_dimension(0, 12, -8)));
  }
  CHECK(kind_of([&] { sw_equal(minus, plus); }) == ErrorKind::ChamberMismatch);
  CHECK(kind_of([&] { sw_equal(minus, sw_elliptic(2)); }) == ErrorKind::ChamberMismatch);
}

TEST_CASE("twist knot surgeries on E(1)") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const SWInvariant fixture = sw_E1_twist_knot(n);
    CHECK(eval_at_one(fixture.poly) == 0);
    // Consistency: (Delta(t^2) - 1) / (t^-1 - t) from the knot's Alexander polynomial.
    const auto d2 = doubled(knots::alexander_fox(knots::twist_knot(n)));
    const VarBasis& vb = fixture.basis.vars;
    LaurentPoly num(vb);
    for (const auto& [e, c] : d2) num.add_term({2 * e}, c);
    num = num - LaurentPoly::constant(vb, 1);
    const LaurentPoly q = exact_div(num, LaurentPoly::variable(vb, vb[0], -1) - LaurentPoly::variable(vb, vb[0]));
    CHECK(q == fixture.poly);
    // The DAG evaluator uses the fixture for knot surgery on a fiber of E(1).
    const auto x = manifolds::knot_surgery(manifolds::elliptic(1), "F", knots::twist_knot(n));
    CHECK(sw_equal(sw_of(x), fixture));
    CHECK(manifolds::homeo_equal(*x, *manifolds::elliptic(1)));
  }
  CHECK(to_string(sw_E1_twist_knot(1)) == "basis: t_F | SW: -t + t^-1 | chamber: h");
  CHECK_FALSE(sw_equal(sw_E1_twist_knot(1), sw_E1_twist_knot(2)));
  CHECK(kind_of([] { sw_E1_twist_knot(0); }) == ErrorKind::InvalidParameters);
  CHECK(kind_of([] { sw_of(manifolds::knot_surgery(manifolds::elliptic(1), "F", knots::torus_knot(2, 5))); }) ==
        ErrorKind::NotComputable);
}

TEST_CASE("Morgan-Mrowka-Szabo combination") {
  const ClassSums s001 = class_sums(log_transform(sw_elliptic(3), F(), 1));
  const ClassSums s100 = class_sums(sw_elliptic(4));
  const ClassSums s010 = class_sums(sw_elliptic(2));
  CHECK(mms_combine(0, 0, 1, s100, s010, s001) == s001);
  // Linearity in p.
  const ClassSums a = mms_combine(2, 1, 3, s100, s010, s001);
  const ClassSums b = mms_combine(5, 1, 3, s100, s010, s001);
  ClassSums diff = b;
  for (const auto& [k, c] : a) diff[k] -= c;
  for (auto it = diff.begin(); it != diff.end();) it = it->second == 0 ? diff.erase(it) : std::next(it);
  ClassSums three;
  for (const auto& [k, c] : s100) three[k] = 3 * c;
  CHECK(diff == three);

  // Log transform case: summed coefficients along t_F = tau^r scale by r.
  for (int r = 1; r <= 5; ++r) {
    const ClassSums lt = class_sums(log_transform(sw_elliptic(3), F(), r));
    Integer total_lt = 0;
    for (const auto& [k, c] : lt) total_lt += c;
    Integer total = 0;
    for (const auto& [k, c] : mms_combine(0, 0, r, {}, {}, s001)) total += c;
    // Both sums vanish for E(3); compare against E(2) where they do not.
    CHECK(total == r * 0);
    CHECK(total_lt == 0);
    const ClassSums two = class_sums(log_transform(sw_elliptic(2), F(), r));
    Integer t2 = 0;
    for (const auto& [k, c] : two) t2 += c;
    Integer m2 = 0;
    for (const auto& [k, c] : mms_combine(0, 0, r, {}, {}, s010)) m2 += c;
    CHECK(t2 == m2);
  }
  const ClassSums other{{ClassVector::of("G"), 1}};
  CHECK(kind_of([&] { mms_combine(1, 1, 1, s100, other, s001); }) == ErrorKind::BasisMismatch);
}

TEST_CASE("printing and class bases") {
  const SWInvariant b2 = sw_of(manifolds::blowup(manifolds::elliptic(3), 1));
  CHECK(to_string(b2) == "basis: t=t_F, e1=t_E1 | SW: t*e1 + t*e1^-1 - t^-1*e1 - t^-1*e1^-1");
  const SWInvariant r = rename_labels(sw_elliptic(3), {{"F", "G"}});
  CHECK(to_string(r) == "basis: t_G | SW: t - t^-1");
  const ClassBasis u = unify(make_basis({F()}), make_basis({Rational(1, 2) * F()}));
  CHECK(u.classes == std::vector<ClassVector>{Rational(1, 2) * F()});
  const ClassBasis h = unify(make_basis({Rational(1, 2) * F()}), make_basis({Rational(1, 3) * F()}));
  CHECK(h.classes == std::vector<ClassVector>{Rational(1, 6) * F()});
  CHECK(kind_of([] { class_monomial(make_basis({ClassVector::of("F", 2)}), F()); }) == ErrorKind::InvalidParameters);
}
