#include "doctest.h"

#include "swcalc/manifolds/manifold.hpp"

#include <random>

using namespace swcalc;
using namespace swcalc::manifolds;

namespace {

std::int64_t chi(const ManifoldPtr& m) { return m->inv.chi_h_int(); }
std::int64_t c(const ManifoldPtr& m) { return m->inv.c(); }

void check_consistent(const CharInvariants& inv) {
  CHECK(inv.e == 2 + inv.b_plus + inv.b_minus);
  CHECK(inv.sigma == inv.b_plus - inv.b_minus);
  CHECK(inv.c() == 4 + 5 * inv.b_plus - inv.b_minus);
  if (inv.spin) CHECK(inv.t == 0);
}

// Hirzebruch signature and Euler characteristic of a d-fold cyclic branched
// cover, computed on (e, sigma) rather than on (c, chi_h).
std::pair<std::int64_t, std::int64_t> cover_oracle(std::int64_t eY, std::int64_t sY, std::int64_t d, std::int64_t eB,
                                                   std::int64_t B2) {
  const std::int64_t e = d * eY - (d - 1) * eB;
  REQUIRE((d * d - 1) * B2 % (3 * d) == 0);
  const std::int64_t s = d * sY - (d * d - 1) * B2 / (3 * d);
  REQUIRE((e + s) % 4 == 0);
  return {3 * s + 2 * e, (e + s) / 4};
}

ManifoldPtr elliptic_by_sums(int n, std::mt19937& rng) {
  // Random parenthesization of E(1) # ... # E(1).
  if (n == 1) return elliptic(1);
  const int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
  return fiber_sum(elliptic_by_sums(k, rng), elliptic_by_sums(n - k, rng), 1);
}

}  // namespace

TEST_CASE("primitives carry the standard invariants") {
  auto k3 = elliptic(2);
  CHECK(chi(k3) == 2);
  CHECK(c(k3) == 0);
  CHECK(k3->inv.t == 0);
  CHECK(k3->inv.spin);
  CHECK(k3->inv.b_plus == 3);
  CHECK(k3->inv.b_minus == 19);

  for (int n = 1; n <= 12; ++n) {
    auto e = elliptic(n);
    CHECK(chi(e) == n);
    CHECK(c(e) == 0);
    CHECK(e->inv.t == n % 2);
    CHECK(e->inv.spin == (n % 2 == 0));
    check_consistent(e->inv);
  }
  for (int n = 2; n <= 10; ++n) {
    auto h = horikawa(3, n);
    CHECK(c(h) == 4 * n - 8);
    CHECK(chi(h) == 2 * n - 1);
    CHECK(h->inv.t == 1);
    check_consistent(h->inv);
  }
  CHECK(chi(cp2()) == 1);
  CHECK(c(cp2()) == 9);
  CHECK(cp2bar()->inv.sigma == -1);
  CHECK(s2xs2()->inv.t == 0);
  CHECK(horikawa(4, 4)->inv.t == 0);
  CHECK(horikawa(2, 5)->inv == elliptic(5)->inv);

  CHECK_THROWS_AS(elliptic(0), Error);
  CHECK_THROWS_AS(primitive("E", {}), Error);
  CHECK_THROWS_AS(primitive("K3"), Error);
  try {
    primitive("H", {0, 3});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameters);
  }
}

TEST_CASE("blowups and connected sums") {
  auto e1 = blowup(cp2(), 9);
  CHECK(e1->inv.e == 12);
  CHECK(e1->inv.sigma == -8);
  CHECK(homeo_equal(*e1, *elliptic(1)));
  CHECK(e1->lattice.has("E9"));
  CHECK(e1->lattice.dot("E3", "E3") == -1);
  CHECK(e1->lattice.dot("E3", "E4") == 0);

  auto b = blowup(elliptic(2), 4);
  CHECK(b->inv.b_minus == 19 + 4);
  CHECK(b->inv.t == 1);
  CHECK_FALSE(b->inv.spin);
  auto k3 = elliptic(2);
  CHECK(blowup(k3, 0) == k3);

  // Further blowups continue the exceptional numbering.
  auto b6 = blowup(b, 2);
  CHECK(b6->lattice.has("E6"));
  CHECK_FALSE(b6->lattice.has("E7"));

  auto s = connected_sum(elliptic(2), cp2bar());
  CHECK(s->inv.b_minus == 20);
  CHECK(s->inv.t == 1);
  check_consistent(s->inv);
  auto twice = connected_sum(cp2bar(), cp2bar());
  CHECK(twice->lattice.has("E"));
  CHECK(twice->lattice.has("E'"));
  CHECK(twice->lattice.dot("E", "E'") == 0);
}

TEST_CASE("fiber sums") {
  auto e2 = fiber_sum(elliptic(1), elliptic(1), 1);
  CHECK(e2->inv == elliptic(2)->inv);
  auto e3 = fiber_sum(e2, elliptic(1), 1);
  CHECK(c(e3) == 0);
  CHECK(chi(e3) == 3);
  CHECK(e3->inv == elliptic(3)->inv);

  // The glued sections have the squares of the E(n) sections.
  CHECK(e2->lattice.dot("S", "S") == -2);
  CHECK(e2->lattice.dot("S", "F") == 1);
  CHECK(e2->lattice.dot("S", "S2") == 0);
  CHECK(e3->lattice.dot("S2", "S2") == -3);

  // Associativity at the invariant level.
  std::mt19937 rng(7);
  for (int n = 1; n <= 10; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      auto x = elliptic_by_sums(n, rng);
      CHECK(x->inv == elliptic(n)->inv);
      CHECK(x->lattice.dot("S", "S") == -n);
    }

  // Caller override of the parity rule; default odd when unknown.
  auto forced = fiber_sum(elliptic(1), elliptic(1), 1, "F", "F", 1);
  CHECK(forced->inv.t == 1);
  auto blown = fiber_sum(blowup(elliptic(1), 1), elliptic(1), 1);
  CHECK(blown->inv.t == 1);
  CHECK(blown->lattice.has("E1"));

  try {
    fiber_sum(cp2(), elliptic(1), 1);
    FAIL("expected MissingLabel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingLabel);
  }
  CHECK_THROWS_AS(fiber_sum(elliptic(1), elliptic(1), 2), Error);
  CHECK_THROWS_AS(fiber_sum(elliptic(1), elliptic(1), 1, "S", "F"), Error);
}

TEST_CASE("torus and knot surgery") {
  auto k3 = elliptic(2);
  CHECK(torus_surgery(k3, "F", 0, 0, 1)->inv == k3->inv);
  for (int r = 1; r <= 7; ++r) {
    auto x = torus_surgery(k3, "F", 0, 1, r);
    CHECK(c(x) == 0);
    CHECK(chi(x) == 2);
    CHECK(x->inv.t == (r % 2 == 0 ? 1 : 0));
    CHECK(homeo_equal(*x, *k3) == (r % 2 == 1));
  }
  // Odd manifolds keep their type.
  CHECK(torus_surgery(elliptic(3), "F", 0, 1, 2)->inv == elliptic(3)->inv);

  auto dolgachev = torus_surgery(torus_surgery(elliptic(1), "F", 0, 1, 2), "F", 0, 1, 3);
  CHECK(homeo_equal(*dolgachev, *elliptic(1)));

  CHECK_THROWS_AS(torus_surgery(k3, "F", 0, 0, 0), Error);
  CHECK_THROWS_AS(torus_surgery(k3, "F", 2, 4, 6), Error);
  CHECK_THROWS_AS(torus_surgery(k3, "S", 0, 0, 1), Error);
  CHECK_THROWS_AS(torus_surgery(k3, "T", 0, 0, 1), Error);

  auto kt = knot_surgery(k3, "F", knots::trefoil(), "trefoil");
  CHECK(kt->inv == k3->inv);
  CHECK(homeo_equal(*kt, *k3));
  CHECK(knot_surgery(k3, "F", knots::unknot())->inv == k3->inv);
  CHECK_FALSE(kt->lattice.label("S").active);
  try {
    knot_surgery(k3, "F", knots::hopf_link());
    FAIL("expected NotAKnot");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAKnot);
  }
  // A retired label can no longer be used.
  try {
    fiber_sum(kt, elliptic(1), 1, "S", "F");
    FAIL("expected MissingLabel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingLabel);
  }
}

TEST_CASE("rational blowdown bookkeeping") {
  // Blowing down m sections of E(4): chi_h stays 4 and c becomes m.
  ManifoldPtr x = elliptic(4);
  for (int m = 1; m <= 8; ++m) {
    const auto before = x->inv;
    x = rational_blowdown(x, 2);
    CHECK(chi(x) == 4);
    CHECK(c(x) == m);
    CHECK(x->inv.b_minus == before.b_minus - 1);
    CHECK(x->inv.b_plus == before.b_plus);
    check_consistent(x->inv);
  }

  for (int p = 2; p <= 9; ++p) {
    auto y = rational_blowdown(elliptic(6), p);
    CHECK(chi(y) == 6);
    CHECK(c(y) == p - 1);
    check_consistent(y->inv);
  }

  BlowdownConfig section{2, {parse_class("S")}};
  auto y4 = rational_blowdown(elliptic(4), 2, section);
  CHECK(chi(y4) == 4);
  CHECK(c(y4) == 1);
  CHECK(y4->inv.t == 1);
  CHECK_FALSE(y4->lattice.label("S").active);
  CHECK_FALSE(y4->lattice.label("F").active);
  CHECK(y4->lattice.label("S2").active);

  // The C_5 inside E(2) # 4 CP2bar; blowing it down recovers E(2)'s invariants.
  BlowdownConfig c5{5,
                    {parse_class("F - 2E1 - E2 - E3 - E4"), parse_class("E1 - E2"), parse_class("E2 - E3"),
                     parse_class("E3 - E4")}};
  auto e25 = rational_blowdown(blowup(elliptic(2), 4), 5, c5, 0);
  CHECK(e25->inv == elliptic(2)->inv);
  CHECK(e25->lattice.label("F").active);
  CHECK_FALSE(e25->lattice.label("E1").active);

  // U_0 = F - 2E1 - E2 - E3 has square -6 and misses U_3, so the plumbing check rejects it.
  BlowdownConfig printed = c5;
  printed.spheres[0] = parse_class("F - 2E1 - E2 - E3");
  CHECK_THROWS_AS(rational_blowdown(blowup(elliptic(2), 4), 5, printed), Error);
  CHECK_THROWS_AS(rational_blowdown(elliptic(2), 1), Error);
  CHECK_THROWS_AS(rational_blowdown(cp2(), 2), Error);
}

TEST_CASE("orientation reversal") {
  auto r = orientation_reverse(elliptic(2));
  CHECK(r->inv.c() == 96);
  CHECK(r->inv.chi_h_int() == 10);
  CHECK(r->inv.b_plus == 19);
  CHECK(orientation_reverse(r)->inv == elliptic(2)->inv);
  CHECK(r->lattice.dot("S", "S") == 2);

  auto rc = orientation_reverse(cp2());
  CHECK(rc->inv.sigma == -1);
  CHECK(rc->inv.c() == 3);
  CHECK_FALSE(rc->inv.chi_h_integral());
  CHECK(rc->inv.chi_h() == Rational(1, 2));
  try {
    rc->inv.chi_h_int();
    FAIL("expected NonIntegralResult");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegralResult);
  }

  // The closed-form reversal rule on (c, chi_h).
  for (auto m : {elliptic(3), horikawa(3, 5), blowup(cp2(), 4), rational_blowdown(elliptic(4), 2)}) {
    auto rm = orientation_reverse(m);
    CHECK(4 * rm->inv.chi_h() == 4 * (5 * m->inv.chi_h() - Rational(m->inv.c(), 2)));
    CHECK(rm->inv.c() == 48 * chi(m) - 5 * c(m));
    CHECK(rm->inv.t == m->inv.t);
  }
}

TEST_CASE("branched covers") {
  for (std::int64_t n = 1; n <= 8; ++n) {
    const auto en = branched_cover({8, 1}, 2, 8 - 12 * n, 16 * n);
    CHECK(en == std::pair<std::int64_t, std::int64_t>{0, n});
    CHECK(en == cover_oracle(4, 0, 2, 8 - 12 * n, 16 * n));
    const auto hn = branched_cover({8, 1}, 2, 12 - 20 * n, 24 * n);
    CHECK(hn == std::pair<std::int64_t, std::int64_t>{4 * n - 8, 2 * n - 1});
    CHECK(hn == cover_oracle(4, 0, 2, 12 - 20 * n, 24 * n));
  }
  CHECK(branched_cover({9, 1}, 1, -4, 7) == std::pair<std::int64_t, std::int64_t>{9, 1});
  try {
    branched_cover({8, 1}, 2, 8, 1);
    FAIL("expected NonIntegralResult");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegralResult);
  }
}

TEST_CASE("homeomorphism test") {
  CHECK_FALSE(homeo_equal(*elliptic(2), *elliptic(3)));
  CHECK(homeo_equal(*blowup(elliptic(1), 1), *blowup(cp2(), 10)));
  CHECK_FALSE(homeo_equal(*s2xs2(), *connected_sum(cp2(), cp2bar())));
  Manifold odd = *elliptic(2);
  odd.inv.simply_connected = false;
  try {
    homeo_equal(odd, *elliptic(2));
    FAIL("expected NotSimplyConnected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSimplyConnected);
  }
}

TEST_CASE("script expressions") {
  CHECK(elliptic(2)->expr() == "E(2)");
  CHECK(horikawa(3, 4)->expr() == "H(3,4)");
  CHECK(blowup(cp2(), 9)->expr() == "blowup(CP2,9)");
  CHECK(fiber_sum(elliptic(1), elliptic(2), 1)->expr() == "fiber_sum(E(1),E(2),1)");
  CHECK(fiber_sum(elliptic(1), elliptic(1), 1, "F", "F", 0)->expr() == "fiber_sum(E(1),E(1),1,F,F,even)");
  CHECK(torus_surgery(elliptic(2), "F", 0, 1, 5)->expr() == "torus_surgery(E(2),F,0,1,5)");
  CHECK(knot_surgery(elliptic(2), "F", knots::trefoil(), "trefoil")->expr() == "knot_surgery(E(2),F,trefoil)");
  CHECK(orientation_reverse(cp2())->expr() == "reverse(CP2)");
  BlowdownConfig c5{5,
                    {parse_class("F-2E1-E2-E3-E4"), parse_class("E1-E2"), parse_class("E2-E3"),
                     parse_class("E3-E4")}};
  CHECK(rational_blowdown(blowup(elliptic(2), 4), 5, c5, 0)->expr() ==
        "rational_blowdown(blowup(E(2),4),5,F - 2E1 - E2 - E3 - E4,E1 - E2,E2 - E3,E3 - E4,even)");
}

TEST_CASE("class vectors") {
  auto v = parse_class("2F + S/2");
  CHECK(v.coefficient("F") == 2);
  CHECK(v.coefficient("S") == Rational(1, 2));
  CHECK(to_string(v) == "2F + S/2");
  CHECK(to_string(parse_class("-3*S/2 + F")) == "F - 3S/2");
  CHECK(to_string(parse_class("0")) == "0");
  CHECK((v - v).is_zero());
  CHECK(to_string(Rational(2) * v, {"S", "F"}) == "S + 4F");
  CHECK_THROWS_AS(parse_class("F +"), Error);
  CHECK_THROWS_AS(parse_class("2"), Error);
  CHECK_THROWS_AS(parse_class("F/0"), Error);

  auto e = elliptic(3);
  CHECK(e->lattice.square(parse_class("S + F")) == -1);
  CHECK(e->lattice.dot(parse_class("2F"), parse_class("S - S2")) == 0);
  CHECK_THROWS_AS(e->lattice.dot(parse_class("Q"), parse_class("F")), Error);
}
