#include "doctest.h"

#include "swcalc/geography/geography.hpp"
#include "swcalc/manifolds/manifold.hpp"
#include "swcalc/parallel.hpp"
#include "swcalc/sw/evaluate.hpp"

#include <algorithm>

using namespace swcalc;
using namespace swcalc::geography;

namespace {

bool has(const std::vector<std::string>& tags, const std::string& t) {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

// Double cover of S2 x S2 branched over a smooth curve of bidegree (a, b):
// B^2 = 2ab and genus (a-1)(b-1) by adjunction.
std::pair<std::int64_t, std::int64_t> double_cover_s2xs2(std::int64_t a, std::int64_t b) {
  const std::int64_t b2 = 2 * a * b;
  const std::int64_t genus = (a - 1) * (b - 1);
  return manifolds::branched_cover({8, 1}, 2, 2 - 2 * genus, b2);
}

}  // namespace

TEST_CASE("classify examples") {
  for (int n = 1; n <= 10; ++n) {
    const GeoPoint p = point_of(*manifolds::elliptic(n));
    CHECK(p == GeoPoint{n, 0, n % 2});
    CHECK(has(classify(p), "elliptic-line"));
  }
  // H(2n-1) on the Noether line.
  for (int n = 2; n <= 8; ++n) {
    const auto tags = classify({2 * n - 1, 4 * n - 8, 1});
    CHECK(has(tags, "noether-line"));
    CHECK(has(tags, "general-type-wedge"));
  }
  const auto y4 = manifolds::rational_blowdown(manifolds::elliptic(4), 2, manifolds::BlowdownConfig{2, {manifolds::parse_class("S")}});
  const GeoPoint py = point_of(*y4);
  CHECK(py == GeoPoint{4, 1, 1});
  CHECK(has(classify(py), "no-complex-structure"));
  CHECK_FALSE(has(classify(py), "general-type-wedge"));

  CHECK(classify({1, 9, 1}) == std::vector<std::string>{"bmy-line", "sigma-positive"});
  CHECK(has(classify({3, 25, 1}), "arctic"));
  CHECK(has(classify({3, 28, 1}), "beyond-bmy"));
  CHECK(has(classify({3, -1, 1}), "negative-c"));
  CHECK(has(classify({10, 7, 1}), "multi-basic-class-band"));
  CHECK(has(classify({10, 7, 1}), "one-basic-class-band"));
  CHECK(has(classify({2, 16, 0}), "sigma-zero"));
  CHECK(has(classify({2, 0, 0}), "sigma-negative"));
}

TEST_CASE("spin congruence") {
  CHECK(spin_congruence({2, 0, 0}));
  CHECK_FALSE(spin_congruence({2, 8, 0}));
  CHECK(spin_congruence({4, 0, 0}));
  for (int n = 2; n <= 20; n += 2) CHECK(spin_congruence(point_of(*manifolds::elliptic(n))));
  try {
    spin_congruence({3, 0, 1});
    FAIL("expected TypeOdd");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TypeOdd);
  }
}

TEST_CASE("basic class bound") {
  CHECK(basic_class_bound({5, 0, 1}) == 3);
  CHECK(basic_class_bound({2, 0, 0}) == 0);
  for (int x = 3; x <= 12; ++x) CHECK(basic_class_bound({x, x - 3, 1}) == 1);
  for (int n = 3; n <= 10; ++n) {
    const auto m = manifolds::elliptic(n);
    CHECK(static_cast<std::int64_t>(sw::count_basic_classes(sw::sw_of(m))) >= basic_class_bound(point_of(*m)));
  }
  for (GeoPoint p : {GeoPoint{5, -1, 1}, GeoPoint{5, 4, 1}, GeoPoint{1, 0, 1}}) {
    try {
      basic_class_bound(p);
      FAIL("expected OutOfBand");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OutOfBand);
    }
  }
}

TEST_CASE("branched covers of S2 x S2") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(double_cover_s2xs2(4, 2 * n) == std::pair<std::int64_t, std::int64_t>{0, n});
    CHECK(double_cover_s2xs2(6, 2 * n) == std::pair<std::int64_t, std::int64_t>{4 * n - 8, 2 * n - 1});
  }
}

TEST_CASE("property: tags are consistent") {
  for (std::int64_t x = -3; x <= 30; ++x)
    for (std::int64_t c = -20; c <= 9 * x + 20; ++c) {
      const auto tags = classify({x, c, 0});
      for (const auto& t : tags) CHECK(has(all_tags(), t));
      if (x >= 1 && has(tags, "noether-line")) CHECK(has(tags, "general-type-wedge"));
      if (has(tags, "bmy-line")) CHECK_FALSE(has(tags, "arctic"));
      if (has(tags, "arctic")) CHECK(has(tags, "general-type-wedge"));
      CHECK(has(tags, "beyond-bmy") + has(tags, "bmy-line") + has(tags, "general-type-wedge") <= 1);
      const int signs = has(tags, "sigma-positive") + has(tags, "sigma-negative") + has(tags, "sigma-zero");
      CHECK(signs == 1);
      // Tags come out in the canonical order.
      std::vector<std::size_t> pos;
      for (const auto& t : tags) pos.push_back(std::find(all_tags().begin(), all_tags().end(), t) - all_tags().begin());
      CHECK(std::is_sorted(pos.begin(), pos.end()));
    }
}

TEST_CASE("property: reversal lands in labelled regions") {
  for (std::int64_t x = 1; x <= 12; ++x)
    for (std::int64_t c = -1; c <= 9 * x + 1; ++c) {
      if ((c - 8 * x) % 2 != 0) {
        CHECK_THROWS_AS(reverse_point({x, c, 0}), Error);
        continue;
      }
      const GeoPoint r = reverse_point({x, c, 0});
      CHECK(reverse_point(r) == GeoPoint{x, c, 0});
      CHECK_FALSE(classify(r).empty());
    }
  // Agrees with the manifold-level reversal.
  for (int n = 2; n <= 6; ++n) {
    const auto m = manifolds::elliptic(n);
    CHECK(reverse_point(point_of(*m)) == point_of(*manifolds::orientation_reverse(m)));
  }
}

TEST_CASE("chart rows") {
  const auto one = chart_rows(1);
  CHECK(one.size() == 12);
  CHECK(one.front().c == -1);
  CHECK(one.back().c == 10);
  const auto bmy = std::find_if(one.begin(), one.end(), [](const ChartRow& r) { return r.c == 9; });
  REQUIRE(bmy != one.end());
  CHECK(has(bmy->tags, "bmy-line"));

  for (std::int64_t m = 1; m <= 12; ++m) {
    const auto rows = chart_rows(m);
    std::size_t want = 0;
    for (std::int64_t x = 1; x <= m; ++x) want += static_cast<std::size_t>(9 * x + 3);
    CHECK(rows.size() == want);
    CHECK(std::is_sorted(rows.begin(), rows.end(),
                         [](const ChartRow& a, const ChartRow& b) { return std::pair(a.chi_h, a.c) < std::pair(b.chi_h, b.c); }));
    for (const auto& r : rows)
      if (r.c == 0) CHECK(has(r.tags, "elliptic-line"));
  }
  const std::string text = format_chart(chart_rows(1));
  CHECK(text.rfind("chi_h\tc\ttags\n1\t-1\tgeneral-type-wedge,negative-c,sigma-negative\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 13);
  CHECK_THROWS_AS(chart_rows(0), Error);
}

TEST_CASE("chart kernels agree") {
  const int saved = num_threads();
  const auto serial = geography::kernels::chart_rows_serial(40);
  for (int t : {1, 2, 4}) {
    set_num_threads(t);
    CHECK(geography::kernels::chart_rows_parallel(40) == serial);
    CHECK(chart_rows(40) == serial);
  }
  set_num_threads(saved);
}
