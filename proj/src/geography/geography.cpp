#include "swcalc/geography/geography.hpp"

#include "swcalc/parallel.hpp"

#include <algorithm>

namespace swcalc::geography {

namespace {

constexpr std::size_t kParallelChartThreshold = 2048;

// Rows with chi_h < chi: sum over j < chi of (9j + 3).
std::int64_t rows_before(std::int64_t chi) { return 9 * (chi - 1) * chi / 2 + 3 * (chi - 1); }

void check_chi_max(std::int64_t chi_max) {
  if (chi_max < 1) fail(ErrorKind::InvalidParameters, "chi_max must be at least 1");
}

}  // namespace

GeoPoint point_of(const manifolds::Manifold& m) { return {m.inv.chi_h_int(), m.inv.c(), m.inv.t}; }

const std::vector<std::string>& all_tags() {
  static const std::vector<std::string> tags = {
      "elliptic-line",        "general-type-wedge",     "noether-line",   "bmy-line",
      "arctic",               "beyond-bmy",             "negative-c",     "one-basic-class-band",
      "multi-basic-class-band", "no-complex-structure", "sigma-positive", "sigma-negative",
      "sigma-zero",
  };
  return tags;
}

std::vector<std::string> classify(const GeoPoint& p) {
  const std::int64_t x = p.chi_h;
  const std::int64_t c = p.c;
  const std::int64_t sigma = c - 8 * x;
  std::vector<std::string> out;
  if (c == 0) out.emplace_back("elliptic-line");
  if (2 * x - 6 <= c && c < 9 * x) out.emplace_back("general-type-wedge");
  if (c == 2 * x - 6) out.emplace_back("noether-line");
  if (c == 9 * x) out.emplace_back("bmy-line");
  if (8 * x < c && c < 9 * x) out.emplace_back("arctic");
  if (c > 9 * x) out.emplace_back("beyond-bmy");
  if (c < 0) out.emplace_back("negative-c");
  if (x - 3 <= c && c <= 2 * x - 6) out.emplace_back("one-basic-class-band");
  if (0 <= c && c <= x - 3) out.emplace_back("multi-basic-class-band");
  // Minimal complex surfaces sit on c = 0 or in the general type wedge.
  if (0 < c && c < 2 * x - 6) out.emplace_back("no-complex-structure");
  out.emplace_back(sigma > 0 ? "sigma-positive" : sigma < 0 ? "sigma-negative" : "sigma-zero");
  return out;
}

bool spin_congruence(const GeoPoint& p) {
  if (p.t != 0) fail(ErrorKind::TypeOdd, "spin congruence applies to even forms only");
  const std::int64_t d = (p.c - 8 * p.chi_h) % 16;
  return d == 0;
}

std::int64_t basic_class_bound(const GeoPoint& p) {
  if (p.c < 0 || p.c > p.chi_h - 2)
    fail(ErrorKind::OutOfBand, "(" + std::to_string(p.chi_h) + ", " + std::to_string(p.c) +
                                   ") is outside 0 <= c <= chi_h - 2");
  return std::max<std::int64_t>(p.chi_h - p.c - 2, 0);
}

GeoPoint reverse_point(const GeoPoint& p) {
  const std::int64_t sigma = p.c - 8 * p.chi_h;
  if (sigma % 2 != 0) fail(ErrorKind::NonIntegralResult, "reversed chi_h is not an integer");
  // e is unchanged and sigma changes sign.
  return {p.chi_h - sigma / 2, 8 * p.chi_h - 5 * sigma, p.t};
}

std::vector<ChartRow> chart_rows(std::int64_t chi_max) {
  check_chi_max(chi_max);
  const bool parallel = num_threads() > 1 && static_cast<std::size_t>(rows_before(chi_max + 1)) >= kParallelChartThreshold;
  return parallel ? kernels::chart_rows_parallel(chi_max) : kernels::chart_rows_serial(chi_max);
}

std::string format_chart(const std::vector<ChartRow>& rows) {
  std::string out = "chi_h\tc\ttags\n";
  for (const auto& r : rows) {
    out += std::to_string(r.chi_h) + '\t' + std::to_string(r.c) + '\t';
    for (std::size_t i = 0; i < r.tags.size(); ++i) out += (i ? "," : "") + r.tags[i];
    out += '\n';
  }
  return out;
}

namespace kernels {

std::vector<ChartRow> chart_rows_serial(std::int64_t chi_max) {
  check_chi_max(chi_max);
  std::vector<ChartRow> rows;
  rows.reserve(static_cast<std::size_t>(rows_before(chi_max + 1)));
  for (std::int64_t x = 1; x <= chi_max; ++x)
    for (std::int64_t c = -1; c <= 9 * x + 1; ++c) rows.push_back({x, c, classify({x, c, 0})});
  return rows;
}

std::vector<ChartRow> chart_rows_parallel(std::int64_t chi_max) {
  check_chi_max(chi_max);
  const std::int64_t n = rows_before(chi_max + 1);
  std::vector<ChartRow> rows(static_cast<std::size_t>(n));
  // Each thread fills its own slots, so the order matches the serial kernel.
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, num_threads()))
  for (std::int64_t x = 1; x <= chi_max; ++x) {
    const std::int64_t base = rows_before(x);
    for (std::int64_t c = -1; c <= 9 * x + 1; ++c) rows[base + c + 1] = {x, c, classify({x, c, 0})};
  }
  return rows;
}

}  // namespace kernels

}  // namespace swcalc::geography
