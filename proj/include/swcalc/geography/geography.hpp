#pragma once

// Regions of the (chi_h, c) plane: the elliptic line, the general type wedge
// between the Noether and BMY lines, the bands where the number of basic
// classes is bounded below, and tab-separated chart data for plotting.

#include "swcalc/manifolds/manifold.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace swcalc::geography {

struct GeoPoint {
  std::int64_t chi_h = 0;
  std::int64_t c = 0;
  int t = 0;
  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// NonIntegralResult when chi_h is not an integer.
GeoPoint point_of(const manifolds::Manifold& m);

/// Tags in a fixed order. Boundary points carry both the line and the region
/// tag; every applicable band is reported.
std::vector<std::string> classify(const GeoPoint& p);
/// Every tag classify can produce, in output order.
const std::vector<std::string>& all_tags();

/// c == 8 chi_h (mod 16). TypeOdd for odd points.
bool spin_congruence(const GeoPoint& p);

/// max(chi_h - c - 2, 0) for 0 <= c <= chi_h - 2; OutOfBand elsewhere.
std::int64_t basic_class_bound(const GeoPoint& p);

/// Point of the reversed manifold: sigma -> -sigma with e fixed. NonIntegralResult
/// when sigma is odd.
GeoPoint reverse_point(const GeoPoint& p);

struct ChartRow {
  std::int64_t chi_h = 0;
  std::int64_t c = 0;
  std::vector<std::string> tags;
  friend bool operator==(const ChartRow&, const ChartRow&) = default;
};

/// Rows for 1 <= chi_h <= chi_max and -1 <= c <= 9 chi_h + 1, chi_h then c
/// ascending. InvalidParameters for chi_max < 1.
std::vector<ChartRow> chart_rows(std::int64_t chi_max);
/// Header `chi_h\tc\ttags` followed by one line per row.
std::string format_chart(const std::vector<ChartRow>& rows);

namespace kernels {
std::vector<ChartRow> chart_rows_serial(std::int64_t chi_max);
std::vector<ChartRow> chart_rows_parallel(std::int64_t chi_max);
}  // namespace kernels

}  // namespace swcalc::geography
