#include "swcalc/sw/descent.hpp"

#include "swcalc/parallel.hpp"

#include <exception>

namespace swcalc::sw {

namespace {

constexpr std::size_t kParallelDescentThreshold = 64;

struct Outcome {
  bool keep = false;
  ClassVector image;
  Integer coeff;
  std::exception_ptr error;
};

void validate(const ConfigIntersections& cfg) {
  if (cfg.p < 2) fail(ErrorKind::InvalidParameters, "C_p needs p >= 2");
  if (cfg.spheres.size() != static_cast<std::size_t>(cfg.p - 1))
    fail(ErrorKind::MissingIntersectionData,
         "C_" + std::to_string(cfg.p) + " needs " + std::to_string(cfg.p - 1) + " sphere classes");
  for (const auto& u : cfg.spheres)
    for (const auto& [n, c] : u.coeffs())
      if (!cfg.lattice.has(n)) fail(ErrorKind::MissingIntersectionData, "no intersection data for '" + n + "'");
  const auto& u = cfg.spheres;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i; j < u.size(); ++j) {
      const Rational want = i == j ? Rational(i == 0 ? -(cfg.p + 2) : -2) : Rational(j == i + 1 ? 1 : 0);
      if (cfg.lattice.dot(u[i], u[j]) != want)
        fail(ErrorKind::InvalidParameters, "spheres do not form the plumbing C_" + std::to_string(cfg.p));
    }
}

std::vector<Rational> intersections(const ClassVector& k, const ConfigIntersections& cfg) {
  for (const auto& [n, c] : k.coeffs())
    if (!cfg.lattice.has(n)) fail(ErrorKind::MissingIntersectionData, "no intersection data for '" + n + "'");
  std::vector<Rational> v;
  for (const auto& u : cfg.spheres) v.push_back(cfg.lattice.dot(k, u));
  return v;
}

// k minus sum c_j U_j, where Q c = v for the tridiagonal plumbing form Q.
ClassVector project(const ClassVector& k, const std::vector<Rational>& v, const ConfigIntersections& cfg) {
  const std::size_t n = v.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = i == j ? Rational(i == 0 ? -(cfg.p + 2) : -2) : Rational((i + 1 == j || j + 1 == i) ? 1 : 0);
    m[i][n] = v[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (m[sel][col] == 0) ++sel;
    std::swap(m[sel], m[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  ClassVector out = k;
  for (std::size_t j = 0; j < n; ++j) out = out - (m[j][n] / m[j][j]) * cfg.spheres[j];
  return out;
}

Outcome examine(const ClassVector& k, const Integer& c, const ConfigIntersections& cfg,
                const std::vector<std::vector<std::int64_t>>& lambdas) {
  Outcome out;
  const auto rv = intersections(k, cfg);
  std::vector<std::int64_t> v;
  for (const auto& x : rv) {
    if (denominator(x) != 1) return out;  // not a characteristic integral class
    v.push_back(static_cast<std::int64_t>(numerator(x)));
  }
  if (cfg.taut) {
    bool ok = std::abs(v[0]) <= cfg.p;
    for (std::size_t j = 1; j < v.size(); ++j) ok = ok && v[j] == 0;
    if (!ok) fail(ErrorKind::NotTaut, "basic class " + manifolds::to_string(k) + " violates tautness");
    if (std::abs(v[0]) != cfg.p) return out;
  } else if (std::find(lambdas.begin(), lambdas.end(), v) == lambdas.end()) {
    return out;
  }
  out.keep = true;
  out.image = project(k, rv, cfg);
  out.coeff = c;
  return out;
}

SWInvariant run(const SWInvariant& s, const ConfigIntersections& cfg, bool parallel) {
  validate(cfg);
  const auto lambdas = lambda_vectors(cfg.p);
  const ClassSums sums = class_sums(s);
  std::vector<std::pair<ClassVector, Integer>> terms(sums.begin(), sums.end());
  std::vector<Outcome> outcomes(terms.size());
  const auto n = static_cast<std::int64_t>(terms.size());

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8) num_threads(std::max(1, num_threads()))
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        outcomes[i] = examine(terms[i].first, terms[i].second, cfg, lambdas);
      } catch (...) {
        outcomes[i].error = std::current_exception();
      }
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) outcomes[i] = examine(terms[i].first, terms[i].second, cfg, lambdas);
  }

  // Ordered merge: the first failing class in canonical order wins.
  ClassSums out;
  for (const auto& o : outcomes) {
    if (o.error) std::rethrow_exception(o.error);
    if (!o.keep) continue;
    auto [it, fresh] = out.emplace(o.image, o.coeff);
    if (!fresh && it->second != o.coeff)
      fail(ErrorKind::InconsistentLifts, "lifts of " + manifolds::to_string(o.image) + " disagree");
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);

  // Projected basis classes seed the new basis when they stay integral.
  std::vector<ClassVector> preferred;
  for (const auto& b : s.basis.classes) {
    const ClassVector img = project(b, intersections(b, cfg), cfg);
    if (img.is_zero() || denominator(cfg.lattice.square(img)) != 1) continue;
    bool ok = true;
    for (const auto& q : preferred) ok = ok && denominator(cfg.lattice.dot(q, img)) == 1;
    if (ok) preferred.push_back(img);
  }

  SWInvariant r = from_class_sums(out, preferred);
  r.regime = s.regime;
  r.chamber = s.chamber;
  r.simple_type = s.simple_type;
  return r;
}

}  // namespace

std::vector<std::vector<std::int64_t>> lambda_vectors(int p) {
  // Model (p-1) CP2bar: E_i . E_j = -delta_ij, u_0 = -2E_1 - E_2 - ... - E_{p-1},
  // u_i = E_i - E_{i+1}; lambda'_m = -(E_1 + ... + E_h) + (E_{h+1} + ... ), h = (m+p-1)/2.
  std::vector<std::vector<std::int64_t>> out;
  for (int m = -p + 1; m < p; ++m) {
    if ((m + p) % 2 == 0) continue;
    const int h = (m + p - 1) / 2;
    std::vector<int> s(p, 0);  // s[1..p-1]
    for (int i = 1; i < p; ++i) s[i] = i <= h ? -1 : 1;
    std::vector<std::int64_t> v(p - 1);
    // lambda . u_0 = sum_i s_i * c_i * (-1) with u_0 coefficients c_1 = -2, c_i = -1.
    v[0] = 2 * s[1];
    for (int i = 2; i < p; ++i) v[0] += s[i];
    for (int j = 1; j <= p - 2; ++j) v[j] = -s[j] + s[j + 1];
    out.push_back(std::move(v));
  }
  return out;
}

ClassVector descend_class(const ClassVector& k, const std::vector<std::int64_t>& v, const ConfigIntersections& cfg) {
  if (v.size() != cfg.spheres.size()) fail(ErrorKind::MissingIntersectionData, "intersection vector has the wrong length");
  return project(k, std::vector<Rational>(v.begin(), v.end()), cfg);
}

SWInvariant rational_blowdown_descent(const SWInvariant& s, const ConfigIntersections& cfg) {
  if (s.kind != Kind::Closed) fail(ErrorKind::InvalidParameters, "descent needs a closed invariant");
  const bool parallel = num_threads() > 1 && s.poly.size() >= kParallelDescentThreshold;
  return parallel ? kernels::descent_parallel(s, cfg) : kernels::descent_serial(s, cfg);
}

namespace kernels {
SWInvariant descent_serial(const SWInvariant& s, const ConfigIntersections& cfg) { return run(s, cfg, false); }
SWInvariant descent_parallel(const SWInvariant& s, const ConfigIntersections& cfg) { return run(s, cfg, true); }
}  // namespace kernels

}  // namespace swcalc::sw
