#include "swcalc/knots/alexander.hpp"
#include "swcalc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace swcalc::knots {

const VarBasis& alexander_basis() {
  static const VarBasis basis({"t"});
  return basis;
}

LaurentPoly skein_z() {
  return LaurentPoly::monomial(alexander_basis(), {1}) - LaurentPoly::monomial(alexander_basis(), {-1});
}

std::optional<std::size_t> bad_crossing(const LinkDiagram& d, Strategy s) {
  const auto& xs = d.crossings();
  // arc label -> (crossing, position) where the arc flows in
  std::map<int, std::pair<std::size_t, int>> head;
  for (std::size_t c = 0; c < xs.size(); ++c) {
    head[xs[c].arcs[0]] = {c, 0};
    head[xs[c].arcs[xs[c].over_j_to_l ? 1 : 3]] = {c, xs[c].over_j_to_l ? 1 : 3};
  }
  auto comps = d.components();
  if (s == Strategy::LastBad) {
    std::reverse(comps.begin(), comps.end());
    for (auto& comp : comps) std::rotate(comp.begin(), std::max_element(comp.begin(), comp.end()), comp.end());
  }
  std::vector<char> met(xs.size(), 0);
  std::optional<std::size_t> found;
  for (const auto& comp : comps) {
    for (int a : comp) {
      auto [c, p] = head.at(a);
      if (met[c]) continue;
      met[c] = 1;
      if (p == 0) {
        found = c;
        if (s == Strategy::FirstBad) return found;
      }
    }
  }
  return found;
}

namespace {

struct Step {
  LinkDiagram diagram;
  NodeKind kind;
  std::size_t crossing = 0;
};

// Removes curls and decides whether the diagram is a leaf.
Step classify(const LinkDiagram& input, Strategy s) {
  LinkDiagram d = remove_kinks(input);
  const int comps = d.component_count();
  if (comps > 1 && !d.is_connected()) return {std::move(d), NodeKind::LeafSplit};
  auto bad = bad_crossing(d, s);
  if (!bad) return {std::move(d), comps == 1 ? NodeKind::LeafUnknot : NodeKind::LeafUnlink};
  return {std::move(d), NodeKind::Internal, *bad};
}

LaurentPoly leaf_value(NodeKind k) {
  return LaurentPoly::constant(alexander_basis(), k == NodeKind::LeafUnknot ? 1 : 0);
}

// Delta(K+) = Delta(K-) + z Delta(K0); `sign` is the crossing's sign in the
// parent, `switched` the value with that crossing changed.
LaurentPoly skein_combine(int sign, const LaurentPoly& switched, const LaurentPoly& smoothed) {
  return sign > 0 ? switched + skein_z() * smoothed : switched - skein_z() * smoothed;
}

class SkeinEvaluator {
 public:
  SkeinEvaluator(const SkeinOptions& opts, bool parallel) : opts_(opts), parallel_(parallel) {}

  LaurentPoly run(const LinkDiagram& d) {
    if (!parallel_) return eval(d, 0);
    LaurentPoly result;
    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel num_threads(num_threads())
#pragma omp single
#endif
    {
      try {
        result = eval(d, 0);
      } catch (...) {
        err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return result;
  }

 private:
  static constexpr int kTaskDepth = 10;

  LaurentPoly eval(const LinkDiagram& d, int depth) {
    if (++nodes_ > opts_.node_budget)
      fail(ErrorKind::ResourceLimit, "resolution tree exceeds " + std::to_string(opts_.node_budget) + " nodes");
    Step st = classify(d, opts_.strategy);
    if (st.kind != NodeKind::Internal) return leaf_value(st.kind);

    std::string key;
    if (opts_.memoize) {
      key = canonical_key(st.diagram);
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const int sign = st.diagram.sign(st.crossing);
    const LinkDiagram sw = switch_crossing(st.diagram, st.crossing);
    const LinkDiagram sm = smooth_crossing(st.diagram, st.crossing);

    LaurentPoly a, b;
    if (parallel_ && depth < kTaskDepth) {
      std::exception_ptr ea, eb;
#ifdef _OPENMP
#pragma omp task shared(a, ea, sw) firstprivate(depth)
#endif
      {
        try {
          a = eval(sw, depth + 1);
        } catch (...) {
          ea = std::current_exception();
        }
      }
      try {
        b = eval(sm, depth + 1);
      } catch (...) {
        eb = std::current_exception();
      }
#ifdef _OPENMP
#pragma omp taskwait
#endif
      if (ea) std::rethrow_exception(ea);
      if (eb) std::rethrow_exception(eb);
    } else {
      a = eval(sw, depth + 1);
      b = eval(sm, depth + 1);
    }
    LaurentPoly r = skein_combine(sign, a, b);
    if (opts_.memoize) {
      std::lock_guard lock(mu_);
      memo_.emplace(std::move(key), r);
    }
    return r;
  }

  SkeinOptions opts_;
  bool parallel_;
  std::atomic<std::size_t> nodes_{0};
  std::mutex mu_;
  std::unordered_map<std::string, LaurentPoly> memo_;
};

// ------------------------------------------------------------- Fox oracle

// Dense integer polynomials in t, lowest degree first.
using Dense = std::vector<Integer>;

void trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Dense dmul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Dense dsub(Dense a, const Dense& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

Dense ddiv_exact(Dense num, const Dense& den) {
  if (num.empty()) return {};
  Dense q(num.size() - den.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& lead = num[k + den.size() - 1];
    q[k] = lead / den.back();
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= q[k] * den[j];
  }
  trim(q);
  return q;
}

// Fraction-free Gaussian elimination; every division is exact.
Dense bareiss_det(std::vector<std::vector<Dense>> m) {
  const std::size_t n = m.size();
  if (n == 0) return {1};
  int sign = 1;
  Dense prev{1};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].empty()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = ddiv_exact(dsub(dmul(m[i][j], m[k][k]), dmul(m[i][k], m[k][j])), prev);
      m[i][k].clear();
    }
    prev = m[k][k];
  }
  Dense det = m[n - 1][n - 1];
  if (sign < 0)
    for (auto& c : det) c = -c;
  return det;
}

}  // namespace

namespace kernels {

LaurentPoly skein_serial(const LinkDiagram& d, const SkeinOptions& opts) { return SkeinEvaluator(opts, false).run(d); }

LaurentPoly skein_parallel(const LinkDiagram& d, const SkeinOptions& opts) {
  return SkeinEvaluator(opts, true).run(d);
}

}  // namespace kernels

LaurentPoly alexander_skein(const LinkDiagram& d, const SkeinOptions& opts) {
  return num_threads() > 1 ? kernels::skein_parallel(d, opts) : kernels::skein_serial(d, opts);
}

LaurentPoly alexander_fox(const LinkDiagram& input) {
  if (input.component_count() != 1)
    fail(ErrorKind::NotAKnot, "Fox calculus route needs a knot, got " + std::to_string(input.component_count()) +
                                  " components");
  const auto& xs = input.crossings();
  const std::size_t n = xs.size();
  if (n == 0) return LaurentPoly::constant(alexander_basis(), 1);

  // Over-arcs (Wirtinger generators): labels joined through over passes.
  std::map<int, int> parent;
  for (const auto& c : xs)
    for (int a : c.arcs) parent[a] = a;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : xs) parent[find(c.arcs[1])] = find(c.arcs[3]);
  std::map<int, std::size_t> gen;
  for (auto& [a, p] : parent) {
    int r = find(a);
    if (!gen.count(r)) gen.emplace(r, gen.size());
  }
  if (gen.size() != n) fail(ErrorKind::InvalidDiagram, "over-arc count does not match crossing count");

  // Row for c = a^e b a^-e (e = sign), abelianized and cleared of t^-1.
  std::vector<std::vector<Dense>> m(n, std::vector<Dense>(n));
  const Dense one{1}, t{0, 1}, one_minus_t{1, -1}, t_minus_one{-1, 1}, minus_one{-1}, minus_t{0, -1};
  auto add = [](Dense& cell, const Dense& v) {
    if (cell.size() < v.size()) cell.resize(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) cell[i] += v[i];
    trim(cell);
  };
  for (std::size_t r = 0; r < n; ++r) {
    const auto& x = xs[r];
    const std::size_t a = gen.at(find(x.arcs[1]));
    const std::size_t b = gen.at(find(x.arcs[0]));
    const std::size_t c = gen.at(find(x.arcs[2]));
    if (x.over_j_to_l) {
      add(m[r][c], minus_one);
      add(m[r][a], one_minus_t);
      add(m[r][b], t);
    } else {
      add(m[r][c], minus_t);
      add(m[r][a], t_minus_one);
      add(m[r][b], one);
    }
  }
  m.pop_back();
  for (auto& row : m) row.pop_back();
  Dense det = bareiss_det(std::move(m));
  if (det.empty()) fail(ErrorKind::InvalidDiagram, "vanishing Alexander determinant for a knot");

  std::size_t low = 0;
  while (det[low] == 0) ++low;
  const std::int64_t span = static_cast<std::int64_t>(det.size() - 1 - low);
  Integer at_one = std::accumulate(det.begin(), det.end(), Integer(0));
  LaurentPoly out(alexander_basis());
  for (std::size_t k = low; k < det.size(); ++k) {
    // exponent (k - low) - span/2, in half units
    const std::int64_t half = 2 * static_cast<std::int64_t>(k - low) - span;
    out.add_term({half}, at_one < 0 ? Integer(-det[k]) : det[k]);
  }
  return out;
}

std::unique_ptr<ResolutionNode> resolution_tree(const LinkDiagram& d, const SkeinOptions& opts) {
  std::size_t count = 0;
  auto build = [&](auto&& self, const LinkDiagram& in) -> std::unique_ptr<ResolutionNode> {
    if (++count > opts.node_budget)
      fail(ErrorKind::ResourceLimit, "resolution tree exceeds " + std::to_string(opts.node_budget) + " nodes");
    Step st = classify(in, opts.strategy);
    auto node = std::make_unique<ResolutionNode>();
    node->kind = st.kind;
    if (st.kind == NodeKind::Internal) {
      node->crossing = st.crossing;
      node->sign = st.diagram.sign(st.crossing);
      node->switched = self(self, switch_crossing(st.diagram, st.crossing));
      node->smoothed = self(self, smooth_crossing(st.diagram, st.crossing));
    }
    node->diagram = std::move(st.diagram);
    return node;
  };
  return build(build, d);
}

std::size_t node_count(const ResolutionNode& root) {
  if (root.kind != NodeKind::Internal) return 1;
  return 1 + node_count(*root.switched) + node_count(*root.smoothed);
}

LaurentPoly evaluate_tree(const ResolutionNode& root) {
  if (root.kind != NodeKind::Internal) return leaf_value(root.kind);
  return skein_combine(root.sign, evaluate_tree(*root.switched), evaluate_tree(*root.smoothed));
}

}  // namespace swcalc::knots
