#include "swcalc/knots/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

namespace swcalc::knots {

namespace {

// Whether the arc at position p of crossing c flows into c.
bool is_head(const Crossing& c, int p) {
  switch (p) {
    case 0: return true;
    case 2: return false;
    case 1: return c.over_j_to_l;
    default: return !c.over_j_to_l;
  }
}

struct End {
  int crossing = -1;
  int pos = -1;
};

// Arc incidence of a diagram with labels compressed to 0..n-1.
struct Topology {
  std::vector<int> labels;  // sorted
  std::vector<End> head, tail;
  std::vector<int> next;
  std::vector<std::vector<int>> comps;
  std::vector<int> comp_of;

  int index(int label) const {
    return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  }

  explicit Topology(const std::vector<Crossing>& xs) {
    for (const auto& c : xs) labels.insert(labels.end(), c.arcs.begin(), c.arcs.end());
    std::sort(labels.begin(), labels.end());
    for (std::size_t i = 0; i < labels.size(); i += 2) {
      if (i + 1 >= labels.size() || labels[i] != labels[i + 1] ||
          (i + 2 < labels.size() && labels[i + 2] == labels[i]))
        fail(ErrorKind::InvalidDiagram, "arc label " + std::to_string(labels[i]) + " does not appear exactly twice");
    }
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const std::size_t n = labels.size();
    head.assign(n, {});
    tail.assign(n, {});
    for (int ci = 0; ci < static_cast<int>(xs.size()); ++ci) {
      for (int p = 0; p < 4; ++p) {
        int a = index(xs[ci].arcs[p]);
        End& slot = is_head(xs[ci], p) ? head[a] : tail[a];
        if (slot.crossing >= 0)
          fail(ErrorKind::InvalidDiagram, "arc " + std::to_string(labels[a]) + " has inconsistent orientation");
        slot = {ci, p};
      }
    }
    next.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      const End h = head[a];
      next[a] = index(xs[h.crossing].arcs[(h.pos + 2) % 4]);
    }
    comp_of.assign(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
      if (comp_of[s] >= 0) continue;
      std::vector<int> comp;
      int a = static_cast<int>(s);
      do {
        comp_of[a] = static_cast<int>(comps.size());
        comp.push_back(a);
        a = next[a];
      } while (a != static_cast<int>(s));
      comps.push_back(std::move(comp));
    }
  }
};

void check_index(const LinkDiagram& d, std::size_t i) {
  if (i >= d.crossing_count())
    fail(ErrorKind::IndexOutOfRange,
         "crossing " + std::to_string(i) + " of " + std::to_string(d.crossing_count()));
}

// Label renaming used when crossings are removed and arcs merged.
struct Renamer {
  std::map<int, int> to;
  int resolve(int x) const {
    for (auto it = to.find(x); it != to.end(); it = to.find(x)) x = it->second;
    return x;
  }
  // Joins arc `in` (whose head was removed) to arc `out` (whose tail was
  // removed). Returns true when they were already the same arc.
  bool join(int in, int out) {
    in = resolve(in);
    out = resolve(out);
    if (in == out) return true;
    to[out] = in;
    return false;
  }
  void apply(std::vector<Crossing>& xs) const {
    if (to.empty()) return;
    for (auto& c : xs)
      for (auto& a : c.arcs) a = resolve(a);
  }
};

// ----------------------------------------------------------------- parsing

struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::SyntaxError, what + " at offset " + std::to_string(i));
  }
  void expect(char c) {
    skip();
    if (i >= s.size() || s[i] != c) error(std::string("expected '") + c + "'");
    ++i;
  }
  int integer() {
    skip();
    int v = 0;
    const char* b = s.data() + i;
    if (i < s.size() && s[i] == '+') ++b;
    auto [p, ec] = std::from_chars(b, s.data() + s.size(), v);
    if (ec != std::errc()) error("expected integer");
    i = static_cast<std::size_t>(p - s.data());
    return v;
  }
};

// Union-find with parity: value(x) = value(parent) xor parity(x).
struct ParityUF {
  std::vector<int> parent;
  std::vector<int> parity;
  explicit ParityUF(std::size_t n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
  std::pair<int, int> find(int x) {
    int p = 0;
    int r = x;
    while (parent[r] != r) {
      p ^= parity[r];
      r = parent[r];
    }
    // path compression
    int acc = p;
    while (parent[x] != x) {
      int nx = parent[x];
      int px = parity[x];
      parent[x] = r;
      parity[x] = acc;
      acc ^= px;
      x = nx;
    }
    return {r, p};
  }
  // Imposes value(a) xor value(b) == rel; returns false on contradiction.
  bool relate(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent[ra] = rb;
    parity[ra] = pa ^ pb ^ rel;
    return true;
  }
};

// Heuristic direction for over strands that never pass under anything:
// consecutive labels follow the orientation, the largest wraps to the smallest.
bool runs_forward(int a, int b) { return b == a + 1 || a > b + 1; }

std::vector<Crossing> orient(const std::vector<std::array<int, 4>>& tuples) {
  // Node per crossing (its over_j_to_l flag) plus a constant-true node.
  const int n = static_cast<int>(tuples.size());
  const int kTrue = n;
  ParityUF uf(n + 1);
  // role of an end as (node, parity): is_head == value(node) xor parity
  auto role = [&](int c, int p) -> std::pair<int, int> {
    switch (p) {
      case 0: return {kTrue, 0};
      case 2: return {kTrue, 1};
      case 1: return {c, 0};
      default: return {c, 1};
    }
  };
  std::map<int, std::vector<std::pair<int, int>>> ends;
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) ends[tuples[c][p]].push_back({c, p});
  for (const auto& [label, es] : ends) {
    auto [n1, p1] = role(es[0].first, es[0].second);
    auto [n2, p2] = role(es[1].first, es[1].second);
    // exactly one end is a head
    if (!uf.relate(n1, n2, 1 ^ p1 ^ p2))
      fail(ErrorKind::InvalidDiagram, "no consistent orientation through arc " + std::to_string(label));
  }
  std::vector<Crossing> out(n);
  std::map<int, int> root_value;
  root_value[uf.find(kTrue).first] = 1 ^ uf.find(kTrue).second;
  for (int c = 0; c < n; ++c) {
    auto [r, p] = uf.find(c);
    auto it = root_value.find(r);
    if (it == root_value.end()) {
      bool want = runs_forward(tuples[c][1], tuples[c][3]);
      it = root_value.emplace(r, (want ? 1 : 0) ^ p).first;
    }
    out[c].arcs = tuples[c];
    out[c].over_j_to_l = (it->second ^ p) != 0;
  }
  return out;
}

// ---------------------------------------------------------------- builder

// Planar 4-valent graph assembled from crossings and pass-through points.
// Crossing slots are counterclockwise BL=0, BR=1, TR=2, TL=3; a crossing's
// under strand joins slots 0-2 or 1-3. Points have slots 0 and 1.
class PlanarBuilder {
 public:
  using Slot = int;  // node * 4 + slot

  int crossing(bool under_02) {
    nodes_.push_back({true, under_02});
    partner_.resize(nodes_.size() * 4, -1);
    return static_cast<int>(nodes_.size()) - 1;
  }
  int point() {
    nodes_.push_back({false, false});
    partner_.resize(nodes_.size() * 4, -1);
    return static_cast<int>(nodes_.size()) - 1;
  }
  static Slot at(int node, int slot) { return node * 4 + slot; }
  void connect(Slot a, Slot b) {
    partner_[a] = b;
    partner_[b] = a;
  }

  LinkDiagram build(std::string name) const {
    const int n = static_cast<int>(nodes_.size());
    std::vector<int> label(n * 4, 0);
    std::vector<int> in_slot(n * 2, -1);  // per strand: slot where it enters
    int next_label = 0;
    int free_loops = 0;
    auto exit_of = [&](int node, int s) { return nodes_[node].crossing ? (s + 2) % 4 : 1 - s; };
    auto strand_of = [&](int node, int s) { return node * 2 + (nodes_[node].crossing ? s % 2 : 0); };
    auto walk = [&](int node, int s) {
      const int start = at(node, s);
      int cur = start;
      int arc = 0;
      bool have_arc = false;
      do {
        int nd = cur / 4, sl = cur % 4;
        in_slot[strand_of(nd, sl)] = sl;
        if (nodes_[nd].crossing && have_arc) label[cur] = arc;
        int e = exit_of(nd, sl);
        if (nodes_[nd].crossing) {
          arc = ++next_label;
          have_arc = true;
          label[at(nd, e)] = arc;
        }
        cur = partner_[at(nd, e)];
        if (cur < 0) fail(ErrorKind::InvalidDiagram, "open strand end in builder");
      } while (cur != start);
      if (nodes_[start / 4].crossing) label[start] = arc;
    };
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
      if (nodes_[i].crossing) order.push_back(i);
    for (int c : order) {
      if (in_slot[c * 2] < 0) walk(c, 0);
      if (in_slot[c * 2 + 1] < 0) walk(c, 1);
    }
    for (int i = 0; i < n; ++i) {
      if (!nodes_[i].crossing && in_slot[i * 2] < 0) {
        walk(i, 0);
        ++free_loops;
      }
    }
    std::vector<Crossing> xs;
    for (int c : order) {
      const int ustrand = nodes_[c].under_02 ? 0 : 1;
      const int u = in_slot[c * 2 + ustrand];
      const int o = in_slot[c * 2 + (1 - ustrand)];
      Crossing x;
      for (int p = 0; p < 4; ++p) x.arcs[p] = label[at(c, (u + p) % 4)];
      x.over_j_to_l = (o == (u + 1) % 4);
      xs.push_back(x);
    }
    return LinkDiagram(std::move(xs), free_loops, std::move(name));
  }

 private:
  struct Node {
    bool crossing;
    bool under_02;
  };
  std::vector<Node> nodes_;
  std::vector<int> partner_;
};

int default_strands(const std::vector<int>& word) {
  int m = 0;
  for (int g : word) m = std::max(m, std::abs(g));
  return m + 1;
}

void check_word(const std::vector<int>& word, int strands) {
  for (int g : word)
    if (g == 0 || std::abs(g) >= strands)
      fail(ErrorKind::InvalidParameters, "braid generator " + std::to_string(g) + " out of range for " +
                                             std::to_string(strands) + " strands");
}

// In a positive generator the bottom-left strand passes under to the top-right.
int add_generator(PlanarBuilder& b, std::vector<PlanarBuilder::Slot>& cur, int g) {
  const int i = std::abs(g) - 1;
  const int c = b.crossing(g > 0);
  b.connect(cur[i], PlanarBuilder::at(c, 0));
  b.connect(cur[i + 1], PlanarBuilder::at(c, 1));
  cur[i] = PlanarBuilder::at(c, 3);
  cur[i + 1] = PlanarBuilder::at(c, 2);
  return c;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

// ------------------------------------------------------------- LinkDiagram

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, int free_loops, std::string name)
    : crossings_(std::move(crossings)), free_loops_(free_loops), name_(std::move(name)) {
  if (free_loops_ < 0) fail(ErrorKind::InvalidDiagram, "negative loop count");
  (void)Topology(crossings_);
}

LinkDiagram LinkDiagram::named(std::string name) const {
  LinkDiagram d = *this;
  d.name_ = std::move(name);
  return d;
}

int LinkDiagram::component_count() const {
  return static_cast<int>(Topology(crossings_).comps.size()) + free_loops_;
}

std::vector<std::vector<int>> LinkDiagram::components() const {
  Topology t(crossings_);
  std::vector<std::vector<int>> out;
  for (const auto& comp : t.comps) {
    std::vector<int> labels;
    for (int a : comp) labels.push_back(t.labels[a]);
    out.push_back(std::move(labels));
  }
  return out;
}

int LinkDiagram::sign(std::size_t i) const {
  check_index(*this, i);
  return crossings_[i].over_j_to_l ? 1 : -1;
}

int LinkDiagram::writhe() const {
  int w = 0;
  for (const auto& c : crossings_) w += c.over_j_to_l ? 1 : -1;
  return w;
}

bool LinkDiagram::is_connected() const {
  if (crossings_.empty()) return free_loops_ <= 1;
  if (free_loops_ > 0) return false;
  Topology t(crossings_);
  std::vector<int> parent(t.comps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : crossings_)
    parent[find(t.comp_of[t.index(c.arcs[0])])] = find(t.comp_of[t.index(c.arcs[1])]);
  for (std::size_t i = 1; i < parent.size(); ++i)
    if (find(static_cast<int>(i)) != find(0)) return false;
  return true;
}

std::string LinkDiagram::to_pd() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const auto& a = crossings_[i].arcs;
    if (i) os << ' ';
    os << "X(" << a[0] << ',' << a[1] << ',' << a[2] << ',' << a[3] << ')';
  }
  return os.str();
}

// -------------------------------------------------------------- operations

LinkDiagram parse_pd(std::string_view text) {
  Cursor cur{text};
  std::vector<std::array<int, 4>> tuples;
  while (!cur.done()) {
    if (cur.s[cur.i] != 'X') cur.error("expected 'X('");
    ++cur.i;
    cur.expect('(');
    std::array<int, 4> t{};
    for (int p = 0; p < 4; ++p) {
      if (p) cur.expect(',');
      t[p] = cur.integer();
    }
    cur.expect(')');
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q)
        if (t[p] == t[q])
          fail(ErrorKind::InvalidDiagram, "arc label " + std::to_string(t[p]) + " repeated within a crossing");
    tuples.push_back(t);
  }
  if (tuples.empty()) fail(ErrorKind::SyntaxError, "empty PD code");
  {
    std::map<int, int> count;
    for (const auto& t : tuples)
      for (int a : t) ++count[a];
    for (const auto& [a, k] : count)
      if (k != 2) fail(ErrorKind::InvalidDiagram, "arc label " + std::to_string(a) + " does not appear exactly twice");
  }
  return LinkDiagram(orient(tuples));
}

LinkDiagram parse_braid(std::string_view text) {
  text = trim(text);
  if (text.substr(0, 5) == "braid") {
    text.remove_prefix(5);
    text = trim(text);
    if (!text.empty() && text.front() == ':') text.remove_prefix(1);
  }
  std::vector<int> word;
  Cursor cur{text};
  while (!cur.done()) {
    if (cur.s[cur.i] == ',') {
      ++cur.i;
      continue;
    }
    word.push_back(cur.integer());
  }
  return braid_closure(word);
}

int crossing_sign(const LinkDiagram& d, std::size_t i) { return d.sign(i); }

LinkDiagram switch_crossing(const LinkDiagram& d, std::size_t i) {
  check_index(d, i);
  auto xs = d.crossings();
  const auto [a, b, c, e] = xs[i].arcs;
  if (xs[i].over_j_to_l)
    xs[i] = Crossing{{b, c, e, a}, false};
  else
    xs[i] = Crossing{{e, a, b, c}, true};
  return LinkDiagram(std::move(xs), d.free_loops(), d.name());
}

LinkDiagram smooth_crossing(const LinkDiagram& d, std::size_t i) {
  check_index(d, i);
  auto xs = d.crossings();
  const Crossing x = xs[i];
  xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(i));
  const auto [a, b, c, e] = x.arcs;
  Renamer r;
  int loops = d.free_loops();
  if (x.over_j_to_l) {
    loops += r.join(a, e);
    loops += r.join(b, c);
  } else {
    loops += r.join(a, b);
    loops += r.join(e, c);
  }
  r.apply(xs);
  return LinkDiagram(std::move(xs), loops, d.name());
}

LinkDiagram remove_kinks(const LinkDiagram& d) {
  auto xs = d.crossings();
  int loops = d.free_loops();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t ci = 0; ci < xs.size() && !changed; ++ci) {
      const Crossing x = xs[ci];
      for (int p = 0; p < 4; ++p) {
        if (x.arcs[p] != x.arcs[(p + 1) % 4]) continue;
        const int p2 = (p + 2) % 4, p3 = (p + 3) % 4;
        const int in = is_head(x, p2) ? x.arcs[p2] : x.arcs[p3];
        const int out = is_head(x, p2) ? x.arcs[p3] : x.arcs[p2];
        xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(ci));
        Renamer r;
        loops += r.join(in, out);
        r.apply(xs);
        changed = true;
        break;
      }
    }
  }
  return LinkDiagram(std::move(xs), loops, d.name());
}

LinkDiagram mirror(const LinkDiagram& d) {
  LinkDiagram m = d;
  for (std::size_t i = 0; i < d.crossing_count(); ++i) m = switch_crossing(m, i);
  return m.named(d.name().empty() ? std::string() : "mirror(" + d.name() + ")");
}

LinkDiagram disjoint_union(const LinkDiagram& a, const LinkDiagram& b) {
  int shift = 0;
  for (const auto& c : a.crossings())
    for (int l : c.arcs) shift = std::max(shift, l);
  auto xs = a.crossings();
  for (auto c : b.crossings()) {
    for (auto& l : c.arcs) l += shift;
    xs.push_back(c);
  }
  return LinkDiagram(std::move(xs), a.free_loops() + b.free_loops());
}

LinkDiagram relabel(const LinkDiagram& d) {
  std::map<int, int> to;
  for (const auto& comp : d.components())
    for (int a : comp) to.emplace(a, static_cast<int>(to.size()) + 1);
  auto xs = d.crossings();
  for (auto& c : xs)
    for (auto& a : c.arcs) a = to.at(a);
  return LinkDiagram(std::move(xs), d.free_loops(), d.name());
}

std::string canonical_key(const LinkDiagram& d) {
  const auto& xs = d.crossings();
  std::ostringstream os;
  os << d.free_loops() << '|';
  if (xs.empty()) return os.str();
  Topology t(xs);
  const int n = static_cast<int>(t.labels.size());
  using Row = std::array<int, 5>;
  std::vector<Row> best;
  std::vector<int> relabel(n);
  std::vector<char> seen(xs.size());
  for (int start = 0; start < n; ++start) {
    std::fill(relabel.begin(), relabel.end(), 0);
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<int> visit;
    int counter = 0;
    auto run = [&](int s) {
      int a = s;
      do {
        relabel[a] = ++counter;
        int c = t.head[a].crossing;
        if (!seen[c]) {
          seen[c] = 1;
          visit.push_back(c);
        }
        a = t.next[a];
      } while (a != s);
    };
    run(start);
    for (std::size_t v = 0;; ++v) {
      if (v == visit.size()) {
        // split diagram: continue from the smallest untouched arc
        int s = -1;
        for (int a = 0; a < n && s < 0; ++a)
          if (!relabel[a]) s = a;
        if (s < 0) break;
        run(s);
      }
      for (int p = 0; p < 4; ++p) {
        int a = t.index(xs[visit[v]].arcs[p]);
        if (!relabel[a]) run(a);
      }
    }
    std::vector<Row> rows;
    rows.reserve(xs.size());
    for (const auto& c : xs)
      rows.push_back({relabel[t.index(c.arcs[0])], relabel[t.index(c.arcs[1])], relabel[t.index(c.arcs[2])],
                      relabel[t.index(c.arcs[3])], c.over_j_to_l ? 1 : 0});
    std::sort(rows.begin(), rows.end());
    if (best.empty() || rows < best) best = std::move(rows);
  }
  for (const auto& r : best) os << r[0] << ',' << r[1] << ',' << r[2] << ',' << r[3] << (r[4] ? '+' : '-');
  return os.str();
}

// ---------------------------------------------------------------- builders

LinkDiagram braid_closure(const std::vector<int>& word, int strands) {
  if (strands == 0) strands = default_strands(word);
  if (strands < 1) fail(ErrorKind::InvalidParameters, "braid needs at least one strand");
  check_word(word, strands);
  PlanarBuilder b;
  std::vector<int> bottom(strands);
  std::vector<PlanarBuilder::Slot> cur(strands);
  for (int p = 0; p < strands; ++p) {
    bottom[p] = b.point();
    cur[p] = PlanarBuilder::at(bottom[p], 1);
  }
  for (int g : word) add_generator(b, cur, g);
  for (int p = 0; p < strands; ++p) b.connect(cur[p], PlanarBuilder::at(bottom[p], 0));
  return b.build({});
}

LinkDiagram plat_closure(const std::vector<int>& word, int strands) {
  if (strands < 2 || strands % 2) fail(ErrorKind::InvalidParameters, "plat closure needs an even strand count");
  check_word(word, strands);
  PlanarBuilder b;
  std::vector<PlanarBuilder::Slot> cur(strands);
  for (int k = 0; k < strands; k += 2) {
    int cup = b.point();
    cur[k] = PlanarBuilder::at(cup, 0);
    cur[k + 1] = PlanarBuilder::at(cup, 1);
  }
  for (int g : word) add_generator(b, cur, g);
  for (int k = 0; k < strands; k += 2) b.connect(cur[k], cur[k + 1]);
  return b.build({});
}

LinkDiagram unknot() { return LinkDiagram({}, 1, "unknot"); }

LinkDiagram trefoil() { return parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").named("trefoil"); }

LinkDiagram hopf_link() { return parse_pd("X(1,4,2,3) X(3,2,4,1)").named("hopf"); }

LinkDiagram figure_eight() { return braid_closure({1, -2, 1, -2}).named("figure8"); }

LinkDiagram twist_knot(int n) {
  if (n < 1) fail(ErrorKind::InvalidParameters, "twist knot needs n >= 1");
  // 4-plat s2^(2n-1) s1^-1 s2: 2n-1 half twists closed off by a clasp.
  std::vector<int> word(2 * n - 1, 2);
  word.push_back(-1);
  word.push_back(2);
  return plat_closure(word, 4).named("twist(" + std::to_string(n) + ")");
}

LinkDiagram torus_knot(int p, int q) {
  if (p < 2 || q < 2) fail(ErrorKind::InvalidParameters, "torus knot needs p, q >= 2");
  if (std::gcd(p, q) != 1) fail(ErrorKind::InvalidParameters, "torus knot needs gcd(p, q) = 1");
  std::vector<int> word;
  for (int r = 0; r < q; ++r)
    for (int g = 1; g < p; ++g) word.push_back(g);
  return braid_closure(word, p).named("torus(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

LinkDiagram builtin_knot(std::string_view text) {
  text = trim(text);
  auto open = text.find('(');
  std::string head(trim(text.substr(0, open)));
  std::vector<int> args;
  if (open != std::string_view::npos) {
    if (text.back() != ')') fail(ErrorKind::SyntaxError, "unbalanced parentheses in '" + std::string(text) + "'");
    Cursor cur{text.substr(open + 1, text.size() - open - 2)};
    while (!cur.done()) {
      if (!args.empty()) cur.expect(',');
      args.push_back(cur.integer());
    }
  }
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      fail(ErrorKind::InvalidParameters, head + " takes " + std::to_string(k) + " argument(s)");
  };
  if (head == "unknot") return need(0), unknot();
  if (head == "trefoil") return need(0), trefoil();
  if (head == "figure8") return need(0), figure_eight();
  if (head == "hopf") return need(0), hopf_link();
  if (head == "twist") return need(1), twist_knot(args[0]);
  if (head == "torus") return need(2), torus_knot(args[0], args[1]);
  fail(ErrorKind::InvalidParameters, "unknown built-in knot '" + head + "'");
}

std::vector<NamedDiagram> parse_knot_table(std::string_view text) {
  std::vector<NamedDiagram> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    s = trim(s);
    if (s.empty()) continue;
    auto colon = s.find(':');
    if (colon == std::string_view::npos)
      fail(ErrorKind::SyntaxError, "line " + std::to_string(lineno) + ": expected 'name: code'");
    std::string name(trim(s.substr(0, colon)));
    std::string_view body = trim(s.substr(colon + 1));
    LinkDiagram d;
    if (body.substr(0, 5) == "braid")
      d = parse_braid(body);
    else {
      if (body.substr(0, 2) == "pd") body.remove_prefix(2);
      d = parse_pd(body);
    }
    out.push_back({name, d.named(name)});
  }
  return out;
}

}  // namespace swcalc::knots
