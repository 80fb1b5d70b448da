#include "swcalc/manifolds/manifold.hpp"

#include <numeric>
#include <sstream>

namespace swcalc::manifolds {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::InvalidParameters, what);
}

const SurfaceLabel& active_label(const Manifold& m, const std::string& name) {
  const SurfaceLabel& l = m.lattice.label(name);
  if (!l.active) fail(ErrorKind::MissingLabel, "surface '" + name + "' no longer exists");
  return l;
}

std::shared_ptr<Manifold> node(Op op, std::vector<ManifoldPtr> children = {}) {
  auto m = std::make_shared<Manifold>();
  m->op = op;
  m->children = std::move(children);
  return m;
}

// Next free index among labels E1, E2, ...
int next_exceptional(const LabelLattice& lat) {
  int next = 1;
  for (const auto& l : lat.labels()) {
    if (l.name.size() < 2 || l.name[0] != 'E') continue;
    if (l.name.find_first_not_of("0123456789", 1) != std::string::npos) continue;
    next = std::max(next, std::stoi(l.name.substr(1)) + 1);
  }
  return next;
}

std::string fresh_name(const LabelLattice& lat, std::string name) {
  while (lat.has(name)) name += "'";
  return name;
}

void forget_w2(LabelLattice& lat) {
  for (const auto& n : lat.names()) lat.set_w2_multiple(n, std::nullopt);
}

// Appends every label of `src` (renamed per `rename`) to `dst`, keeping
// products among them and setting products with pre-existing labels to 0.
void append_lattice(LabelLattice& dst, const LabelLattice& src, const std::map<std::string, std::string>& rename) {
  for (const auto& l : src.labels()) {
    SurfaceLabel copy = l;
    copy.name = rename.at(l.name);
    std::map<std::string, std::int64_t> products;
    for (const auto& prev : src.labels()) {
      if (prev.name == l.name) break;
      if (auto v = src.dot(prev.name, l.name)) products[rename.at(prev.name)] = v;
    }
    dst.add(copy, src.dot(l.name, l.name), products);
  }
}

std::string join_params(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::int64_t CharInvariants::chi_h_int() const {
  if (!chi_h_integral())
    fail(ErrorKind::NonIntegralResult, "chi_h = " + swcalc::to_string(chi_h()) + " is not an integer");
  return (e + sigma) / 4;
}

CharInvariants from_e_sigma(std::int64_t e, std::int64_t sigma, int t, bool simply_connected) {
  CharInvariants inv;
  inv.e = e;
  inv.sigma = sigma;
  inv.t = t;
  const std::int64_t b2 = e - 2;
  if (b2 < 0 || (b2 + sigma) % 2 != 0 || b2 < std::abs(sigma))
    fail(ErrorKind::InvalidParameters, "no simply connected manifold has e=" + std::to_string(e) +
                                           ", sigma=" + std::to_string(sigma));
  inv.b_plus = (b2 + sigma) / 2;
  inv.b_minus = (b2 - sigma) / 2;
  inv.simply_connected = simply_connected;
  inv.spin = t == 0 && simply_connected;
  return inv;
}

ManifoldPtr elliptic(int n) {
  require(n >= 1, "E(n) needs n >= 1");
  auto m = node(Op::Primitive);
  m->name = "E";
  m->params = {n};
  m->inv = from_e_sigma(12 * n, -8 * n, n % 2);
  m->lattice.add({"F", 1, true, n % 2}, 0);
  m->lattice.add({"S", 0, true, std::nullopt}, -n, {{"F", 1}});
  m->lattice.add({"S2", 0, true, std::nullopt}, -n, {{"F", 1}});
  return m;
}

ManifoldPtr cp2() {
  auto m = node(Op::Primitive);
  m->name = "CP2";
  m->inv = from_e_sigma(3, 1, 1);
  m->lattice.add({"H", 0, true, 1}, 1);
  return m;
}

ManifoldPtr cp2bar() {
  auto m = node(Op::Primitive);
  m->name = "CP2bar";
  m->inv = from_e_sigma(3, -1, 1);
  m->lattice.add({"E", 0, true, 1}, -1);
  return m;
}

ManifoldPtr s2xs2() {
  auto m = node(Op::Primitive);
  m->name = "S2xS2";
  m->inv = from_e_sigma(4, 0, 0);
  m->lattice.add({"A", 0, true, 0}, 0);
  m->lattice.add({"B", 0, true, 0}, 0, {{"A", 1}});
  return m;
}

ManifoldPtr horikawa(int m, int n) {
  require(m >= 1 && n >= 1, "H(m,n) needs m, n >= 1");
  auto x = node(Op::Primitive);
  x->name = "H";
  x->params = {m, n};
  // Double cover of S2xS2 branched over a curve of bidegree (2m, 2n).
  const std::int64_t c = 4 * std::int64_t(m - 2) * (n - 2);
  const std::int64_t chi = std::int64_t(m - 1) * (n - 1) + 1;
  const int t = (m % 2 == 0 && n % 2 == 0) ? 0 : 1;
  x->inv = from_e_sigma(12 * chi - c, c - 8 * chi, t);
  if (m >= 3 && n >= 3) x->lattice.add({"K", static_cast<int>(c + 1), true, 1}, c);
  return x;
}

ManifoldPtr primitive(const std::string& name, const std::vector<std::int64_t>& params) {
  auto arity = [&](std::size_t k) {
    require(params.size() == k, name + " takes " + std::to_string(k) + " parameter(s)");
  };
  if (name == "E") {
    arity(1);
    return elliptic(static_cast<int>(params[0]));
  }
  if (name == "H") {
    arity(2);
    return horikawa(static_cast<int>(params[0]), static_cast<int>(params[1]));
  }
  arity(0);
  if (name == "CP2") return cp2();
  if (name == "CP2bar") return cp2bar();
  if (name == "S2xS2") return s2xs2();
  fail(ErrorKind::InvalidParameters, "unknown primitive '" + name + "'");
}

ManifoldPtr connected_sum(const ManifoldPtr& a, const ManifoldPtr& b) {
  auto m = node(Op::ConnectedSum, {a, b});
  const int t = (a->inv.t || b->inv.t) ? 1 : 0;
  m->inv = from_e_sigma(a->inv.e + b->inv.e - 2, a->inv.sigma + b->inv.sigma, t,
                        a->inv.simply_connected && b->inv.simply_connected);
  LabelLattice taken = a->lattice;
  for (const auto& l : b->lattice.labels()) {
    std::string n = fresh_name(taken, l.name);
    m->rename[l.name] = n;
    taken.add({n, 0, true, std::nullopt}, 0);
  }
  m->lattice = a->lattice;
  append_lattice(m->lattice, b->lattice, m->rename);
  forget_w2(m->lattice);
  return m;
}

ManifoldPtr blowup(const ManifoldPtr& a, int k) {
  require(k >= 0, "blowup count must be nonnegative");
  if (k == 0) return a;
  auto m = node(Op::Blowup, {a});
  m->params = {k};
  m->inv = from_e_sigma(a->inv.e + k, a->inv.sigma - k, 1, a->inv.simply_connected);
  m->lattice = a->lattice;
  forget_w2(m->lattice);
  const int first = next_exceptional(a->lattice);
  for (int i = 0; i < k; ++i) m->lattice.add({"E" + std::to_string(first + i), 0, true, 1}, -1);
  return m;
}

ManifoldPtr fiber_sum(const ManifoldPtr& a, const ManifoldPtr& b, int g, const std::string& label_a,
                      const std::string& label_b, std::optional<int> type) {
  require(g >= 0, "genus must be nonnegative");
  require(!type || *type == 0 || *type == 1, "type must be 0 or 1");
  const SurfaceLabel& fa = active_label(*a, label_a);
  const SurfaceLabel& fb = active_label(*b, label_b);
  for (auto [x, f, name] : {std::tuple{a.get(), &fa, label_a}, std::tuple{b.get(), &fb, label_b}}) {
    require(f->genus == g, "surface '" + name + "' has genus " + std::to_string(f->genus) + ", not " + std::to_string(g));
    require(x->lattice.dot(name, name) == 0, "surface '" + name + "' must have square 0");
  }

  auto m = node(Op::FiberSum, {a, b});
  m->params = {g};
  m->label_args = {label_a, label_b};
  m->type_override = type;

  int t = 1;
  std::optional<int> w2;
  if (type) {
    t = *type;
  } else if (fa.w2_multiple && fb.w2_multiple) {
    // w2 = eps * [F] on each side, so the sum has w2 = (eps_a + eps_b) [F].
    w2 = (*fa.w2_multiple + *fb.w2_multiple) % 2;
    t = *w2;
  }
  m->inv = from_e_sigma(a->inv.e + b->inv.e + 4 * g - 4, a->inv.sigma + b->inv.sigma, t,
                        a->inv.simply_connected && b->inv.simply_connected);

  // Labels of b meeting the fiber once glue to the same-named label of a.
  auto meets_once = [](const Manifold& x, const std::string& f, const std::string& l) {
    return l != f && x.lattice.has(l) && x.lattice.label(l).active && x.lattice.dot(f, l) == 1;
  };
  std::map<std::string, std::string> glued;  // b name -> a name
  glued[label_b] = label_a;
  for (const auto& l : b->lattice.labels())
    if (meets_once(*b, label_b, l.name) && meets_once(*a, label_a, l.name)) glued[l.name] = l.name;

  LabelLattice lat;
  std::vector<std::string> b_only;
  for (const auto& l : a->lattice.labels()) {
    SurfaceLabel copy = l;
    copy.w2_multiple = std::nullopt;
    std::int64_t sq = a->lattice.dot(l.name, l.name);
    std::map<std::string, std::int64_t> prods;
    for (const auto& prev : lat.labels()) prods[prev.name] = a->lattice.dot(prev.name, l.name);
    for (const auto& [bn, an] : glued) {
      if (an != l.name) continue;
      const SurfaceLabel& lb = b->lattice.label(bn);
      if (l.name != label_a) copy.genus += lb.genus;
      sq += b->lattice.dot(bn, bn);
      // The fiber is shared, so its products come from a alone.
      for (const auto& [bn2, an2] : glued)
        if (bn2 != label_b && lat.has(an2)) prods[an2] += b->lattice.dot(bn, bn2);
    }
    lat.add(copy, sq, prods);
  }
  if (w2) lat.set_w2_multiple(label_a, *w2);
  for (const auto& [bn, an] : glued) m->rename[bn] = an;
  for (const auto& l : b->lattice.labels()) {
    if (glued.count(l.name)) continue;
    std::string n = fresh_name(lat, l.name);
    m->rename[l.name] = n;
    SurfaceLabel copy = l;
    copy.name = n;
    copy.w2_multiple = std::nullopt;
    std::map<std::string, std::int64_t> prods;
    for (const auto& other : b->lattice.labels()) {
      auto it = m->rename.find(other.name);
      if (other.name == l.name || it == m->rename.end() || !lat.has(it->second)) continue;
      if (auto v = b->lattice.dot(other.name, l.name)) prods[it->second] = v;
    }
    lat.add(copy, b->lattice.dot(l.name, l.name), prods);
  }
  m->lattice = std::move(lat);
  return m;
}

const SurfaceLabel& require_torus(const Manifold& m, const std::string& label) {
  const SurfaceLabel& l = active_label(m, label);
  require(l.genus == 1, "surface '" + label + "' is not a torus");
  require(m.lattice.dot(label, label) == 0, "torus '" + label + "' must have square 0");
  return l;
}

ManifoldPtr torus_surgery(const ManifoldPtr& a, const std::string& torus, std::int64_t p, std::int64_t q,
                          std::int64_t r) {
  require_torus(*a, torus);
  require(p != 0 || q != 0 || r != 0, "(p,q,r) must be nonzero");
  require(std::gcd(std::gcd(p, q), r) == 1, "(p,q,r) must be primitive");
  auto m = node(Op::TorusSurgery, {a});
  m->params = {p, q, r};
  m->label_args = {torus};
  const int t = (a->inv.t == 0 && r % 2 == 0) ? 1 : a->inv.t;
  m->inv = from_e_sigma(a->inv.e, a->inv.sigma, t, a->inv.simply_connected);
  m->lattice = a->lattice;
  if (r % 2 == 0) forget_w2(m->lattice);
  if (r != 1 && r != -1)
    for (const auto& l : a->lattice.labels())
      if (l.name != torus && a->lattice.dot(l.name, torus) != 0) m->lattice.deactivate(l.name);
  return m;
}

ManifoldPtr knot_surgery(const ManifoldPtr& a, const std::string& torus, const knots::LinkDiagram& k,
                         std::string knot_text) {
  require_torus(*a, torus);
  if (k.component_count() != 1)
    fail(ErrorKind::NotAKnot, "knot surgery needs a knot, got " + std::to_string(k.component_count()) + " components");
  auto m = node(Op::KnotSurgery, {a});
  m->label_args = {torus};
  m->knot = k;
  if (knot_text.empty()) knot_text = k.name().empty() ? "pd(" + k.to_pd() + ")" : k.name();
  m->knot_text = std::move(knot_text);
  m->inv = a->inv;
  m->lattice = a->lattice;
  // Surfaces crossing the torus pick up a Seifert surface; their genus is not tracked.
  for (const auto& l : a->lattice.labels())
    if (l.name != torus && a->lattice.dot(l.name, torus) != 0) m->lattice.deactivate(l.name);
  return m;
}

ManifoldPtr rational_blowdown(const ManifoldPtr& a, int p, std::optional<BlowdownConfig> config,
                              std::optional<int> type) {
  require(p >= 2, "rational blowdown needs p >= 2");
  require(!type || *type == 0 || *type == 1, "type must be 0 or 1");
  require(a->inv.b_minus >= p - 1, "b- is too small to contain C_" + std::to_string(p));
  auto m = node(Op::RationalBlowdown, {a});
  m->params = {p};
  m->type_override = type;
  m->lattice = a->lattice;
  if (config) {
    config->p = p;
    const auto& u = config->spheres;
    require(u.size() == static_cast<std::size_t>(p - 1),
            "C_" + std::to_string(p) + " has " + std::to_string(p - 1) + " spheres");
    for (const auto& s : u) {
      for (const auto& [name, c] : s.coeffs()) active_label(*a, name);
      require(s.is_integral(), "configuration spheres must be integral classes");
    }
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i; j < u.size(); ++j) {
        const Rational want = i == j ? Rational(i == 0 ? -(p + 2) : -2) : Rational(j == i + 1 ? 1 : 0);
        const Rational got = a->lattice.dot(u[i], u[j]);
        require(got == want, "U" + std::to_string(i) + ".U" + std::to_string(j) + " = " + swcalc::to_string(got) +
                                 ", expected " + swcalc::to_string(want));
      }
    // Only classes orthogonal to the plumbing survive in the complement.
    for (const auto& l : a->lattice.labels()) {
      const ClassVector lv = ClassVector::of(l.name);
      for (const auto& s : u)
        if (a->lattice.dot(lv, s) != 0) {
          m->lattice.deactivate(l.name);
          break;
        }
    }
    m->config = std::move(config);
  }
  forget_w2(m->lattice);
  const std::int64_t sigma = a->inv.sigma + (p - 1);
  int t = a->inv.t;
  if (type)
    t = *type;
  else if (floor_mod(sigma, 8) != 0)
    t = 1;  // even unimodular forms have signature divisible by 8
  m->inv = from_e_sigma(a->inv.e - (p - 1), sigma, t, a->inv.simply_connected);
  return m;
}

ManifoldPtr orientation_reverse(const ManifoldPtr& a) {
  auto m = node(Op::Reverse, {a});
  m->inv = a->inv;
  m->inv.sigma = -a->inv.sigma;
  std::swap(m->inv.b_plus, m->inv.b_minus);
  m->lattice = a->lattice;
  m->lattice.negate();
  return m;
}

std::pair<std::int64_t, std::int64_t> branched_cover(std::pair<std::int64_t, std::int64_t> base, std::int64_t d,
                                                     std::int64_t eB, std::int64_t B2) {
  require(d >= 1, "cover degree must be positive");
  const Rational dd(d);
  const Rational q = (dd * dd - 1) / (3 * dd) * B2;
  const Rational c = dd * base.first - (dd - 1) * eB * 2 - q * 3;
  const Rational chi = dd * base.second - (dd - 1) * eB / 4 - q / 4;
  if (denominator(c) != 1 || denominator(chi) != 1)
    fail(ErrorKind::NonIntegralResult, "branched cover gives (c, chi_h) = (" + swcalc::to_string(c) + ", " +
                                           swcalc::to_string(chi) + ")");
  return {static_cast<std::int64_t>(numerator(c)), static_cast<std::int64_t>(numerator(chi))};
}

bool homeo_equal(const Manifold& a, const Manifold& b) {
  if (!a.inv.simply_connected || !b.inv.simply_connected)
    fail(ErrorKind::NotSimplyConnected, "homeomorphism test needs simply connected manifolds");
  return a.inv.e == b.inv.e && a.inv.sigma == b.inv.sigma && a.inv.t == b.inv.t;
}

std::string Manifold::expr() const {
  std::ostringstream os;
  auto child = [&](std::size_t i) { return children.at(i)->expr(); };
  auto type_suffix = [&] {
    if (type_override) os << (*type_override ? ",odd" : ",even");
  };
  switch (op) {
    case Op::Primitive:
      os << name;
      if (!params.empty()) os << "(" << join_params(params) << ")";
      break;
    case Op::ConnectedSum:
      os << "connected_sum(" << child(0) << "," << child(1) << ")";
      break;
    case Op::Blowup:
      os << "blowup(" << child(0) << "," << params[0] << ")";
      break;
    case Op::FiberSum:
      os << "fiber_sum(" << child(0) << "," << child(1) << "," << params[0];
      if (label_args[0] != "F" || label_args[1] != "F" || type_override)
        os << "," << label_args[0] << "," << label_args[1];
      type_suffix();
      os << ")";
      break;
    case Op::TorusSurgery:
      os << "torus_surgery(" << child(0) << "," << label_args[0] << "," << join_params(params) << ")";
      break;
    case Op::KnotSurgery:
      os << "knot_surgery(" << child(0) << "," << label_args[0] << "," << knot_text << ")";
      break;
    case Op::RationalBlowdown:
      os << "rational_blowdown(" << child(0) << "," << params[0];
      if (config)
        for (const auto& s : config->spheres) os << "," << to_string(s, children[0]->lattice.names());
      type_suffix();
      os << ")";
      break;
    case Op::Reverse:
      os << "reverse(" << child(0) << ")";
      break;
  }
  return os.str();
}

}  // namespace swcalc::manifolds
