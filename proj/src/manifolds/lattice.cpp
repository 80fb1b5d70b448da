#include "swcalc/manifolds/lattice.hpp"

#include <algorithm>
#include <cctype>

namespace swcalc::manifolds {

ClassVector ClassVector::of(const std::string& label, const Rational& coeff) {
  ClassVector v;
  v.add(label, coeff);
  return v;
}

Rational ClassVector::coefficient(const std::string& label) const {
  auto it = coeffs_.find(label);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

bool ClassVector::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& kv) { return denominator(kv.second) == 1; });
}

ClassVector& ClassVector::add(const std::string& label, const Rational& c) {
  Rational& slot = coeffs_[label];
  slot += c;
  if (slot == 0) coeffs_.erase(label);
  return *this;
}

ClassVector operator+(ClassVector a, const ClassVector& b) {
  for (const auto& [k, v] : b.coeffs_) a.add(k, v);
  return a;
}

ClassVector operator-(ClassVector a, const ClassVector& b) {
  for (const auto& [k, v] : b.coeffs_) a.add(k, -v);
  return a;
}

ClassVector operator*(const Rational& k, ClassVector v) {
  if (k == 0) return {};
  for (auto& [name, c] : v.coeffs_) c *= k;
  return v;
}

ClassVector parse_class(std::string_view text) {
  ClassVector out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> std::optional<Integer> {
    skip();
    std::size_t b = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (b == i) return std::nullopt;
    return Integer(std::string(text.substr(b, i - b)));
  };
  auto bad = [&](const std::string& what) {
    fail(ErrorKind::SyntaxError, "class '" + std::string(text) + "': " + what);
  };
  bool first = true;
  skip();
  if (i == text.size()) bad("empty");
  while (true) {
    skip();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      bad("expected '+' or '-'");
    }
    first = false;
    Rational coeff = 1;
    auto num = number();
    if (num) coeff = Rational(*num);
    skip();
    if (i < text.size() && text[i] == '*') {
      if (!num) bad("'*' without coefficient");
      ++i;
      skip();
    }
    std::string name;
    if (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
      std::size_t b = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      name = std::string(text.substr(b, i - b));
    } else if (!num) {
      bad("expected a coefficient or label");
    }
    skip();
    if (i < text.size() && text[i] == '/') {
      ++i;
      auto den = number();
      if (!den || *den == 0) bad("bad denominator");
      coeff /= Rational(*den);
    }
    if (name.empty()) {
      if (coeff != 0) bad("bare constants are not classes");
      continue;
    }
    out.add(name, sign * coeff);
  }
  return out;
}

std::string to_string(const ClassVector& v, const std::vector<std::string>& order) {
  if (v.is_zero()) return "0";
  std::vector<std::string> names;
  for (const auto& n : order)
    if (v.coeffs().count(n)) names.push_back(n);
  for (const auto& [n, c] : v.coeffs())
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  std::string out;
  for (const auto& n : names) {
    Rational c = v.coefficient(n);
    const bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const Integer num = numerator(c), den = denominator(c);
    if (num != 1) out += num.str();
    out += n;
    if (den != 1) out += "/" + den.str();
  }
  return out;
}

std::optional<std::size_t> LabelLattice::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i].name == name) return i;
  return std::nullopt;
}

const SurfaceLabel& LabelLattice::label(std::string_view name) const {
  auto i = index_of(name);
  if (!i) fail(ErrorKind::MissingLabel, "no surface labelled '" + std::string(name) + "'");
  return labels_[*i];
}

std::vector<std::string> LabelLattice::names(bool active_only) const {
  std::vector<std::string> out;
  for (const auto& l : labels_)
    if (!active_only || l.active) out.push_back(l.name);
  return out;
}

void LabelLattice::add(SurfaceLabel label, std::int64_t square, const std::map<std::string, std::int64_t>& products) {
  if (has(label.name)) fail(ErrorKind::InvalidParameters, "duplicate label '" + label.name + "'");
  std::vector<std::int64_t> row(labels_.size() + 1, 0);
  for (const auto& [other, v] : products) {
    auto j = index_of(other);
    if (!j) fail(ErrorKind::MissingLabel, "no surface labelled '" + other + "'");
    row[*j] = v;
  }
  row.back() = square;
  for (std::size_t j = 0; j < labels_.size(); ++j) gram_[j].push_back(row[j]);
  gram_.push_back(std::move(row));
  labels_.push_back(std::move(label));
}

void LabelLattice::set_w2_multiple(std::string_view name, std::optional<int> k) {
  label(name);
  labels_[*index_of(name)].w2_multiple = k;
}

void LabelLattice::deactivate(std::string_view name) {
  label(name);
  labels_[*index_of(name)].active = false;
}

void LabelLattice::negate() {
  for (auto& row : gram_)
    for (auto& v : row) v = -v;
}

std::int64_t LabelLattice::dot(std::string_view a, std::string_view b) const {
  label(a);
  label(b);
  return gram_[*index_of(a)][*index_of(b)];
}

Rational LabelLattice::dot(const ClassVector& a, const ClassVector& b) const {
  Rational s = 0;
  for (const auto& [na, ca] : a.coeffs())
    for (const auto& [nb, cb] : b.coeffs()) s += ca * cb * Rational(dot(na, nb));
  return s;
}

void LabelLattice::check(const ClassVector& v) const {
  for (const auto& [n, c] : v.coeffs()) label(n);
}

}  // namespace swcalc::manifolds
