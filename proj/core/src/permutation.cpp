#include "covercrimp/permutation.hpp"

#include <algorithm>
#include <numeric>

namespace covercrimp {

Perm::Perm(std::size_t d) : img_(d) { std::iota(img_.begin(), img_.end(), 0); }

Perm Perm::from_images(std::vector<std::size_t> img) {
  std::vector<bool> seen(img.size(), false);
  for (std::size_t v : img) {
    if (v >= img.size() || seen[v]) throw SchemaError("image vector is not a bijection");
    seen[v] = true;
  }
  Perm p(img.size());
  p.img_ = std::move(img);
  return p;
}

Perm Perm::from_cycles(const std::string& s, std::size_t d) {
  Perm p(d);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == ',' || s[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < s.size()) {
    if (s[i] != '(') throw SchemaError("expected '(' in cycle notation");
    ++i;
    std::vector<std::size_t> cyc;
    skip_ws();
    while (i < s.size() && s[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw SchemaError("expected digit in cycle notation");
      }
      std::size_t v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + static_cast<std::size_t>(s[i] - '0');
        ++i;
      }
      if (v < 1 || v > d) throw SchemaError("cycle entry out of range 1.." + std::to_string(d));
      cyc.push_back(v - 1);
      skip_ws();
    }
    if (i >= s.size()) throw SchemaError("unterminated cycle");
    ++i;  // ')'
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      for (std::size_t l = k + 1; l < cyc.size(); ++l) {
        if (cyc[k] == cyc[l]) throw SchemaError("repeated entry inside a cycle");
      }
    }
    // Disjointness across cycles: each entry must still be fixed.
    for (std::size_t v : cyc) {
      if (p.img_[v] != v) throw SchemaError("cycles are not disjoint");
    }
    for (std::size_t k = 0; k + 1 < cyc.size(); ++k) p.img_[cyc[k]] = cyc[k + 1];
    if (cyc.size() >= 2) p.img_[cyc.back()] = cyc.front();
    skip_ws();
  }
  return p;
}

Perm Perm::operator*(const Perm& o) const {
  if (degree() != o.degree()) throw DomainError("permutation degrees differ");
  Perm p(degree());
  for (std::size_t i = 0; i < degree(); ++i) p.img_[i] = img_[o.img_[i]];
  return p;
}

Perm Perm::inverse() const {
  Perm p(degree());
  for (std::size_t i = 0; i < degree(); ++i) p.img_[img_[i]] = i;
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < degree(); ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

std::vector<std::size_t> Perm::cycle_type() const {
  std::vector<std::size_t> type;
  std::vector<bool> seen(degree(), false);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = img_[j];
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

std::size_t Perm::num_cycles() const { return cycle_type().size(); }

unsigned long long Perm::order() const {
  unsigned long long o = 1;
  for (std::size_t len : cycle_type()) o = std::lcm(o, static_cast<unsigned long long>(len));
  return o;
}

int Perm::sign() const {
  // parity = d - #cycles mod 2
  return (degree() - num_cycles()) % 2 == 0 ? 1 : -1;
}

std::string Perm::to_cycles() const {
  std::string out;
  std::vector<bool> seen(degree(), false);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i] || img_[i] == i) {
      seen[i] = true;
      continue;
    }
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = img_[j];
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

bool Perm::operator<(const Perm& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  return img_ < o.img_;
}

std::vector<Perm> symmetric_group(std::size_t d) {
  if (d > 8) throw DomainError("symmetric_group supported up to degree 8");
  std::vector<std::size_t> img(d);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

std::vector<Perm> transpositions(std::size_t d) {
  std::vector<Perm> out;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      Perm p(d);
      std::vector<std::size_t> img = p.images();
      std::swap(img[a], img[b]);
      out.push_back(Perm::from_images(std::move(img)));
    }
  }
  return out;
}

}  // namespace covercrimp
