#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "covercrimp/errors.hpp"

namespace covercrimp {

// Permutation of {0, ..., d-1}, stored as the one-line image vector.
// Composition is function composition: (a * b)(x) = a(b(x)).
class Perm {
 public:
  explicit Perm(std::size_t d);  // identity

  // img[i] is the image of i; must be a bijection.
  static Perm from_images(std::vector<std::size_t> img);
  // Cycle notation with 1-based entries, e.g. "(1 2)(3 4)"; "()" or "" is
  // the identity. Entries may be separated by spaces or commas.
  static Perm from_cycles(const std::string& s, std::size_t d);

  std::size_t degree() const { return img_.size(); }
  std::size_t apply(std::size_t i) const { return img_.at(i); }
  const std::vector<std::size_t>& images() const { return img_; }

  Perm operator*(const Perm& o) const;
  Perm inverse() const;
  bool is_identity() const;

  // Cycle lengths in weakly decreasing order, fixed points included.
  std::vector<std::size_t> cycle_type() const;
  // Number of cycles, fixed points included.
  std::size_t num_cycles() const;
  // Multiplicative order: lcm of the cycle lengths.
  unsigned long long order() const;
  // +1 for even, -1 for odd.
  int sign() const;

  // Cycle notation, 1-based, fixed points omitted; "()" for the identity.
  std::string to_cycles() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return !(*this == o); }
  bool operator<(const Perm& o) const;  // by degree, then image vector

 private:
  std::vector<std::size_t> img_;
};

// All d! permutations of degree d in lexicographic image order; d <= 8.
std::vector<Perm> symmetric_group(std::size_t d);

// All transpositions of degree d, lexicographic.
std::vector<Perm> transpositions(std::size_t d);

}  // namespace covercrimp
