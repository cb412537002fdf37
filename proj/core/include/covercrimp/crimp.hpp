#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covercrimp/cover.hpp"

namespace covercrimp {

// delta = (b - a) / 2; errors on b < a and on parity mismatch.
std::size_t crimp_delta(std::size_t a, std::size_t b);

// A normal degree-d cover of the disk together with its automorphisms over
// the base: Otilde, its branch valuation a, and a list of table
// automorphisms given as coordinate matrices (each checked to fix the unit
// and commute with multiplication). The identity is always listed.
class NormalizationData {
 public:
  enum class Kind { Split, RamifiedDisk, Explicit };

  // R^d with the idempotent basis; Aut = S_d as permutation matrices.
  static NormalizationData split(std::size_t d, const Field& f, std::size_t precision);
  // R[s]/(s^e - t) in the power basis; Aut = {s -> zeta s : zeta^e = 1 in k}.
  // Requires tameness: characteristic zero or q not dividing e.
  static NormalizationData ramified_disk(std::size_t e, const Field& f, std::size_t precision);
  // Arbitrary normal cover; the table must validate and every supplied
  // automorphism is checked.
  static NormalizationData explicit_data(DiskCover cover, std::vector<SeriesMatrix> automorphisms);

  Kind kind() const { return kind_; }
  const DiskCover& cover() const { return cover_; }
  std::size_t degree() const { return cover_.degree(); }
  const Field& field() const { return cover_.field(); }
  std::size_t precision() const { return cover_.precision(); }
  // Branch valuation a of Otilde.
  std::size_t a() const { return a_; }
  const std::vector<SeriesMatrix>& automorphisms() const { return autos_; }

 private:
  NormalizationData(Kind k, DiskCover cover, std::size_t a, std::vector<SeriesMatrix> autos)
      : kind_(k), cover_(std::move(cover)), a_(a), autos_(std::move(autos)) {}

  Kind kind_;
  DiskCover cover_;
  std::size_t a_;
  std::vector<SeriesMatrix> autos_;
};

inline constexpr unsigned long long kDefaultCrimpBudget = 10'000'000ULL;

// Fixes the normalization, the prescribed branch valuation b of the crimped
// cover, and the enumeration budget. Working precision must be at least
// b + 2*delta + 1: basis reduction and the triangular solve each lose up to
// delta coefficients to exact division, and the branch certificate needs at
// least b + 1 known coefficients.
class CrimpProblem {
 public:
  CrimpProblem(NormalizationData nd, std::size_t b,
               unsigned long long budget = kDefaultCrimpBudget);

  const NormalizationData& normalization() const { return nd_; }
  std::size_t a() const { return nd_.a(); }
  std::size_t b() const { return b_; }
  std::size_t delta() const { return delta_; }
  unsigned long long budget() const { return budget_; }
  std::size_t degree() const { return nd_.degree(); }
  const Field& field() const { return nd_.field(); }
  std::size_t precision() const { return nd_.precision(); }
  // dim_k F, F = Otilde / t^b Otilde.
  std::size_t ambient_dim() const { return nd_.degree() * b_; }

 private:
  NormalizationData nd_;
  std::size_t b_;
  std::size_t delta_;
  unsigned long long budget_;
};

// A crimp as a subspace S of F = Otilde / t^b Otilde, stored as the reduced
// row echelon basis. Coordinates of F follow the convention
// index(i, m) = i*b + m: coefficient of t^m in the i-th table coordinate of
// Otilde. branch_provenance carries the branch series when the crimp was
// produced by crimp_of over a split normalization.
struct CrimpSubalgebra {
  std::vector<std::vector<Scalar>> basis;
  std::optional<std::vector<TruncatedSeries>> branch_provenance;

  std::size_t dimension() const { return basis.size(); }
};

struct CrimpCheck {
  bool ok;
  std::string reason;  // first violated invariant, empty when ok
};

// Checks, in order: S contains the image of the base ring; S is closed under
// multiplication; S has codimension delta; the lifted subalgebra
// S + t^b Otilde has branch valuation exactly b.
CrimpCheck is_crimp(const CrimpProblem& p, const std::vector<std::vector<Scalar>>& span_rows);

// The lifted cover: a free rank-d table for S + t^b Otilde in a column
// Hermite basis, at precision N - 2*delta. Requires S multiplicatively
// closed.
DiskCover crimp_lift(const CrimpProblem& p, const std::vector<std::vector<Scalar>>& span_rows);

// Image in F of a split cover given with branch provenance; requires the
// cover's branch valuation to be exactly b.
CrimpSubalgebra crimp_of(const CrimpProblem& p, const DiskCover& embedded_cover);

enum class EnumerationStrategy {
  // Filter multiplicatively closed candidates, then certify the branch
  // divisor on the lift.
  SubalgebraFirst,
  // Certify the branch divisor on the candidate module first, then filter
  // multiplicative closure.
  BranchFirst,
};

// All crimps of the problem over a finite field: the complete duplicate-free
// list of subspaces passing is_crimp, in lexicographic basis order. Candidate
// subspaces visited are counted against the budget; exceeding it throws
// BudgetExceeded. Rational base fields are refused (verification only).
std::vector<CrimpSubalgebra> enumerate_crimps(
    const CrimpProblem& p, EnumerationStrategy strategy = EnumerationStrategy::SubalgebraFirst);

// Orbit partition of the given crimps under Aut(Otilde); indices into the
// input list, each orbit ascending, orbits ordered by first member. Throws
// if the list is not closed under the action.
std::vector<std::vector<std::size_t>> aut_orbits(const CrimpProblem& p,
                                                 const std::vector<CrimpSubalgebra>& crimps);

// Equality of subalgebras up to the S_d action; split normalizations only.
bool crimps_isomorphic(const CrimpProblem& p, const CrimpSubalgebra& c1, const CrimpSubalgebra& c2);

// Cross-ratio orbit of the four distinguished tangent directions of a
// 3-branch crimp whose branches meet at one point: three branch slopes plus
// the vertical fiber direction. For slopes normalized to (0, 1, c, infinity)
// the orbit is {c, 1/c, 1-c, 1/(1-c), c/(c-1), (c-1)/c}, returned sorted and
// deduplicated. Requires branch provenance with equal constant terms and
// pairwise distinct first-order terms.
std::vector<Scalar> tangent_cross_ratio(const CrimpProblem& p, const CrimpSubalgebra& c);

}  // namespace covercrimp
