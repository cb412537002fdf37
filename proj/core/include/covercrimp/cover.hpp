#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covercrimp/series_matrix.hpp"

namespace covercrimp {

// Multiplication table of a commutative based algebra of rank d over
// k[t]/t^N: constants c[i][j][k] with e_i * e_j = sum_k c[i][j][k] e_k and
// the unit written in coordinates. N = 1 degenerates to a plain scalar base.
// The table is data; the algebra laws are checked by validate_algebra.
class StructureConstants {
 public:
  StructureConstants(std::size_t degree, const Field& f, std::size_t precision);

  std::size_t degree() const { return d_; }
  const Field& field() const { return field_; }
  std::size_t precision() const { return prec_; }

  const TruncatedSeries& c(std::size_t i, std::size_t j, std::size_t k) const;
  void set_c(std::size_t i, std::size_t j, std::size_t k, const TruncatedSeries& v);
  const std::vector<TruncatedSeries>& unit() const { return unit_; }
  void set_unit(const std::vector<TruncatedSeries>& u);

  // Product of two coordinate vectors.
  std::vector<TruncatedSeries> multiply(const std::vector<TruncatedSeries>& a,
                                        const std::vector<TruncatedSeries>& b) const;
  // Matrix of multiplication by the element with coordinates v.
  SeriesMatrix mult_matrix(const std::vector<TruncatedSeries>& v) const;
  // Trace of multiplication by the element with coordinates v.
  TruncatedSeries trace(const std::vector<TruncatedSeries>& v) const;
  // tau[k] = trace of multiplication by e_k.
  std::vector<TruncatedSeries> trace_vector() const;

  std::vector<TruncatedSeries> basis_vector(std::size_t i) const;

  // Restrict every entry to a lower truncation order.
  StructureConstants shorten(std::size_t new_precision) const;

 private:
  std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const { return (i * d_ + j) * d_ + k; }

  std::size_t d_;
  Field field_;
  std::size_t prec_;
  std::vector<TruncatedSeries> c_;
  std::vector<TruncatedSeries> unit_;
};

struct Violation {
  std::string law;  // "commutativity" | "associativity" | "unit"
  std::vector<std::size_t> indices;
  std::string to_string() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Checks commutativity, associativity and the two-sided unit law as exact
// identities; violations are reported as data, never thrown.
ValidationReport validate_algebra(const StructureConstants& sc);

// Identification of a split cover with R^d: d branch series with pairwise
// distinct images below the truncation order. Column j of the coordinate
// matrix is the power basis vector x^j = (u_1^j, ..., u_d^j).
struct SplitEmbedding {
  std::vector<TruncatedSeries> branches;
  SeriesMatrix coordinate_matrix() const;
};

// A finite flat degree-d cover of the formal disk, presented by a
// multiplication table over k[t]/t^N plus optional provenance (defining
// polynomial, branch data). tame_certified marks covers whose trace-form
// discriminant is trustworthy in every characteristic: split presentations
// and their crimp lifts, where disc = det^2 * unit holds identically.
class DiskCover {
 public:
  explicit DiskCover(StructureConstants table)
      : table_(std::move(table)), tame_certified_(false) {}

  const StructureConstants& table() const { return table_; }
  std::size_t degree() const { return table_.degree(); }
  const Field& field() const { return table_.field(); }
  std::size_t precision() const { return table_.precision(); }

  const std::optional<std::vector<TruncatedSeries>>& defining_polynomial() const { return poly_; }
  const std::optional<SplitEmbedding>& split_embedding() const { return embedding_; }
  bool tame_certified() const { return tame_certified_; }

  void set_defining_polynomial(std::vector<TruncatedSeries> p) { poly_ = std::move(p); }
  void set_split_embedding(SplitEmbedding e) { embedding_ = std::move(e); }
  void set_tame_certified(bool v) { tame_certified_ = v; }

 private:
  StructureConstants table_;
  std::optional<std::vector<TruncatedSeries>> poly_;
  std::optional<SplitEmbedding> embedding_;
  bool tame_certified_;
};

// Cover of degree d presented by a monic polynomial: coefficients ascending,
// size d+1, leading coefficient exactly 1. Basis {1, x, ..., x^{d-1}}.
DiskCover from_polynomial(const std::vector<TruncatedSeries>& monic_coeffs);

// Split cover generated by x = (u_1, ..., u_d) inside R^d; requires the
// branches pairwise distinct below the truncation order. The table is the
// power-basis table of prod (x - u_i); the embedding is retained.
DiskCover from_branches(const std::vector<TruncatedSeries>& u);

// Gram matrix of the trace pairing: T[i][j] = tr(e_i e_j *).
SeriesMatrix trace_form(const DiskCover& c);

// det of the trace form. Over F_q with q <= d the trace pairing can
// degenerate for wildly ramified covers, so the query is refused unless the
// cover is tame-certified.
TruncatedSeries discriminant(const DiskCover& c);

// Valuation of the discriminant; throws PrecisionExhausted when every known
// coefficient vanishes (the valuation is >= N and cannot be certified).
std::size_t branch_valuation(const DiskCover& c);

// True iff the discriminant is a unit. Never precision-limited.
bool is_etale(const DiskCover& c);

// Rewrites the table in the basis whose coordinate columns are M's columns;
// M must be invertible over the base ring (unit determinant). Presentation
// provenance is dropped; tame certification is intrinsic and kept.
DiskCover change_basis(const DiskCover& c, const SeriesMatrix& M);

struct TschirnhausSplit {
  // Coordinates of a basis of the trace-zero complement F, in input-basis
  // order with the dropped unit-pivot index omitted.
  std::vector<std::vector<TruncatedSeries>> complement_basis;
  // Certificate that 1 together with F generates: [unit | F] is a basis,
  // so the symmetric algebra on F surjects already in degree <= 1.
  std::size_t generation_degree;
  std::size_t certificate_det_valuation;
};

// Splitting O = R*1 (+) F by 1/d times the trace; requires d invertible
// in the coefficient field.
TschirnhausSplit tschirnhaus_split(const DiskCover& c);

}  // namespace covercrimp
