#pragma once

#include <vector>

#include "covercrimp/series.hpp"

namespace covercrimp {

// Dense matrix over k[t]/t^N. All entries share one field and one precision.
class SeriesMatrix {
 public:
  SeriesMatrix(std::size_t rows, std::size_t cols, const Field& f, std::size_t precision);

  static SeriesMatrix identity(std::size_t n, const Field& f, std::size_t precision);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }
  std::size_t precision() const { return prec_; }

  const TruncatedSeries& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const TruncatedSeries& v);

  SeriesMatrix operator+(const SeriesMatrix& o) const;
  SeriesMatrix operator-(const SeriesMatrix& o) const;
  SeriesMatrix operator*(const SeriesMatrix& o) const;
  SeriesMatrix transpose() const;

  std::vector<TruncatedSeries> apply(const std::vector<TruncatedSeries>& v) const;

  // Exact determinant by Laplace expansion with subset memoization
  // (valid over any commutative ring; no divisions). Square only, n <= 16.
  TruncatedSeries det() const;

  // Inverse via adjugate / determinant; requires det to be a unit.
  SeriesMatrix inverse() const;

  bool operator==(const SeriesMatrix& o) const;

 private:
  std::size_t rows_, cols_;
  Field field_;
  std::size_t prec_;
  std::vector<TruncatedSeries> data_;
};

}  // namespace covercrimp
