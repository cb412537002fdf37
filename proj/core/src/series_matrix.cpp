#include "covercrimp/series_matrix.hpp"

#include <bit>

namespace covercrimp {

SeriesMatrix::SeriesMatrix(std::size_t rows, std::size_t cols, const Field& f, std::size_t precision)
    : rows_(rows), cols_(cols), field_(f), prec_(precision),
      data_(rows * cols, TruncatedSeries::zero(f, precision)) {
  if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
}

SeriesMatrix SeriesMatrix::identity(std::size_t n, const Field& f, std::size_t precision) {
  SeriesMatrix m(n, n, f, precision);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, TruncatedSeries::one(f, precision));
  return m;
}

const TruncatedSeries& SeriesMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw DomainError("matrix index out of range");
  return data_[i * cols_ + j];
}

void SeriesMatrix::set(std::size_t i, std::size_t j, const TruncatedSeries& v) {
  if (i >= rows_ || j >= cols_) throw DomainError("matrix index out of range");
  if (v.field() != field_ || v.precision() != prec_) {
    throw FieldMismatch("matrix entry must match the matrix field and precision");
  }
  data_[i * cols_ + j] = v;
}

SeriesMatrix SeriesMatrix::operator+(const SeriesMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch in +");
  SeriesMatrix m(rows_, cols_, field_, std::min(prec_, o.prec_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j) + o.at(i, j));
  return m;
}

SeriesMatrix SeriesMatrix::operator-(const SeriesMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch in -");
  SeriesMatrix m(rows_, cols_, field_, std::min(prec_, o.prec_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j) - o.at(i, j));
  return m;
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
  if (cols_ != o.rows_) throw DomainError("matrix shape mismatch in *");
  SeriesMatrix m(rows_, o.cols_, field_, std::min(prec_, o.prec_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < o.cols_; ++j) {
      TruncatedSeries acc = TruncatedSeries::zero(field_, m.precision());
      for (std::size_t k = 0; k < cols_; ++k) acc += at(i, k) * o.at(k, j);
      m.set(i, j, acc);
    }
  }
  return m;
}

SeriesMatrix SeriesMatrix::transpose() const {
  SeriesMatrix m(cols_, rows_, field_, prec_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.set(j, i, at(i, j));
  return m;
}

std::vector<TruncatedSeries> SeriesMatrix::apply(const std::vector<TruncatedSeries>& v) const {
  if (v.size() != cols_) throw DomainError("vector length mismatch in matrix apply");
  std::vector<TruncatedSeries> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    TruncatedSeries acc = TruncatedSeries::zero(field_, prec_);
    for (std::size_t j = 0; j < cols_; ++j) acc += at(i, j) * v[j];
    out.push_back(acc);
  }
  return out;
}

TruncatedSeries SeriesMatrix::det() const {
  if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
  std::size_t n = rows_;
  if (n > 16) throw DomainError("determinant supported up to 16x16");
  // dp[mask] = det of the submatrix on rows 0..popcount(mask)-1 and the
  // columns in mask, built by cofactor expansion along the last row.
  std::vector<TruncatedSeries> dp(std::size_t{1} << n, TruncatedSeries::zero(field_, prec_));
  dp[0] = TruncatedSeries::one(field_, prec_);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t i = std::popcount(mask);  // rows used
    TruncatedSeries acc = TruncatedSeries::zero(field_, prec_);
    std::size_t pos = 0;  // index of column j within mask, ascending
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      TruncatedSeries term = at(i - 1, j) * dp[mask ^ (1u << j)];
      if ((i - 1 + pos) % 2 == 0) acc += term;
      else acc -= term;
      ++pos;
    }
    dp[mask] = acc;
  }
  return dp[(std::size_t{1} << n) - 1];
}

SeriesMatrix SeriesMatrix::inverse() const {
  if (rows_ != cols_) throw DomainError("inverse of a non-square matrix");
  TruncatedSeries d = det();
  if (!d.is_unit()) throw DomainError("matrix inverse requires unit determinant");
  TruncatedSeries dinv = d.inverse();
  std::size_t n = rows_;
  SeriesMatrix inv(n, n, field_, prec_);
  if (n == 1) {
    inv.set(0, 0, dinv);
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Cofactor expansion: adj(A)[j][i] = (-1)^{i+j} det(minor of A without
      // row i, column j); inv = adj / det.
      SeriesMatrix minor(n - 1, n - 1, field_, prec_);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor.set(rr, cc, at(r, c));
          ++cc;
        }
        ++rr;
      }
      TruncatedSeries cof = minor.det() * dinv;
      if ((i + j) % 2 == 1) cof = -cof;
      inv.set(j, i, cof);
    }
  }
  return inv;
}

bool SeriesMatrix::operator==(const SeriesMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && prec_ == o.prec_ &&
         data_ == o.data_;
}

}  // namespace covercrimp
