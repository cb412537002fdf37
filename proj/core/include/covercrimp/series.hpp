#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covercrimp/field.hpp"

namespace covercrimp {

// Element of k[t]/t^N: exactly N stored coefficients, ascending exponent.
// The truncation order N ("precision") is part of the value's identity:
// the zero series at precision N is a different value from the zero series
// at precision M != N, and equality requires equal precisions. Arithmetic
// propagates the minimum precision of the operands.
class TruncatedSeries {
 public:
  TruncatedSeries(const Field& f, std::size_t precision);

  static TruncatedSeries zero(const Field& f, std::size_t precision);
  static TruncatedSeries one(const Field& f, std::size_t precision);
  // c * t^e; requires e < precision.
  static TruncatedSeries monomial(const Scalar& c, std::size_t e, std::size_t precision);
  static TruncatedSeries constant(const Scalar& c, std::size_t precision);
  // Coefficients ascending; fewer than `precision` entries are padded with
  // zeros, more is an error.
  static TruncatedSeries from_coefficients(const std::vector<Scalar>& coeffs,
                                           const Field& f, std::size_t precision);

  const Field& field() const { return field_; }
  std::size_t precision() const { return coeff_.size(); }
  const Scalar& coeff(std::size_t i) const { return coeff_.at(i); }
  void set_coeff(std::size_t i, const Scalar& c);
  const std::vector<Scalar>& coefficients() const { return coeff_; }

  bool is_zero() const;
  // Order of vanishing. nullopt means "no nonzero coefficient below the
  // truncation order", i.e. valuation >= precision(); whether the exact
  // valuation is finite is not knowable at this precision.
  std::optional<std::size_t> valuation() const;
  bool is_unit() const { return !coeff_.empty() && !coeff_[0].is_zero(); }

  TruncatedSeries operator-() const;
  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const Scalar& c) const;
  TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = *this - o; }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  // Multiplicative inverse; requires a unit (valuation 0).
  TruncatedSeries inverse() const;
  // Exact division by t^k: requires the k lowest coefficients to vanish.
  // Honest precision: the result lives at precision() - k.
  TruncatedSeries divide_by_t_power(std::size_t k) const;
  // Restriction to a lower truncation order.
  TruncatedSeries shorten(std::size_t new_precision) const;
  TruncatedSeries shift(std::size_t k) const;  // multiply by t^k

  // Same field, same precision, same coefficients.
  bool operator==(const TruncatedSeries& o) const;
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  // Human-readable form, e.g. "1 + 2*t + t^3 + O(t^8)".
  std::string to_string() const;

 private:
  void check_compatible(const TruncatedSeries& o) const;

  Field field_;
  std::vector<Scalar> coeff_;
};

}  // namespace covercrimp
