#include "covercrimp/series.hpp"

#include <algorithm>

namespace covercrimp {

TruncatedSeries::TruncatedSeries(const Field& f, std::size_t precision)
    : field_(f), coeff_(precision, Scalar::zero(f)) {
  if (precision == 0) throw DomainError("series precision must be >= 1");
}

TruncatedSeries TruncatedSeries::zero(const Field& f, std::size_t precision) {
  return TruncatedSeries(f, precision);
}

TruncatedSeries TruncatedSeries::one(const Field& f, std::size_t precision) {
  return constant(Scalar::one(f), precision);
}

TruncatedSeries TruncatedSeries::constant(const Scalar& c, std::size_t precision) {
  TruncatedSeries s(c.field(), precision);
  s.coeff_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const Scalar& c, std::size_t e, std::size_t precision) {
  TruncatedSeries s(c.field(), precision);
  if (e >= precision) {
    throw PrecisionExhausted("monomial exponent " + std::to_string(e) +
                             " not below precision " + std::to_string(precision));
  }
  s.coeff_[e] = c;
  return s;
}

TruncatedSeries TruncatedSeries::from_coefficients(const std::vector<Scalar>& coeffs,
                                                   const Field& f, std::size_t precision) {
  if (coeffs.size() > precision) {
    throw SchemaError("series literal has " + std::to_string(coeffs.size()) +
                      " coefficients, above precision " + std::to_string(precision));
  }
  TruncatedSeries s(f, precision);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].field() != f) throw FieldMismatch("series coefficient field differs from series field");
    s.coeff_[i] = coeffs[i];
  }
  return s;
}

void TruncatedSeries::set_coeff(std::size_t i, const Scalar& c) {
  if (c.field() != field_) throw FieldMismatch("coefficient field differs from series field");
  coeff_.at(i) = c;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeff_.begin(), coeff_.end(), [](const Scalar& c) { return c.is_zero(); });
}

std::optional<std::size_t> TruncatedSeries::valuation() const {
  for (std::size_t i = 0; i < coeff_.size(); ++i) {
    if (!coeff_[i].is_zero()) return i;
  }
  return std::nullopt;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (field_ != o.field_) {
    throw FieldMismatch("series fields differ: " + field_.to_string() + " vs " + o.field_.to_string());
  }
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s = *this;
  for (auto& c : s.coeff_) c = -c;
  return s;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o);
  std::size_t n = std::min(precision(), o.precision());
  TruncatedSeries s(field_, n);
  for (std::size_t i = 0; i < n; ++i) s.coeff_[i] = coeff_[i] + o.coeff_[i];
  return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_compatible(o);
  std::size_t n = std::min(precision(), o.precision());
  TruncatedSeries s(field_, n);
  for (std::size_t i = 0; i < n; ++i) s.coeff_[i] = coeff_[i] - o.coeff_[i];
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o);
  std::size_t n = std::min(precision(), o.precision());
  TruncatedSeries s(field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeff_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (o.coeff_[j].is_zero()) continue;
      s.coeff_[i + j] += coeff_[i] * o.coeff_[j];
    }
  }
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const Scalar& c) const {
  TruncatedSeries s = *this;
  for (auto& x : s.coeff_) x = x * c;
  return s;
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (!is_unit()) throw DomainError("series inverse requires valuation 0");
  TruncatedSeries r(field_, precision());
  Scalar c0 = coeff_[0].inverse();
  r.coeff_[0] = c0;
  // Recurrence: sum_{j<=i} a_j r_{i-j} = 0 for i >= 1.
  for (std::size_t i = 1; i < precision(); ++i) {
    Scalar acc = Scalar::zero(field_);
    for (std::size_t j = 1; j <= i; ++j) acc += coeff_[j] * r.coeff_[i - j];
    r.coeff_[i] = -(acc * c0);
  }
  return r;
}

TruncatedSeries TruncatedSeries::divide_by_t_power(std::size_t k) const {
  if (k == 0) return *this;
  if (k >= precision()) throw PrecisionExhausted("division by t^" + std::to_string(k) +
                                                 " leaves no known coefficients");
  for (std::size_t i = 0; i < k; ++i) {
    if (!coeff_[i].is_zero()) throw DomainError("inexact division by t^" + std::to_string(k));
  }
  TruncatedSeries s(field_, precision() - k);
  for (std::size_t i = 0; i < s.precision(); ++i) s.coeff_[i] = coeff_[i + k];
  return s;
}

TruncatedSeries TruncatedSeries::shorten(std::size_t new_precision) const {
  if (new_precision > precision()) {
    throw PrecisionExhausted("cannot extend series precision " + std::to_string(precision()) +
                             " to " + std::to_string(new_precision));
  }
  TruncatedSeries s(field_, new_precision);
  for (std::size_t i = 0; i < new_precision; ++i) s.coeff_[i] = coeff_[i];
  return s;
}

TruncatedSeries TruncatedSeries::shift(std::size_t k) const {
  TruncatedSeries s(field_, precision());
  for (std::size_t i = 0; i + k < precision(); ++i) s.coeff_[i + k] = coeff_[i];
  return s;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return field_ == o.field_ && coeff_ == o.coeff_;
}

std::string TruncatedSeries::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeff_.size(); ++i) {
    if (coeff_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += coeff_[i].to_string();
    } else {
      std::string m = i == 1 ? "t" : "t^" + std::to_string(i);
      out += coeff_[i].is_one() ? m : coeff_[i].to_string() + "*" + m;
    }
  }
  if (out.empty()) out = "0";
  out += " + O(t^" + std::to_string(precision()) + ")";
  return out;
}

}  // namespace covercrimp
