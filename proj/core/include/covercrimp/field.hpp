#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "covercrimp/errors.hpp"

namespace covercrimp {

// Coefficient field descriptor: the rationals, or a prime field F_q with
// q prime and q < 2^31.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint32_t q);

  bool is_rational() const { return q_ == 0; }
  bool is_prime_field() const { return q_ != 0; }
  // Modulus of a prime field; 0 for the rationals.
  std::uint32_t modulus() const { return q_; }
  // Characteristic: q for F_q, 0 for the rationals.
  std::uint32_t characteristic() const { return q_; }

  bool operator==(const Field& o) const { return q_ == o.q_; }
  bool operator!=(const Field& o) const { return q_ != o.q_; }

  std::string to_string() const;

 private:
  explicit Field(std::uint32_t q) : q_(q) {}
  std::uint32_t q_;
};

// An exact field element. Value-semantic tagged union: an arbitrary-precision
// rational (GMP) or a residue in F_q. Operations on scalars from different
// fields throw FieldMismatch; division by zero throws DomainError.
class Scalar {
 public:
  Scalar() : field_(Field::rationals()), rat_(0), rem_(0) {}

  static Scalar zero(const Field& f) { return from_integer(0, f); }
  static Scalar one(const Field& f) { return from_integer(1, f); }
  static Scalar from_integer(long n, const Field& f);
  static Scalar from_mpq(const mpq_class& v, const Field& f);
  // Parses "n" or "p/q" (arbitrary size). For F_q the value is reduced mod q;
  // a denominator must be invertible mod q.
  static Scalar from_string(const std::string& s, const Field& f);

  const Field& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const;
  Scalar pow(unsigned long e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Total order within one field (residue order for F_q, numeric order for
  // rationals); used only to make outputs deterministic.
  int cmp(const Scalar& o) const;

  // Canonical form: decimal residue in [0, q) for F_q; "n" or "p/q" with
  // q > 0 and gcd(p, q) = 1 for rationals.
  std::string to_string() const;

  // F_q residue; only valid when field().is_prime_field().
  std::uint32_t residue() const { return rem_; }
  // Rational value; only valid when field().is_rational().
  const mpq_class& rational() const { return rat_; }

 private:
  void check_same_field(const Scalar& o) const;

  Field field_;
  mpq_class rat_;
  std::uint32_t rem_;
};

}  // namespace covercrimp
