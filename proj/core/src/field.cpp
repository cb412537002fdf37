#include "covercrimp/field.hpp"

#include <cstdlib>

namespace covercrimp {

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

// Residue of a GMP rational mod q; the denominator must be prime to q.
std::uint32_t mpq_mod(const mpq_class& v, std::uint32_t q) {
  mpz_class num = v.get_num(), den = v.get_den();
  mpz_class r = num % q;
  if (r < 0) r += q;
  std::uint64_t n = r.get_ui();
  mpz_class d = den % q;
  std::uint64_t dm = d.get_ui();
  if (dm == 0) throw DomainError("denominator not invertible mod " + std::to_string(q));
  // Fermat inverse: q is prime.
  std::uint64_t inv = 1, base = dm, e = q - 2;
  while (e) {
    if (e & 1) inv = inv * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(n * inv % q);
}

}  // namespace

Field Field::prime(std::uint32_t q) {
  if (q >= (1u << 31)) throw DomainError("prime field modulus must be < 2^31");
  if (!is_prime_u32(q)) throw DomainError("field modulus " + std::to_string(q) + " is not prime");
  return Field(q);
}

std::string Field::to_string() const {
  return is_rational() ? std::string("rational") : "F_" + std::to_string(q_);
}

Scalar Scalar::from_integer(long n, const Field& f) {
  Scalar s;
  s.field_ = f;
  if (f.is_rational()) {
    s.rat_ = mpq_class(n);
  } else {
    long r = n % static_cast<long>(f.modulus());
    if (r < 0) r += f.modulus();
    s.rem_ = static_cast<std::uint32_t>(r);
  }
  return s;
}

Scalar Scalar::from_mpq(const mpq_class& v, const Field& f) {
  Scalar s;
  s.field_ = f;
  if (f.is_rational()) {
    s.rat_ = v;
    s.rat_.canonicalize();
  } else {
    s.rem_ = mpq_mod(v, f.modulus());
  }
  return s;
}

Scalar Scalar::from_string(const std::string& str, const Field& f) {
  mpq_class v;
  if (v.set_str(str, 10) != 0) throw SchemaError("bad scalar literal: \"" + str + "\"");
  if (v.get_den() == 0) throw SchemaError("zero denominator in scalar literal: \"" + str + "\"");
  v.canonicalize();
  return from_mpq(v, f);
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_) {
    throw FieldMismatch("scalar fields differ: " + field_.to_string() + " vs " + o.field_.to_string());
  }
}

bool Scalar::is_zero() const {
  return field_.is_rational() ? rat_ == 0 : rem_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_rational() ? rat_ == 1 : rem_ == 1;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.is_rational()) {
    s.rat_ = -rat_;
  } else {
    s.rem_ = rem_ == 0 ? 0 : field_.modulus() - rem_;
  }
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar s = *this;
  if (field_.is_rational()) {
    s.rat_ = rat_ + o.rat_;
  } else {
    std::uint64_t r = static_cast<std::uint64_t>(rem_) + o.rem_;
    if (r >= field_.modulus()) r -= field_.modulus();
    s.rem_ = static_cast<std::uint32_t>(r);
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar s = *this;
  if (field_.is_rational()) {
    s.rat_ = rat_ * o.rat_;
    s.rat_.canonicalize();
  } else {
    s.rem_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(rem_) * o.rem_ % field_.modulus());
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  Scalar s = *this;
  if (field_.is_rational()) {
    s.rat_ = 1 / rat_;
    s.rat_.canonicalize();
  } else {
    std::uint64_t inv = 1, base = rem_, e = field_.modulus() - 2;
    while (e) {
      if (e & 1) inv = inv * base % field_.modulus();
      base = base * base % field_.modulus();
      e >>= 1;
    }
    s.rem_ = static_cast<std::uint32_t>(inv);
  }
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same_field(o);
  return *this * o.inverse();
}

Scalar Scalar::pow(unsigned long e) const {
  Scalar acc = Scalar::one(field_), base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  return field_.is_rational() ? rat_ == o.rat_ : rem_ == o.rem_;
}

int Scalar::cmp(const Scalar& o) const {
  check_same_field(o);
  if (field_.is_rational()) {
    int c = ::cmp(rat_, o.rat_);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  return rem_ < o.rem_ ? -1 : (rem_ > o.rem_ ? 1 : 0);
}

std::string Scalar::to_string() const {
  if (field_.is_rational()) return rat_.get_str();
  return std::to_string(rem_);
}

}  // namespace covercrimp
