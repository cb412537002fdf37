#include "covercrimp/cover.hpp"

#include <algorithm>

namespace covercrimp {

StructureConstants::StructureConstants(std::size_t degree, const Field& f, std::size_t precision)
    : d_(degree), field_(f), prec_(precision),
      c_(degree * degree * degree, TruncatedSeries::zero(f, precision)),
      unit_(degree, TruncatedSeries::zero(f, precision)) {
  if (degree == 0) throw DomainError("algebra degree must be >= 1");
}

const TruncatedSeries& StructureConstants::c(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= d_ || j >= d_ || k >= d_) throw DomainError("structure constant index out of range");
  return c_[idx(i, j, k)];
}

void StructureConstants::set_c(std::size_t i, std::size_t j, std::size_t k, const TruncatedSeries& v) {
  if (i >= d_ || j >= d_ || k >= d_) throw DomainError("structure constant index out of range");
  if (v.field() != field_ || v.precision() != prec_) {
    throw FieldMismatch("structure constant must match the table field and precision");
  }
  c_[idx(i, j, k)] = v;
}

void StructureConstants::set_unit(const std::vector<TruncatedSeries>& u) {
  if (u.size() != d_) throw DomainError("unit coordinate count differs from degree");
  for (const auto& x : u) {
    if (x.field() != field_ || x.precision() != prec_) {
      throw FieldMismatch("unit coordinate must match the table field and precision");
    }
  }
  unit_ = u;
}

std::vector<TruncatedSeries> StructureConstants::multiply(const std::vector<TruncatedSeries>& a,
                                                          const std::vector<TruncatedSeries>& b) const {
  if (a.size() != d_ || b.size() != d_) throw DomainError("coordinate vector length differs from degree");
  std::vector<TruncatedSeries> out(d_, TruncatedSeries::zero(field_, prec_));
  for (std::size_t i = 0; i < d_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < d_; ++j) {
      if (b[j].is_zero()) continue;
      TruncatedSeries ab = a[i] * b[j];
      for (std::size_t k = 0; k < d_; ++k) {
        const TruncatedSeries& ck = c_[idx(i, j, k)];
        if (!ck.is_zero()) out[k] += ab * ck;
      }
    }
  }
  return out;
}

SeriesMatrix StructureConstants::mult_matrix(const std::vector<TruncatedSeries>& v) const {
  if (v.size() != d_) throw DomainError("coordinate vector length differs from degree");
  SeriesMatrix m(d_, d_, field_, prec_);
  // column j = coordinates of v * e_j
  for (std::size_t j = 0; j < d_; ++j) {
    for (std::size_t k = 0; k < d_; ++k) {
      TruncatedSeries acc = TruncatedSeries::zero(field_, prec_);
      for (std::size_t i = 0; i < d_; ++i) {
        if (!v[i].is_zero()) acc += v[i] * c_[idx(i, j, k)];
      }
      m.set(k, j, acc);
    }
  }
  return m;
}

std::vector<TruncatedSeries> StructureConstants::trace_vector() const {
  std::vector<TruncatedSeries> tau(d_, TruncatedSeries::zero(field_, prec_));
  for (std::size_t k = 0; k < d_; ++k) {
    TruncatedSeries acc = TruncatedSeries::zero(field_, prec_);
    for (std::size_t l = 0; l < d_; ++l) acc += c_[idx(k, l, l)];
    tau[k] = acc;
  }
  return tau;
}

TruncatedSeries StructureConstants::trace(const std::vector<TruncatedSeries>& v) const {
  if (v.size() != d_) throw DomainError("coordinate vector length differs from degree");
  std::vector<TruncatedSeries> tau = trace_vector();
  TruncatedSeries acc = TruncatedSeries::zero(field_, prec_);
  for (std::size_t k = 0; k < d_; ++k) acc += v[k] * tau[k];
  return acc;
}

std::vector<TruncatedSeries> StructureConstants::basis_vector(std::size_t i) const {
  if (i >= d_) throw DomainError("basis index out of range");
  std::vector<TruncatedSeries> v(d_, TruncatedSeries::zero(field_, prec_));
  v[i] = TruncatedSeries::one(field_, prec_);
  return v;
}

StructureConstants StructureConstants::shorten(std::size_t new_precision) const {
  StructureConstants out(d_, field_, new_precision);
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t k = 0; k < d_; ++k) out.set_c(i, j, k, c(i, j, k).shorten(new_precision));
  std::vector<TruncatedSeries> u;
  u.reserve(d_);
  for (const auto& x : unit_) u.push_back(x.shorten(new_precision));
  out.set_unit(u);
  return out;
}

std::string Violation::to_string() const {
  std::string s = law + " violated at (";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(indices[i]);
  }
  s += ")";
  return s;
}

ValidationReport validate_algebra(const StructureConstants& sc) {
  ValidationReport report;
  std::size_t d = sc.degree();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        if (sc.c(i, j, k) != sc.c(j, i, k)) {
          report.violations.push_back({"commutativity", {i, j, k}});
        }
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        auto left = sc.multiply(sc.multiply(sc.basis_vector(i), sc.basis_vector(j)), sc.basis_vector(k));
        auto right = sc.multiply(sc.basis_vector(i), sc.multiply(sc.basis_vector(j), sc.basis_vector(k)));
        if (left != right) report.violations.push_back({"associativity", {i, j, k}});
      }
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (sc.multiply(sc.unit(), sc.basis_vector(j)) != sc.basis_vector(j)) {
      report.violations.push_back({"unit", {0, j}});
    }
    if (sc.multiply(sc.basis_vector(j), sc.unit()) != sc.basis_vector(j)) {
      report.violations.push_back({"unit", {j, 0}});
    }
  }
  return report;
}

SeriesMatrix SplitEmbedding::coordinate_matrix() const {
  std::size_t d = branches.size();
  const Field& f = branches.at(0).field();
  std::size_t n = branches.at(0).precision();
  SeriesMatrix m(d, d, f, n);
  for (std::size_t i = 0; i < d; ++i) {
    TruncatedSeries p = TruncatedSeries::one(f, n);
    for (std::size_t j = 0; j < d; ++j) {
      m.set(i, j, p);
      if (j + 1 < d) p *= branches[i];
    }
  }
  return m;
}

DiskCover from_polynomial(const std::vector<TruncatedSeries>& monic_coeffs) {
  if (monic_coeffs.size() < 2) throw DomainError("polynomial must have degree >= 1");
  std::size_t d = monic_coeffs.size() - 1;
  const Field& f = monic_coeffs[0].field();
  std::size_t n = monic_coeffs[0].precision();
  for (const auto& a : monic_coeffs) {
    if (a.field() != f || a.precision() != n) {
      throw FieldMismatch("polynomial coefficients must share one field and precision");
    }
  }
  if (monic_coeffs[d] != TruncatedSeries::one(f, n)) throw DomainError("polynomial is not monic");

  // Power basis coordinates of x^m for m <= 2d-2, reduced by
  // x^d = -(a_0 + a_1 x + ... + a_{d-1} x^{d-1}).
  std::vector<std::vector<TruncatedSeries>> xpow;
  xpow.reserve(2 * d - 1);
  StructureConstants table(d, f, n);
  for (std::size_t m = 0; m < 2 * d - 1; ++m) {
    if (m < d) {
      std::vector<TruncatedSeries> v(d, TruncatedSeries::zero(f, n));
      v[m] = TruncatedSeries::one(f, n);
      xpow.push_back(v);
      continue;
    }
    const std::vector<TruncatedSeries>& prev = xpow[m - 1];
    std::vector<TruncatedSeries> v(d, TruncatedSeries::zero(f, n));
    for (std::size_t k = 0; k + 1 < d; ++k) v[k + 1] = prev[k];
    const TruncatedSeries& top = prev[d - 1];
    if (!top.is_zero()) {
      for (std::size_t k = 0; k < d; ++k) v[k] -= top * monic_coeffs[k];
    }
    xpow.push_back(v);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) table.set_c(i, j, k, xpow[i + j][k]);
    }
  }
  std::vector<TruncatedSeries> unit(d, TruncatedSeries::zero(f, n));
  unit[0] = TruncatedSeries::one(f, n);
  table.set_unit(unit);

  DiskCover cover(std::move(table));
  cover.set_defining_polynomial(monic_coeffs);
  return cover;
}

DiskCover from_branches(const std::vector<TruncatedSeries>& u) {
  if (u.empty()) throw DomainError("at least one branch required");
  std::size_t d = u.size();
  const Field& f = u[0].field();
  std::size_t n = u[0].precision();
  for (const auto& b : u) {
    if (b.field() != f || b.precision() != n) {
      throw FieldMismatch("branches must share one field and precision");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if ((u[i] - u[j]).is_zero()) {
        throw DomainError("branches " + std::to_string(i) + " and " + std::to_string(j) +
                          " coincide below precision " + std::to_string(n));
      }
    }
  }
  // prod (x - u_i), coefficients ascending.
  std::vector<TruncatedSeries> coeffs{TruncatedSeries::one(f, n)};
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<TruncatedSeries> next(coeffs.size() + 1, TruncatedSeries::zero(f, n));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      next[j + 1] += coeffs[j];
      next[j] -= coeffs[j] * u[i];
    }
    coeffs = std::move(next);
  }
  DiskCover cover = from_polynomial(coeffs);
  cover.set_split_embedding(SplitEmbedding{u});
  cover.set_tame_certified(true);
  return cover;
}

SeriesMatrix trace_form(const DiskCover& c) {
  const StructureConstants& sc = c.table();
  std::size_t d = sc.degree();
  std::vector<TruncatedSeries> tau = sc.trace_vector();
  SeriesMatrix T(d, d, sc.field(), sc.precision());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      TruncatedSeries acc = TruncatedSeries::zero(sc.field(), sc.precision());
      for (std::size_t k = 0; k < d; ++k) acc += sc.c(i, j, k) * tau[k];
      T.set(i, j, acc);
    }
  }
  return T;
}

namespace {

void check_discriminant_characteristic(const DiskCover& c) {
  const Field& f = c.field();
  if (f.is_prime_field() && f.modulus() <= c.degree() && !c.tame_certified()) {
    throw DomainError("trace-form discriminant refused over F_" + std::to_string(f.modulus()) +
                      " with degree " + std::to_string(c.degree()) +
                      ": possible wild ramification; only tame-certified covers are allowed here");
  }
}

}  // namespace

TruncatedSeries discriminant(const DiskCover& c) {
  check_discriminant_characteristic(c);
  return trace_form(c).det();
}

std::size_t branch_valuation(const DiskCover& c) {
  TruncatedSeries disc = discriminant(c);
  std::optional<std::size_t> v = disc.valuation();
  if (!v) {
    throw PrecisionExhausted("discriminant vanishes below t^" + std::to_string(c.precision()) +
                             "; branch valuation needs higher working precision");
  }
  return *v;
}

bool is_etale(const DiskCover& c) {
  check_discriminant_characteristic(c);
  return trace_form(c).det().is_unit();
}

DiskCover change_basis(const DiskCover& c, const SeriesMatrix& M) {
  const StructureConstants& sc = c.table();
  std::size_t d = sc.degree();
  if (M.rows() != d || M.cols() != d) throw DomainError("basis-change matrix has wrong shape");
  if (M.field() != sc.field() || M.precision() != sc.precision()) {
    throw FieldMismatch("basis-change matrix must match the table field and precision");
  }
  if (!M.det().is_unit()) throw DomainError("basis-change matrix must have unit determinant");
  SeriesMatrix Minv = M.inverse();

  StructureConstants out(d, sc.field(), sc.precision());
  std::vector<std::vector<TruncatedSeries>> cols(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<TruncatedSeries> col;
    col.reserve(d);
    for (std::size_t i = 0; i < d; ++i) col.push_back(M.at(i, j));
    cols[j] = std::move(col);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<TruncatedSeries> p = Minv.apply(sc.multiply(cols[i], cols[j]));
      for (std::size_t k = 0; k < d; ++k) out.set_c(i, j, k, p[k]);
    }
  }
  out.set_unit(Minv.apply(sc.unit()));

  DiskCover cover(std::move(out));
  cover.set_tame_certified(c.tame_certified());
  return cover;
}

TschirnhausSplit tschirnhaus_split(const DiskCover& c) {
  const StructureConstants& sc = c.table();
  std::size_t d = sc.degree();
  const Field& f = sc.field();
  if (f.is_prime_field() && d % f.modulus() == 0) {
    throw DomainError("degree " + std::to_string(d) + " is not invertible over F_" +
                      std::to_string(f.modulus()));
  }
  Scalar dinv = Scalar::from_integer(static_cast<long>(d), f).inverse();
  std::vector<TruncatedSeries> tau = sc.trace_vector();

  std::size_t pivot = d;
  for (std::size_t i = 0; i < d; ++i) {
    if (sc.unit()[i].is_unit()) {
      pivot = i;
      break;
    }
  }
  if (pivot == d) throw DomainError("unit vector has no unit coordinate");

  // pi(e_i) = e_i - (tr(e_i)/d) * 1 spans the trace-zero complement;
  // dropping the unit-pivot index leaves a free basis.
  TschirnhausSplit out;
  SeriesMatrix cert(d, d, f, sc.precision());
  for (std::size_t k = 0; k < d; ++k) cert.set(k, 0, sc.unit()[k]);
  std::size_t col = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (i == pivot) continue;
    std::vector<TruncatedSeries> v(d, TruncatedSeries::zero(f, sc.precision()));
    v[i] = TruncatedSeries::one(f, sc.precision());
    TruncatedSeries coef = tau[i] * dinv;
    for (std::size_t k = 0; k < d; ++k) v[k] -= coef * sc.unit()[k];
    for (std::size_t k = 0; k < d; ++k) cert.set(k, col, v[k]);
    ++col;
    out.complement_basis.push_back(std::move(v));
  }
  std::optional<std::size_t> dv = cert.det().valuation();
  if (!dv || *dv != 0) throw DomainError("trace-zero complement basis failed the unit-determinant certificate");
  out.generation_degree = 1;
  out.certificate_det_valuation = 0;
  return out;
}

}  // namespace covercrimp
