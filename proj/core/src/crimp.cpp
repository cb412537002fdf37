#include "covercrimp/crimp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <mutex>

#include "covercrimp/parallel.hpp"

namespace covercrimp {

namespace {

using Row = std::vector<Scalar>;

// --- dense linear algebra over the scalar field ---------------------------

std::size_t pivot_of(const Row& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r[i].is_zero()) return i;
  }
  return r.size();
}

// Reduced row echelon basis of the span; rows normalized, pivot-sorted.
std::vector<Row> rref(std::vector<Row> rows) {
  std::vector<Row> basis;
  for (Row& row : rows) {
    for (const Row& b : basis) {
      std::size_t p = pivot_of(b);
      if (!row[p].is_zero()) {
        Scalar f = row[p];
        for (std::size_t i = p; i < row.size(); ++i) row[i] -= f * b[i];
      }
    }
    std::size_t p = pivot_of(row);
    if (p == row.size()) continue;
    Scalar inv = row[p].inverse();
    for (std::size_t i = p; i < row.size(); ++i) row[i] *= inv;
    for (Row& b : basis) {
      if (!b[p].is_zero()) {
        Scalar f = b[p];
        for (std::size_t i = p; i < row.size(); ++i) b[i] -= f * row[i];
      }
    }
    basis.push_back(std::move(row));
  }
  std::sort(basis.begin(), basis.end(),
            [](const Row& a, const Row& b) { return pivot_of(a) < pivot_of(b); });
  return basis;
}

// Residual of v modulo the span of an rref basis.
Row residual(const std::vector<Row>& basis, Row v) {
  for (const Row& b : basis) {
    std::size_t p = pivot_of(b);
    if (!v[p].is_zero()) {
      Scalar f = v[p];
      for (std::size_t i = p; i < v.size(); ++i) v[i] -= f * b[i];
    }
  }
  return v;
}

bool is_zero_row(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool in_span(const std::vector<Row>& basis, const Row& v) { return is_zero_row(residual(basis, v)); }

// Flattened F_q encoding of an rref basis; canonical per subspace, so usable
// as a dedup key and as the deterministic output order.
std::vector<std::uint32_t> subspace_key(const std::vector<Row>& basis) {
  std::vector<std::uint32_t> key;
  key.reserve(basis.size() * (basis.empty() ? 1 : basis[0].size()) + 1);
  key.push_back(static_cast<std::uint32_t>(basis.size()));
  for (const Row& r : basis) {
    for (const Scalar& s : r) key.push_back(s.residue());
  }
  return key;
}

bool rows_equal(const std::vector<Row>& a, const std::vector<Row>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

// --- the ambient algebra F = Otilde / t^b Otilde ---------------------------

// Coordinates of F follow index(i, m) = i*b + m.
struct Ambient {
  std::size_t d, b, dim;
  Field f;
  StructureConstants table;          // Otilde's table, truncated to t^b
  std::vector<Row> unit_rows;        // t^m * 1 for m < b
  std::vector<Row> unit_rows_rref;

  explicit Ambient(const CrimpProblem& p)
      : d(p.degree()), b(p.b()), dim(p.ambient_dim()), f(p.field()),
        table(p.normalization().cover().table().shorten(std::max<std::size_t>(p.b(), 1))) {
    for (std::size_t m = 0; m < b; ++m) {
      Row r(dim, Scalar::zero(f));
      for (std::size_t k = 0; k < d; ++k) {
        const TruncatedSeries& u = table.unit()[k];
        for (std::size_t s = 0; m + s < b; ++s) r[idx(k, m + s)] = u.coeff(s);
      }
      unit_rows.push_back(std::move(r));
    }
    unit_rows_rref = rref(unit_rows);
  }

  std::size_t idx(std::size_t i, std::size_t m) const { return i * b + m; }

  Row multiply(const Row& x, const Row& y) const {
    Row out(dim, Scalar::zero(f));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t m = 0; m < b; ++m) {
        const Scalar& xi = x[idx(i, m)];
        if (xi.is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
          for (std::size_t l = 0; m + l < b; ++l) {
            const Scalar& yj = y[idx(j, l)];
            if (yj.is_zero()) continue;
            Scalar xy = xi * yj;
            for (std::size_t k = 0; k < d; ++k) {
              const TruncatedSeries& cs = table.c(i, j, k);
              for (std::size_t s = 0; m + l + s < b && s < cs.precision(); ++s) {
                if (!cs.coeff(s).is_zero()) out[idx(k, m + l + s)] += xy * cs.coeff(s);
              }
            }
          }
        }
      }
    }
    return out;
  }

  Row t_shift(const Row& x) const {
    Row out(dim, Scalar::zero(f));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t m = 0; m + 1 < b; ++m) out[idx(i, m + 1)] = x[idx(i, m)];
    }
    return out;
  }
};

// --- lifting S + t^b Otilde to a free rank-d module ------------------------

using Col = std::vector<TruncatedSeries>;  // length d, Otilde coordinates

// Column Hermite form over k[t]/t^N: returns a lower-triangular basis with
// diagonal exactly t^{alpha_r}; alpha holds the pivot valuations.
std::vector<Col> column_hermite(std::vector<Col> gens, std::size_t d, std::vector<std::size_t>& alpha) {
  alpha.assign(d, 0);
  for (std::size_t r = 0; r < d; ++r) {
    std::size_t best = gens.size();
    std::size_t best_val = 0;
    for (std::size_t j = r; j < gens.size(); ++j) {
      std::optional<std::size_t> v = gens[j][r].valuation();
      if (!v) continue;
      if (best == gens.size() || *v < best_val) {
        best = j;
        best_val = *v;
      }
    }
    if (best == gens.size()) {
      throw PrecisionExhausted("module basis reduction found no pivot in row " + std::to_string(r) +
                               "; the module is rank-deficient at this precision");
    }
    std::swap(gens[r], gens[best]);
    alpha[r] = best_val;
    // Normalize so the pivot entry is exactly t^{alpha_r}.
    TruncatedSeries w = gens[r][r].divide_by_t_power(best_val);
    TruncatedSeries winv = w.inverse();
    for (std::size_t i = 0; i < d; ++i) gens[r][i] = gens[r][i] * winv;
    for (std::size_t j = r + 1; j < gens.size(); ++j) {
      std::optional<std::size_t> v = gens[j][r].valuation();
      if (!v) continue;
      TruncatedSeries factor = gens[j][r].divide_by_t_power(best_val);
      for (std::size_t i = 0; i < d; ++i) {
        gens[j][i] = gens[j][i] - factor * gens[r][i];
      }
    }
  }
  gens.resize(d);
  return gens;
}

// Solve B x = p for lower-triangular B with diagonal t^{alpha_r}.
Col solve_triangular(const std::vector<Col>& B, const std::vector<std::size_t>& alpha, Col p) {
  std::size_t d = B.size();
  Col x;
  x.reserve(d);
  for (std::size_t r = 0; r < d; ++r) {
    TruncatedSeries acc = p[r];
    for (std::size_t s = 0; s < r; ++s) acc = acc - B[s][r] * x[s];
    x.push_back(acc.divide_by_t_power(alpha[r]));
  }
  return x;
}

std::vector<Col> lift_generators(const Ambient& amb, const std::vector<Row>& basis,
                                 const Field& f, std::size_t N) {
  std::vector<Col> gens;
  gens.reserve(basis.size() + amb.d);
  for (const Row& row : basis) {
    Col c(amb.d, TruncatedSeries::zero(f, N));
    for (std::size_t i = 0; i < amb.d; ++i) {
      for (std::size_t m = 0; m < amb.b; ++m) c[i].set_coeff(m, row[amb.idx(i, m)]);
    }
    gens.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < amb.d; ++i) {
    Col c(amb.d, TruncatedSeries::zero(f, N));
    c[i] = TruncatedSeries::monomial(Scalar::one(f), amb.b, N);
    gens.push_back(std::move(c));
  }
  return gens;
}

// Valuation of det(B^T T B) for the trace form T of the normalization; the
// branch certificate of the module spanned by B together with t^b Otilde.
std::size_t gram_branch_valuation(const CrimpProblem& p, const std::vector<Col>& B) {
  const DiskCover& cover = p.normalization().cover();
  std::size_t d = p.degree();
  // Hermite normalization costs at most delta coefficients of precision.
  std::size_t NB = p.precision() - p.delta();
  SeriesMatrix T = trace_form(cover);
  SeriesMatrix Bm(d, d, p.field(), NB);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) Bm.set(i, j, B[j][i].shorten(NB));
  }
  SeriesMatrix G = Bm.transpose() * T * Bm;
  std::optional<std::size_t> v = G.det().valuation();
  if (!v) {
    throw PrecisionExhausted("module discriminant vanishes below the working precision");
  }
  return *v;
}

}  // namespace

std::size_t crimp_delta(std::size_t a, std::size_t b) {
  if (b < a) {
    throw DomainError("prescribed branch valuation b = " + std::to_string(b) +
                      " is below the normalization's a = " + std::to_string(a));
  }
  if ((b - a) % 2 != 0) {
    throw DomainError("parity mismatch: b - a = " + std::to_string(b - a) + " is odd");
  }
  return (b - a) / 2;
}

NormalizationData NormalizationData::split(std::size_t d, const Field& f, std::size_t precision) {
  if (d == 0) throw DomainError("split normalization needs degree >= 1");
  if (d > 7) throw DomainError("split normalization automorphism group S_d too large beyond d = 7");
  StructureConstants table(d, f, precision);
  for (std::size_t i = 0; i < d; ++i) table.set_c(i, i, i, TruncatedSeries::one(f, precision));
  std::vector<TruncatedSeries> unit(d, TruncatedSeries::one(f, precision));
  table.set_unit(unit);
  DiskCover cover(std::move(table));
  cover.set_tame_certified(true);

  std::vector<SeriesMatrix> autos;
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    SeriesMatrix m(d, d, f, precision);
    for (std::size_t j = 0; j < d; ++j) m.set(perm[j], j, TruncatedSeries::one(f, precision));
    autos.push_back(std::move(m));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::size_t a = branch_valuation(cover);  // 0: the trace form is the identity
  return NormalizationData(Kind::Split, std::move(cover), a, std::move(autos));
}

namespace {

// All solutions of zeta^e = 1 in the coefficient field.
std::vector<Scalar> roots_of_unity(std::size_t e, const Field& f) {
  std::vector<Scalar> roots{Scalar::one(f)};
  if (f.is_rational()) {
    if (e % 2 == 0) roots.push_back(-Scalar::one(f));
    return roots;
  }
  std::uint32_t q = f.modulus();
  std::uint64_t m = std::gcd<std::uint64_t>(e, q - 1);
  if (m == 1) return roots;
  // Find an element of exact multiplicative order m.
  std::vector<std::uint64_t> prime_factors;
  {
    std::uint64_t x = m;
    for (std::uint64_t p = 2; p * p <= x; ++p) {
      if (x % p == 0) {
        prime_factors.push_back(p);
        while (x % p == 0) x /= p;
      }
    }
    if (x > 1) prime_factors.push_back(x);
  }
  Scalar gen = Scalar::one(f);
  bool found = false;
  for (std::uint32_t cand = 2; cand < q && cand < 20000; ++cand) {
    Scalar y = Scalar::from_integer(cand, f).pow((q - 1) / m);
    bool exact = !y.is_one();
    for (std::uint64_t p : prime_factors) {
      if (y.pow(m / p).is_one()) {
        exact = false;
        break;
      }
    }
    if (exact) {
      gen = y;
      found = true;
      break;
    }
  }
  if (!found) throw DomainError("failed to build the group of roots of unity");
  Scalar z = gen;
  while (!z.is_one()) {
    roots.push_back(z);
    z = z * gen;
  }
  return roots;
}

}  // namespace

NormalizationData NormalizationData::ramified_disk(std::size_t e, const Field& f, std::size_t precision) {
  if (e < 2) throw DomainError("ramified disk needs ramification index >= 2");
  if (f.is_prime_field() && e % f.modulus() == 0) {
    throw DomainError("wildly ramified disk: characteristic " + std::to_string(f.modulus()) +
                      " divides the ramification index " + std::to_string(e));
  }
  // R[s]/(s^e - t), power basis.
  std::vector<TruncatedSeries> coeffs(e + 1, TruncatedSeries::zero(f, precision));
  coeffs[0] = -TruncatedSeries::monomial(Scalar::one(f), 1, precision);
  coeffs[e] = TruncatedSeries::one(f, precision);
  DiskCover cover = from_polynomial(coeffs);
  cover.set_tame_certified(true);

  std::vector<SeriesMatrix> autos;
  for (const Scalar& zeta : roots_of_unity(e, f)) {
    SeriesMatrix m(e, e, f, precision);
    Scalar zj = Scalar::one(f);
    for (std::size_t j = 0; j < e; ++j) {
      m.set(j, j, TruncatedSeries::constant(zj, precision));
      zj = zj * zeta;
    }
    autos.push_back(std::move(m));
  }
  std::size_t a = branch_valuation(cover);
  return NormalizationData(Kind::RamifiedDisk, std::move(cover), a, std::move(autos));
}

NormalizationData NormalizationData::explicit_data(DiskCover cover, std::vector<SeriesMatrix> automorphisms) {
  ValidationReport report = validate_algebra(cover.table());
  if (!report.valid()) {
    throw DomainError("normalization table violates algebra laws: " +
                      report.violations.front().to_string());
  }
  const StructureConstants& sc = cover.table();
  std::size_t d = sc.degree();
  bool has_identity = false;
  for (const SeriesMatrix& g : automorphisms) {
    if (g.rows() != d || g.cols() != d) throw DomainError("automorphism matrix has wrong shape");
    if (g.field() != sc.field() || g.precision() != sc.precision()) {
      throw FieldMismatch("automorphism matrix must match the table field and precision");
    }
    if (!g.det().is_unit()) throw DomainError("automorphism matrix is not invertible");
    if (g.apply(sc.unit()) != sc.unit()) throw DomainError("automorphism does not fix the unit");
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<TruncatedSeries> cij(d, TruncatedSeries::zero(sc.field(), sc.precision()));
        for (std::size_t k = 0; k < d; ++k) cij[k] = sc.c(i, j, k);
        std::vector<TruncatedSeries> gi(d, TruncatedSeries::zero(sc.field(), sc.precision()));
        std::vector<TruncatedSeries> gj(d, TruncatedSeries::zero(sc.field(), sc.precision()));
        for (std::size_t k = 0; k < d; ++k) {
          gi[k] = g.at(k, i);
          gj[k] = g.at(k, j);
        }
        if (g.apply(cij) != sc.multiply(gi, gj)) {
          throw DomainError("matrix is not a table automorphism: fails at basis pair (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
    if (g == SeriesMatrix::identity(d, sc.field(), sc.precision())) has_identity = true;
  }
  if (!has_identity) {
    automorphisms.insert(automorphisms.begin(),
                         SeriesMatrix::identity(d, sc.field(), sc.precision()));
  }
  std::size_t a = branch_valuation(cover);
  return NormalizationData(Kind::Explicit, std::move(cover), a, std::move(automorphisms));
}

CrimpProblem::CrimpProblem(NormalizationData nd, std::size_t b, unsigned long long budget)
    : nd_(std::move(nd)), b_(b), delta_(crimp_delta(nd_.a(), b)), budget_(budget) {
  if (budget_ == 0) throw DomainError("budget must be >= 1");
  std::size_t need = b_ + 2 * delta_ + 1;
  if (nd_.precision() < need) {
    throw PrecisionExhausted("crimp problem with b = " + std::to_string(b_) + ", delta = " +
                             std::to_string(delta_) + " needs working precision >= " +
                             std::to_string(need) + ", have " + std::to_string(nd_.precision()));
  }
}

namespace {

// Shared worker: rref basis -> lift columns in Hermite form.
std::vector<Col> hermite_basis_of_lift(const CrimpProblem& p, const Ambient& amb,
                                       const std::vector<Row>& basis,
                                       std::vector<std::size_t>& alpha) {
  std::vector<Col> gens = lift_generators(amb, basis, p.field(), p.precision());
  return column_hermite(std::move(gens), p.degree(), alpha);
}

DiskCover lift_cover_from_hermite(const CrimpProblem& p, const std::vector<Col>& B,
                                  const std::vector<std::size_t>& alpha) {
  const StructureConstants& sc = p.normalization().cover().table();
  std::size_t d = p.degree();
  std::size_t NL = p.precision() - 2 * p.delta();
  StructureConstants table(d, p.field(), NL);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Col prod = sc.multiply(B[i], B[j]);
      Col x = solve_triangular(B, alpha, std::move(prod));
      for (std::size_t k = 0; k < d; ++k) {
        TruncatedSeries v = x[k].shorten(NL);
        table.set_c(i, j, k, v);
        table.set_c(j, i, k, v);
      }
    }
  }
  Col u = solve_triangular(B, alpha, sc.unit());
  std::vector<TruncatedSeries> unit;
  unit.reserve(d);
  for (std::size_t k = 0; k < d; ++k) unit.push_back(u[k].shorten(NL));
  table.set_unit(unit);
  DiskCover cover(std::move(table));
  cover.set_tame_certified(p.normalization().cover().tame_certified());
  return cover;
}

}  // namespace

DiskCover crimp_lift(const CrimpProblem& p, const std::vector<std::vector<Scalar>>& span_rows) {
  Ambient amb(p);
  std::vector<Row> basis = rref(span_rows);
  std::vector<std::size_t> alpha;
  std::vector<Col> B = hermite_basis_of_lift(p, amb, basis, alpha);
  std::size_t colength = std::accumulate(alpha.begin(), alpha.end(), std::size_t{0});
  if (colength != p.delta()) {
    throw DomainError("module colength " + std::to_string(colength) +
                      " differs from delta = " + std::to_string(p.delta()));
  }
  return lift_cover_from_hermite(p, B, alpha);
}

CrimpCheck is_crimp(const CrimpProblem& p, const std::vector<std::vector<Scalar>>& span_rows) {
  Ambient amb(p);
  for (const Row& r : span_rows) {
    if (r.size() != amb.dim) {
      throw SchemaError("subspace row length " + std::to_string(r.size()) +
                        " differs from dim F = " + std::to_string(amb.dim));
    }
    for (const Scalar& s : r) {
      if (s.field() != p.field()) throw FieldMismatch("subspace entries must live in the problem's field");
    }
  }
  std::vector<Row> basis = rref(span_rows);

  for (const Row& u : amb.unit_rows) {
    if (!in_span(basis, u)) return {false, "does not contain the image of the base ring"};
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      if (!in_span(basis, amb.multiply(basis[i], basis[j]))) {
        return {false, "not multiplicatively closed: product of basis rows " + std::to_string(i) +
                           " and " + std::to_string(j) + " leaves the span"};
      }
    }
  }
  std::size_t codim = amb.dim - basis.size();
  if (codim != p.delta()) {
    return {false, "codimension " + std::to_string(codim) + " differs from delta = " +
                       std::to_string(p.delta())};
  }
  DiskCover lift = crimp_lift(p, span_rows);
  std::size_t v = branch_valuation(lift);
  if (v != p.b()) {
    return {false, "lift branch valuation " + std::to_string(v) + " differs from b = " +
                       std::to_string(p.b())};
  }
  return {true, ""};
}

CrimpSubalgebra crimp_of(const CrimpProblem& p, const DiskCover& embedded_cover) {
  if (p.normalization().kind() != NormalizationData::Kind::Split) {
    throw DomainError("crimp_of requires a split normalization");
  }
  if (!embedded_cover.split_embedding()) {
    throw DomainError("crimp_of requires branch provenance on the cover");
  }
  const std::vector<TruncatedSeries>& u = embedded_cover.split_embedding()->branches;
  std::size_t d = p.degree();
  if (u.size() != d) throw DomainError("cover branch count differs from the normalization degree");
  if (embedded_cover.field() != p.field()) throw FieldMismatch("cover field differs from the problem field");
  std::size_t v = branch_valuation(embedded_cover);
  if (v != p.b()) {
    throw DomainError("cover branch valuation " + std::to_string(v) +
                      " differs from the prescribed b = " + std::to_string(p.b()));
  }

  Ambient amb(p);
  // Rows: t^m x^j for j < d, m < b, where x^j has Otilde coordinates u_i^j.
  std::vector<Row> rows;
  if (amb.b > 0) {
    std::vector<TruncatedSeries> pow(d, TruncatedSeries::one(p.field(), amb.b));
    for (std::size_t j = 0; j < d; ++j) {
      Row base(amb.dim, Scalar::zero(p.field()));
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t s = 0; s < amb.b; ++s) base[amb.idx(i, s)] = pow[i].coeff(s);
      }
      Row shifted = base;
      rows.push_back(base);
      for (std::size_t m = 1; m < amb.b; ++m) {
        shifted = amb.t_shift(shifted);
        rows.push_back(shifted);
      }
      if (j + 1 < d) {
        for (std::size_t i = 0; i < d; ++i) pow[i] = pow[i] * u[i].shorten(amb.b);
      }
    }
  }
  std::vector<Row> basis = rref(rows);
  if (amb.dim - basis.size() != p.delta()) {
    throw DomainError("embedded cover has codimension " + std::to_string(amb.dim - basis.size()) +
                      " in F, expected delta = " + std::to_string(p.delta()));
  }
  CrimpSubalgebra out;
  out.basis = std::move(basis);
  out.branch_provenance = u;
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Scalar matrix of the action of a table automorphism on F.
std::vector<Row> automorphism_action_rows(const Ambient& amb, const SeriesMatrix& g) {
  // column idx(j, l) -> image vector
  std::vector<Row> cols(amb.dim, Row(amb.dim, Scalar::zero(amb.f)));
  for (std::size_t j = 0; j < amb.d; ++j) {
    for (std::size_t l = 0; l < amb.b; ++l) {
      Row& col = cols[amb.idx(j, l)];
      for (std::size_t i = 0; i < amb.d; ++i) {
        const TruncatedSeries& gij = g.at(i, j);
        for (std::size_t s = 0; l + s < amb.b && s < gij.precision(); ++s) {
          if (!gij.coeff(s).is_zero()) col[amb.idx(i, l + s)] += gij.coeff(s);
        }
      }
    }
  }
  return cols;
}

Row apply_action(const std::vector<Row>& action_cols, const Row& v) {
  Row out(v.size(), Scalar::zero(v[0].field()));
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (!action_cols[c][r].is_zero()) out[r] += v[c] * action_cols[c][r];
    }
  }
  return out;
}

std::vector<Row> apply_action_to_subspace(const std::vector<Row>& action_cols,
                                          const std::vector<Row>& basis) {
  std::vector<Row> image;
  image.reserve(basis.size());
  for (const Row& r : basis) image.push_back(apply_action(action_cols, r));
  return rref(image);
}

}  // namespace

std::vector<CrimpSubalgebra> enumerate_crimps(const CrimpProblem& p, EnumerationStrategy strategy) {
  if (!p.field().is_prime_field()) {
    throw DomainError("crimp enumeration requires a prime field; over the rationals only "
                      "verification of given subspaces is supported");
  }
  Ambient amb(p);
  unsigned long long visited = 1;  // the full space

  // Descent through t-stable subspaces containing the base-ring image:
  // children of S are its hyperplanes containing tS + image(R).
  std::map<std::vector<std::uint32_t>, std::vector<Row>> level;
  {
    std::vector<Row> full;
    for (std::size_t i = 0; i < amb.dim; ++i) {
      Row r(amb.dim, Scalar::zero(p.field()));
      r[i] = Scalar::one(p.field());
      full.push_back(std::move(r));
    }
    level.emplace(subspace_key(full), full);
  }
  std::uint32_t q = p.field().modulus();
  for (std::size_t depth = 0; depth < p.delta(); ++depth) {
    std::map<std::vector<std::uint32_t>, std::vector<Row>> next;
    for (const auto& [key, S] : level) {
      std::vector<Row> gen;
      gen.reserve(S.size() + amb.unit_rows.size());
      for (const Row& r : S) gen.push_back(amb.t_shift(r));
      for (const Row& u : amb.unit_rows) gen.push_back(u);
      std::vector<Row> U0 = rref(gen);
      // Complement of U0 inside S.
      std::vector<Row> combined = U0;
      std::vector<Row> w;
      for (const Row& r : S) {
        Row res = residual(combined, r);
        if (!is_zero_row(res)) {
          w.push_back(res);
          combined.push_back(w.back());
          combined = rref(combined);
        }
      }
      std::size_t rk = w.size();
      if (rk == 0) continue;
      // Hyperplanes of S containing U0: kernels of nonzero functionals on
      // span(w), one representative per projective class.
      std::vector<std::uint32_t> lambda(rk, 0);
      for (std::size_t pvt = 0; pvt < rk; ++pvt) {
        // lambda[pvt] = 1, free coordinates above pvt
        std::size_t free_coords = rk - pvt - 1;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < free_coords; ++i) total *= q;
        for (std::uint64_t code = 0; code < total; ++code) {
          if (++visited > p.budget()) {
            throw BudgetExceeded("crimp enumeration exceeded the budget of " +
                                 std::to_string(p.budget()) + " candidate subspaces");
          }
          std::fill(lambda.begin(), lambda.end(), 0u);
          lambda[pvt] = 1;
          std::uint64_t rest = code;
          for (std::size_t i = pvt + 1; i < rk; ++i) {
            lambda[i] = static_cast<std::uint32_t>(rest % q);
            rest /= q;
          }
          std::vector<Row> hrows = U0;
          for (std::size_t i = 0; i < rk; ++i) {
            if (i == pvt) continue;
            Row v = w[i];
            if (lambda[i] != 0) {
              Scalar li = Scalar::from_integer(static_cast<long>(lambda[i]), p.field());
              for (std::size_t cidx = 0; cidx < v.size(); ++cidx) v[cidx] -= li * w[pvt][cidx];
            }
            hrows.push_back(std::move(v));
          }
          std::vector<Row> H = rref(hrows);
          next.emplace(subspace_key(H), std::move(H));
        }
      }
    }
    level = std::move(next);
  }

  // Final filters, sharded; results merged in candidate order, which is the
  // lexicographic basis-matrix order of the dedup map.
  std::vector<const std::vector<Row>*> candidates;
  candidates.reserve(level.size());
  for (const auto& [key, S] : level) candidates.push_back(&S);

  std::vector<char> accepted(candidates.size(), 0);
  std::vector<std::string> failure(candidates.size());
  std::mutex error_mutex;
  std::exception_ptr error;

  parallel_shards(candidates.size(), [&](std::size_t lo, std::size_t hi, std::size_t) {
    try {
      for (std::size_t c = lo; c < hi; ++c) {
        const std::vector<Row>& S = *candidates[c];
        auto closed = [&]() {
          for (std::size_t i = 0; i < S.size(); ++i) {
            for (std::size_t j = i; j < S.size(); ++j) {
              if (!in_span(S, amb.multiply(S[i], S[j]))) return false;
            }
          }
          return true;
        };
        auto branch_certified = [&]() {
          std::vector<std::size_t> alpha;
          std::vector<Col> B = hermite_basis_of_lift(p, amb, S, alpha);
          return gram_branch_valuation(p, B) == p.b();
        };
        bool ok = strategy == EnumerationStrategy::SubalgebraFirst
                      ? (closed() && branch_certified())
                      : (branch_certified() && closed());
        accepted[c] = ok ? 1 : 0;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  });
  if (error) std::rethrow_exception(error);

  std::vector<CrimpSubalgebra> out;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!accepted[c]) continue;
    CrimpSubalgebra cs;
    cs.basis = *candidates[c];
    out.push_back(std::move(cs));
  }
  return out;
}

std::vector<std::vector<std::size_t>> aut_orbits(const CrimpProblem& p,
                                                 const std::vector<CrimpSubalgebra>& crimps) {
  Ambient amb(p);
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  bool finite = p.field().is_prime_field();
  for (std::size_t i = 0; i < crimps.size(); ++i) {
    if (finite) index.emplace(subspace_key(crimps[i].basis), i);
  }
  UnionFind uf(crimps.size());
  for (const SeriesMatrix& g : p.normalization().automorphisms()) {
    std::vector<Row> action = automorphism_action_rows(amb, g);
    for (std::size_t i = 0; i < crimps.size(); ++i) {
      std::vector<Row> image = apply_action_to_subspace(action, crimps[i].basis);
      std::size_t j = crimps.size();
      if (finite) {
        auto it = index.find(subspace_key(image));
        if (it != index.end()) j = it->second;
      } else {
        for (std::size_t k = 0; k < crimps.size(); ++k) {
          if (rows_equal(crimps[k].basis, image)) {
            j = k;
            break;
          }
        }
      }
      if (j == crimps.size()) {
        throw DomainError("crimp list is not closed under the automorphism action");
      }
      uf.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < crimps.size(); ++i) groups[uf.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> orbits;
  orbits.reserve(groups.size());
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    orbits.push_back(std::move(members));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return orbits;
}

bool crimps_isomorphic(const CrimpProblem& p, const CrimpSubalgebra& c1, const CrimpSubalgebra& c2) {
  if (p.normalization().kind() != NormalizationData::Kind::Split) {
    throw DomainError("crimps_isomorphic supports split normalizations only");
  }
  Ambient amb(p);
  std::vector<Row> b1 = rref(c1.basis);
  std::vector<Row> b2 = rref(c2.basis);
  for (const SeriesMatrix& g : p.normalization().automorphisms()) {
    std::vector<Row> action = automorphism_action_rows(amb, g);
    if (rows_equal(apply_action_to_subspace(action, b1), b2)) return true;
  }
  return false;
}

std::vector<Scalar> tangent_cross_ratio(const CrimpProblem& p, const CrimpSubalgebra& c) {
  if (!c.branch_provenance) {
    throw DomainError("tangent cross-ratio requires branch provenance (use crimp_of)");
  }
  const std::vector<TruncatedSeries>& u = *c.branch_provenance;
  if (u.size() != 3) throw DomainError("tangent cross-ratio is defined for exactly three branches");
  const Scalar c0 = u[0].coeff(0);
  if (u[1].coeff(0) != c0 || u[2].coeff(0) != c0) {
    throw DomainError("tangent cross-ratio requires all branches through one point "
                      "(equal constant terms)");
  }
  Scalar s1 = u[0].coeff(1), s2 = u[1].coeff(1), s3 = u[2].coeff(1);
  if (s1 == s2 || s1 == s3 || s2 == s3) {
    throw DomainError("tangent cross-ratio requires pairwise distinct branch slopes");
  }
  Scalar lam = (s3 - s1) / (s2 - s1);
  Scalar one = Scalar::one(p.field());
  std::vector<Scalar> orbit{lam,
                            one / lam,
                            one - lam,
                            one / (one - lam),
                            lam / (lam - one),
                            (lam - one) / lam};
  std::sort(orbit.begin(), orbit.end(), [](const Scalar& a, const Scalar& b) { return a.cmp(b) < 0; });
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

}  // namespace covercrimp
