#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covercrimp/cover.hpp"
#include "covercrimp/errors.hpp"
#include "test_util.hpp"

using namespace covercrimp;
using testutil::ser;
using testutil::tpow;

static const Field Q = Field::rationals();
static const Field F7 = Field::prime(7);

namespace {

// x^2 - t^m.
DiskCover order_two(long m, const Field& f, std::size_t N) {
  return from_polynomial({tpow(-1, static_cast<std::size_t>(m), f, N), TruncatedSeries::zero(f, N),
                          TruncatedSeries::one(f, N)});
}

// x^3 - t x.
DiskCover order_three(const Field& f, std::size_t N) {
  return from_polynomial({TruncatedSeries::zero(f, N), tpow(-1, 1, f, N),
                          TruncatedSeries::zero(f, N), TruncatedSeries::one(f, N)});
}

// Three coordinate axes in the plane-plus-line configuration: basis 1, x, y
// with x^2 = t x, y^2 = t y, x y = 0.
StructureConstants triple_point(const Field& f, std::size_t N) {
  StructureConstants sc(3, f, N);
  auto z = TruncatedSeries::zero(f, N);
  auto one = TruncatedSeries::one(f, N);
  auto t = tpow(1, 1, f, N);
  for (std::size_t j = 0; j < 3; ++j) {
    sc.set_c(0, j, j, one);  // basis element 0 is the unit
    sc.set_c(j, 0, j, one);
  }
  sc.set_c(1, 1, 1, t);
  sc.set_c(2, 2, 2, t);
  // x * y = 0 already.
  sc.set_unit({one, z, z});
  return sc;
}

}  // namespace

TEST_CASE("trace form of x^2 - t") {
  DiskCover c = order_two(1, Q, 6);
  SeriesMatrix T = trace_form(c);
  CHECK(T.at(0, 0) == tpow(2, 0, Q, 6));
  CHECK(T.at(0, 1) == TruncatedSeries::zero(Q, 6));
  CHECK(T.at(1, 1) == tpow(2, 1, Q, 6));
  CHECK(discriminant(c) == tpow(4, 1, Q, 6));
  CHECK(branch_valuation(c) == 1);
  CHECK_FALSE(is_etale(c));
}

TEST_CASE("branch valuation of x^2 - t^m climbs with m") {
  for (long m = 1; m <= 6; ++m) {
    DiskCover c = order_two(m, Q, 8);
    CHECK(branch_valuation(c) == static_cast<std::size_t>(m));
    DiskCover c7 = order_two(m, F7, 8);
    CHECK(branch_valuation(c7) == static_cast<std::size_t>(m));
  }
}

TEST_CASE("golden discriminants") {
  // x(x - t): disc = t^2.
  DiskCover node = from_polynomial(
      {TruncatedSeries::zero(Q, 6), tpow(-1, 1, Q, 6), TruncatedSeries::one(Q, 6)});
  CHECK(discriminant(node) == tpow(1, 2, Q, 6));
  CHECK(branch_valuation(node) == 2);

  // x^3 - t x: disc = 4 t^3 (trace-form determinant).
  CHECK(discriminant(order_three(Q, 8)) == tpow(4, 3, Q, 8));
  CHECK(branch_valuation(order_three(F7, 8)) == 3);

  // x(x - t)(x - c t) for c not 0, 1: disc = c^2 (c - 1)^2 t^6.
  for (long cval : {2L, 3L}) {
    std::vector<TruncatedSeries> u = {TruncatedSeries::zero(Q, 9), tpow(1, 1, Q, 9),
                                      tpow(cval, 1, Q, 9)};
    DiskCover c = from_branches(u);
    CHECK(branch_valuation(c) == 6);
    long expect = cval * cval * (cval - 1) * (cval - 1);
    CHECK(discriminant(c) == tpow(expect, 6, Q, 9));
  }
}

TEST_CASE("spatial triple point has branch valuation four") {
  DiskCover c{triple_point(Q, 6)};
  SeriesMatrix T = trace_form(c);
  CHECK(T.at(0, 0) == tpow(3, 0, Q, 6));
  CHECK(T.at(1, 1) == tpow(1, 2, Q, 6));
  CHECK(T.at(1, 2) == TruncatedSeries::zero(Q, 6));
  CHECK(discriminant(c) == tpow(1, 4, Q, 6));
  CHECK(branch_valuation(c) == 4);
}

TEST_CASE("resultant oracle agrees with the trace form") {
  // disc(f) = (-1)^{d(d-1)/2} Res(f, f') computed from the Sylvester matrix,
  // an independent route to the same series.
  for (const Field& f : {Q, F7}) {
    std::vector<std::vector<TruncatedSeries>> polys = {
        {tpow(-1, 1, f, 8), TruncatedSeries::zero(f, 8), TruncatedSeries::one(f, 8)},
        {tpow(-1, 4, f, 8), TruncatedSeries::zero(f, 8), TruncatedSeries::one(f, 8)},
        {TruncatedSeries::zero(f, 8), tpow(-1, 1, f, 8), TruncatedSeries::zero(f, 8),
         TruncatedSeries::one(f, 8)},
        {TruncatedSeries::zero(f, 8), tpow(2, 2, f, 8), tpow(-3, 1, f, 8),
         TruncatedSeries::one(f, 8)},
    };
    for (const auto& p : polys) {
      CHECK(discriminant(from_polynomial(p)) == testutil::sylvester_discriminant(p));
    }
  }
}

TEST_CASE("split covers: Vandermonde route") {
  // For branches u_i the trace form is V^T V, so disc = det(V)^2 exactly.
  std::vector<TruncatedSeries> u = {ser({0, 1}, F7, 9), ser({0, 3}, F7, 9), ser({0, 0, 1}, F7, 9)};
  DiskCover c = from_branches(u);
  REQUIRE(c.split_embedding().has_value());
  TruncatedSeries vd = c.split_embedding()->coordinate_matrix().det();
  CHECK(discriminant(c) == vd * vd);
  // val disc = 2 * sum_{i<j} val(u_i - u_j) = 2 * (1 + 1 + 1).
  CHECK(branch_valuation(c) == 6);
  CHECK(c.tame_certified());
}

TEST_CASE("from_branches rejects collisions") {
  std::vector<TruncatedSeries> u = {ser({0, 1}, Q, 4), ser({0, 1}, Q, 4)};
  CHECK_THROWS_AS(from_branches(u), DomainError);
}

TEST_CASE("unit-determinant base change fixes the branch divisor") {
  std::mt19937_64 rng(5150);
  for (int rep = 0; rep < 25; ++rep) {
    DiskCover c = order_three(F7, 8);
    SeriesMatrix M = testutil::random_unit_matrix(rng, 3, F7, 8);
    DiskCover cc = change_basis(c, M);
    CHECK(validate_algebra(cc.table()).valid());
    CHECK(branch_valuation(cc) == branch_valuation(c));
    TruncatedSeries dM = M.det();
    CHECK(discriminant(cc) == dM * dM * discriminant(c));
  }
}

TEST_CASE("non-invertible base change is refused") {
  DiskCover c = order_two(1, Q, 6);
  SeriesMatrix M = SeriesMatrix::identity(2, Q, 6);
  M.set(1, 1, tpow(1, 1, Q, 6));
  CHECK_THROWS_AS(change_basis(c, M), DomainError);
}

TEST_CASE("etale detection") {
  // Split unramified cover: disc is a unit.
  std::vector<TruncatedSeries> u = {ser({0, 1}, F7, 5), ser({1, 1}, F7, 5), ser({2, 0, 3}, F7, 5)};
  CHECK(is_etale(from_branches(u)));
  CHECK(branch_valuation(from_branches(u)) == 0);
  CHECK_FALSE(is_etale(order_two(2, Q, 5)));
}

TEST_CASE("wild characteristic is refused without certification") {
  Field F2 = Field::prime(2);
  DiskCover c = order_two(1, F2, 6);
  CHECK_FALSE(c.tame_certified());
  CHECK_THROWS_AS(branch_valuation(c), DomainError);
  // A split presentation in characteristic 2 is certified and fine.
  std::vector<TruncatedSeries> u = {TruncatedSeries::zero(F2, 6), tpow(1, 1, F2, 6)};
  DiskCover s = from_branches(u);
  CHECK(s.tame_certified());
  CHECK(branch_valuation(s) == 2);
}

TEST_CASE("tschirnhaus splitting") {
  DiskCover c = order_three(Q, 8);
  TschirnhausSplit ts = tschirnhaus_split(c);
  CHECK(ts.generation_degree == 1);
  CHECK(ts.certificate_det_valuation == 0);
  REQUIRE(ts.complement_basis.size() == 2);
  // Every complement element is trace free.
  for (const auto& v : ts.complement_basis) {
    CHECK(c.table().trace(v).is_zero());
  }
  // x stays put; x^2 is shifted by -(2t/3) * 1.
  CHECK(ts.complement_basis[0][1] == TruncatedSeries::one(Q, 8));
  CHECK(ts.complement_basis[1][0] ==
        TruncatedSeries::monomial(Scalar::from_string("-2/3", Q), 1, 8));
  // d = 3 is not invertible in characteristic 3.
  CHECK_THROWS_AS(tschirnhaus_split(order_three(Field::prime(3), 8)), DomainError);
}

TEST_CASE("validate_algebra reports the violated law") {
  StructureConstants good = triple_point(F7, 5);
  CHECK(validate_algebra(good).valid());

  StructureConstants bad = triple_point(F7, 5);
  bad.set_c(1, 2, 0, TruncatedSeries::one(F7, 5));  // x*y != y*x now
  ValidationReport r = validate_algebra(bad);
  REQUIRE_FALSE(r.valid());
  bool saw_comm = false;
  for (const auto& v : r.violations) saw_comm |= v.law == "commutativity";
  CHECK(saw_comm);

  StructureConstants assoc = triple_point(F7, 5);
  assoc.set_c(1, 1, 1, tpow(1, 2, F7, 5));
  assoc.set_c(1, 1, 0, tpow(1, 1, F7, 5));  // x^2 = t + t^2 x breaks (xx)y = x(xy)
  ValidationReport r2 = validate_algebra(assoc);
  REQUIRE_FALSE(r2.valid());
  bool saw_assoc = false;
  for (const auto& v : r2.violations) saw_assoc |= v.law == "associativity";
  CHECK(saw_assoc);

  StructureConstants nounit = triple_point(F7, 5);
  nounit.set_unit({TruncatedSeries::one(F7, 5), TruncatedSeries::one(F7, 5),
                   TruncatedSeries::zero(F7, 5)});
  CHECK_FALSE(validate_algebra(nounit).valid());
}

TEST_CASE("polynomial presentation round trip") {
  DiskCover c = order_three(Q, 8);
  REQUIRE(c.defining_polynomial().has_value());
  CHECK(c.defining_polynomial()->size() == 4);
  // Multiplication matrix of x has trace 0 and the table passes validation.
  CHECK(c.table().trace(c.table().basis_vector(1)).is_zero());
  CHECK(validate_algebra(c.table()).valid());
  CHECK_THROWS_AS(from_polynomial({tpow(1, 1, Q, 4), tpow(2, 0, Q, 4)}), DomainError);
}

TEST_CASE("shorten keeps the table consistent") {
  DiskCover c = order_three(Q, 8);
  StructureConstants s = c.table().shorten(4);
  CHECK(s.precision() == 4);
  CHECK(validate_algebra(s).valid());
}
