#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covercrimp/errors.hpp"
#include "covercrimp/json_io.hpp"
#include "test_util.hpp"

using namespace covercrimp;
using json_io::json;
using testutil::tpow;

TEST_CASE("field round trip") {
  CHECK(json_io::field_from_json(json::parse(R"("rational")")).is_rational());
  CHECK(json_io::field_from_json(json::parse(R"({"Fq": 7})")).modulus() == 7);
  CHECK(json_io::field_to_json(Field::prime(11)) == json::parse(R"({"Fq": 11})"));
  CHECK(json_io::field_to_json(Field::rationals()) == json("rational"));
  CHECK_THROWS_AS(json_io::field_from_json(json::parse(R"({"Fq": 6})")), DomainError);
  CHECK_THROWS_AS(json_io::field_from_json(json::parse("42")), SchemaError);
  CHECK_THROWS_AS(json_io::field_from_json(json::parse(R"({"Fq": "x"})")), SchemaError);
}

TEST_CASE("series round trip") {
  TruncatedSeries s = testutil::ser({1, 0, -2}, Field::rationals(), 5);
  json j = json_io::series_to_json(s);
  CHECK(json_io::series_from_json(j) == s);
  CHECK(j["precision"] == 5);

  TruncatedSeries f7 = testutil::ser({3, 4}, Field::prime(7), 3);
  CHECK(json_io::series_from_json(json_io::series_to_json(f7)) == f7);

  // Bare arrays accept integers and strings, including rationals.
  TruncatedSeries r = json_io::series_from_coefficients(json::parse(R"(["1/2", 3])"),
                                                        Field::rationals(), 4);
  CHECK(r.coeff(0) == Scalar::from_string("1/2", Field::rationals()));
  CHECK(r.coeff(1) == Scalar::from_integer(3, Field::rationals()));
  CHECK(r.precision() == 4);

  CHECK_THROWS_AS(json_io::series_from_coefficients(json::parse("[1,2,3]"), Field::rationals(), 2),
                  SchemaError);
  CHECK_THROWS_AS(json_io::series_from_json(json::parse(R"({"precision": 3})")), SchemaError);
}

TEST_CASE("cover round trip through every presentation") {
  const Field F7 = Field::prime(7);
  json base = {{"field", {{"Fq", 7}}}, {"precision", 8}};

  json poly = {{"degree", 2},
               {"base", base},
               {"presentation", {{"polynomial", {{"0"}, {"0", "-1"}, {"1"}}}}}};
  DiskCover c1 = json_io::cover_from_json(poly);
  CHECK(c1.degree() == 2);
  CHECK(branch_valuation(c1) == 2);  // x(x - t)... x^2 - t x has disc t^2

  json branches = {{"degree", 2}, {"base", base}, {"presentation", {{"branches", {{"0"}, {"0", "1"}}}}}};
  DiskCover c2 = json_io::cover_from_json(branches);
  CHECK(c2.tame_certified());
  CHECK(branch_valuation(c2) == 2);

  // Round trip: emitted JSON parses back to an equal table. Emission uses the
  // table presentation, which cannot be re-verified for tameness, so the
  // certificate is conservatively dropped rather than trusted from a file.
  json out = json_io::cover_to_json(c2);
  DiskCover c3 = json_io::cover_from_json(out);
  CHECK(c3.table().c(1, 1, 1) == c2.table().c(1, 1, 1));
  CHECK(c2.tame_certified());
  CHECK(!c3.tame_certified());
  CHECK(out.contains("presentation"));
  CHECK(out["presentation"].contains("table"));

  CHECK_THROWS_AS(json_io::cover_from_json(json::parse(R"({"degree": 2})")), SchemaError);
  json bad_poly = poly;
  bad_poly["presentation"]["polynomial"] = {{"1"}};  // wrong count for degree 2
  CHECK_THROWS_AS(json_io::cover_from_json(bad_poly), SchemaError);
  json bad_prec = poly;
  bad_prec["base"]["precision"] = 1;
  CHECK_THROWS_AS(json_io::cover_from_json(bad_prec), SchemaError);
}

TEST_CASE("curve round trip") {
  json j = json::parse(R"({
    "components": [{"genus": 0}, {"genus": 1}],
    "edges": [[0, 1]],
    "markings": [{"component": 0, "mult": 2}],
    "points": [{"component": 1}]
  })");
  MarkedNodalCurve c = json_io::curve_from_json(j);
  CHECK(c.num_components() == 2);
  CHECK(arithmetic_genus(c) == 1);
  json out = json_io::curve_to_json(c);
  MarkedNodalCurve c2 = json_io::curve_from_json(out);
  CHECK(c2.component_genera() == c.component_genera());
  CHECK(c2.edges() == c.edges());
  CHECK(c2.markings().size() == 1);
  CHECK(c2.points().size() == 1);

  CHECK_THROWS_AS(json_io::curve_from_json(json::parse(R"({"components": []})")), SchemaError);
  CHECK_THROWS_AS(
      json_io::curve_from_json(json::parse(R"({"components": [{"genus": 0}], "edges": [[0]]})")),
      SchemaError);
}

TEST_CASE("perm round trip") {
  Perm p = Perm::from_cycles("(1 2)(3 4)", 4);
  json j = json_io::perm_to_json(p);
  CHECK(j["cycles"] == "(1 2)(3 4)");
  CHECK(json_io::perm_from_json(j["cycles"], 4) == p);
  CHECK(json_io::perm_from_json(j["images"], 4) == p);
  CHECK(json_io::perm_from_json(json::parse("[2, 1, 4, 3]"), 4) == p);  // 1-based bare array
  CHECK(json_io::perm_from_json(json::parse(R"({"images": [2, 1, 4, 3]})"), 4) == p);
  CHECK_THROWS_AS(json_io::perm_from_json(json::parse("[1, 1]"), 2), SchemaError);
  CHECK_THROWS_AS(json_io::perm_from_json(json::parse("[1, 2, 3]"), 2), SchemaError);
  CHECK_THROWS_AS(json_io::perm_from_json(json::parse("3.5"), 2), SchemaError);
}

TEST_CASE("monodromy round trip") {
  json j = json::parse(R"js({
    "degree": 3,
    "genus": 1,
    "handles": [["(1 2 3)", "(1 2 3)"]],
    "branches": ["(1 2)", "(1 2)"]
  })js");
  BranchedMonodromy m = json_io::monodromy_from_json(j);
  CHECK(m.degree == 3);
  CHECK(m.base_genus == 1);
  CHECK(validate(m));
  json out = json_io::monodromy_to_json(m);
  BranchedMonodromy m2 = json_io::monodromy_from_json(out);
  CHECK(m2.branches == m.branches);
  CHECK(m2.handles == m.handles);

  // Genus defaults to zero; handle count must match it.
  BranchedMonodromy flat = json_io::monodromy_from_json(
      json::parse(R"js({"degree": 2, "branches": ["(1 2)", "(1 2)"]})js"));
  CHECK(flat.base_genus == 0);
  CHECK_THROWS_AS(json_io::monodromy_from_json(json::parse(
                      R"({"degree": 2, "genus": 1, "branches": []})")),
                  SchemaError);
}

TEST_CASE("normalization descriptors") {
  const Field F3 = Field::prime(3);
  NormalizationData split = json_io::normalization_from_json(json::parse(R"({"split": 2})"), F3, 6);
  CHECK(split.kind() == NormalizationData::Kind::Split);
  CHECK(split.degree() == 2);

  NormalizationData ram =
      json_io::normalization_from_json(json::parse(R"({"ramified_index": 2})"), F3, 6);
  CHECK(ram.kind() == NormalizationData::Kind::RamifiedDisk);
  CHECK(ram.a() == 1);

  CHECK_THROWS_AS(json_io::normalization_from_json(json::parse(R"({})"), F3, 6), SchemaError);
}

TEST_CASE("dump is deterministic") {
  const Field F7 = Field::prime(7);
  DiskCover c = from_branches({TruncatedSeries::zero(F7, 6), tpow(1, 1, F7, 6)});
  CHECK(json_io::cover_to_json(c).dump() == json_io::cover_to_json(c).dump());
  std::string a = json_io::cover_to_json(c).dump(2);
  DiskCover c2 = from_branches({TruncatedSeries::zero(F7, 6), tpow(1, 1, F7, 6)});
  CHECK(json_io::cover_to_json(c2).dump(2) == a);
}

TEST_CASE("rational strings are canonical") {
  CHECK(json_io::rational_to_string(mpq_class(4, 8)) == "1/2");
  CHECK(json_io::rational_to_string(mpq_class(-3)) == "-3");
}
