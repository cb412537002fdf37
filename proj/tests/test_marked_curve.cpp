#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "covercrimp/errors.hpp"
#include "covercrimp/marked_curve.hpp"

using namespace covercrimp;

namespace {

MarkedNodalCurve genus0_markings(const std::vector<unsigned long>& mults) {
  std::vector<Marking> ms;
  for (unsigned long m : mults) ms.push_back({0, m});
  return MarkedNodalCurve({0}, {}, ms, {});
}

StabilityParams eps(const std::string& s) { return StabilityParams::from_string(s); }

}  // namespace

TEST_CASE("construction and validation") {
  CHECK_THROWS_AS(MarkedNodalCurve({}, {}, {}, {}), SchemaError);
  CHECK_THROWS_AS(MarkedNodalCurve({0}, {{0, 1}}, {}, {}), SchemaError);  // edge out of range
  CHECK_THROWS_AS(MarkedNodalCurve({0}, {}, {{0, 0}}, {}), SchemaError);  // multiplicity 0
  CHECK_THROWS_AS(MarkedNodalCurve({0}, {}, {{1, 1}}, {}), SchemaError);  // marking out of range
  CHECK_THROWS_AS(MarkedNodalCurve({0}, {}, {}, {{2}}), SchemaError);     // point out of range
  CHECK_THROWS_AS(MarkedNodalCurve({0, 0}, {}, {}, {}), DomainError);     // disconnected
}

TEST_CASE("genus arithmetic") {
  CHECK(arithmetic_genus(MarkedNodalCurve({2}, {}, {}, {})) == 2);
  // Two rational components along one node form a genus-0 curve.
  CHECK(arithmetic_genus(MarkedNodalCurve({0, 0}, {{0, 1}}, {}, {})) == 0);
  // A self-loop adds a handle.
  CHECK(arithmetic_genus(MarkedNodalCurve({0}, {{0, 0}}, {}, {})) == 1);
  CHECK(arithmetic_genus(MarkedNodalCurve({1, 2}, {{0, 1}, {0, 1}}, {}, {})) == 4);
}

TEST_CASE("node branches and multiplicities") {
  MarkedNodalCurve c({0, 0}, {{0, 1}, {0, 0}}, {{0, 2}, {1, 3}}, {{1}});
  CHECK(c.node_branches(0) == 3);  // one edge plus a self-loop counted twice
  CHECK(c.node_branches(1) == 1);
  CHECK(c.marking_multiplicity(0) == 2);
  CHECK(c.marking_multiplicity(1) == 3);
  CHECK(c.total_multiplicity() == 5);
}

TEST_CASE("omega degrees") {
  // Genus 0 with six simple markings at epsilon 1: degree -2 + 6 = 4.
  auto d1 = omega_epsilon_degrees(genus0_markings({1, 1, 1, 1, 1, 1}), eps("1"));
  REQUIRE(d1.size() == 1);
  CHECK(d1[0] == mpq_class(4));

  // One marking of multiplicity 6 at epsilon 1/6: -2 + 1 = -1.
  auto d2 = omega_epsilon_degrees(genus0_markings({6}), eps("1/6"));
  CHECK(d2[0] == mpq_class(-1));

  // Two rational components joined in a node, three simple markings each,
  // epsilon 1/2: each degree is -2 + 1 + 3/2 = 1/2.
  MarkedNodalCurve two({0, 0}, {{0, 1}},
                       {{0, 1}, {0, 1}, {0, 1}, {1, 1}, {1, 1}, {1, 1}}, {});
  auto d3 = omega_epsilon_degrees(two, eps("1/2"));
  CHECK(d3[0] == mpq_class(1, 2));
  CHECK(d3[1] == mpq_class(1, 2));

  // Plain marked points carry no weight.
  MarkedNodalCurve pts({1}, {}, {}, {{0}, {0}, {0}});
  CHECK(omega_epsilon_degrees(pts, eps("1"))[0] == mpq_class(0));
}

TEST_CASE("epsilon validation") {
  CHECK_THROWS_AS(StabilityParams(mpq_class(0)), DomainError);
  CHECK_THROWS_AS(StabilityParams(mpq_class(3, 2)), DomainError);
  CHECK_THROWS_AS(StabilityParams(mpq_class(-1, 2)), DomainError);
  CHECK(StabilityParams(mpq_class(1)).epsilon() == 1);
  CHECK(eps("2/4").epsilon() == mpq_class(1, 2));
  CHECK_THROWS_AS(StabilityParams::from_string("zebra"), SchemaError);
  CHECK_THROWS_AS(StabilityParams::from_string("1/0"), SchemaError);
}

TEST_CASE("stability of the (2,2,1,1) configuration") {
  MarkedNodalCurve c = genus0_markings({2, 2, 1, 1});
  // Stable exactly for 1/3 < epsilon <= 1/2: below, the degree -2 + 6eps
  // is nonpositive; above, a multiplicity-2 marking violates eps*m <= 1.
  for (long k = 1; k <= 60; ++k) {
    mpq_class e(k, 60);
    bool expected = (e > mpq_class(1, 3)) && (e <= mpq_class(1, 2));
    StabilityVerdict v = is_epsilon_stable(c, StabilityParams(e));
    CHECK(v.stable == expected);
    if (!v.stable) CHECK(!v.reason.empty());
  }
  CHECK(is_epsilon_stable(c, eps("1/2")).stable);
  CHECK_FALSE(is_epsilon_stable(c, eps("1/3")).stable);
  CHECK_FALSE(is_epsilon_stable(c, eps("1")).stable);
}

TEST_CASE("stability reasons name the violation") {
  StabilityVerdict heavy = is_epsilon_stable(genus0_markings({3}), eps("1"));
  REQUIRE_FALSE(heavy.stable);
  CHECK(heavy.reason.find("multiplicity") != std::string::npos);

  StabilityVerdict light = is_epsilon_stable(genus0_markings({1}), eps("1"));
  REQUIRE_FALSE(light.stable);
  CHECK(light.reason.find("degree") != std::string::npos);
}

TEST_CASE("hassett emptiness bound") {
  CHECK_FALSE(hassett_nonempty(0, 6, eps("1/6")));
  CHECK(hassett_nonempty(0, 6, eps("1/2")));
  CHECK(hassett_nonempty(0, 7, eps("1/3")));
  CHECK(hassett_nonempty(1, 1, eps("1/6")));
  CHECK_FALSE(hassett_nonempty(1, 0, eps("1")));  // 2h - 2 = 0 needs weight
}

TEST_CASE("riemann hurwitz in both directions") {
  CHECK(riemann_hurwitz_genus(2, 0, 6) == 2);
  CHECK(riemann_hurwitz_genus(3, 0, 4) == 0);
  CHECK(riemann_hurwitz_genus(3, 1, 6) == 4);
  CHECK(riemann_hurwitz_branch(3, 1, 4) == 6);
  CHECK(riemann_hurwitz_branch(2, 0, 2) == 6);
  CHECK_THROWS_AS(riemann_hurwitz_genus(2, 0, 5), DomainError);  // odd
  CHECK_THROWS_AS(riemann_hurwitz_genus(3, 0, 2), DomainError);  // negative genus
  CHECK_THROWS_AS(riemann_hurwitz_branch(3, 2, 0), DomainError); // negative branch
  // Round trips where both sides are defined.
  for (unsigned long d = 1; d <= 5; ++d) {
    for (unsigned long h = 0; h <= 2; ++h) {
      for (unsigned long g = 0; g <= 8; ++g) {
        unsigned long b;
        try {
          b = riemann_hurwitz_branch(d, h, g);
        } catch (const DomainError&) {
          continue;
        }
        CHECK(riemann_hurwitz_genus(d, h, b) == g);
      }
    }
  }
}

TEST_CASE("thresholds") {
  auto th = stability_thresholds(genus0_markings({2, 2, 1, 1}));
  REQUIRE(th.size() == 3);
  CHECK(th[0] == mpq_class(1, 3));
  CHECK(th[1] == mpq_class(1, 2));
  CHECK(th[2] == mpq_class(1));

  CHECK(stability_thresholds(MarkedNodalCurve({2}, {}, {}, {})).empty());

  // Component walls clip to (0, 1]: a genus-1 component with markings has
  // no degree wall, only the multiplicity walls.
  MarkedNodalCurve g1({1}, {}, {{0, 4}, {0, 2}}, {});
  auto th2 = stability_thresholds(g1);
  REQUIRE(th2.size() == 2);
  CHECK(th2[0] == mpq_class(1, 4));
  CHECK(th2[1] == mpq_class(1, 2));
}

TEST_CASE("stability is constant between consecutive thresholds") {
  std::vector<MarkedNodalCurve> samples = {
      genus0_markings({2, 2, 1, 1}),
      genus0_markings({5, 1}),
      MarkedNodalCurve({0, 1}, {{0, 1}}, {{0, 3}, {0, 1}, {1, 2}}, {}),
      MarkedNodalCurve({0}, {{0, 0}}, {{0, 2}}, {}),
  };
  for (const auto& c : samples) {
    std::vector<mpq_class> walls = stability_thresholds(c);
    walls.insert(walls.begin(), mpq_class(0));
    if (walls.back() != 1) walls.push_back(1);
    for (std::size_t i = 0; i + 1 < walls.size(); ++i) {
      // Two interior sample points of (walls[i], walls[i+1]].
      mpq_class lo = walls[i], hi = walls[i + 1];
      mpq_class third = lo + (hi - lo) / 3;
      mpq_class twothird = lo + (hi - lo) * 2 / 3;
      if (third == 0) continue;
      bool a = is_epsilon_stable(c, StabilityParams(third)).stable;
      bool b = is_epsilon_stable(c, StabilityParams(twothird)).stable;
      bool at_wall = is_epsilon_stable(c, StabilityParams(hi)).stable;
      CHECK(a == b);
      // The half-open interval includes its right endpoint.
      CHECK(b == at_wall);
    }
  }
}

TEST_CASE("degree additivity over random dual graphs") {
  std::mt19937_64 rng(777);
  for (int rep = 0; rep < 1000; ++rep) {
    std::size_t n = 1 + rng() % 4;
    std::vector<unsigned long> genera;
    for (std::size_t i = 0; i < n; ++i) genera.push_back(rng() % 3);
    // Random spanning tree keeps the graph connected; extra edges and
    // self-loops are sprinkled on top.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 1; i < n; ++i) edges.push_back({rng() % i, i});
    for (std::size_t k = rng() % 3; k-- > 0;) edges.push_back({rng() % n, rng() % n});
    std::vector<Marking> marks;
    for (std::size_t k = rng() % 5; k-- > 0;) {
      marks.push_back({rng() % n, 1 + rng() % 4});
    }
    std::vector<Section> pts;
    for (std::size_t k = rng() % 3; k-- > 0;) pts.push_back({rng() % n});
    MarkedNodalCurve c(genera, edges, marks, pts);
    mpq_class e(1 + static_cast<long>(rng() % 12), 12);
    e.canonicalize();
    StabilityParams s(e);

    mpq_class total = 0;
    for (const mpq_class& deg : omega_epsilon_degrees(c, s)) total += deg;
    mpq_class expected =
        2 * static_cast<long>(arithmetic_genus(c)) - 2 + e * static_cast<long>(c.total_multiplicity());
    CHECK(total == expected);
  }
}

TEST_CASE("emptiness is consistent with an exhaustive search") {
  // When hassett_nonempty says no, no curve with those invariants passes
  // is_epsilon_stable. Scan all single- and two-component genus-0/1 shapes
  // with total multiplicity b.
  StabilityParams s = eps("1/6");
  unsigned long h = 0, b = 6;
  REQUIRE_FALSE(hassett_nonempty(h, b, s));
  std::vector<MarkedNodalCurve> shapes;
  // One component of genus 0 with all markings.
  for (unsigned long m1 = 1; m1 <= b; ++m1) {
    std::vector<Marking> ms;
    unsigned long left = b;
    ms.push_back({0, m1});
    left -= m1;
    while (left > 0) {
      unsigned long take = std::min(left, m1);
      ms.push_back({0, take});
      left -= take;
    }
    shapes.push_back(MarkedNodalCurve({0}, {}, ms, {}));
  }
  // Two genus-0 components joined at a node, markings split across them.
  for (unsigned long first = 0; first <= b; ++first) {
    std::vector<Marking> ms;
    for (unsigned long i = 0; i < first; ++i) ms.push_back({0, 1});
    for (unsigned long i = first; i < b; ++i) ms.push_back({1, 1});
    shapes.push_back(MarkedNodalCurve({0, 0}, {{0, 1}}, ms, {}));
  }
  for (const auto& c : shapes) {
    if (arithmetic_genus(c) != h || c.total_multiplicity() != b) continue;
    CHECK_FALSE(is_epsilon_stable(c, s).stable);
  }
}
