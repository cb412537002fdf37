#include "covercrimp/marked_curve.hpp"

#include <algorithm>
#include <numeric>

namespace covercrimp {

namespace {

// Union-find connectivity of the dual graph.
bool graph_connected(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : edges) parent[find(a)] = find(b);
  std::size_t root = find(0);
  for (std::size_t i = 1; i < n; ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

}  // namespace

MarkedNodalCurve::MarkedNodalCurve(std::vector<unsigned long> component_genera,
                                   std::vector<std::pair<std::size_t, std::size_t>> edges,
                                   std::vector<Marking> markings, std::vector<Section> points)
    : genera_(std::move(component_genera)), edges_(std::move(edges)),
      markings_(std::move(markings)), points_(std::move(points)) {
  std::size_t n = genera_.size();
  if (n == 0) throw SchemaError("curve needs at least one component");
  for (const auto& [a, b] : edges_) {
    if (a >= n || b >= n) throw SchemaError("edge endpoint out of range");
  }
  for (const Marking& m : markings_) {
    if (m.component >= n) throw SchemaError("marking component out of range");
    if (m.multiplicity == 0) throw SchemaError("marking multiplicity must be >= 1");
  }
  for (const Section& p : points_) {
    if (p.component >= n) throw SchemaError("point component out of range");
  }
  if (!graph_connected(n, edges_)) throw DomainError("dual graph is disconnected");
}

std::size_t MarkedNodalCurve::node_branches(std::size_t i) const {
  std::size_t n = 0;
  for (const auto& [a, b] : edges_) {
    if (a == i) ++n;
    if (b == i) ++n;  // self-loop counts twice
  }
  return n;
}

unsigned long MarkedNodalCurve::marking_multiplicity(std::size_t i) const {
  unsigned long m = 0;
  for (const Marking& mk : markings_) {
    if (mk.component == i) m += mk.multiplicity;
  }
  return m;
}

unsigned long MarkedNodalCurve::total_multiplicity() const {
  unsigned long m = 0;
  for (const Marking& mk : markings_) m += mk.multiplicity;
  return m;
}

StabilityParams::StabilityParams(const mpq_class& epsilon) : eps_(epsilon) {
  eps_.canonicalize();
  if (eps_ <= 0 || eps_ > 1) throw DomainError("epsilon must satisfy 0 < epsilon <= 1");
}

StabilityParams StabilityParams::from_string(const std::string& s) {
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw SchemaError("cannot parse rational '" + s + "'");
  if (v.get_den() == 0) throw SchemaError("zero denominator in '" + s + "'");
  return StabilityParams(v);
}

unsigned long arithmetic_genus(const MarkedNodalCurve& c) {
  // connected, so E - V + 1 >= 0
  unsigned long g = c.edges().size() - c.num_components() + 1;
  for (unsigned long gi : c.component_genera()) g += gi;
  return g;
}

std::vector<mpq_class> omega_epsilon_degrees(const MarkedNodalCurve& c, const StabilityParams& s) {
  std::vector<mpq_class> deg;
  deg.reserve(c.num_components());
  for (std::size_t i = 0; i < c.num_components(); ++i) {
    long base = 2 * static_cast<long>(c.component_genera()[i]) - 2 +
                static_cast<long>(c.node_branches(i));
    mpq_class v = mpq_class(base) + s.epsilon() * mpq_class(c.marking_multiplicity(i));
    v.canonicalize();
    deg.push_back(v);
  }
  return deg;
}

StabilityVerdict is_epsilon_stable(const MarkedNodalCurve& c, const StabilityParams& s) {
  for (std::size_t k = 0; k < c.markings().size(); ++k) {
    const Marking& m = c.markings()[k];
    if (s.epsilon() * mpq_class(m.multiplicity) > 1) {
      return {false, "marking " + std::to_string(k) + " on component " +
                         std::to_string(m.component) + " has multiplicity " +
                         std::to_string(m.multiplicity) + " with epsilon * m > 1"};
    }
  }
  std::vector<mpq_class> deg = omega_epsilon_degrees(c, s);
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] <= 0) {
      return {false, "component " + std::to_string(i) + " has nonpositive omega degree " +
                         deg[i].get_str()};
    }
  }
  return {true, ""};
}

bool hassett_nonempty(unsigned long h, unsigned long b, const StabilityParams& s) {
  mpq_class v = s.epsilon() * mpq_class(b) + mpq_class(2 * static_cast<long>(h) - 2);
  return v > 0;
}

unsigned long riemann_hurwitz_genus(unsigned long d, unsigned long h, unsigned long b) {
  if (d == 0) throw DomainError("degree must be >= 1");
  long long rhs = static_cast<long long>(d) * (2 * static_cast<long long>(h) - 2) +
                  static_cast<long long>(b);
  if ((rhs + 2) % 2 != 0) throw DomainError("2g - 2 = d(2h-2) + b has no integral solution");
  long long g2 = rhs + 2;
  if (g2 < 0) throw DomainError("2g - 2 = d(2h-2) + b has a negative solution");
  return static_cast<unsigned long>(g2 / 2);
}

unsigned long riemann_hurwitz_branch(unsigned long d, unsigned long h, unsigned long g) {
  if (d == 0) throw DomainError("degree must be >= 1");
  long long b = 2 * static_cast<long long>(g) - 2 -
                static_cast<long long>(d) * (2 * static_cast<long long>(h) - 2);
  if (b < 0) throw DomainError("2g - 2 = d(2h-2) + b has a negative solution");
  return static_cast<unsigned long>(b);
}

std::vector<mpq_class> stability_thresholds(const MarkedNodalCurve& c) {
  std::vector<mpq_class> walls;
  for (const Marking& m : c.markings()) {
    walls.emplace_back(1, m.multiplicity);
  }
  for (std::size_t i = 0; i < c.num_components(); ++i) {
    unsigned long mi = c.marking_multiplicity(i);
    if (mi == 0) continue;
    long base = 2 * static_cast<long>(c.component_genera()[i]) - 2 +
                static_cast<long>(c.node_branches(i));
    if (base >= 0) continue;
    mpq_class wall(-base, mi);
    wall.canonicalize();
    if (wall > 0 && wall <= 1) walls.push_back(wall);
  }
  for (mpq_class& w : walls) w.canonicalize();
  std::sort(walls.begin(), walls.end());
  walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
  return walls;
}

}  // namespace covercrimp
