#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "covercrimp/errors.hpp"

namespace covercrimp {

// A marking: the divisor picks up the component with a multiplicity.
struct Marking {
  std::size_t component;
  unsigned long multiplicity;  // >= 1
};

// A section: a plain marked point on a component.
struct Section {
  std::size_t component;
};

// Dual-graph model of a connected marked nodal curve: per-component
// geometric genus, nodes as edges (self-loops allowed), divisor markings
// with multiplicities, and plain marked points. Placement within a
// component's smooth locus is implicit.
class MarkedNodalCurve {
 public:
  MarkedNodalCurve(std::vector<unsigned long> component_genera,
                   std::vector<std::pair<std::size_t, std::size_t>> edges,
                   std::vector<Marking> markings, std::vector<Section> points);

  std::size_t num_components() const { return genera_.size(); }
  const std::vector<unsigned long>& component_genera() const { return genera_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<Marking>& markings() const { return markings_; }
  const std::vector<Section>& points() const { return points_; }

  // Node branches on component i; a self-loop contributes two.
  std::size_t node_branches(std::size_t i) const;
  // Total marking multiplicity on component i.
  unsigned long marking_multiplicity(std::size_t i) const;
  // Total marking multiplicity of the whole divisor.
  unsigned long total_multiplicity() const;

 private:
  std::vector<unsigned long> genera_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<Marking> markings_;
  std::vector<Section> points_;
};

// Exact rational 0 < epsilon <= 1.
class StabilityParams {
 public:
  explicit StabilityParams(const mpq_class& epsilon);
  // Parses "p/q" or "p".
  static StabilityParams from_string(const std::string& s);

  const mpq_class& epsilon() const { return eps_; }

 private:
  mpq_class eps_;
};

// Sum of geometric genera + edges - components + 1; the curve is connected.
unsigned long arithmetic_genus(const MarkedNodalCurve& c);

// Per-component degree of omega twisted by epsilon times the divisor:
// (2*gtilde_i - 2 + n_i) + epsilon * m_i with n_i the node-branch count and
// m_i the component's total marking multiplicity.
std::vector<mpq_class> omega_epsilon_degrees(const MarkedNodalCurve& c, const StabilityParams& s);

struct StabilityVerdict {
  bool stable;
  std::string reason;  // first violated condition, empty when stable
};

// Stable iff epsilon*m <= 1 for every marking and every component's
// omega_epsilon degree is strictly positive.
StabilityVerdict is_epsilon_stable(const MarkedNodalCurve& c, const StabilityParams& s);

// Whether any stable curve with these invariants can exist:
// epsilon*b + 2h - 2 > 0.
bool hassett_nonempty(unsigned long h, unsigned long b, const StabilityParams& s);

// 2g - 2 = d(2h - 2) + b, solved for g; errors when the solution is not a
// nonnegative integer.
unsigned long riemann_hurwitz_genus(unsigned long d, unsigned long h, unsigned long b);
// The same identity solved for b; errors when the solution is negative.
unsigned long riemann_hurwitz_branch(unsigned long d, unsigned long h, unsigned long g);

// The finite set of epsilon in (0,1] where some marking wall epsilon*m = 1
// or some component degree wall (2*gtilde-2+n) + epsilon*m = 0 is hit;
// sorted ascending, deduplicated. Stability is constant between consecutive
// thresholds.
std::vector<mpq_class> stability_thresholds(const MarkedNodalCurve& c);

}  // namespace covercrimp
