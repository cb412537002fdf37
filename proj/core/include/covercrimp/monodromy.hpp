#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "covercrimp/permutation.hpp"

namespace covercrimp {

// Monodromy datum of a degree-d cover of a genus-h curve with b punctures:
// handle pairs (alpha_i, beta_i) and puncture permutations sigma_j subject
// to the surface-group relation prod [alpha_i, beta_i] * prod sigma_j = id.
struct BranchedMonodromy {
  std::size_t degree;
  std::size_t base_genus;
  std::vector<std::pair<Perm, Perm>> handles;  // size = base_genus
  std::vector<Perm> branches;                  // size = number of punctures
};

// Exact check of the surface-group relation (and shape consistency).
bool validate(const BranchedMonodromy& m);

// True iff the subgroup generated by all entries acts transitively.
bool is_connected(const BranchedMonodromy& m);

// Genus of the total space from 2g - 2 = d(2h - 2) + sum_j (d - #cycles(sigma_j)).
// Requires a valid, connected datum.
unsigned long cover_genus(const BranchedMonodromy& m);

inline constexpr unsigned long long kDefaultMonodromyBudget = 10'000'000ULL;

struct HurwitzCount {
  // Tuples with all sigma_j transpositions, product identity, transitive.
  unsigned long long raw;
  // The same without the transitivity filter.
  unsigned long long raw_all;
  // raw / d!: each cover weighted by 1/|Aut|.
  mpq_class weighted;
};

// Exhaustive count of degree-d simply-branched monodromy data over a
// genus-h base with b branch points. The budget caps visited search nodes.
HurwitzCount hurwitz_count(std::size_t d, std::size_t h, std::size_t b,
                           unsigned long long budget = kDefaultMonodromyBudget);

struct EtaleCoverClass {
  BranchedMonodromy representative;  // canonical: lexicographically minimal
  bool connected;
  // Multiplicative order of each puncture permutation; callers needing
  // representable classifying maps can reject entries on their own terms.
  std::vector<unsigned long long> local_orders;
};

// All monodromy data with prescribed puncture cycle types, up to
// simultaneous conjugacy. Cycle types are partitions with parts >= 1 summing
// to at most d (padded with fixed points). Deterministic order: sorted by
// canonical representative.
std::vector<EtaleCoverClass> enumerate_etale_covers(
    std::size_t d, std::size_t h, const std::vector<std::vector<std::size_t>>& puncture_types,
    unsigned long long budget = kDefaultMonodromyBudget);

// Smallest index of an orbinode admitting this local monodromy: the
// multiplicative order of g.
unsigned long long orbinode_index(const Perm& g);

}  // namespace covercrimp
