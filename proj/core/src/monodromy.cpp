#include "covercrimp/monodromy.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "covercrimp/errors.hpp"
#include "covercrimp/parallel.hpp"

namespace covercrimp {

namespace {

void check_shape(const BranchedMonodromy& m) {
  if (m.degree == 0) throw SchemaError("monodromy degree must be >= 1");
  if (m.handles.size() != m.base_genus) {
    throw SchemaError("handle pair count differs from the base genus");
  }
  for (const auto& [a, b] : m.handles) {
    if (a.degree() != m.degree || b.degree() != m.degree) {
      throw SchemaError("handle permutation degree differs from the cover degree");
    }
  }
  for (const Perm& s : m.branches) {
    if (s.degree() != m.degree) {
      throw SchemaError("puncture permutation degree differs from the cover degree");
    }
  }
}

Perm relation_product(const BranchedMonodromy& m) {
  Perm p(m.degree);
  for (const auto& [a, b] : m.handles) {
    p = p * (a * b * a.inverse() * b.inverse());
  }
  for (const Perm& s : m.branches) p = p * s;
  return p;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool entries_transitive(std::size_t d, const std::vector<const Perm*>& entries) {
  UnionFind uf(d);
  for (const Perm* g : entries) {
    for (std::size_t i = 0; i < d; ++i) uf.unite(i, g->apply(i));
  }
  std::size_t root = uf.find(0);
  for (std::size_t i = 1; i < d; ++i) {
    if (uf.find(i) != root) return false;
  }
  return true;
}

unsigned long long factorial(std::size_t d) {
  unsigned long long f = 1;
  for (std::size_t i = 2; i <= d; ++i) f *= i;
  return f;
}

// Minimal number of transpositions multiplying to p.
std::size_t reflection_length(const Perm& p) { return p.degree() - p.num_cycles(); }

mpq_class to_mpq(unsigned long long n) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return mpq_class(z);
}

}  // namespace

bool validate(const BranchedMonodromy& m) {
  check_shape(m);
  return relation_product(m).is_identity();
}

bool is_connected(const BranchedMonodromy& m) {
  check_shape(m);
  std::vector<const Perm*> entries;
  for (const auto& [a, b] : m.handles) {
    entries.push_back(&a);
    entries.push_back(&b);
  }
  for (const Perm& s : m.branches) entries.push_back(&s);
  return entries_transitive(m.degree, entries);
}

unsigned long cover_genus(const BranchedMonodromy& m) {
  if (!validate(m)) throw DomainError("surface-group relation fails");
  if (!is_connected(m)) throw DomainError("cover is disconnected");
  long long rhs = static_cast<long long>(m.degree) * (2 * static_cast<long long>(m.base_genus) - 2);
  for (const Perm& s : m.branches) {
    rhs += static_cast<long long>(m.degree) - static_cast<long long>(s.num_cycles());
  }
  long long g2 = rhs + 2;
  if (g2 % 2 != 0 || g2 < 0) throw DomainError("genus formula has no nonnegative integral solution");
  return static_cast<unsigned long>(g2 / 2);
}

namespace {

// Depth-first search over transposition slots with prefix product tracking.
// The last slot is always determined by the others. Prunes on reflection
// length and parity; every visited node counts against the shared budget.
struct TranspositionSearch {
  std::size_t d, b;
  const std::vector<Perm>& trans;
  std::atomic<unsigned long long>& visited;
  unsigned long long budget;

  unsigned long long raw = 0, raw_all = 0;
  std::vector<const Perm*> chosen;
  std::vector<const Perm*> entries_buf;  // handles, then chosen sigmas
  std::size_t fixed_count;

  TranspositionSearch(std::size_t d_, std::size_t b_, const std::vector<Perm>& trans_,
                      std::atomic<unsigned long long>& visited_, unsigned long long budget_,
                      const std::vector<const Perm*>& fixed)
      : d(d_), b(b_), trans(trans_), visited(visited_), budget(budget_),
        entries_buf(fixed), fixed_count(fixed.size()) {
    chosen.reserve(b);
  }

  void bump() {
    if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > budget) {
      throw BudgetExceeded("monodromy enumeration exceeded the budget of " +
                           std::to_string(budget) + " search nodes");
    }
  }

  void leaf(const Perm& last) {
    ++raw_all;
    entries_buf.resize(fixed_count);
    for (const Perm* g : chosen) entries_buf.push_back(g);
    entries_buf.push_back(&last);
    if (entries_transitive(d, entries_buf)) ++raw;
  }

  // k sigmas already chosen; prefix = C * sigma_1 * ... * sigma_k.
  void run(const Perm& prefix, std::size_t k) {
    if (k + 1 == b) {
      bump();
      Perm last = prefix.inverse();
      if (reflection_length(last) == 1) leaf(last);
      return;
    }
    std::size_t remaining = b - k - 1;  // slots left after placing one more
    for (const Perm& s : trans) {
      bump();
      Perm next = prefix * s;
      std::size_t need = reflection_length(next);
      if (need > remaining || (remaining - need) % 2 != 0) continue;
      chosen.push_back(&s);
      run(next, k + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

HurwitzCount hurwitz_count(std::size_t d, std::size_t h, std::size_t b,
                           unsigned long long budget) {
  if (d == 0) throw DomainError("degree must be >= 1");
  if (d > 8) throw DomainError("hurwitz_count supported up to degree 8");
  if (budget == 0) throw DomainError("budget must be >= 1");

  std::vector<Perm> trans = transpositions(d);
  std::vector<Perm> all = symmetric_group(d);
  std::atomic<unsigned long long> visited{0};
  auto bump = [&] {
    if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > budget) {
      throw BudgetExceeded("monodromy enumeration exceeded the budget of " +
                           std::to_string(budget) + " search nodes");
    }
  };

  // All handle tuples (alpha_1, beta_1, ..., alpha_h, beta_h) with their
  // commutator products; d!^{2h} of them.
  std::vector<std::vector<const Perm*>> handle_tuples;
  std::vector<Perm> handle_products;
  {
    std::vector<const Perm*> current;
    std::function<void(std::size_t, Perm)> rec = [&](std::size_t i, Perm prod) {
      if (i == 2 * h) {
        handle_tuples.push_back(current);
        handle_products.push_back(std::move(prod));
        return;
      }
      for (const Perm& g : all) {
        bump();
        current.push_back(&g);
        if (i % 2 == 1) {
          const Perm& a = *current[i - 1];
          rec(i + 1, prod * (a * g * a.inverse() * g.inverse()));
        } else {
          rec(i + 1, prod);
        }
        current.pop_back();
      }
    };
    rec(0, Perm(d));
  }

  unsigned long long raw = 0, raw_all = 0;
  for (std::size_t t = 0; t < handle_tuples.size(); ++t) {
    const std::vector<const Perm*>& fixed = handle_tuples[t];
    const Perm& C = handle_products[t];
    if (b == 0) {
      bump();
      if (C.is_identity()) {
        ++raw_all;
        if (entries_transitive(d, fixed)) ++raw;
      }
      continue;
    }
    std::size_t need = reflection_length(C);
    if (need > b || (b - need) % 2 != 0) continue;
    if (b == 1) {
      bump();
      Perm last = C.inverse();
      if (reflection_length(last) == 1) {
        ++raw_all;
        std::vector<const Perm*> entries = fixed;
        entries.push_back(&last);
        if (entries_transitive(d, entries)) ++raw;
      }
      continue;
    }
    // Shard by the first sigma; shards are independent, merged in order.
    std::vector<unsigned long long> shard_raw(trans.size(), 0), shard_all(trans.size(), 0);
    std::mutex error_mutex;
    std::exception_ptr error;
    parallel_shards(trans.size(), [&](std::size_t lo, std::size_t hi, std::size_t) {
      try {
        for (std::size_t s0 = lo; s0 < hi; ++s0) {
          TranspositionSearch search(d, b, trans, visited, budget, fixed);
          search.bump();
          search.chosen.push_back(&trans[s0]);
          search.run(C * trans[s0], 1);
          shard_raw[s0] = search.raw;
          shard_all[s0] = search.raw_all;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
    if (error) std::rethrow_exception(error);
    for (std::size_t s0 = 0; s0 < trans.size(); ++s0) {
      raw += shard_raw[s0];
      raw_all += shard_all[s0];
    }
  }

  HurwitzCount out;
  out.raw = raw;
  out.raw_all = raw_all;
  out.weighted = to_mpq(raw) / to_mpq(factorial(d));
  out.weighted.canonicalize();
  return out;
}

unsigned long long orbinode_index(const Perm& g) { return g.order(); }

namespace {

std::vector<std::size_t> padded_type(const std::vector<std::size_t>& parts, std::size_t d) {
  std::size_t sum = 0;
  for (std::size_t p : parts) {
    if (p == 0) throw SchemaError("cycle type parts must be >= 1");
    sum += p;
  }
  if (sum > d) throw SchemaError("cycle type exceeds the degree");
  std::vector<std::size_t> full = parts;
  for (std::size_t i = sum; i < d; ++i) full.push_back(1);
  std::sort(full.rbegin(), full.rend());
  return full;
}

std::vector<std::size_t> flatten(const std::vector<Perm>& tuple) {
  std::vector<std::size_t> key;
  for (const Perm& g : tuple) {
    for (std::size_t i = 0; i < g.degree(); ++i) key.push_back(g.apply(i));
  }
  return key;
}

}  // namespace

std::vector<EtaleCoverClass> enumerate_etale_covers(
    std::size_t d, std::size_t h, const std::vector<std::vector<std::size_t>>& puncture_types,
    unsigned long long budget) {
  if (d == 0) throw DomainError("degree must be >= 1");
  if (d > 6) throw DomainError("enumerate_etale_covers supported up to degree 6");
  if (budget == 0) throw DomainError("budget must be >= 1");

  std::vector<Perm> all = symmetric_group(d);
  std::size_t b = puncture_types.size();

  std::vector<std::vector<const Perm*>> slot_choices(b);
  for (std::size_t j = 0; j < b; ++j) {
    std::vector<std::size_t> want = padded_type(puncture_types[j], d);
    for (const Perm& g : all) {
      if (g.cycle_type() == want) slot_choices[j].push_back(&g);
    }
  }

  unsigned long long visited = 0;
  auto bump = [&] {
    if (++visited > budget) {
      throw BudgetExceeded("monodromy enumeration exceeded the budget of " +
                           std::to_string(budget) + " search nodes");
    }
  };

  // Canonical (lexicographically minimal under simultaneous conjugacy) form
  // of every solution tuple; the map key orders the output.
  std::map<std::vector<std::size_t>, std::vector<Perm>> classes;

  std::vector<const Perm*> tuple;  // 2h handle entries, then b punctures
  std::function<void(std::size_t, Perm)> rec = [&](std::size_t slot, Perm prefix) {
    if (slot == 2 * h + b) {
      if (!prefix.is_identity()) return;
      std::vector<std::size_t> best;
      std::vector<Perm> best_perms;
      std::vector<Perm> conj(tuple.size(), Perm(d));
      for (const Perm& g : all) {
        Perm gi = g.inverse();
        for (std::size_t i = 0; i < tuple.size(); ++i) conj[i] = g * *tuple[i] * gi;
        std::vector<std::size_t> key = flatten(conj);
        if (best.empty() || key < best) {
          best = std::move(key);
          best_perms = conj;
        }
      }
      if (tuple.empty()) best_perms.clear();  // d >= 1, empty tuple: one class
      classes.emplace(std::move(best), std::move(best_perms));
      return;
    }
    if (slot < 2 * h) {
      for (const Perm& g : all) {
        bump();
        tuple.push_back(&g);
        if (slot % 2 == 1) {
          const Perm& a = *tuple[slot - 1];
          rec(slot + 1, prefix * (a * g * a.inverse() * g.inverse()));
        } else {
          rec(slot + 1, prefix);
        }
        tuple.pop_back();
      }
    } else {
      std::size_t j = slot - 2 * h;
      for (const Perm* g : slot_choices[j]) {
        bump();
        tuple.push_back(g);
        rec(slot + 1, prefix * *g);
        tuple.pop_back();
      }
    }
  };
  rec(0, Perm(d));

  std::vector<EtaleCoverClass> out;
  for (const auto& [key, perms] : classes) {
    EtaleCoverClass cls;
    cls.representative.degree = d;
    cls.representative.base_genus = h;
    for (std::size_t i = 0; i < h; ++i) {
      cls.representative.handles.emplace_back(perms[2 * i], perms[2 * i + 1]);
    }
    for (std::size_t j = 0; j < b; ++j) {
      cls.representative.branches.push_back(perms[2 * h + j]);
      cls.local_orders.push_back(perms[2 * h + j].order());
    }
    cls.connected = is_connected(cls.representative);
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace covercrimp
