#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately use different algorithms (fixpoint closure instead of a
// worklist, ball-growing instead of queue BFS, bitmask subset iteration
// instead of the pruned walk) so that agreement is meaningful.

#include <cstdint>
#include <random>
#include <vector>

#include "diamlab/group.hpp"

namespace oracle {

using diamlab::elem_t;
using diamlab::FiniteGroup;

/// Closure size by repeated full product passes until nothing new appears.
inline std::uint64_t closure_size(const FiniteGroup& G, const std::vector<elem_t>& gens) {
  const std::uint64_t m = G.order();
  std::vector<char> in(m, 0);
  in[0] = 1;
  for (elem_t g : gens) in[g] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (elem_t a = 0; a < m; ++a) {
      if (!in[a]) continue;
      for (elem_t b = 0; b < m; ++b) {
        if (!in[b]) continue;
        const elem_t c = G.mul_nocheck(a, b);
        if (!in[c]) {
          in[c] = 1;
          grew = true;
        }
      }
    }
  }
  std::uint64_t n = 0;
  for (char v : in) n += v;
  return n;
}

/// Word lengths by growing balls: frontier_{d+1} = frontier_d * targets.
/// Unreached elements keep kUnreached.
inline std::vector<std::uint32_t> lengths(const FiniteGroup& G,
                                          const std::vector<elem_t>& gens,
                                          bool symmetric) {
  std::vector<elem_t> targets = gens;
  if (symmetric)
    for (elem_t g : gens) targets.push_back(G.inv(g));
  std::vector<std::uint32_t> dist(G.order(), diamlab::kUnreached);
  dist[0] = 0;
  std::vector<elem_t> frontier{0};
  std::uint32_t d = 0;
  while (!frontier.empty()) {
    std::vector<elem_t> next;
    for (elem_t a : frontier)
      for (elem_t t : targets) {
        const elem_t c = G.mul_nocheck(a, t);
        if (dist[c] == diamlab::kUnreached) {
          dist[c] = d + 1;
          next.push_back(c);
        }
      }
    ++d;
    frontier.swap(next);
  }
  return dist;
}

struct DiamResult {
  std::uint32_t diameter = 0;
  std::uint64_t reached = 0;
};

inline DiamResult diameter(const FiniteGroup& G, const std::vector<elem_t>& gens,
                           bool symmetric) {
  DiamResult r;
  for (std::uint32_t d : lengths(G, gens, symmetric))
    if (d != diamlab::kUnreached) {
      ++r.reached;
      r.diameter = std::max(r.diameter, d);
    }
  return r;
}

struct SubsetMax {
  std::uint32_t max_diam = 0;
  std::uint32_t max_diam_sym = 0;
  std::uint64_t generating_subsets = 0;
};

/// Maximum diameters over *every* generating subset of the non-identity
/// elements, by bitmask. Exponential: only for order <= ~13.
inline SubsetMax max_over_all_subsets(const FiniteGroup& G) {
  const std::uint64_t m = G.order();
  SubsetMax r;
  std::vector<elem_t> S;
  for (std::uint64_t mask = 1; mask < (1ull << (m - 1)); ++mask) {
    S.clear();
    for (std::uint64_t i = 0; i + 1 < m; ++i)
      if (mask & (1ull << i)) S.push_back(i + 1);
    if (closure_size(G, S) != m) continue;
    ++r.generating_subsets;
    r.max_diam = std::max(r.max_diam, diameter(G, S, false).diameter);
    r.max_diam_sym = std::max(r.max_diam_sym, diameter(G, S, true).diameter);
  }
  return r;
}

/// A random nonempty subset of the non-identity elements, sized in
/// [min_size, max_size] (clamped to m-1), sorted ascending.
inline std::vector<elem_t> random_subset(std::mt19937_64& rng, std::uint64_t order,
                                         std::size_t min_size, std::size_t max_size) {
  max_size = std::min<std::size_t>(max_size, order - 1);
  std::uniform_int_distribution<std::size_t> size_pick(min_size, max_size);
  const std::size_t want = size_pick(rng);
  std::vector<elem_t> pool(order - 1);
  for (std::uint64_t i = 0; i + 1 < order; ++i) pool[i] = i + 1;
  for (std::size_t i = 0; i < want; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  std::vector<elem_t> out(pool.begin(), pool.begin() + want);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
