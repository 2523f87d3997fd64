#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "diamlab/group.hpp"
#include "diamlab/wordlen.hpp"

namespace diamlab {

struct GenSet {
  std::vector<elem_t> elements;  // ascending
  bool generates = false;
  bool minimal = false;
};

inline bool is_generating(const FiniteGroup& G, std::span<const elem_t> S) {
  std::vector<elem_t> elems;
  std::vector<char> member;
  return closure_elems(G, S, elems, member, /*early_exit_full=*/true) == G.order();
}

inline bool is_prime_power(std::uint64_t m, std::uint64_t& p) {
  if (m < 2) return false;
  std::uint64_t d = 2;
  while (d * d <= m && m % d != 0) ++d;
  p = d * d <= m ? d : m;
  std::uint64_t q = m;
  while (q % p == 0) q /= p;
  return q == 1;
}

inline std::uint32_t floor_log2(std::uint64_t m) {
  return static_cast<std::uint32_t>(std::bit_width(m) - 1);
}

namespace detail {

// One level of the subset search: a subgroup closure kept as membership
// bitmap plus insertion-ordered element list so it can be extended
// incrementally when the search adds one generator.
struct ClosureFrame {
  std::vector<elem_t> elems;
  std::vector<char> member;
  std::uint64_t size = 0;
  bool full = false;
};

inline void root_frame(const FiniteGroup& G, ClosureFrame& f) {
  f.member.assign(G.order(), 0);
  f.elems.assign(1, FiniteGroup::identity());
  f.member[FiniteGroup::identity()] = 1;
  f.size = 1;
  f.full = G.order() == 1;
}

// out := closure(base ∪ {x}). Worklist runs over the new elements only; the
// base is already closed. Stops as soon as the closure is the whole group
// (out.elems is then partial, but full frames are never extended further).
inline void extend_closure(const FiniteGroup& G, const ClosureFrame& base, elem_t x,
                           ClosureFrame& out) {
  const std::uint64_t m = G.order();
  out.elems = base.elems;
  out.member = base.member;
  out.member[x] = 1;
  out.elems.push_back(x);
  out.size = base.size + 1;
  out.full = out.size == m;
  for (std::size_t i = base.elems.size(); i < out.elems.size() && !out.full; ++i) {
    const elem_t a = out.elems[i];
    for (std::size_t j = 0; j < out.elems.size(); ++j) {
      const elem_t b = out.elems[j];
      elem_t p = G.mul_nocheck(a, b);
      if (!out.member[p]) {
        out.member[p] = 1;
        out.elems.push_back(p);
        if (++out.size == m) {
          out.full = true;
          break;
        }
      }
      p = G.mul_nocheck(b, a);
      if (!out.member[p]) {
        out.member[p] = 1;
        out.elems.push_back(p);
        if (++out.size == m) {
          out.full = true;
          break;
        }
      }
    }
  }
}

// Depth-first walk over ascending tuples (x_1 < ... < x_k), lo <= k <= hi,
// where every x_i lies outside the closure of its predecessors. Every
// inclusion-minimal generating set is such a tuple (dropping the closure
// condition for some x_i would make it redundant), so visiting exactly the
// tuples whose closure is the whole group covers all minimal gensets.
// visit returns false to stop the whole walk.
class SubsetWalk {
 public:
  SubsetWalk(const FiniteGroup& G, std::uint32_t lo, std::uint32_t hi,
             std::uint64_t budget)
      : G_(G), lo_(lo), hi_(hi), budget_(budget), frames_(hi + 1) {
    root_frame(G_, frames_[0]);
  }

  std::uint64_t visited() const { return visited_; }

  template <class Visit>
  void run(Visit&& visit) {
    if (hi_ == 0) return;
    descend(0, visit);
  }

 private:
  template <class Visit>
  bool descend(std::uint32_t depth, Visit& visit) {
    const elem_t start = depth == 0 ? 1 : current_.back() + 1;
    for (elem_t x = start; x < G_.order(); ++x) {
      if (frames_[depth].member[x]) continue;
      if (++visited_ > budget_)
        throw budget_exceeded_error("subset search exceeded budget of " +
                                    std::to_string(budget_) + " candidates");
      extend_closure(G_, frames_[depth], x, frames_[depth + 1]);
      current_.push_back(x);
      const std::uint32_t k = depth + 1;
      bool keep_going = true;
      if (frames_[k].full) {
        if (k >= lo_) keep_going = visit(std::span<const elem_t>(current_));
      } else if (k < hi_) {
        keep_going = descend(k, visit);
      }
      current_.pop_back();
      if (!keep_going) return false;
    }
    return true;
  }

  const FiniteGroup& G_;
  std::uint32_t lo_, hi_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  std::vector<elem_t> current_;
  std::vector<ClosureFrame> frames_;
};

}  // namespace detail

/// Smallest size of a generating set. Iterative deepening: depth k only
/// visits irredundant tuples, so the first depth that yields a generating
/// tuple is the rank. Minimal gensets have at most floor(log2 |G|) elements
/// (each step at least doubles the generated subgroup), bounding the search.
inline std::uint32_t rank(const FiniteGroup& G, std::uint64_t budget = kDefaultBudget) {
  if (G.order() == 1) return 0;
  const std::uint32_t cap = floor_log2(G.order());
  for (std::uint32_t s = 1; s <= cap; ++s) {
    detail::SubsetWalk walk(G, s, s, budget);
    bool found = false;
    walk.run([&](std::span<const elem_t>) {
      found = true;
      return false;
    });
    if (found) return s;
  }
  throw std::logic_error("rank: no generating set up to the log2 cap");
}

struct EnumerationStats {
  std::uint64_t subsets_visited = 0;
  std::uint64_t gensets_found = 0;
};

/// Calls yield(GenSet) for every inclusion-minimal generating set with at
/// most size_cap elements, in lexicographic order of the ascending element
/// tuple, each set exactly once. yield returns false to stop early.
inline EnumerationStats enumerate_minimal_gensets(
    const FiniteGroup& G, std::uint32_t size_cap,
    const std::function<bool(const GenSet&)>& yield,
    std::uint64_t budget = kDefaultBudget) {
  EnumerationStats stats;
  if (G.order() == 1) {
    GenSet g;
    g.generates = g.minimal = true;
    stats.gensets_found = 1;
    yield(g);
    return stats;
  }
  std::uint64_t p = 0;
  const bool pgroup = is_prime_power(G.order(), p);
  // In a p-group all minimal gensets share one size (Burnside basis theorem),
  // so a generating set is minimal iff it has exactly rank(G) elements and the
  // drop-one reclosure can be replaced by a size test.
  const std::uint32_t burnside_size = pgroup ? rank(G, budget) : 0;
  detail::SubsetWalk walk(G, 1, size_cap, budget);
  std::vector<elem_t> scratch_elems, sub;
  std::vector<char> scratch_member;
  walk.run([&](std::span<const elem_t> S) {
    if (pgroup) {
      if (S.size() != burnside_size) return true;
    } else if (S.size() > 1) {
      for (std::size_t skip = 0; skip < S.size(); ++skip) {
        sub.clear();
        for (std::size_t i = 0; i < S.size(); ++i)
          if (i != skip) sub.push_back(S[i]);
        if (closure_elems(G, sub, scratch_elems, scratch_member, true) == G.order())
          return true;  // redundant element: not minimal
      }
    }
    GenSet g;
    g.elements.assign(S.begin(), S.end());
    g.generates = g.minimal = true;
    ++stats.gensets_found;
    return yield(g);
  });
  stats.subsets_visited = walk.visited();
  return stats;
}

enum class MaxDiamStrategy { exact, sampled };

struct MaxDiamOptions {
  MaxDiamStrategy strategy = MaxDiamStrategy::exact;
  std::uint32_t size_cap = 0;  // 0: rank for p-groups, floor(log2 |G|) otherwise
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t samples = 100;  // sampled strategy
  std::uint64_t seed = 0;
};

/// Result of maximizing word-length diameters over generating sets. With
/// exhaustive=true the values are exactly D(G) and Ds(G); otherwise they are
/// lower bounds from the sampled gensets. The *_minsize values restrict the
/// maximum to gensets of the smallest size encountered (the rank, when
/// exhaustive).
struct DiameterCertificate {
  FiniteGroup group;
  bool exhaustive = false;
  std::uint32_t diameter = 0;
  std::uint32_t diameter_sym = 0;
  std::vector<elem_t> argmax;
  std::vector<elem_t> argmax_sym;
  std::uint32_t min_genset_size = 0;
  std::uint32_t diameter_minsize = 0;
  std::uint32_t diameter_sym_minsize = 0;
  std::uint32_t size_cap = 0;
  std::uint64_t gensets_tested = 0;
  std::uint64_t subsets_visited = 0;
  std::uint64_t samples_requested = 0;
  std::uint64_t samples_found = 0;
  std::uint64_t seed = 0;
};

/// Called once per tested minimal genset with its two diameters.
using GenSetObserver =
    std::function<void(std::span<const elem_t>, std::uint32_t, std::uint32_t)>;

namespace detail {

// Lean double BFS over a genset known to generate; returns (positive,
// symmetric) diameters. Scratch buffers are reused across calls.
struct DiamScratch {
  std::vector<std::uint32_t> dist;
  std::vector<elem_t> queue, targets;
};

inline std::pair<std::uint32_t, std::uint32_t> genset_diameters(
    const FiniteGroup& G, std::span<const elem_t> S, DiamScratch& sc) {
  const std::uint64_t m = G.order();
  std::pair<std::uint32_t, std::uint32_t> out{0, 0};
  for (int mode = 0; mode < 2; ++mode) {
    sc.targets.assign(S.begin(), S.end());
    if (mode == 1)
      for (elem_t g : S) sc.targets.push_back(G.inv_nocheck(g));
    sc.dist.assign(m, kUnreached);
    sc.queue.clear();
    sc.queue.push_back(FiniteGroup::identity());
    sc.dist[FiniteGroup::identity()] = 0;
    std::uint32_t diam = 0;
    for (std::size_t head = 0; head < sc.queue.size(); ++head) {
      const elem_t u = sc.queue[head];
      const std::uint32_t du = sc.dist[u];
      if (du > diam) diam = du;
      for (elem_t t : sc.targets) {
        const elem_t v = G.mul_nocheck(u, t);
        if (sc.dist[v] == kUnreached) {
          sc.dist[v] = du + 1;
          sc.queue.push_back(v);
        }
      }
    }
    if (sc.queue.size() != m)
      throw std::logic_error("genset_diameters: set does not generate");
    (mode == 0 ? out.first : out.second) = diam;
  }
  return out;
}

struct MaxTracker {
  DiameterCertificate& cert;
  bool any = false;

  void feed(std::span<const elem_t> S, std::uint32_t dp, std::uint32_t ds) {
    std::vector<elem_t> v(S.begin(), S.end());
    if (!any || dp > cert.diameter ||
        (dp == cert.diameter && v < cert.argmax))
      cert.diameter = dp, cert.argmax = v;
    if (!any || ds > cert.diameter_sym ||
        (ds == cert.diameter_sym && v < cert.argmax_sym))
      cert.diameter_sym = ds, cert.argmax_sym = v;
    if (!any || S.size() < cert.min_genset_size) {
      cert.min_genset_size = static_cast<std::uint32_t>(S.size());
      cert.diameter_minsize = dp;
      cert.diameter_sym_minsize = ds;
    } else if (S.size() == cert.min_genset_size) {
      cert.diameter_minsize = std::max(cert.diameter_minsize, dp);
      cert.diameter_sym_minsize = std::max(cert.diameter_sym_minsize, ds);
    }
    any = true;
  }
};

}  // namespace detail

/// Maximizes the positive and symmetric diameters over generating sets.
///
/// exact: enumerates every inclusion-minimal genset (adding generators never
/// increases a diameter, so minimal sets attain the maxima) within the size
/// cap; errors on budget overflow, including an up-front feasibility check of
/// the candidate count.
///
/// sampled: draws random subsets of size_cap elements, keeps the generating
/// ones, greedily strips redundant elements to reach a minimal set, and
/// reports lower bounds. Byte-deterministic for a fixed seed.
inline DiameterCertificate max_diameters(const FiniteGroup& G,
                                         const MaxDiamOptions& opts = {},
                                         const GenSetObserver& observer = nullptr) {
  DiameterCertificate cert;
  cert.group = G;
  cert.seed = opts.seed;
  const std::uint64_t m = G.order();
  if (m == 1) {
    cert.exhaustive = true;
    cert.gensets_tested = 1;
    return cert;
  }
  detail::DiamScratch sc;
  detail::MaxTracker tracker{cert};
  auto handle = [&](std::span<const elem_t> S) {
    const auto [dp, ds] = detail::genset_diameters(G, S, sc);
    ++cert.gensets_tested;
    tracker.feed(S, dp, ds);
    if (observer) observer(S, dp, ds);
  };

  if (opts.strategy == MaxDiamStrategy::exact) {
    const std::uint32_t r = rank(G, opts.budget);
    std::uint64_t p = 0;
    const bool pgroup = is_prime_power(m, p);
    // In a p-group all minimal gensets share size = rank; elsewhere scan up
    // to the cap (minimal sets at least double the subgroup per element, so
    // floor(log2 |G|) suffices).
    const std::uint32_t lo = r;
    std::uint32_t hi = pgroup ? r : floor_log2(m);
    if (opts.size_cap != 0) {
      if (opts.size_cap < r)
        throw std::invalid_argument("size_cap " + std::to_string(opts.size_cap) +
                                    " is below the rank " + std::to_string(r));
      hi = pgroup ? r : std::min(opts.size_cap, floor_log2(m));
    }
    cert.size_cap = hi;
    u128 candidates = 0;
    for (std::uint32_t s = lo; s <= hi; ++s) {
      candidates += binomial_saturated(m - 1, s, opts.budget);
      if (candidates > opts.budget)
        throw budget_exceeded_error(
            "exact strategy infeasible: candidate subsets exceed budget " +
            std::to_string(opts.budget));
    }
    detail::SubsetWalk walk(G, lo, hi, opts.budget);
    std::vector<elem_t> scratch_elems, sub;
    std::vector<char> scratch_member;
    walk.run([&](std::span<const elem_t> S) {
      if (!pgroup && S.size() > 1) {
        for (std::size_t skip = 0; skip < S.size(); ++skip) {
          sub.clear();
          for (std::size_t i = 0; i < S.size(); ++i)
            if (i != skip) sub.push_back(S[i]);
          if (closure_elems(G, sub, scratch_elems, scratch_member, true) == m)
            return true;
        }
      }
      handle(S);
      return true;
    });
    cert.subsets_visited = walk.visited();
    cert.exhaustive = true;
    cert.min_genset_size = r;  // enumeration covers size r, so this is exact
    return cert;
  }

  // sampled
  const std::uint32_t cap =
      opts.size_cap != 0 ? opts.size_cap
                         : std::min<std::uint64_t>(floor_log2(m), m - 1);
  cert.size_cap = cap;
  cert.samples_requested = opts.samples;
  std::mt19937_64 rng(opts.seed);
  std::vector<elem_t> pool(m - 1);
  for (std::uint64_t i = 0; i + 1 < m; ++i) pool[i] = i + 1;
  std::vector<elem_t> S, sub, scratch_elems;
  std::vector<char> scratch_member;
  const std::uint64_t max_attempts = std::max<std::uint64_t>(10'000, 100 * opts.samples);
  std::uint64_t attempts = 0;
  while (cert.samples_found < opts.samples && attempts < max_attempts) {
    ++attempts;
    ++cert.subsets_visited;
    for (std::uint32_t i = 0; i < cap; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    S.assign(pool.begin(), pool.begin() + cap);
    std::sort(S.begin(), S.end());
    if (closure_elems(G, S, scratch_elems, scratch_member, true) != m) continue;
    // strip redundant elements, lowest id first, until inclusion-minimal
    for (bool removed = true; removed && S.size() > 1;) {
      removed = false;
      for (std::size_t skip = 0; skip < S.size(); ++skip) {
        sub.clear();
        for (std::size_t i = 0; i < S.size(); ++i)
          if (i != skip) sub.push_back(S[i]);
        if (closure_elems(G, sub, scratch_elems, scratch_member, true) == m) {
          S = sub;
          removed = true;
          break;
        }
      }
    }
    ++cert.samples_found;
    handle(S);
  }
  cert.exhaustive = false;
  return cert;
}

/// alpha = rank(G), beta = rank(G/G'); rank(G^k) must sit in [k*beta,
/// k*alpha], and equals k*beta once k >= alpha/beta.
struct RankBoundsReport {
  std::uint32_t k = 0;
  std::uint32_t alpha = 0;
  std::uint32_t beta = 0;
  std::uint32_t rank_power = 0;
  bool lemma_ok = false;       // k*beta <= rank(G^k) <= k*alpha
  bool wiegold_applies = false;  // k >= alpha/beta
  bool wiegold_ok = false;       // rank(G^k) == k*beta (when it applies)
};

inline std::uint32_t abelianization_rank(const FiniteGroup& G,
                                         std::uint64_t budget = kDefaultBudget) {
  DerivedSeries s = derived_series(G);
  // A single term means G is trivial or perfect; either way G' = terms[0].
  const Subgroup& derived = s.terms.size() > 1 ? s.terms[1] : s.terms[0];
  return rank(quotient(G, derived).group, budget);
}

inline RankBoundsReport rank_bounds_check(const FiniteGroup& G, std::uint32_t k,
                                          std::uint64_t budget = kDefaultBudget,
                                          std::uint64_t max_elements = kDefaultMaxElements) {
  RankBoundsReport r;
  r.k = k;
  r.alpha = rank(G, budget);
  r.beta = abelianization_rank(G, budget);
  FiniteGroup Gk = FiniteGroup::direct_power(G, k, max_elements);
  r.rank_power = rank(Gk, budget);
  r.lemma_ok = static_cast<std::uint64_t>(k) * r.beta <= r.rank_power &&
               r.rank_power <= static_cast<std::uint64_t>(k) * r.alpha;
  r.wiegold_applies = r.beta > 0 && static_cast<std::uint64_t>(k) * r.beta >= r.alpha;
  r.wiegold_ok = !r.wiegold_applies ||
                 r.rank_power == static_cast<std::uint64_t>(k) * r.beta;
  return r;
}

}  // namespace diamlab
