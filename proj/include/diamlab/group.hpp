#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diamlab/common.hpp"

namespace diamlab {

/// A finite group given by its multiplication structure. Small groups hold a
/// dense order x order table; direct powers multiply componentwise on
/// mixed-radix encoded tuples (component 0 least significant) and never
/// materialize a table. Copies share the underlying data.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  static FiniteGroup from_table(std::string name, std::uint64_t order,
                                std::vector<std::uint32_t> table);

  static FiniteGroup direct_power(const FiniteGroup& base, std::uint32_t n,
                                  std::uint64_t max_elements = kDefaultMaxElements);

  bool valid() const { return impl_ != nullptr; }
  std::uint64_t order() const { return impl_->order; }
  const std::string& name() const { return impl_->name; }
  static constexpr elem_t identity() { return 0; }

  bool is_power() const { return impl_->is_power; }
  FiniteGroup base() const { return FiniteGroup(impl_->base_impl); }
  std::uint32_t exponent() const { return impl_->exponent; }

  elem_t mul(elem_t a, elem_t b) const {
    check_elem(a);
    check_elem(b);
    return mul_nocheck(a, b);
  }

  elem_t mul_nocheck(elem_t a, elem_t b) const {
    const Impl& im = *impl_;
    if (!im.is_power) return im.table[a * im.order + b];
    // componentwise through the base's dense table (power bases are dense)
    const std::uint64_t m = im.base_order;
    elem_t out = 0;
    std::uint64_t scale = 1;
    for (std::uint32_t c = 0; c < im.exponent; ++c) {
      out += static_cast<elem_t>(im.base_table[(a % m) * m + b % m]) * scale;
      a /= m;
      b /= m;
      scale *= m;
    }
    return out;
  }

  elem_t inv(elem_t a) const {
    check_elem(a);
    return inv_nocheck(a);
  }

  elem_t inv_nocheck(elem_t a) const {
    const Impl& im = *impl_;
    if (!im.is_power) return im.inverse[a];
    const std::uint64_t m = im.base_order;
    elem_t out = 0;
    std::uint64_t scale = 1;
    for (std::uint32_t c = 0; c < im.exponent; ++c) {
      out += static_cast<elem_t>(im.base_inverse[a % m]) * scale;
      a /= m;
      scale *= m;
    }
    return out;
  }

  /// a^-1 b^-1 a b.
  elem_t commutator(elem_t a, elem_t b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }

  std::uint64_t element_order(elem_t a) const {
    check_elem(a);
    elem_t x = a;
    std::uint64_t o = 1;
    while (x != identity()) {
      x = mul_nocheck(x, a);
      ++o;
    }
    return o;
  }

  elem_t pow(elem_t a, std::uint64_t e) const {
    check_elem(a);
    elem_t r = identity();
    for (std::uint64_t i = 0; i < e; ++i) r = mul_nocheck(r, a);
    return r;
  }

  bool is_abelian() const {
    const std::uint64_t m = order();
    for (elem_t a = 1; a < m; ++a)
      for (elem_t b = a + 1; b < m; ++b)
        if (mul_nocheck(a, b) != mul_nocheck(b, a)) return false;
    return true;
  }

  /// Mixed-radix digits of a power-backend element, component 0 first.
  std::vector<elem_t> decompose_power(elem_t a) const {
    if (!is_power()) throw std::logic_error("decompose_power: not a power group");
    check_elem(a);
    std::vector<elem_t> digits(exponent());
    const std::uint64_t m = impl_->base_order;
    for (auto& d : digits) {
      d = a % m;
      a /= m;
    }
    return digits;
  }

  elem_t compose_power(std::span<const elem_t> digits) const {
    if (!is_power()) throw std::logic_error("compose_power: not a power group");
    if (digits.size() != exponent())
      throw std::invalid_argument("compose_power: wrong component count");
    const std::uint64_t m = impl_->base_order;
    elem_t out = 0;
    std::uint64_t scale = 1;
    for (elem_t d : digits) {
      if (d >= m) throw std::out_of_range("compose_power: component out of range");
      out += d * scale;
      scale *= m;
    }
    return out;
  }

  bool same_group(const FiniteGroup& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    std::uint64_t order = 0;
    std::string name;
    // dense backend
    std::vector<std::uint32_t> table;
    std::vector<std::uint32_t> inverse;
    // power backend (base_impl keeps the base's tables alive)
    bool is_power = false;
    std::shared_ptr<const Impl> base_impl;
    std::uint32_t exponent = 0;
    std::uint64_t base_order = 0;
    const std::uint32_t* base_table = nullptr;
    const std::uint32_t* base_inverse = nullptr;
  };

  void check_elem(elem_t a) const {
    if (a >= impl_->order)
      throw std::out_of_range("element id " + std::to_string(a) +
                              " out of range for group of order " +
                              std::to_string(impl_->order));
  }

  explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

namespace detail {

/// Checks the dense table axioms: Latin square, identity at id 0, two-sided
/// inverses, associativity (all triples up to order 256, otherwise 10^4
/// deterministic samples). Throws table_parse_error naming the offending cell.
inline void validate_dense(const std::string& name, std::uint64_t m,
                           const std::vector<std::uint32_t>& t) {
  auto fail = [&](const std::string& what) {
    throw table_parse_error("group '" + name + "': " + what);
  };
  if (m == 0) fail("order must be positive");
  if (t.size() != m * m) fail("table has wrong size");
  for (std::uint64_t i = 0; i < m * m; ++i)
    if (t[i] >= m)
      fail("entry at row " + std::to_string(i / m) + ", col " +
           std::to_string(i % m) + " out of range");
  std::vector<char> seen(m);
  for (std::uint64_t r = 0; r < m; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint64_t c = 0; c < m; ++c) {
      if (seen[t[r * m + c]]) fail("row " + std::to_string(r) + " repeats a value");
      seen[t[r * m + c]] = 1;
    }
  }
  for (std::uint64_t c = 0; c < m; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint64_t r = 0; r < m; ++r) {
      if (seen[t[r * m + c]]) fail("column " + std::to_string(c) + " repeats a value");
      seen[t[r * m + c]] = 1;
    }
  }
  for (std::uint64_t a = 0; a < m; ++a) {
    if (t[0 * m + a] != a) fail("id 0 is not a left identity at col " + std::to_string(a));
    if (t[a * m + 0] != a) fail("id 0 is not a right identity at row " + std::to_string(a));
  }
  for (std::uint64_t a = 0; a < m; ++a) {
    std::uint64_t b = 0;
    while (b < m && t[a * m + b] != 0) ++b;
    if (b == m || t[b * m + a] != 0)
      fail("element " + std::to_string(a) + " lacks a two-sided inverse");
  }
  auto assoc = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    if (t[t[a * m + b] * m + c] != t[a * m + t[b * m + c]])
      fail("associativity fails at (" + std::to_string(a) + ", " +
           std::to_string(b) + ", " + std::to_string(c) + ")");
  };
  if (m <= 256) {
    for (std::uint64_t a = 0; a < m; ++a)
      for (std::uint64_t b = 0; b < m; ++b)
        for (std::uint64_t c = 0; c < m; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0xd1a7ab1e);
    std::uniform_int_distribution<std::uint64_t> pick(0, m - 1);
    for (int i = 0; i < 10'000; ++i) assoc(pick(rng), pick(rng), pick(rng));
  }
}

}  // namespace detail

inline FiniteGroup FiniteGroup::from_table(std::string name, std::uint64_t order,
                                           std::vector<std::uint32_t> table) {
  if (order > kDenseOrderCap)
    throw std::invalid_argument("group '" + name + "': order " +
                                std::to_string(order) + " exceeds dense cap " +
                                std::to_string(kDenseOrderCap));
  detail::validate_dense(name, order, table);
  auto impl = std::make_shared<Impl>();
  impl->order = order;
  impl->name = std::move(name);
  impl->table = std::move(table);
  impl->inverse.resize(order);
  for (std::uint64_t a = 0; a < order; ++a) {
    for (std::uint64_t b = 0; b < order; ++b)
      if (impl->table[a * order + b] == 0) {
        impl->inverse[a] = static_cast<std::uint32_t>(b);
        break;
      }
  }
  return FiniteGroup(std::move(impl));
}

inline FiniteGroup FiniteGroup::direct_power(const FiniteGroup& base, std::uint32_t n,
                                             std::uint64_t max_elements) {
  if (!base.valid()) throw std::invalid_argument("direct_power: invalid base group");
  if (base.is_power())
    throw std::invalid_argument("direct_power: base must not itself be a power");
  if (n == 0) throw std::invalid_argument("direct_power: exponent must be >= 1");
  u128 total = checked_pow_u128(base.order(), n);
  if (total > max_elements)
    throw budget_exceeded_error(base.name() + "^" + std::to_string(n) + " has " +
                                u128_to_string(total) +
                                " elements, above the element limit " +
                                std::to_string(max_elements));
  auto impl = std::make_shared<Impl>();
  impl->order = static_cast<std::uint64_t>(total);
  impl->name = base.name() + "^" + std::to_string(n);
  impl->is_power = true;
  impl->base_impl = base.impl_;
  impl->exponent = n;
  impl->base_order = base.order();
  impl->base_table = base.impl_->table.data();
  impl->base_inverse = base.impl_->inverse.data();
  return FiniteGroup(std::move(impl));
}

/// A subgroup: sorted element ids plus a membership bitmap over the parent.
class Subgroup {
 public:
  Subgroup(FiniteGroup parent, std::vector<elem_t> sorted_elems)
      : parent_(std::move(parent)), elems_(std::move(sorted_elems)),
        member_(parent_.order(), 0) {
    for (elem_t e : elems_) {
      if (e >= parent_.order()) throw std::out_of_range("subgroup element out of range");
      member_[e] = 1;
    }
    if (elems_.empty() || elems_[0] != FiniteGroup::identity() ||
        !std::is_sorted(elems_.begin(), elems_.end()))
      throw std::logic_error("subgroup elements must be sorted and contain the identity");
  }

  const FiniteGroup& parent() const { return parent_; }
  std::uint64_t size() const { return elems_.size(); }
  const std::vector<elem_t>& elements() const { return elems_; }
  bool contains(elem_t e) const { return member_[e] != 0; }
  bool is_trivial() const { return elems_.size() == 1; }
  bool is_whole() const { return elems_.size() == parent_.order(); }

  bool operator==(const Subgroup& o) const {
    return parent_.same_group(o.parent_) && elems_ == o.elems_;
  }

 private:
  FiniteGroup parent_;
  std::vector<elem_t> elems_;
  std::vector<char> member_;
};

/// Closure of a set under multiplication: worklist expansion, each new
/// element multiplied against everything accumulated so far (both sides).
/// If `early_exit_full` and the closure reaches the whole group, the element
/// list may be left partial; only the size is then meaningful.
inline std::uint64_t closure_elems(const FiniteGroup& G, std::span<const elem_t> gens,
                                   std::vector<elem_t>& out, std::vector<char>& member,
                                   bool early_exit_full = false) {
  const std::uint64_t m = G.order();
  member.assign(m, 0);
  out.clear();
  out.push_back(FiniteGroup::identity());
  member[FiniteGroup::identity()] = 1;
  for (elem_t g : gens) {
    if (g >= m) throw std::out_of_range("closure: element id out of range");
    if (!member[g]) {
      member[g] = 1;
      out.push_back(g);
    }
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    const elem_t x = out[i];
    for (std::size_t j = 0; j < out.size(); ++j) {
      const elem_t y = out[j];
      elem_t p = G.mul_nocheck(x, y);
      if (!member[p]) {
        member[p] = 1;
        out.push_back(p);
        if (early_exit_full && out.size() == m) return m;
      }
      p = G.mul_nocheck(y, x);
      if (!member[p]) {
        member[p] = 1;
        out.push_back(p);
        if (early_exit_full && out.size() == m) return m;
      }
    }
  }
  return out.size();
}

inline Subgroup closure(const FiniteGroup& G, std::span<const elem_t> gens) {
  std::vector<elem_t> elems;
  std::vector<char> member;
  closure_elems(G, gens, elems, member);
  std::sort(elems.begin(), elems.end());
  return Subgroup(G, std::move(elems));
}

inline Subgroup trivial_subgroup(const FiniteGroup& G) {
  return Subgroup(G, {FiniteGroup::identity()});
}

inline Subgroup whole_subgroup(const FiniteGroup& G) {
  std::vector<elem_t> all(G.order());
  for (std::uint64_t i = 0; i < all.size(); ++i) all[i] = i;
  return Subgroup(G, std::move(all));
}

inline bool is_normal(const Subgroup& H) {
  const FiniteGroup& G = H.parent();
  for (elem_t g = 0; g < G.order(); ++g) {
    const elem_t gi = G.inv_nocheck(g);
    for (elem_t h : H.elements())
      if (!H.contains(G.mul_nocheck(G.mul_nocheck(gi, h), g))) return false;
  }
  return true;
}

/// [H, K]: closure of all commutators h^-1 k^-1 h k.
inline Subgroup commutator_subgroup(const Subgroup& H, const Subgroup& K) {
  if (!H.parent().same_group(K.parent()))
    throw std::invalid_argument("commutator_subgroup: different parent groups");
  const FiniteGroup& G = H.parent();
  std::vector<char> seen(G.order(), 0);
  std::vector<elem_t> comms;
  for (elem_t h : H.elements())
    for (elem_t k : K.elements()) {
      const elem_t c = G.commutator(h, k);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return closure(G, comms);
}

/// The derived series G = G^(0) > G^(1) > ...; terms stop at the first
/// repetition, so a perfect group contributes a single term.
struct DerivedSeries {
  std::vector<Subgroup> terms;

  bool solvable() const { return terms.back().is_trivial(); }

  std::uint32_t derived_length() const {
    if (!solvable())
      throw not_solvable_error("derived series of '" + terms.front().parent().name() +
                               "' stabilizes at order " +
                               std::to_string(terms.back().size()) +
                               " without reaching the trivial subgroup");
    return static_cast<std::uint32_t>(terms.size() - 1);
  }
};

inline DerivedSeries derived_series(const FiniteGroup& G) {
  DerivedSeries s;
  s.terms.push_back(whole_subgroup(G));
  for (;;) {
    Subgroup next = commutator_subgroup(s.terms.back(), s.terms.back());
    if (next.size() == s.terms.back().size()) break;
    s.terms.push_back(std::move(next));
    if (s.terms.back().is_trivial()) break;
  }
  return s;
}

/// G/N for normal N, as a dense group over coset ids. Cosets are numbered in
/// ascending order of their smallest member, so the identity coset is id 0
/// and the numbering is canonical.
struct QuotientGroup {
  FiniteGroup group;
  std::vector<std::uint32_t> proj;  // parent element id -> coset id
  std::vector<elem_t> reps;         // coset id -> smallest member
};

inline QuotientGroup quotient(const FiniteGroup& G, const Subgroup& N) {
  if (!N.parent().same_group(G))
    throw std::invalid_argument("quotient: subgroup belongs to a different group");
  if (!is_normal(N)) throw std::invalid_argument("quotient: subgroup is not normal");
  const std::uint64_t m = G.order();
  const std::uint64_t q = m / N.size();
  if (q > kDenseOrderCap)
    throw budget_exceeded_error("quotient has " + std::to_string(q) +
                                " cosets, above the dense cap");
  QuotientGroup out;
  out.proj.assign(m, std::numeric_limits<std::uint32_t>::max());
  out.reps.reserve(q);
  for (elem_t g = 0; g < m; ++g) {
    if (out.proj[g] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(out.reps.size());
    out.reps.push_back(g);
    for (elem_t h : N.elements()) out.proj[G.mul_nocheck(h, g)] = id;
  }
  std::vector<std::uint32_t> table(q * q);
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      table[a * q + b] = out.proj[G.mul_nocheck(out.reps[a], out.reps[b])];
  out.group = FiniteGroup::from_table(G.name() + "/N" + std::to_string(N.size()), q,
                                      std::move(table));
  return out;
}

/// A subgroup materialized as a group in its own right, with the id
/// translation in both directions. Subgroup ids follow the parent's order,
/// so the parent identity maps to id 0.
struct SubgroupEmbedding {
  FiniteGroup group;
  std::vector<elem_t> to_parent;            // subgroup id -> parent id
  std::vector<std::uint32_t> from_parent;   // parent id -> subgroup id (or max)

  std::uint32_t index_of(elem_t parent_elem) const {
    const std::uint32_t i = from_parent[parent_elem];
    if (i == std::numeric_limits<std::uint32_t>::max())
      throw std::invalid_argument("element " + std::to_string(parent_elem) +
                                  " is not in the subgroup");
    return i;
  }
};

inline SubgroupEmbedding subgroup_as_group(const Subgroup& H, std::string name = {}) {
  const FiniteGroup& G = H.parent();
  const std::uint64_t k = H.size();
  if (k > kDenseOrderCap)
    throw budget_exceeded_error("subgroup of order " + std::to_string(k) +
                                " is above the dense cap");
  SubgroupEmbedding out;
  out.to_parent = H.elements();
  out.from_parent.assign(G.order(), std::numeric_limits<std::uint32_t>::max());
  for (std::uint64_t i = 0; i < k; ++i)
    out.from_parent[out.to_parent[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> table(k * k);
  for (std::uint64_t a = 0; a < k; ++a)
    for (std::uint64_t b = 0; b < k; ++b)
      table[a * k + b] =
          out.from_parent[G.mul_nocheck(out.to_parent[a], out.to_parent[b])];
  if (name.empty()) name = G.name() + ":sub" + std::to_string(k);
  out.group = FiniteGroup::from_table(std::move(name), k, std::move(table));
  return out;
}

/// All normal subgroups, found as closures of unions of conjugacy classes.
/// Exponential in the class count; meant for small dense groups.
inline std::vector<Subgroup> normal_subgroups(const FiniteGroup& G) {
  const std::uint64_t m = G.order();
  if (G.is_power() || m > 512)
    throw std::invalid_argument("normal_subgroups: group too large for class scan");
  std::vector<std::uint32_t> class_of(m, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::vector<elem_t>> classes;
  for (elem_t a = 0; a < m; ++a) {
    if (class_of[a] != std::numeric_limits<std::uint32_t>::max()) continue;
    const auto id = static_cast<std::uint32_t>(classes.size());
    std::vector<elem_t> cls;
    for (elem_t g = 0; g < m; ++g) {
      const elem_t c = G.mul_nocheck(G.mul_nocheck(G.inv_nocheck(g), a), g);
      if (class_of[c] == std::numeric_limits<std::uint32_t>::max()) {
        class_of[c] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  // Identity class is classes[0]; choose subsets of the remaining classes.
  const std::size_t nc = classes.size() - 1;
  if (nc > 20) throw budget_exceeded_error("normal_subgroups: too many conjugacy classes");
  std::vector<std::vector<elem_t>> seen_elem_sets;
  std::vector<Subgroup> out;
  for (std::uint64_t mask = 0; mask < (1ull << nc); ++mask) {
    std::vector<elem_t> gens;
    for (std::size_t i = 0; i < nc; ++i)
      if (mask & (1ull << i))
        gens.insert(gens.end(), classes[i + 1].begin(), classes[i + 1].end());
    Subgroup s = closure(G, gens);
    if (std::find(seen_elem_sets.begin(), seen_elem_sets.end(), s.elements()) ==
        seen_elem_sets.end()) {
      seen_elem_sets.push_back(s.elements());
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

}  // namespace diamlab
