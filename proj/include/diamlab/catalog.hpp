#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diamlab/gensets.hpp"
#include "diamlab/group.hpp"

namespace diamlab {

namespace detail {

inline std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("expected a number for " + what + ", got '" + s + "'");
  return std::stoull(s);
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Lexicographically sorted permutations of 0..n-1 (all, or the even ones).
inline std::vector<std::vector<std::uint8_t>> sorted_perms(std::uint32_t n,
                                                           bool even_only) {
  std::vector<std::uint8_t> p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = static_cast<std::uint8_t>(i);
  std::vector<std::vector<std::uint8_t>> out;
  do {
    if (even_only) {
      int inversions = 0;
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
          if (p[i] > p[j]) ++inversions;
      if (inversions % 2 != 0) continue;
    }
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline FiniteGroup make_perm_group(const std::string& name, std::uint32_t n,
                                   bool even_only) {
  if (n < 1 || n > 5)
    throw std::invalid_argument(name + ": degree must be between 1 and 5");
  const auto perms = sorted_perms(n, even_only);
  const std::uint64_t m = perms.size();
  auto index_of = [&](const std::vector<std::uint8_t>& q) {
    const auto it = std::lower_bound(perms.begin(), perms.end(), q);
    return static_cast<std::uint32_t>(it - perms.begin());
  };
  std::vector<std::uint32_t> table(m * m);
  std::vector<std::uint8_t> comp(n);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) {
      // product "a then b": (a*b)(x) = b[a[x]]
      for (std::uint32_t x = 0; x < n; ++x) comp[x] = perms[b][perms[a][x]];
      table[a * m + b] = index_of(comp);
    }
  return FiniteGroup::from_table(name, m, std::move(table));
}

inline FiniteGroup make_cyclic(std::uint64_t n) {
  if (n == 0 || n > kDenseOrderCap)
    throw std::invalid_argument("cyclic: order out of range");
  std::vector<std::uint32_t> table(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      table[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
  return FiniteGroup::from_table("cyclic(" + std::to_string(n) + ")", n,
                                 std::move(table));
}

inline FiniteGroup make_dihedral(std::uint64_t order) {
  if (order < 2 || order % 2 != 0 || order > kDenseOrderCap)
    throw std::invalid_argument("dihedral: order must be even and in range");
  const std::uint64_t k = order / 2;
  // ids: a < k is r^a, k + a is s r^a, with s r^a s = r^-a.
  auto rot = [&](std::uint64_t a) { return static_cast<std::uint32_t>(a % k); };
  std::vector<std::uint32_t> table(order * order);
  for (std::uint64_t x = 0; x < order; ++x)
    for (std::uint64_t y = 0; y < order; ++y) {
      const std::uint64_t a = x % k, b = y % k;
      std::uint32_t r;
      if (x < k && y < k) r = rot(a + b);
      else if (x < k) r = static_cast<std::uint32_t>(k) + rot(b + k - a);
      else if (y < k) r = static_cast<std::uint32_t>(k) + rot(a + b);
      else r = rot(b + k - a);
      table[x * order + y] = r;
    }
  return FiniteGroup::from_table("dihedral(" + std::to_string(order) + ")", order,
                                 std::move(table));
}

inline FiniteGroup make_quaternion() {
  // id = unit*2 + (negated ? 1 : 0), units ordered 1, i, j, k.
  static constexpr int unit_prod[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int unit_sign[4][4] = {
      {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
  std::vector<std::uint32_t> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int u1 = a / 2, n1 = a % 2, u2 = b / 2, n2 = b % 2;
      const int u = unit_prod[u1][u2];
      const int neg = (n1 ^ n2) ^ (unit_sign[u1][u2] < 0 ? 1 : 0);
      table[a * 8 + b] = static_cast<std::uint32_t>(u * 2 + neg);
    }
  return FiniteGroup::from_table("quaternion(8)", 8, std::move(table));
}

inline FiniteGroup make_elementary_abelian(std::uint64_t p, std::uint64_t k) {
  if (!is_prime(p)) throw std::invalid_argument("elementary_abelian: p must be prime");
  if (k == 0) throw std::invalid_argument("elementary_abelian: k must be >= 1");
  u128 m128 = checked_pow_u128(p, k);
  if (m128 > kDenseOrderCap)
    throw std::invalid_argument("elementary_abelian: order above the dense cap");
  const auto m = static_cast<std::uint64_t>(m128);
  std::vector<std::uint32_t> table(m * m);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) {
      std::uint64_t x = a, y = b, out = 0, scale = 1;
      for (std::uint64_t c = 0; c < k; ++c) {
        out += (x % p + y % p) % p * scale;
        x /= p;
        y /= p;
        scale *= p;
      }
      table[a * m + b] = static_cast<std::uint32_t>(out);
    }
  return FiniteGroup::from_table(
      "elementary_abelian(" + std::to_string(p) + "," + std::to_string(k) + ")", m,
      std::move(table));
}

inline FiniteGroup make_product(const std::string& name,
                                const std::vector<FiniteGroup>& factors) {
  if (factors.size() < 2)
    throw std::invalid_argument("product: needs at least two factors");
  u128 m128 = 1;
  for (const auto& f : factors) m128 = checked_mul_u128(m128, f.order());
  if (m128 > kDenseOrderCap)
    throw std::invalid_argument("product: order above the dense cap");
  const auto m = static_cast<std::uint64_t>(m128);
  // mixed radix, factor 0 least significant (same convention as powers)
  std::vector<std::uint32_t> table(m * m);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) {
      std::uint64_t x = a, y = b, out = 0, scale = 1;
      for (const auto& f : factors) {
        const std::uint64_t fo = f.order();
        out += f.mul_nocheck(x % fo, y % fo) * scale;
        x /= fo;
        y /= fo;
        scale *= fo;
      }
      table[a * m + b] = static_cast<std::uint32_t>(out);
    }
  return FiniteGroup::from_table(name, m, std::move(table));
}

}  // namespace detail

/// Builds a builtin by its canonical constructor string: cyclic(n),
/// dihedral(2n), quaternion(8), symmetric(n<=5), alternating(n<=5),
/// elementary_abelian(p,k), product(spec,spec,...).
inline FiniteGroup builtin_group(const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw std::invalid_argument("unknown group spec '" + spec + "'");
  const std::string head = spec.substr(0, open);
  const std::string args = spec.substr(open + 1, spec.size() - open - 2);
  const auto parts = detail::split_top_level(args, ',');
  if (head == "cyclic" && parts.size() == 1)
    return detail::make_cyclic(detail::parse_u64(parts[0], "cyclic order"));
  if (head == "dihedral" && parts.size() == 1)
    return detail::make_dihedral(detail::parse_u64(parts[0], "dihedral order"));
  if (head == "quaternion" && parts.size() == 1) {
    if (detail::parse_u64(parts[0], "quaternion order") != 8)
      throw std::invalid_argument("quaternion: only order 8 is built in");
    return detail::make_quaternion();
  }
  if (head == "symmetric" && parts.size() == 1)
    return detail::make_perm_group(
        spec, static_cast<std::uint32_t>(detail::parse_u64(parts[0], "degree")), false);
  if (head == "alternating" && parts.size() == 1)
    return detail::make_perm_group(
        spec, static_cast<std::uint32_t>(detail::parse_u64(parts[0], "degree")), true);
  if (head == "elementary_abelian" && parts.size() == 2)
    return detail::make_elementary_abelian(detail::parse_u64(parts[0], "p"),
                                           detail::parse_u64(parts[1], "k"));
  if (head == "product" && parts.size() >= 2) {
    std::vector<FiniteGroup> factors;
    std::string name = "product(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      factors.push_back(builtin_group(parts[i]));
      name += (i ? "," : "") + factors.back().name();
    }
    return detail::make_product(name + ")", factors);
  }
  throw std::invalid_argument("unknown group spec '" + spec + "'");
}

struct CatalogEntry {
  std::string name;     // canonical constructor string
  std::string aliases;  // comma separated, usable as group specs
  std::uint64_t order = 0;
  bool solvable = true;
  std::uint32_t derived_length = 0;  // meaningful when solvable
  std::uint32_t rank = 0;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"cyclic(2)", "Z2", 2, true, 1, 1},
      {"cyclic(3)", "Z3", 3, true, 1, 1},
      {"cyclic(4)", "Z4", 4, true, 1, 1},
      {"cyclic(5)", "Z5", 5, true, 1, 1},
      {"cyclic(6)", "Z6", 6, true, 1, 1},
      {"cyclic(8)", "Z8", 8, true, 1, 1},
      {"cyclic(12)", "Z12", 12, true, 1, 1},
      {"elementary_abelian(2,2)", "V4,klein", 4, true, 1, 2},
      {"elementary_abelian(2,3)", "Z2^3", 8, true, 1, 3},
      {"elementary_abelian(3,2)", "Z3^2", 9, true, 1, 2},
      {"product(cyclic(4),cyclic(2))", "Z4xZ2", 8, true, 1, 2},
      {"dihedral(6)", "D3", 6, true, 2, 2},
      {"dihedral(8)", "D4", 8, true, 2, 2},
      {"dihedral(10)", "D5", 10, true, 2, 2},
      {"dihedral(12)", "D6", 12, true, 2, 2},
      {"dihedral(16)", "D8", 16, true, 2, 2},
      {"quaternion(8)", "Q8", 8, true, 2, 2},
      {"symmetric(3)", "S3", 6, true, 2, 2},
      {"symmetric(4)", "S4", 24, true, 3, 2},
      {"symmetric(5)", "S5", 120, false, 0, 2},
      {"alternating(3)", "A3", 3, true, 1, 1},
      {"alternating(4)", "A4", 12, true, 2, 2},
      {"alternating(5)", "A5", 60, false, 0, 2},
  };
  return entries;
}

/// Reconstructs the entry and recomputes its invariant data; throws on any
/// mismatch with the stored expectations.
inline FiniteGroup validate_entry(const CatalogEntry& e,
                                  std::uint64_t budget = kDefaultBudget) {
  FiniteGroup G = builtin_group(e.name);
  auto fail = [&](const std::string& what) {
    throw std::logic_error("catalog entry " + e.name + ": " + what);
  };
  if (G.order() != e.order) fail("order mismatch");
  DerivedSeries s = derived_series(G);
  if (s.solvable() != e.solvable) fail("solvability mismatch");
  if (e.solvable && s.derived_length() != e.derived_length)
    fail("derived length mismatch");
  if (rank(G, budget) != e.rank) fail("rank mismatch");
  return G;
}

namespace detail {

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace detail

/// Canonical spec for an alias like "Q8" (case-insensitive), or the input
/// unchanged when it is not an alias.
inline std::string resolve_alias(const std::string& spec) {
  const std::string key = detail::lower(spec);
  for (const auto& e : catalog())
    for (const auto& a : detail::split_top_level(e.aliases, ','))
      if (detail::lower(a) == key) return e.name;
  return spec;
}

/// Per-builtin element naming. name(e) gives the display string; parse tries
/// to map a string back to an id and returns nullopt when the scheme does not
/// recognize it (numeric ids are handled by the caller).
struct ElementNamer {
  std::function<std::string(elem_t)> name;
  std::function<std::optional<elem_t>(const std::string&)> parse;
};

namespace detail {

inline ElementNamer numeric_namer() {
  return {[](elem_t e) { return std::to_string(e); },
          [](const std::string&) -> std::optional<elem_t> { return std::nullopt; }};
}

inline ElementNamer quaternion_namer() {
  static const std::vector<std::string> names = {"1", "-1", "i",  "-i",
                                                 "j", "-j",  "k", "-k"};
  return {[](elem_t e) { return names[e]; },
          [](const std::string& s) -> std::optional<elem_t> {
            for (elem_t e = 0; e < 8; ++e)
              if (names[e] == s) return e;
            return std::nullopt;
          }};
}

inline ElementNamer dihedral_namer(std::uint64_t order) {
  const std::uint64_t k = order / 2;
  auto nm = [k](elem_t e) {
    const std::uint64_t a = e % k;
    std::string s = e < k ? "" : "s";
    if (a == 1) s += "r";
    else if (a > 1) s += "r" + std::to_string(a);
    return s.empty() ? "1" : s;
  };
  return {nm, [k, nm, order](const std::string& s) -> std::optional<elem_t> {
            for (elem_t e = 0; e < order; ++e)
              if (nm(e) == s) return e;
            return std::nullopt;
          }};
}

inline ElementNamer perm_namer(std::uint32_t degree, bool even_only) {
  auto perms = sorted_perms(degree, even_only);
  auto nm = [perms](elem_t e) {
    std::string s;
    for (auto d : perms[e]) s += static_cast<char>('0' + d);
    return s;
  };
  return {nm, [perms, degree](const std::string& s) -> std::optional<elem_t> {
            if (s.size() != degree) return std::nullopt;
            std::vector<std::uint8_t> q;
            for (char c : s) {
              if (c < '0' || c >= static_cast<char>('0' + degree)) return std::nullopt;
              q.push_back(static_cast<std::uint8_t>(c - '0'));
            }
            const auto it = std::lower_bound(perms.begin(), perms.end(), q);
            if (it == perms.end() || *it != q) return std::nullopt;
            return static_cast<elem_t>(it - perms.begin());
          }};
}

// Components named by their factors' schemes, joined with ':'.
inline ElementNamer composite_namer(std::vector<ElementNamer> parts,
                                    std::vector<std::uint64_t> orders) {
  auto nm = [parts, orders](elem_t e) {
    std::string s;
    for (std::size_t c = 0; c < parts.size(); ++c) {
      if (c) s += ':';
      s += parts[c].name(e % orders[c]);
      e /= orders[c];
    }
    return s;
  };
  auto pr = [parts, orders](const std::string& s) -> std::optional<elem_t> {
    const auto toks = split_top_level(s, ':');
    if (toks.size() != parts.size()) return std::nullopt;
    elem_t out = 0;
    std::uint64_t scale = 1;
    for (std::size_t c = 0; c < parts.size(); ++c) {
      std::optional<elem_t> v = parts[c].parse(toks[c]);
      if (!v && !toks[c].empty() &&
          toks[c].find_first_not_of("0123456789") == std::string::npos) {
        const std::uint64_t num = std::stoull(toks[c]);
        if (num < orders[c]) v = num;
      }
      if (!v) return std::nullopt;
      out += *v * scale;
      scale *= orders[c];
    }
    return out;
  };
  return {nm, pr};
}

}  // namespace detail

/// Chooses the naming scheme from the group's construction name; falls back
/// to plain numeric ids for tables of unknown origin.
inline ElementNamer element_namer(const FiniteGroup& G) {
  const std::string& name = G.name();
  if (G.is_power()) {
    std::vector<ElementNamer> parts(G.exponent(), element_namer(G.base()));
    std::vector<std::uint64_t> orders(G.exponent(), G.base().order());
    return detail::composite_namer(std::move(parts), std::move(orders));
  }
  const auto open = name.find('(');
  if (open == std::string::npos || name.back() != ')')
    return detail::numeric_namer();
  const std::string head = name.substr(0, open);
  const std::string args = name.substr(open + 1, name.size() - open - 2);
  const auto parts = detail::split_top_level(args, ',');
  try {
    if (head == "quaternion") return detail::quaternion_namer();
    if (head == "dihedral") return detail::dihedral_namer(G.order());
    if (head == "cyclic") return detail::numeric_namer();
    if (head == "symmetric" || head == "alternating")
      return detail::perm_namer(
          static_cast<std::uint32_t>(detail::parse_u64(parts[0], "degree")),
          head == "alternating");
    if (head == "elementary_abelian" && parts.size() == 2) {
      const std::uint64_t p = detail::parse_u64(parts[0], "p");
      const std::uint64_t k = detail::parse_u64(parts[1], "k");
      std::vector<ElementNamer> sub(k, detail::numeric_namer());
      std::vector<std::uint64_t> orders(k, p);
      return detail::composite_namer(std::move(sub), std::move(orders));
    }
    if (head == "product") {
      std::vector<ElementNamer> sub;
      std::vector<std::uint64_t> orders;
      for (const auto& f : parts) {
        FiniteGroup fg = builtin_group(f);
        sub.push_back(element_namer(fg));
        orders.push_back(fg.order());
      }
      return detail::composite_namer(std::move(sub), std::move(orders));
    }
  } catch (const std::exception&) {
    return detail::numeric_namer();
  }
  return detail::numeric_namer();
}

inline std::string element_name(const FiniteGroup& G, elem_t e) {
  return element_namer(G).name(e);
}

/// Accepts a scheme name or a plain numeric id.
inline elem_t parse_element(const FiniteGroup& G, const ElementNamer& namer,
                            const std::string& tok) {
  if (auto v = namer.parse(tok)) return *v;
  if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) {
    const std::uint64_t id = std::stoull(tok);
    if (id < G.order()) return id;
    throw std::invalid_argument("element id " + tok + " out of range for " + G.name());
  }
  throw std::invalid_argument("unknown element '" + tok + "' for group " + G.name());
}

}  // namespace diamlab
