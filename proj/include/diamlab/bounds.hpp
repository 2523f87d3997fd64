#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diamlab/gensets.hpp"
#include "diamlab/group.hpp"

namespace diamlab {

/// Relative guard for comparisons against real-valued (ln-based) bounds.
inline constexpr double kRealBoundGuard = 1e-9;

/// (4n)^l * |G| / 4, the symmetric-diameter bound for the n-th power of a
/// solvable group of derived length l.
inline u128 bound_sym_power(std::uint32_t l, std::uint64_t order, std::uint64_t n) {
  return checked_mul_u128(checked_pow_u128(checked_mul_u128(4, n), l), order) / 4;
}

/// n^l * |G| * prod_{i=0..l-2} (|G^(i)| + 1) for n >= 2, over the derived
/// series orders [|G^(0)|, ..., |G^(l)|].
inline u128 bound_diam_power(std::span<const std::uint64_t> term_orders,
                             std::uint64_t n) {
  if (term_orders.size() < 2)
    throw std::invalid_argument("bound_diam_power: series too short");
  const std::uint32_t l = static_cast<std::uint32_t>(term_orders.size() - 1);
  u128 r = checked_mul_u128(checked_pow_u128(n, l), term_orders.front());
  for (std::uint32_t i = 0; i + 2 <= l; ++i)
    r = checked_mul_u128(r, checked_add_u128(term_orders[i], 1));
  return r;
}

/// 2 * ((4n)^l |G| / 4 + 1) * (n*beta + 1) * n * ln|G|.
inline double bound_pgroup_ln(std::uint32_t l, std::uint64_t order, std::uint32_t beta,
                              std::uint64_t n) {
  const double core = u128_to_double(bound_sym_power(l, order, n));
  return 2.0 * (core + 1.0) * (static_cast<double>(n) * beta + 1.0) *
         static_cast<double>(n) * std::log(static_cast<double>(order));
}

/// 2 * (diam_sym + 1) * (|X| + 1) * ln|G|, valid for any generating set X of
/// any finite group.
inline double bound_babai(std::uint32_t diam_sym, std::size_t genset_size,
                          std::uint64_t order) {
  return 2.0 * (static_cast<double>(diam_sym) + 1.0) *
         (static_cast<double>(genset_size) + 1.0) *
         std::log(static_cast<double>(order));
}

/// n * (|A| - rank A) for abelian A.
inline u128 bound_abelian_power(std::uint64_t order, std::uint32_t rnk,
                                std::uint64_t n) {
  if (rnk > order) throw std::invalid_argument("bound_abelian_power: rank > order");
  return checked_mul_u128(n, order - rnk);
}

/// 8n^2 + 3n, the sharpened bound for powers of the quaternion group.
inline u128 bound_q8_quadratic(std::uint64_t n) {
  return checked_add_u128(checked_mul_u128(8, checked_mul_u128(n, n)),
                          checked_mul_u128(3, n));
}

/// Structural test for "is the quaternion group of order 8": order 8,
/// non-abelian, exactly one element of order 2.
inline bool looks_like_q8(const FiniteGroup& G) {
  if (G.order() != 8 || G.is_abelian()) return false;
  int involutions = 0;
  for (elem_t a = 1; a < 8; ++a)
    if (G.element_order(a) == 2) ++involutions;
  return involutions == 1;
}

/// Ds(G) <= 2ab + a + b <= 4ab where a = Ds(G/N), b = Ds(N), all three
/// diameters computed exactly.
struct BreakDiameterReport {
  std::uint32_t quotient_diam_sym = 0;  // a
  std::uint32_t subgroup_diam_sym = 0;  // b
  std::uint32_t whole_diam_sym = 0;     // Ds(G)
  u128 bound_strong = 0;                // 2ab + a + b
  u128 bound_weak = 0;                  // 4ab
  bool pass_strong = false;
  bool pass_weak = false;
  bool chain_ok = false;  // strong <= weak
};

inline BreakDiameterReport break_diameter_check(const FiniteGroup& G,
                                                const Subgroup& N,
                                                std::uint64_t budget = kDefaultBudget) {
  if (N.is_trivial() || N.is_whole())
    throw std::invalid_argument("break_diameter_check: need a proper nontrivial N");
  QuotientGroup q = quotient(G, N);
  SubgroupEmbedding sub = subgroup_as_group(N);
  MaxDiamOptions opt;
  opt.budget = budget;
  BreakDiameterReport r;
  r.quotient_diam_sym = max_diameters(q.group, opt).diameter_sym;
  r.subgroup_diam_sym = max_diameters(sub.group, opt).diameter_sym;
  r.whole_diam_sym = max_diameters(G, opt).diameter_sym;
  const u128 a = r.quotient_diam_sym, b = r.subgroup_diam_sym;
  r.bound_strong = 2 * a * b + a + b;
  r.bound_weak = 4 * a * b;
  r.pass_strong = r.whole_diam_sym <= r.bound_strong;
  r.pass_weak = r.whole_diam_sym <= r.bound_weak;
  r.chain_ok = r.bound_strong <= r.bound_weak;
  return r;
}

/// One row of a verification report. A bound value is computed whenever the
/// group class fits the formula (value_defined); it is compared against the
/// measured quantity only when the power n also qualifies (applicable), in
/// which case verdict is "pass", "fail", or "lower-bound-pass". valid_from_n
/// records the smallest qualifying n.
struct BoundCheck {
  std::string key;        // "sym" | "diam" | "ln" | "abelian" | "q8"
  bool value_defined = false;
  bool integral = true;   // bound_int vs bound_real
  u128 bound_int = 0;
  double bound_real = 0.0;
  std::uint32_t valid_from_n = 1;
  bool applicable = false;
  std::string note;
  std::string compares;   // name of the measured field
  std::uint64_t measured = 0;
  std::string verdict;    // empty when not applicable
};

struct BoundReport {
  std::string group;
  std::uint64_t base_order = 0;
  std::uint32_t n = 1;
  std::uint64_t power_order = 0;
  bool solvable = false;
  std::uint32_t derived_length = 0;  // 0 when not solvable
  bool abelian = false;
  bool p_group = false;
  std::uint64_t p = 0;
  std::uint32_t alpha = 0;
  std::uint32_t beta = 0;
  std::string strategy;  // "exact" | "sampled"
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::uint64_t samples_requested = 0;
  std::uint64_t samples_found = 0;
  std::uint64_t budget = 0;
  std::uint32_t size_cap = 0;
  std::uint32_t diameter = 0;
  std::uint32_t diameter_sym = 0;
  std::vector<elem_t> argmax;
  std::vector<elem_t> argmax_sym;
  std::uint32_t min_genset_size = 0;
  std::uint32_t diameter_minsize = 0;
  std::uint32_t diameter_sym_minsize = 0;
  std::uint64_t gensets_tested = 0;
  std::uint64_t subsets_visited = 0;
  std::uint64_t babai_checked = 0;
  std::uint64_t babai_violations = 0;
  std::vector<BoundCheck> checks;
  bool all_pass = false;
};

enum class VerifyStrategy { automatic, exact, sampled };

struct VerifyOptions {
  VerifyStrategy strategy = VerifyStrategy::automatic;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t max_elements = kDefaultMaxElements;
  std::uint64_t samples = 100;
  std::uint64_t seed = 0;
  std::uint32_t size_cap = 0;
};

namespace detail {

inline bool real_bound_holds(std::uint64_t measured, double bound) {
  return static_cast<double>(measured) <= bound * (1.0 + kRealBoundGuard);
}

// On exhaustive data a failed comparison is an honest "fail" verdict. On
// sampled data the measured value is a lower bound, so it can only ever
// falsify the inequality; that means a bug somewhere and aborts loudly.
inline bool settle(BoundCheck& c, bool holds, bool exhaustive) {
  if (holds) {
    c.verdict = exhaustive ? "pass" : "lower-bound-pass";
    return true;
  }
  if (!exhaustive)
    throw falsified_bound_error(
        "sampled lower bound exceeds the proven bound '" + c.key +
        "' - this indicates an implementation bug");
  c.verdict = "fail";
  return false;
}

}  // namespace detail

/// Computes (or samples) the maximized diameters of base^n and checks every
/// applicable closed-form bound against them. Strategy "automatic" tries
/// exact first and falls back to sampling when the subset count is over
/// budget.
inline BoundReport verify_report(const FiniteGroup& base, std::uint32_t n,
                                 const VerifyOptions& vo = {}) {
  if (base.is_power())
    throw std::invalid_argument("verify_report: base group must not be a power");
  if (n == 0) throw std::invalid_argument("verify_report: n must be >= 1");
  BoundReport rep;
  rep.group = base.name();
  rep.base_order = base.order();
  rep.n = n;
  rep.budget = vo.budget;
  rep.seed = vo.seed;

  DerivedSeries series = derived_series(base);
  rep.solvable = series.solvable();
  if (rep.solvable) rep.derived_length = series.derived_length();
  rep.abelian = base.is_abelian();
  rep.p_group = is_prime_power(base.order(), rep.p);
  if (!rep.p_group) rep.p = 0;
  rep.alpha = rank(base, vo.budget);
  rep.beta = abelianization_rank(base, vo.budget);

  FiniteGroup Gn = FiniteGroup::direct_power(base, n, vo.max_elements);
  rep.power_order = Gn.order();

  MaxDiamOptions mo;
  mo.budget = vo.budget;
  mo.samples = vo.samples;
  mo.seed = vo.seed;
  mo.size_cap = vo.size_cap;
  GenSetObserver observer = [&](std::span<const elem_t> S, std::uint32_t dp,
                                std::uint32_t ds) {
    ++rep.babai_checked;
    if (!detail::real_bound_holds(dp, bound_babai(ds, S.size(), Gn.order())))
      ++rep.babai_violations;
  };

  DiameterCertificate cert;
  switch (vo.strategy) {
    case VerifyStrategy::exact:
      mo.strategy = MaxDiamStrategy::exact;
      cert = max_diameters(Gn, mo, observer);
      break;
    case VerifyStrategy::sampled:
      mo.strategy = MaxDiamStrategy::sampled;
      cert = max_diameters(Gn, mo, observer);
      break;
    case VerifyStrategy::automatic:
      try {
        mo.strategy = MaxDiamStrategy::exact;
        cert = max_diameters(Gn, mo, observer);
      } catch (const budget_exceeded_error&) {
        rep.babai_checked = rep.babai_violations = 0;
        mo.strategy = MaxDiamStrategy::sampled;
        cert = max_diameters(Gn, mo, observer);
      }
      break;
  }
  rep.strategy = mo.strategy == MaxDiamStrategy::exact ? "exact" : "sampled";
  rep.exhaustive = cert.exhaustive;
  rep.samples_requested = cert.samples_requested;
  rep.samples_found = cert.samples_found;
  rep.size_cap = cert.size_cap;
  rep.diameter = cert.diameter;
  rep.diameter_sym = cert.diameter_sym;
  rep.argmax = cert.argmax;
  rep.argmax_sym = cert.argmax_sym;
  rep.min_genset_size = cert.min_genset_size;
  rep.diameter_minsize = cert.diameter_minsize;
  rep.diameter_sym_minsize = cert.diameter_sym_minsize;
  rep.gensets_tested = cert.gensets_tested;
  rep.subsets_visited = cert.subsets_visited;

  const bool solv_nonab = rep.solvable && !rep.abelian;
  bool all = rep.babai_violations == 0;

  {
    BoundCheck c;
    c.key = "sym";
    c.compares = "diameter_sym";
    if (solv_nonab) {
      c.value_defined = true;
      c.bound_int = bound_sym_power(rep.derived_length, rep.base_order, n);
      c.applicable = true;
      c.measured = rep.diameter_sym;
      all &= detail::settle(c, u128(c.measured) <= c.bound_int, rep.exhaustive);
    } else {
      c.note = rep.abelian ? "refused: abelian base" : "not solvable";
    }
    rep.checks.push_back(std::move(c));
  }
  {
    BoundCheck c;
    c.key = "diam";
    c.compares = "diameter";
    c.valid_from_n = 2;
    if (solv_nonab) {
      c.value_defined = true;
      std::vector<std::uint64_t> orders;
      for (const auto& t : series.terms) orders.push_back(t.size());
      c.bound_int = bound_diam_power(orders, n);
      if (n >= 2) {
        c.applicable = true;
        c.measured = rep.diameter;
        all &= detail::settle(c, u128(c.measured) <= c.bound_int, rep.exhaustive);
      } else {
        c.note = "valid from n = 2";
      }
    } else {
      c.note = rep.abelian ? "refused: abelian base" : "not solvable";
    }
    rep.checks.push_back(std::move(c));
  }
  {
    BoundCheck c;
    c.key = "ln";
    c.integral = false;
    if (solv_nonab) {
      c.value_defined = true;
      c.bound_real = bound_pgroup_ln(rep.derived_length, rep.base_order, rep.beta, n);
      // Minimum-size gensets have n*beta elements once n >= alpha/beta; in a
      // p-group every minimal genset has minimum size, so the bound then caps
      // the full diameter, otherwise only diameter_minsize.
      c.valid_from_n = rep.beta == 0
                           ? 0  // never (perfect base is not solvable anyway)
                           : static_cast<std::uint32_t>((rep.alpha + rep.beta - 1) /
                                                        rep.beta);
      if (c.valid_from_n == 0) c.valid_from_n = 1;
      c.compares = rep.p_group ? "diameter" : "diameter_minsize";
      if (n < c.valid_from_n) {
        c.note = "needs n >= alpha/beta";
      } else if (!rep.p_group && !rep.exhaustive) {
        c.note = "needs exact rank data for a non-p-group";
      } else {
        c.applicable = true;
        c.measured = rep.p_group ? rep.diameter : rep.diameter_minsize;
        all &= detail::settle(c, detail::real_bound_holds(c.measured, c.bound_real),
                              rep.exhaustive);
      }
    } else {
      c.note = rep.abelian ? "refused: abelian base" : "not solvable";
    }
    rep.checks.push_back(std::move(c));
  }
  {
    BoundCheck c;
    c.key = "abelian";
    c.compares = "diameter";
    if (rep.abelian) {
      c.value_defined = true;
      c.bound_int = bound_abelian_power(rep.base_order, rep.alpha, n);
      c.applicable = true;
      c.measured = rep.diameter;
      all &= detail::settle(c, u128(c.measured) <= c.bound_int, rep.exhaustive);
    } else {
      c.note = "base not abelian";
    }
    rep.checks.push_back(std::move(c));
  }
  {
    BoundCheck c;
    c.key = "q8";
    c.compares = "diameter";
    if (looks_like_q8(base)) {
      c.value_defined = true;
      c.bound_int = bound_q8_quadratic(n);
      c.applicable = true;
      c.measured = rep.diameter;
      all &= detail::settle(c, u128(c.measured) <= c.bound_int, rep.exhaustive);
    } else {
      c.note = "base is not the quaternion group";
    }
    rep.checks.push_back(std::move(c));
  }
  rep.all_pass = all;
  return rep;
}

/// The check row with the given key ("sym", "diam", "ln", "abelian", "q8").
inline const BoundCheck& find_check(const BoundReport& rep, const std::string& key) {
  for (const auto& c : rep.checks)
    if (c.key == key) return c;
  throw std::out_of_range("no bound check with key '" + key + "'");
}

}  // namespace diamlab
