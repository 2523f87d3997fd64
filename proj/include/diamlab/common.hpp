#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace diamlab {

/// Element id. Identity is always id 0.
using elem_t = std::uint64_t;

using u128 = unsigned __int128;

/// Marker for "not reached" in length tables.
inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Largest order for which a dense multiplication table may be materialized.
inline constexpr std::uint64_t kDenseOrderCap = 4096;

/// Default cap on |G^n| when building direct powers.
inline constexpr std::uint64_t kDefaultMaxElements = 1'000'000;

/// Default cap on candidate subsets examined by exhaustive searches.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct budget_exceeded_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct not_solvable_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A sampled lower bound exceeded a proven upper bound. This means an
/// implementation bug, so it aborts the run loudly instead of being
/// recorded as a quiet verdict.
struct falsified_bound_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct table_parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline u128 checked_mul_u128(u128 a, u128 b) {
  if (a != 0 && b > std::numeric_limits<u128>::max() / a)
    throw std::overflow_error("128-bit overflow in bound evaluation");
  return a * b;
}

inline u128 checked_add_u128(u128 a, u128 b) {
  if (b > std::numeric_limits<u128>::max() - a)
    throw std::overflow_error("128-bit overflow in bound evaluation");
  return a + b;
}

inline u128 checked_pow_u128(u128 base, std::uint64_t exp) {
  u128 r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul_u128(r, base);
  return r;
}

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

inline double u128_to_double(u128 v) {
  return static_cast<double>(v);
}

/// Binomial coefficient, saturating at `cap` (avoids overflow for the
/// feasibility pre-check of exhaustive enumerations).
inline std::uint64_t binomial_saturated(std::uint64_t n, std::uint64_t k,
                                        std::uint64_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace diamlab
