#pragma once

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "diamlab/group.hpp"

namespace diamlab {

/// One letter of a word: an index into the generating list, with sign -1
/// meaning the inverse of that generator.
struct WordToken {
  std::uint32_t gen;
  std::int8_t sign;

  bool operator==(const WordToken&) const = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<WordToken> toks) : toks_(std::move(toks)) {}

  std::size_t size() const { return toks_.size(); }
  bool empty() const { return toks_.empty(); }
  const std::vector<WordToken>& tokens() const { return toks_; }

  void push(std::uint32_t gen, std::int8_t sign = 1) { toks_.push_back({gen, sign}); }
  void append(const Word& w) {
    toks_.insert(toks_.end(), w.toks_.begin(), w.toks_.end());
  }

  /// Reversed word with all signs flipped.
  Word inverted() const {
    Word w;
    w.toks_.reserve(toks_.size());
    for (auto it = toks_.rbegin(); it != toks_.rend(); ++it)
      w.toks_.push_back({it->gen, static_cast<std::int8_t>(-it->sign)});
    return w;
  }

  bool operator==(const Word&) const = default;

  /// e.g. "a b a^-1"; empty word renders as "<empty>".
  std::string str(std::span<const std::string> gen_names) const {
    if (toks_.empty()) return "<empty>";
    std::string out;
    for (const auto& t : toks_) {
      if (!out.empty()) out += ' ';
      out += t.gen < gen_names.size() ? gen_names[t.gen]
                                      : "g" + std::to_string(t.gen);
      if (t.sign < 0) out += "^-1";
    }
    return out;
  }

 private:
  std::vector<WordToken> toks_;
};

inline elem_t eval_word(const FiniteGroup& G, std::span<const elem_t> gens,
                        const Word& w) {
  elem_t acc = FiniteGroup::identity();
  for (const auto& t : w.tokens()) {
    if (t.gen >= gens.size()) throw std::out_of_range("word token out of range");
    const elem_t g = t.sign >= 0 ? gens[t.gen] : G.inv(gens[t.gen]);
    acc = G.mul(acc, g);
  }
  return acc;
}

/// Word lengths of every element with respect to a generating list, from one
/// breadth-first search over the Cayley graph. Positive mode uses the listed
/// generators only; symmetric mode appends their inverses as extra tokens
/// after the positive ones. Ties resolve toward the earlier token, so parents
/// and witness words are deterministic.
struct LengthTable {
  FiniteGroup group;
  std::vector<elem_t> gens;
  bool symmetric = false;
  std::vector<std::uint32_t> lengths;   // kUnreached where not reached
  std::vector<elem_t> parent;           // BFS tree edges toward the identity
  std::vector<std::int32_t> parent_tok; // token applied at parent, -1 at root
  std::uint32_t diameter = 0;           // max length over reached elements
  elem_t witness = 0;                   // smallest element attaining it
  bool generating = false;

  bool reached(elem_t e) const { return lengths[e] != kUnreached; }
};

inline LengthTable length_table(const FiniteGroup& G, std::span<const elem_t> gens,
                                bool symmetric = false, bool warn_identity = true) {
  if (gens.empty()) throw std::invalid_argument("length_table: empty generating list");
  if (warn_identity)
    for (elem_t g : gens)
      if (g == FiniteGroup::identity()) {
        std::fprintf(stderr, "warning: generating list for %s contains the identity\n",
                     G.name().c_str());
        break;
      }
  LengthTable t;
  t.group = G;
  t.gens.assign(gens.begin(), gens.end());
  t.symmetric = symmetric;

  std::vector<elem_t> targets(gens.begin(), gens.end());
  if (symmetric)
    for (elem_t g : gens) targets.push_back(G.inv(g));

  const std::uint64_t m = G.order();
  t.lengths.assign(m, kUnreached);
  t.parent.assign(m, 0);
  t.parent_tok.assign(m, -1);
  std::vector<elem_t> queue;
  queue.reserve(m);
  queue.push_back(FiniteGroup::identity());
  t.lengths[FiniteGroup::identity()] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const elem_t u = queue[head];
    const std::uint32_t du = t.lengths[u];
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const elem_t v = G.mul_nocheck(u, targets[k]);
      if (t.lengths[v] == kUnreached) {
        t.lengths[v] = du + 1;
        t.parent[v] = u;
        t.parent_tok[v] = static_cast<std::int32_t>(k);
        queue.push_back(v);
      }
    }
  }
  t.generating = queue.size() == m;
  for (elem_t e = 0; e < m; ++e)
    if (t.lengths[e] != kUnreached && t.lengths[e] > t.diameter) {
      t.diameter = t.lengths[e];
      t.witness = e;
    }
  return t;
}

/// Ml over a subset: the longest length among S, or kUnreached if S touches
/// an unreached element.
inline std::uint32_t max_length_over(const LengthTable& t, std::span<const elem_t> S) {
  std::uint32_t best = 0;
  for (elem_t e : S) {
    if (e >= t.lengths.size()) throw std::out_of_range("max_length_over: bad element");
    if (!t.reached(e)) return kUnreached;
    best = std::max(best, t.lengths[e]);
  }
  return best;
}

/// The breadth-first witness word for g; evaluates to g and has exactly
/// lengths[g] tokens.
inline Word shortest_word(const LengthTable& t, elem_t g) {
  if (g >= t.lengths.size()) throw std::out_of_range("shortest_word: bad element");
  if (!t.reached(g))
    throw std::invalid_argument("shortest_word: element " + std::to_string(g) +
                                " is not reached by the generating list");
  std::vector<WordToken> rev;
  const std::size_t npos = t.gens.size();
  while (g != FiniteGroup::identity()) {
    const auto k = static_cast<std::size_t>(t.parent_tok[g]);
    rev.push_back({static_cast<std::uint32_t>(k % npos),
                   static_cast<std::int8_t>(k < npos ? 1 : -1)});
    g = t.parent[g];
  }
  return Word(std::vector<WordToken>(rev.rbegin(), rev.rend()));
}

}  // namespace diamlab
