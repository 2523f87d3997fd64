#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diamlab/gensets.hpp"
#include "diamlab/group.hpp"
#include "diamlab/wordlen.hpp"

namespace diamlab {

struct TransversalEntry {
  elem_t rep;  // the transversal element for this coset
  Word word;   // over X, evaluates to rep
};

/// A right transversal of a normal subgroup H in G, built by breadth-first
/// search on G/H with the projected generators. Entry i belongs to coset id i
/// of the quotient; the identity coset carries the empty word, and every rep
/// word is shortest in the chosen mode, so max_word_length equals the
/// diameter of G/H with respect to the projected generators.
struct Transversal {
  FiniteGroup group;
  Subgroup subgroup;
  std::vector<elem_t> gens;
  bool symmetric = false;
  QuotientGroup quot;
  std::vector<TransversalEntry> entries;
  std::uint32_t max_word_length = 0;
};

inline Transversal coset_transversal(const FiniteGroup& G, const Subgroup& H,
                                     std::span<const elem_t> X,
                                     bool symmetric = false) {
  if (X.empty()) throw std::invalid_argument("transversal: empty generating list");
  if (!is_generating(G, X))
    throw std::invalid_argument("transversal: the list does not generate the group");
  Transversal T{G,
                H,
                {X.begin(), X.end()},
                symmetric,
                quotient(G, H),  // checks normality
                {},
                0};
  const FiniteGroup& Q = T.quot.group;

  std::vector<elem_t> proj_gens(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) proj_gens[i] = T.quot.proj[X[i]];
  // Generators inside H project to the identity coset; routine here, so no
  // identity warning for the quotient table.
  LengthTable qt = length_table(Q, proj_gens, symmetric, /*warn_identity=*/false);
  if (!qt.generating)
    throw std::logic_error("transversal: projected generators miss a coset");

  T.entries.resize(Q.order());
  for (elem_t c = 0; c < Q.order(); ++c) {
    Word w = shortest_word(qt, c);
    T.entries[c].rep = eval_word(G, T.gens, w);
    T.entries[c].word = std::move(w);
    T.max_word_length = std::max(T.max_word_length, qt.lengths[c]);
  }
  return T;
}

/// Inverse words for the transversal reps via t^-1 = t^(o(t)-1): the rep word
/// concatenated o(t)-1 times. Works in either mode since the repeated word
/// still evaluates to the inverse.
inline std::vector<Word> inverse_rep_words(const Transversal& T) {
  std::vector<Word> out(T.entries.size());
  for (std::size_t c = 0; c < T.entries.size(); ++c) {
    const std::uint64_t o = T.group.element_order(T.entries[c].rep);
    for (std::uint64_t k = 0; k + 1 < o; ++k) out[c].append(T.entries[c].word);
  }
  return out;
}

/// One Schreier generator t x (tx-bar)^-1 of the subgroup, with the word
/// that produced it: rep word of t, then x, then an inverse word for the rep
/// of the coset of tx.
struct SchreierGenerator {
  elem_t element;       // lies in the subgroup
  Word word;            // over T.gens, evaluates to element
  std::uint32_t coset;  // coset id of t
  std::uint32_t gen;    // index of x in T.gens
};

/// All Schreier generators, scanned cosets-then-generators in ascending
/// order, keeping the first word for each distinct element (the identity
/// usually appears and is kept too). Their elements generate the subgroup.
/// In positive mode inverse rep words use the power construction; in
/// symmetric mode they are the reversed sign-flipped rep words.
inline std::vector<SchreierGenerator> schreier_generators(const Transversal& T) {
  const FiniteGroup& G = T.group;
  std::vector<Word> inv_words;
  if (T.symmetric) {
    inv_words.reserve(T.entries.size());
    for (const auto& e : T.entries) inv_words.push_back(e.word.inverted());
  } else {
    inv_words = inverse_rep_words(T);
  }
  std::vector<char> seen(G.order(), 0);
  std::vector<SchreierGenerator> out;
  for (std::uint32_t c = 0; c < T.entries.size(); ++c) {
    for (std::uint32_t x = 0; x < T.gens.size(); ++x) {
      const elem_t p = G.mul(T.entries[c].rep, T.gens[x]);
      const std::uint32_t c1 = T.quot.proj[p];
      const elem_t s = G.mul(p, G.inv(T.entries[c1].rep));
      if (!T.subgroup.contains(s))
        throw std::logic_error("schreier generator fell outside the subgroup");
      if (seen[s]) continue;
      seen[s] = 1;
      SchreierGenerator g;
      g.element = s;
      g.coset = c;
      g.gen = x;
      g.word = T.entries[c].word;
      g.word.push(x, 1);
      g.word.append(inv_words[c1]);
      out.push_back(std::move(g));
    }
  }
  return out;
}

/// g written as h t with h in the subgroup and t the transversal rep of g's
/// coset, plus a word for g over the original generators whose length is
/// certified in advance.
struct Decomposition {
  elem_t target = 0;
  elem_t subgroup_part = 0;  // h
  elem_t rep_part = 0;       // t
  std::uint32_t coset = 0;
  Word word;
  std::uint64_t certified_bound = 0;
};

/// Everything needed to decompose arbitrary elements over one normal
/// subgroup: the transversal, the Schreier generators, the subgroup
/// materialized as a group, and a length table of the subgroup over the
/// nonidentity Schreier generators. The certified bound
///   Ml(T) + (Ml(T) + 1 + Ml(T^-1)) * diam(H, Schreier gens)
/// caps every word this context emits.
class DecomposeContext {
 public:
  DecomposeContext(const FiniteGroup& G, Subgroup H, std::vector<elem_t> X,
                   bool symmetric = false)
      : T_(coset_transversal(G, H, X, symmetric)),
        sgens_(schreier_generators(T_)),
        embed_(subgroup_as_group(T_.subgroup)) {
    for (std::uint32_t i = 0; i < sgens_.size(); ++i)
      if (sgens_[i].element != FiniteGroup::identity()) h_gen_idx_.push_back(i);
    std::uint32_t h_diam = 0;
    if (!T_.subgroup.is_trivial()) {
      std::vector<elem_t> hg(h_gen_idx_.size());
      for (std::size_t k = 0; k < hg.size(); ++k)
        hg[k] = embed_.index_of(sgens_[h_gen_idx_[k]].element);
      h_table_ = length_table(embed_.group, hg, symmetric);
      if (!h_table_->generating)
        throw std::logic_error("schreier generators fail to generate the subgroup");
      h_diam = h_table_->diameter;
    }
    if (T_.symmetric) {
      for (const auto& e : T_.entries) inv_words_.push_back(e.word.inverted());
    } else {
      inv_words_ = inverse_rep_words(T_);
    }
    std::uint32_t ml_inv = 0;
    for (const auto& w : inv_words_)
      ml_inv = std::max(ml_inv, static_cast<std::uint32_t>(w.size()));
    bound_ = T_.max_word_length +
             static_cast<std::uint64_t>(T_.max_word_length + 1 + ml_inv) * h_diam;
  }

  const Transversal& transversal() const { return T_; }
  const std::vector<SchreierGenerator>& generators() const { return sgens_; }
  const SubgroupEmbedding& embedding() const { return embed_; }
  std::uint64_t certified_bound() const { return bound_; }
  std::uint32_t transversal_max_length() const { return T_.max_word_length; }
  std::uint32_t subgroup_diameter() const { return h_table_ ? h_table_->diameter : 0; }

  /// Indices into generators() of the nonidentity ones, i.e. the generating
  /// list of the subgroup that h-part words are written over.
  const std::vector<std::uint32_t>& subgroup_gen_indices() const { return h_gen_idx_; }

  struct Split {
    std::uint32_t coset;
    elem_t rep;
    elem_t h;
  };

  Split split(elem_t g) const {
    const std::uint32_t c = T_.quot.proj.at(g);
    const elem_t t = T_.entries[c].rep;
    const elem_t h = T_.group.mul(g, T_.group.inv(t));
    if (!T_.subgroup.contains(h))
      throw std::logic_error("decompose: h part fell outside the subgroup");
    return {c, t, h};
  }

  /// Shortest word for the h part over the nonidentity Schreier generators
  /// (tokens index subgroup_gen_indices()).
  Word subgroup_word(elem_t h) const {
    if (h == FiniteGroup::identity() || !h_table_) return Word{};
    return shortest_word(*h_table_, embed_.index_of(h));
  }

  Decomposition decompose(elem_t g) const {
    const Split s = split(g);
    Decomposition d;
    d.target = g;
    d.subgroup_part = s.h;
    d.rep_part = s.rep;
    d.coset = s.coset;
    d.certified_bound = bound_;
    const Word hw = subgroup_word(s.h);
    for (const auto& tok : hw.tokens()) {
      const Word& gw = sgens_[h_gen_idx_[tok.gen]].word;
      d.word.append(tok.sign > 0 ? gw : gw.inverted());
    }
    d.word.append(T_.entries[s.coset].word);
    if (eval_word(T_.group, T_.gens, d.word) != g)
      throw std::logic_error("decompose: emitted word does not evaluate to the target");
    if (d.word.size() > bound_)
      throw std::logic_error("decompose: word length exceeds the certified bound");
    return d;
  }

 private:
  Transversal T_;
  std::vector<SchreierGenerator> sgens_;
  SubgroupEmbedding embed_;
  std::vector<std::uint32_t> h_gen_idx_;
  std::optional<LengthTable> h_table_;
  std::vector<Word> inv_words_;
  std::uint64_t bound_ = 0;
};

inline Decomposition decompose(const FiniteGroup& G, const Subgroup& H,
                               std::span<const elem_t> X, elem_t g,
                               bool symmetric = false) {
  return DecomposeContext(G, Subgroup(H), {X.begin(), X.end()}, symmetric).decompose(g);
}

/// Decomposition down the full derived series: level i rewrites an element of
/// G^(i) as (element of G^(i+1)) * (transversal rep), recursing on the first
/// factor, whose word over the level's Schreier generators expands through
/// their defining words back to the original generators. The certified bound
/// composes per level: bound_i = Ml(T_i) + bound_{i+1} * maxlen(Schreier
/// words at level i). An abelian group has one level and the decomposition
/// degenerates to a plain shortest word.
class SeriesDecomposer {
 public:
  SeriesDecomposer(const FiniteGroup& G, std::vector<elem_t> X, bool symmetric = false)
      : group_(G), gens_(std::move(X)), symmetric_(symmetric) {
    DerivedSeries series = derived_series(G);
    const std::uint32_t l = series.derived_length();  // throws if not solvable
    const std::uint32_t L = std::max<std::uint32_t>(l, 1);

    FiniteGroup cur = G;
    std::vector<elem_t> cur_gens = gens_;
    std::vector<elem_t> to_global;  // empty = identity map (level 0)
    for (std::uint32_t i = 0; i < L; ++i) {
      // series.terms[i+1] in level-i ids (to_global is sorted ascending)
      const Subgroup& next_global =
          i + 1 < series.terms.size() ? series.terms[i + 1] : series.terms.back();
      std::vector<elem_t> h_ids;
      h_ids.reserve(next_global.size());
      for (elem_t e : next_global.elements()) {
        if (to_global.empty()) {
          h_ids.push_back(e);
        } else {
          const auto it = std::lower_bound(to_global.begin(), to_global.end(), e);
          if (it == to_global.end() || *it != e)
            throw std::logic_error("derived series term escaped the previous term");
          h_ids.push_back(static_cast<elem_t>(it - to_global.begin()));
        }
      }
      Level lvl{DecomposeContext(cur, Subgroup(cur, std::move(h_ids)), cur_gens,
                                 symmetric_),
                {}};
      const DecomposeContext& ctx = lvl.ctx;
      for (std::uint32_t k : ctx.subgroup_gen_indices())
        lvl.next_gen_words.push_back(ctx.generators()[k].word);

      if (i + 1 < L) {
        std::vector<elem_t> next_to_global(ctx.embedding().to_parent.size());
        for (std::size_t j = 0; j < next_to_global.size(); ++j) {
          const elem_t parent_id = ctx.embedding().to_parent[j];
          next_to_global[j] = to_global.empty() ? parent_id : to_global[parent_id];
        }
        std::vector<elem_t> ng(ctx.subgroup_gen_indices().size());
        for (std::size_t k = 0; k < ng.size(); ++k)
          ng[k] = ctx.embedding().index_of(
              ctx.generators()[ctx.subgroup_gen_indices()[k]].element);
        cur = ctx.embedding().group;
        cur_gens = std::move(ng);
        to_global = std::move(next_to_global);
      }
      levels_.push_back(std::move(lvl));
    }

    budgets_.assign(L, 0);
    budgets_[L - 1] = levels_[L - 1].ctx.certified_bound();
    for (std::uint32_t i = L - 1; i-- > 0;) {
      std::uint64_t maxw = 0;
      for (const Word& w : levels_[i].next_gen_words)
        maxw = std::max<std::uint64_t>(maxw, w.size());
      budgets_[i] = levels_[i].ctx.transversal_max_length() + budgets_[i + 1] * maxw;
    }
  }

  std::uint32_t level_count() const { return static_cast<std::uint32_t>(levels_.size()); }
  std::uint64_t certified_bound() const { return budgets_[0]; }
  std::uint64_t level_budget(std::uint32_t i) const { return budgets_.at(i); }
  const DecomposeContext& level_context(std::uint32_t i) const {
    return levels_.at(i).ctx;
  }

  Decomposition decompose(elem_t g) const {
    Decomposition d;
    d.target = g;
    d.certified_bound = budgets_[0];
    const auto s = levels_[0].ctx.split(g);
    d.subgroup_part = s.h;
    d.rep_part = s.rep;
    d.coset = s.coset;
    d.word = word_at(0, g);
    if (eval_word(group_, gens_, d.word) != g)
      throw std::logic_error("series decompose: word does not evaluate to the target");
    if (d.word.size() > budgets_[0])
      throw std::logic_error("series decompose: word exceeds the certified bound");
    return d;
  }

 private:
  struct Level {
    DecomposeContext ctx;
    std::vector<Word> next_gen_words;  // over this level's gens
  };

  Word word_at(std::uint32_t i, elem_t gid) const {
    const Level& lvl = levels_[i];
    const auto s = lvl.ctx.split(gid);
    Word w;
    if (s.h != FiniteGroup::identity()) {
      if (i + 1 >= levels_.size())
        throw std::logic_error("series decompose: nontrivial h at the last level");
      const Word hw = word_at(i + 1, lvl.ctx.embedding().index_of(s.h));
      for (const auto& tok : hw.tokens()) {
        const Word& gw = lvl.next_gen_words[tok.gen];
        w.append(tok.sign > 0 ? gw : gw.inverted());
      }
    }
    w.append(lvl.ctx.transversal().entries[s.coset].word);
    return w;
  }

  FiniteGroup group_;
  std::vector<elem_t> gens_;
  bool symmetric_;
  std::vector<Level> levels_;
  std::vector<std::uint64_t> budgets_;
};

inline Decomposition decompose_via_series(const FiniteGroup& G,
                                          std::span<const elem_t> X, elem_t g,
                                          bool symmetric = false) {
  return SeriesDecomposer(G, {X.begin(), X.end()}, symmetric).decompose(g);
}

}  // namespace diamlab
