#pragma once

#include "moran/errors.hpp"
#include "moran/rational.hpp"
#include "moran/word.hpp"

#include <cstddef>
#include <vector>

namespace moran {

/// Shift-invariant compact set presented by a finite forbidden-word list.
///
/// The derived automaton keeps only live follower classes: every state has
/// an infinite allowed continuation and is reachable from the initial state.
/// States are numbered in breadth-first order from the initial state (0),
/// visiting symbols in increasing order, so numbering is canonical.
class Subshift {
 public:
  static constexpr int kDead = -1;

  int alphabet() const { return alphabet_; }
  const std::vector<Word>& forbidden() const { return forbidden_; }
  std::size_t max_forbidden_length() const { return max_forbidden_length_; }

  std::size_t num_states() const { return delta_.size(); }
  int initial_state() const { return 0; }
  /// Successor of a live state on symbol s (1-based), or kDead.
  int next(int state, Symbol s) const { return delta_[static_cast<std::size_t>(state)][s - 1u]; }
  const std::vector<std::vector<int>>& transitions() const { return delta_; }

  /// State reached by w from `from`, or kDead when w leaves the live language.
  int run(const Word& w, int from = 0) const;

  /// w is a prefix of some infinite sequence of the subshift (w in Gamma_*).
  bool is_allowed(const Word& w) const { return run(w) != kDead; }

  /// w avoids every forbidden factor (weaker than is_allowed).
  bool avoids_forbidden(const Word& w) const;

  /// #Gamma_n.
  Integer count(std::size_t n) const;
  /// Number of live paths of length n starting at each state.
  std::vector<Integer> counts_by_state(std::size_t n) const;

  /// All n-step words readable from `from`, lexicographically sorted.
  std::vector<Word> words_from(int from, std::size_t n, std::size_t budget = kDefaultNodeBudget) const;

  friend Subshift build_subshift(int alphabet, std::vector<Word> forbidden);

 private:
  int alphabet_ = 2;
  std::vector<Word> forbidden_;
  std::size_t max_forbidden_length_ = 0;
  std::vector<std::vector<int>> delta_;
};

/// Sigma[R]. Throws EmptySubshiftError when R excludes every infinite word.
Subshift build_subshift(int alphabet, std::vector<Word> forbidden);

inline Subshift full_shift(int alphabet) { return build_subshift(alphabet, {}); }

/// Gamma_n in lexicographic order.
std::vector<Word> allowed_words(const Subshift& s, std::size_t n, std::size_t budget = kDefaultNodeBudget);

}  // namespace moran
