#pragma once

#include "moran/errors.hpp"
#include "moran/rational.hpp"
#include "moran/subshift.hpp"
#include "moran/word.hpp"

#include <optional>
#include <vector>

namespace moran {

/// Depth-n prefix-closed approximation of a compact subset A of the shift
/// space. Every node shorter than the depth has at least one child, so the
/// tree is determined by its leaves (the depth-n prefix set A_n).
class CompactTree {
 public:
  CompactTree() = default;

  /// Prefix closure of a set of depth-length leaves. An empty leaf set gives
  /// the empty tree.
  static CompactTree from_leaves(int alphabet, std::size_t depth, std::vector<Word> leaves);
  /// Depth-n prefix set of the follower set of a subshift state.
  static CompactTree from_subshift(const Subshift& s, std::size_t depth, int state = 0,
                                   std::size_t budget = kDefaultNodeBudget);

  int alphabet() const { return alphabet_; }
  std::size_t depth() const { return depth_; }
  bool empty() const { return levels_.empty(); }
  /// Nodes of length k, sorted. Empty for the empty tree.
  const std::vector<Word>& level(std::size_t k) const;
  const std::vector<Word>& leaves() const { return level(depth_); }
  bool contains(const Word& w) const;
  std::size_t node_count() const;

  /// beta_i at finite depth: {w : iw in A}, of depth depth() - |i|.
  CompactTree subtree(const Word& i) const;
  /// Restriction to depth n <= depth().
  CompactTree truncated(std::size_t n) const;

  friend bool operator==(const CompactTree& a, const CompactTree& b) = default;
  friend auto operator<=>(const CompactTree& a, const CompactTree& b) {
    return a.leaves_or_empty() <=> b.leaves_or_empty();
  }

 private:
  const std::vector<Word>& leaves_or_empty() const;

  int alphabet_ = 2;
  std::size_t depth_ = 0;
  std::vector<std::vector<Word>> levels_;
};

/// First length at which the prefix sets differ, or nullopt when they agree
/// through min(depth).
std::optional<std::size_t> first_difference(const CompactTree& a, const CompactTree& b);

/// Symbolic Hausdorff distance 2^-k with k = first_difference; 0 when equal
/// to the common depth.
Rational symbolic_distance(const CompactTree& a, const CompactTree& b);

}  // namespace moran
