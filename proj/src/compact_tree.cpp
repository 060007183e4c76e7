#include "moran/compact_tree.hpp"

#include <algorithm>

namespace moran {

namespace {

const std::vector<Word>& no_words() {
  static const std::vector<Word> empty;
  return empty;
}

}  // namespace

CompactTree CompactTree::from_leaves(int alphabet, std::size_t depth, std::vector<Word> leaves) {
  CompactTree t;
  t.alphabet_ = alphabet;
  t.depth_ = depth;
  if (leaves.empty()) return t;
  for (const Word& w : leaves) {
    if (w.size() != depth) {
      throw ValidationError("leaf '" + w.str() + "' has length " + std::to_string(w.size()) + ", expected " +
                            std::to_string(depth));
    }
    if (w.alphabet() != alphabet) throw ValidationError("leaf alphabet mismatch");
  }
  std::sort(leaves.begin(), leaves.end());
  leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
  t.levels_.resize(depth + 1);
  t.levels_[depth] = std::move(leaves);
  for (std::size_t k = depth; k > 0; --k) {
    auto& up = t.levels_[k - 1];
    for (const Word& w : t.levels_[k]) {
      Word p = w.parent();
      if (up.empty() || up.back() != p) up.push_back(std::move(p));
    }
  }
  return t;
}

CompactTree CompactTree::from_subshift(const Subshift& s, std::size_t depth, int state, std::size_t budget) {
  return from_leaves(s.alphabet(), depth, s.words_from(state, depth, budget));
}

const std::vector<Word>& CompactTree::level(std::size_t k) const {
  if (k > depth_) throw ValidationError("level " + std::to_string(k) + " beyond tree depth " + std::to_string(depth_));
  return levels_.empty() ? no_words() : levels_[k];
}

const std::vector<Word>& CompactTree::leaves_or_empty() const {
  return levels_.empty() ? no_words() : levels_[depth_];
}

bool CompactTree::contains(const Word& w) const {
  if (levels_.empty() || w.size() > depth_) return false;
  const auto& lvl = levels_[w.size()];
  return std::binary_search(lvl.begin(), lvl.end(), w);
}

std::size_t CompactTree::node_count() const {
  std::size_t total = 0;
  for (const auto& lvl : levels_) total += lvl.size();
  return total;
}

CompactTree CompactTree::subtree(const Word& i) const {
  if (i.size() > depth_) {
    throw ValidationError("subtree word length " + std::to_string(i.size()) + " exceeds depth " +
                          std::to_string(depth_));
  }
  const std::size_t d = depth_ - i.size();
  if (!contains(i)) return from_leaves(alphabet_, d, {});
  const auto& lvl = levels_[depth_];
  const auto first = std::lower_bound(lvl.begin(), lvl.end(), i);
  std::vector<Word> leaves;
  for (auto it = first; it != lvl.end() && it->has_prefix(i); ++it) leaves.push_back(it->shifted(i.size()));
  return from_leaves(alphabet_, d, std::move(leaves));
}

CompactTree CompactTree::truncated(std::size_t n) const {
  if (n > depth_) throw ValidationError("cannot truncate to a larger depth");
  CompactTree t;
  t.alphabet_ = alphabet_;
  t.depth_ = n;
  if (!levels_.empty()) t.levels_.assign(levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(n + 1));
  return t;
}

std::optional<std::size_t> first_difference(const CompactTree& a, const CompactTree& b) {
  if (a.empty() != b.empty()) return 0;
  if (a.empty()) return std::nullopt;
  const std::size_t n = std::min(a.depth(), b.depth());
  for (std::size_t k = 0; k <= n; ++k) {
    if (a.level(k) != b.level(k)) return k;
  }
  return std::nullopt;
}

Rational symbolic_distance(const CompactTree& a, const CompactTree& b) {
  const auto k = first_difference(a, b);
  if (!k) return Rational(0);
  return pow(Rational(1, 2), static_cast<unsigned>(*k));
}

}  // namespace moran
