#include "moran/microsets.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace moran {

namespace {

// Shortlex-least word reaching each state (BFS in symbol order).
std::vector<Word> reaching_words(const Subshift& s) {
  std::vector<std::optional<Word>> best(s.num_states());
  best[static_cast<std::size_t>(s.initial_state())] = Word(s.alphabet());
  std::deque<int> queue{s.initial_state()};
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int a = 1; a <= s.alphabet(); ++a) {
      const int v = s.next(q, static_cast<Symbol>(a));
      if (v == Subshift::kDead || best[static_cast<std::size_t>(v)]) continue;
      best[static_cast<std::size_t>(v)] = best[static_cast<std::size_t>(q)]->appended(static_cast<Symbol>(a));
      queue.push_back(v);
    }
  }
  std::vector<Word> out;
  for (auto& w : best) out.push_back(*w);
  return out;
}

MicrosetFamily collect(std::size_t n, std::map<CompactTree, Word>&& found, bool complete) {
  MicrosetFamily fam;
  fam.depth = n;
  fam.complete = complete;
  for (auto& [tree, w] : found) fam.members.push_back({tree, std::move(w)});
  return fam;
}

void keep_least(std::map<CompactTree, Word>& found, CompactTree tree, const Word& w) {
  auto [it, inserted] = found.emplace(std::move(tree), w);
  if (!inserted && shortlex_less(w, it->second)) it->second = w;
}

}  // namespace

MicrosetFamily microset_family(const Subshift& s, std::size_t n, std::size_t budget) {
  if (n < 1) throw ValidationError("microset depth must be at least 1");
  const auto reach = reaching_words(s);
  std::map<CompactTree, Word> found;
  for (std::size_t q = 0; q < s.num_states(); ++q) {
    keep_least(found, CompactTree::from_subshift(s, n, static_cast<int>(q), budget), reach[q]);
  }
  return collect(n, std::move(found), true);
}

MicrosetFamily microset_family(const CompactTree& tree, std::size_t n) {
  if (n < 1) throw ValidationError("microset depth must be at least 1");
  if (tree.empty()) throw ValidationError("microsets of the empty tree");
  if (n > tree.depth()) throw ValidationError("microset depth exceeds the tree depth");
  std::map<CompactTree, Word> found;
  for (std::size_t k = 0; k + n <= tree.depth(); ++k) {
    for (const Word& i : tree.level(k)) keep_least(found, tree.subtree(i).truncated(n), i);
  }
  return collect(n, std::move(found), false);
}

std::vector<Integer> branching_counts(const Subshift& s, std::size_t n_max) {
  std::vector<Integer> paths(s.num_states(), Integer(1));
  std::vector<Integer> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<Integer> next(s.num_states(), Integer(0));
    for (std::size_t q = 0; q < s.num_states(); ++q) {
      for (int a = 1; a <= s.alphabet(); ++a) {
        const int v = s.next(static_cast<int>(q), static_cast<Symbol>(a));
        if (v != Subshift::kDead) next[q] += paths[static_cast<std::size_t>(v)];
      }
    }
    paths.swap(next);
    out.push_back(*std::max_element(paths.begin(), paths.end()));
  }
  return out;
}

Integer branching_count(const Subshift& s, std::size_t n) {
  if (n < 1) throw ValidationError("branching depth must be at least 1");
  return branching_counts(s, n).back();
}

std::size_t branching_count(const CompactTree& tree, std::size_t n) {
  std::size_t best = 0;
  for (const auto& m : microset_family(tree, n).members) best = std::max(best, m.prefix_set.leaves().size());
  return best;
}

AssouadEstimate assouad_estimate(const Subshift& s, std::size_t n_max, const Rational& alpha) {
  if (n_max < 2) throw ValidationError("assouad estimate needs n_max >= 2");
  if (alpha <= 0 || alpha >= 1) throw ValidationError("alpha must lie in (0, 1)");
  AssouadEstimate est;
  est.alpha = alpha;
  est.counts = branching_counts(s, 2 * n_max);
  const long double log_inv = -log_of(alpha);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const long double ln = log_of(est.counts[n - 1]);
    const long double t = ln / (static_cast<long double>(n) * log_inv);
    est.t.push_back(t);
    if (n == 1 || t < est.fekete_bound) {
      est.fekete_bound = t;
      est.fekete_at = n;
    }
    est.quotients.push_back((log_of(est.counts[2 * n - 1]) - ln) / (static_cast<long double>(n) * log_inv));
  }
  est.estimate = est.quotients.back();
  return est;
}

AssouadEstimate assouad_estimate(const Subshift& s, std::size_t n_max, const IfsSystem& system) {
  const Rational alpha = system.max_ratio();
  if (system.min_ratio() != alpha) {
    throw ValidationError("assouad estimate needs all contraction ratios equal (homogeneous diameters)");
  }
  if (system.alphabet() != s.alphabet()) throw ValidationError("system and subshift alphabets differ");
  return assouad_estimate(s, n_max, alpha);
}

}  // namespace moran
