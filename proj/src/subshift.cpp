#include "moran/subshift.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>

namespace moran {

namespace {

// Aho-Corasick automaton over R. Node ids index trie prefixes; a node is
// terminal when some forbidden word is a suffix of its prefix.
struct Matcher {
  std::vector<std::vector<int>> go;
  std::vector<bool> terminal;
};

Matcher build_matcher(int alphabet, const std::vector<Word>& forbidden) {
  const auto k = static_cast<std::size_t>(alphabet);
  Matcher m;
  m.go.emplace_back(k, -1);
  m.terminal.push_back(false);
  for (const Word& w : forbidden) {
    int node = 0;
    for (Symbol s : w.symbols()) {
      int& child = m.go[static_cast<std::size_t>(node)][s - 1u];
      if (child < 0) {
        child = static_cast<int>(m.go.size());
        m.go.emplace_back(k, -1);
        m.terminal.push_back(false);
      }
      node = m.go[static_cast<std::size_t>(node)][s - 1u];
    }
    m.terminal[static_cast<std::size_t>(node)] = true;
  }

  std::vector<int> fail(m.go.size(), 0);
  std::queue<int> queue;
  for (std::size_t a = 0; a < k; ++a) {
    int& child = m.go[0][a];
    if (child < 0) {
      child = 0;
    } else {
      fail[static_cast<std::size_t>(child)] = 0;
      queue.push(child);
    }
  }
  while (!queue.empty()) {
    const auto u = static_cast<std::size_t>(queue.front());
    queue.pop();
    if (m.terminal[static_cast<std::size_t>(fail[u])]) m.terminal[u] = true;
    for (std::size_t a = 0; a < k; ++a) {
      int& child = m.go[u][a];
      const int via_fail = m.go[static_cast<std::size_t>(fail[u])][a];
      if (child < 0) {
        child = via_fail;
      } else {
        fail[static_cast<std::size_t>(child)] = via_fail;
        queue.push(child);
      }
    }
  }
  return m;
}

// States with an infinite continuation avoiding terminal nodes.
std::vector<bool> live_states(const Matcher& m) {
  const std::size_t n = m.go.size();
  std::vector<bool> live(n);
  for (std::size_t u = 0; u < n; ++u) live[u] = !m.terminal[u];
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (!live[u]) continue;
      const bool has_succ = std::any_of(m.go[u].begin(), m.go[u].end(),
                                        [&](int v) { return live[static_cast<std::size_t>(v)]; });
      if (!has_succ) {
        live[u] = false;
        changed = true;
      }
    }
  }
  return live;
}

}  // namespace

Subshift build_subshift(int alphabet, std::vector<Word> forbidden) {
  Word probe(alphabet);  // validates alphabet
  for (const Word& w : forbidden) {
    if (w.alphabet() != alphabet) {
      throw ValidationError("forbidden word '" + w.str() + "' is over alphabet " + std::to_string(w.alphabet()) +
                            ", expected " + std::to_string(alphabet));
    }
  }
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  if (!forbidden.empty() && forbidden.front().empty()) throw EmptySubshiftError();

  const Matcher m = build_matcher(alphabet, forbidden);
  const std::vector<bool> live = live_states(m);
  if (!live[0]) throw EmptySubshiftError();

  const auto k = static_cast<std::size_t>(alphabet);
  // Live states reachable from the root, in BFS order.
  std::vector<int> order;
  std::vector<int> index(m.go.size(), -1);
  {
    std::queue<int> queue;
    queue.push(0);
    index[0] = 0;
    order.push_back(0);
    while (!queue.empty()) {
      const auto u = static_cast<std::size_t>(queue.front());
      queue.pop();
      for (std::size_t a = 0; a < k; ++a) {
        const int v = m.go[u][a];
        if (!live[static_cast<std::size_t>(v)] || index[static_cast<std::size_t>(v)] >= 0) continue;
        index[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
        order.push_back(v);
        queue.push(v);
      }
    }
  }
  const std::size_t n = order.size();
  std::vector<std::vector<int>> delta(n, std::vector<int>(k, Subshift::kDead));
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < k; ++a) {
      const int v = m.go[static_cast<std::size_t>(order[q])][a];
      if (live[static_cast<std::size_t>(v)]) delta[q][a] = index[static_cast<std::size_t>(v)];
    }
  }

  // Moore refinement: states are equivalent iff they have the same follower set.
  std::vector<int> cls(n, 0);
  std::size_t num_classes = 1;
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next_cls(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<int> sig;
      sig.reserve(k + 1);
      sig.push_back(cls[q]);
      for (std::size_t a = 0; a < k; ++a) sig.push_back(delta[q][a] < 0 ? -1 : cls[static_cast<std::size_t>(delta[q][a])]);
      next_cls[q] = ids.emplace(std::move(sig), static_cast<int>(ids.size())).first->second;
    }
    cls.swap(next_cls);
    if (ids.size() == num_classes) break;
    num_classes = ids.size();
  }

  // Quotient automaton renumbered by BFS from the initial class.
  std::vector<int> rep(num_classes, -1);
  for (std::size_t q = 0; q < n; ++q) {
    if (rep[static_cast<std::size_t>(cls[q])] < 0) rep[static_cast<std::size_t>(cls[q])] = static_cast<int>(q);
  }
  std::vector<int> renum(num_classes, -1);
  std::vector<int> bfs;
  renum[static_cast<std::size_t>(cls[0])] = 0;
  bfs.push_back(cls[0]);
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    const auto q = static_cast<std::size_t>(rep[static_cast<std::size_t>(bfs[head])]);
    for (std::size_t a = 0; a < k; ++a) {
      if (delta[q][a] < 0) continue;
      const int c = cls[static_cast<std::size_t>(delta[q][a])];
      if (renum[static_cast<std::size_t>(c)] < 0) {
        renum[static_cast<std::size_t>(c)] = static_cast<int>(bfs.size());
        bfs.push_back(c);
      }
    }
  }

  Subshift out;
  out.alphabet_ = alphabet;
  out.max_forbidden_length_ = 0;
  for (const Word& w : forbidden) out.max_forbidden_length_ = std::max(out.max_forbidden_length_, w.size());
  out.forbidden_ = std::move(forbidden);
  out.delta_.assign(bfs.size(), std::vector<int>(k, Subshift::kDead));
  for (std::size_t c = 0; c < bfs.size(); ++c) {
    const auto q = static_cast<std::size_t>(rep[static_cast<std::size_t>(bfs[c])]);
    for (std::size_t a = 0; a < k; ++a) {
      if (delta[q][a] >= 0) {
        out.delta_[c][a] = renum[static_cast<std::size_t>(cls[static_cast<std::size_t>(delta[q][a])])];
      }
    }
  }
  return out;
}

int Subshift::run(const Word& w, int from) const {
  if (w.alphabet() != alphabet_) throw ValidationError("alphabet mismatch in subshift query");
  int q = from;
  for (Symbol s : w.symbols()) {
    q = next(q, s);
    if (q == kDead) return kDead;
  }
  return q;
}

bool Subshift::avoids_forbidden(const Word& w) const {
  for (const Word& r : forbidden_) {
    if (r.size() > w.size()) continue;
    for (std::size_t start = 0; start + r.size() <= w.size(); ++start) {
      if (std::equal(r.symbols().begin(), r.symbols().end(), w.symbols().begin() + static_cast<std::ptrdiff_t>(start))) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Integer> Subshift::counts_by_state(std::size_t n) const {
  std::vector<Integer> c(num_states(), Integer(1));
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<Integer> nc(num_states(), Integer(0));
    for (std::size_t q = 0; q < num_states(); ++q) {
      for (int v : delta_[q]) {
        if (v != kDead) nc[q] += c[static_cast<std::size_t>(v)];
      }
    }
    c.swap(nc);
  }
  return c;
}

Integer Subshift::count(std::size_t n) const { return counts_by_state(n)[0]; }

std::vector<Word> Subshift::words_from(int from, std::size_t n, std::size_t budget) const {
  std::vector<Word> out;
  std::vector<Symbol> path;
  std::size_t visited = 0;
  // Iterative DFS in increasing symbol order yields lexicographic output.
  struct Frame {
    int state;
    Symbol next_symbol;
  };
  std::vector<Frame> stack{{from, 1}};
  if (n == 0) return {Word(alphabet_)};
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_symbol > alphabet_) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const Symbol s = top.next_symbol++;
    const int v = next(top.state, s);
    if (v == kDead) continue;
    if (++visited > budget) {
      throw BudgetError("word enumeration at length " + std::to_string(n) + " exceeded node budget " +
                        std::to_string(budget));
    }
    path.push_back(s);
    if (path.size() == n) {
      out.emplace_back(alphabet_, path);
      path.pop_back();
    } else {
      stack.push_back({v, 1});
    }
  }
  return out;
}

std::vector<Word> allowed_words(const Subshift& s, std::size_t n, std::size_t budget) {
  return s.words_from(s.initial_state(), n, budget);
}

}  // namespace moran
