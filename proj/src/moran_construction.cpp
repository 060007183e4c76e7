#include "moran/moran_construction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace moran {

MoranConstruction::MoranConstruction(IfsSystem system, Subshift subshift, Box seed)
    : MoranConstruction(unchecked(std::move(system), std::move(subshift), std::move(seed))) {
  seed_set(system_, seed_);
}

MoranConstruction MoranConstruction::unchecked(IfsSystem system, Subshift subshift, Box seed) {
  if (subshift.alphabet() != system.alphabet()) {
    throw ValidationError("subshift alphabet " + std::to_string(subshift.alphabet()) + " differs from map count " +
                          std::to_string(system.alphabet()));
  }
  if (seed.dimension() != system.dimension()) throw ValidationError("seed dimension does not match the system");
  MoranConstruction mc;
  mc.system_ = std::move(system);
  mc.subshift_ = std::move(subshift);
  mc.seed_ = std::move(seed);
  return mc;
}

MoranConstruction full_construction(const IfsSystem& system) {
  return MoranConstruction(system, full_shift(system.alphabet()), seed_set(system));
}

namespace {

void require_allowed(const MoranConstruction& mc, const Word& i) {
  if (!mc.subshift().is_allowed(i)) throw ValidationError("word '" + i.str() + "' is not in the subshift language");
}

struct Node {
  int state;
  ContractionMap map;
  Box box;
  Rational diam_sq;
};

Node child(const MoranConstruction& mc, const Node* parent, Symbol s, int state) {
  ContractionMap m = parent ? parent->map * mc.system().map(s) : mc.system().map(s);
  Box b = image(m, mc.seed());
  Rational d = b.diameter_squared();
  return {state, std::move(m), std::move(b), std::move(d)};
}

// Depth-first walk of Gamma(r) in lexicographic order. `keep` prunes a node
// together with its subtree; `emit` receives the stopping words.
void walk_stopping(const MoranConstruction& mc, const Rational& r, const std::function<bool(const Box&)>& keep,
                   const std::function<void(const Word&, const ContractionMap&)>& emit, std::size_t budget) {
  if (r <= 0) throw ValidationError("radius must be positive");
  const Rational r_sq = r * r;
  const Subshift& sub = mc.subshift();
  const bool first_level_only = r_sq >= mc.seed().diameter_squared();
  std::size_t visited = 0;
  std::vector<Symbol> path;

  std::function<void(const Node*)> recurse = [&](const Node* parent) {
    const int q = parent ? parent->state : sub.initial_state();
    for (int a = 1; a <= mc.alphabet(); ++a) {
      const auto s = static_cast<Symbol>(a);
      const int v = sub.next(q, s);
      if (v == Subshift::kDead) continue;
      if (++visited > budget) {
        throw BudgetError("stopping-set descent exceeded node budget " + std::to_string(budget));
      }
      Node n = child(mc, parent, s, v);
      if (!keep(n.box)) continue;
      path.push_back(s);
      if (first_level_only || n.diam_sq <= r_sq) {
        emit(Word(mc.alphabet(), path), n.map);
      } else {
        recurse(&n);
      }
      path.pop_back();
    }
  };
  recurse(nullptr);
}

}  // namespace

Box piece(const MoranConstruction& mc, const Word& i) {
  if (i.empty()) return mc.seed();
  require_allowed(mc, i);
  return image(compose(mc.system(), i), mc.seed());
}

Rational diameter_squared(const MoranConstruction& mc, const Word& i) { return piece(mc, i).diameter_squared(); }

long double diameter(const MoranConstruction& mc, const Word& i) {
  return std::sqrt(to_real(diameter_squared(mc, i)));
}

std::vector<Word> stopping_set(const MoranConstruction& mc, const Rational& r, std::size_t budget) {
  std::vector<Word> out;
  walk_stopping(
      mc, r, [](const Box&) { return true; }, [&](const Word& w, const ContractionMap&) { out.push_back(w); },
      budget);
  return out;
}

std::vector<Word> local_cluster(const MoranConstruction& mc, const Vector& x, const Rational& r, std::size_t budget) {
  if (x.size() != mc.dimension()) throw ValidationError("point dimension does not match the construction");
  std::vector<Word> out;
  walk_stopping(
      mc, r, [&](const Box& b) { return meets_ball(b, x, r); },
      [&](const Word& w, const ContractionMap&) { out.push_back(w); }, budget);
  return out;
}

std::vector<std::pair<Word, ContractionMap>> local_cluster_maps(const MoranConstruction& mc, const Vector& x,
                                                                const Rational& r, std::size_t budget) {
  if (x.size() != mc.dimension()) throw ValidationError("point dimension does not match the construction");
  std::vector<std::pair<Word, ContractionMap>> out;
  walk_stopping(
      mc, r, [&](const Box& b) { return meets_ball(b, x, r); },
      [&](const Word& w, const ContractionMap& f) { out.emplace_back(w, f); }, budget);
  return out;
}

MoranReport verify_moran_axioms(const MoranConstruction& mc, std::size_t depth, std::size_t budget) {
  if (depth < 1) throw ValidationError("axiom check depth must be at least 1");
  MoranReport rep;
  rep.depth = depth;
  rep.alpha_low = mc.system().min_ratio();
  rep.alpha_high = mc.system().max_ratio();
  rep.c_squared = mc.seed().diameter_squared();

  // Per-axis widths w_k: diam(E_ij)^2 = sum_k (a_k b_k w_k)^2 while
  // diam(E_i)^2 diam(E_j)^2 >= sum_k a_k^2 b_k^2 w_k^4, so D^2 = 1 / min_k w_k^2
  // works (clamped to D >= 1).
  const Vector width = mc.seed().width();
  Rational min_w_sq = width(0) * width(0);
  for (Eigen::Index k = 1; k < width.size(); ++k) {
    if (width(k) > 0) min_w_sq = std::min(min_w_sq, Rational(width(k) * width(k)));
  }
  rep.d_squared = std::max(Rational(1), Rational(Rational(1) / min_w_sq));
  rep.observed_d_squared = Rational(0);

  // Keeps the shortlex-least witness.
  auto fail = [](AxiomCheck& c, const Word& w, std::string detail) {
    if (!c.passed && !shortlex_less(w, *c.witness)) return;
    c.passed = false;
    c.witness = w;
    c.detail = std::move(detail);
  };

  std::map<Word, Rational> diam_sq;
  diam_sq.emplace(Word(mc.alphabet()), rep.c_squared);
  const Subshift& sub = mc.subshift();
  std::size_t visited = 0;
  std::vector<Symbol> path;
  const Rational alpha_low_sq = rep.alpha_low * rep.alpha_low;
  const Rational alpha_high_sq = rep.alpha_high * rep.alpha_high;

  std::function<void(const Node*, const Box&, const Rational&, const Rational&)> recurse =
      [&](const Node* parent, const Box& parent_box, const Rational& parent_d, const Rational& bound) {
        if (path.size() == depth) return;
        const int q = parent ? parent->state : sub.initial_state();
        for (int a = 1; a <= mc.alphabet(); ++a) {
          const auto s = static_cast<Symbol>(a);
          const int v = sub.next(q, s);
          if (v == Subshift::kDead) continue;
          if (++visited > budget) throw BudgetError("axiom check exceeded node budget " + std::to_string(budget));
          Node n = child(mc, parent, s, v);
          path.push_back(s);
          const Word w(mc.alphabet(), path);
          const Rational next_bound = bound * alpha_high_sq;
          if (!parent_box.contains(n.box)) fail(rep.nesting, w, "E_i is not contained in E_{i^-}");
          if (n.diam_sq < alpha_low_sq * parent_d) fail(rep.lower_ratio, w, "diam(E_i) < alpha_low diam(E_{i^-})");
          if (n.diam_sq > next_bound) fail(rep.decay, w, "diam(E_i) > C alpha_high^|i|");
          diam_sq.emplace(w, n.diam_sq);
          ++rep.words_checked;
          recurse(&n, n.box, n.diam_sq, next_bound);
          path.pop_back();
        }
      };
  recurse(nullptr, mc.seed(), rep.c_squared, rep.c_squared);

  for (const auto& [w, d] : diam_sq) {
    for (std::size_t split = 1; split < w.size(); ++split) {
      const auto i = diam_sq.find(w.prefix(split));
      const auto j = diam_sq.find(w.shifted(split));
      if (i == diam_sq.end() || j == diam_sq.end()) continue;
      const Rational prod = i->second * j->second;
      rep.observed_d_squared = std::max(rep.observed_d_squared, Rational(d / prod));
      if (d > rep.d_squared * prod) fail(rep.multiplicative, w, "diam(E_ij) > D diam(E_i) diam(E_j)");
    }
  }
  return rep;
}

}  // namespace moran
