#include "moran/furstenberg.hpp"

#include <algorithm>
#include <map>

namespace moran {

namespace {

const Rational kHalf{1, 2};

struct Affine {
  Rational r{1};
  Rational a{0};
  Affine then(const ContractionMap& f) const { return {r * f.ratio(0), r * f.shift(0) + a}; }
  Rational operator()(const Rational& x) const { return r * x + a; }
};

const IfsSystem& shared_system() {
  static const IfsSystem system = furstenberg_system();
  return system;
}

Affine affine_of(const Word& w) {
  const IfsSystem& system = shared_system();
  Affine f;
  for (Symbol s : w.symbols()) f = f.then(system.map(s));
  return f;
}

Integer ipow(long base, std::size_t e) {
  Integer out = 1;
  for (std::size_t k = 0; k < e; ++k) out *= base;
  return out;
}

}  // namespace

IfsSystem furstenberg_system() {
  return IfsSystem({ContractionMap::homothety(Rational(1, 2), Rational(0)),
                    ContractionMap::homothety(Rational(1, 5), Rational(1, 2)),
                    ContractionMap::homothety(Rational(1, 7), Rational(6, 7))});
}

MoranConstruction furstenberg_construction() {
  return MoranConstruction(furstenberg_system(), full_shift(3), Box::interval(Rational(0), Rational(1)));
}

FurstenbergIndex furstenberg_sequence(std::size_t j) {
  if (j < 1) throw ValidationError("sequence index j must be at least 1");
  for (std::size_t m = 1; m < 100000; ++m) {
    const Integer seven_m = ipow(7, m);
    // Largest n with 5 * 2^(n-1) <= 7^m, i.e. n <= 1 + m log2 7 - log2 5.
    std::size_t n = 0;
    while (5 * ipow(2, n) <= seven_m) ++n;
    if (n < 1) continue;
    // 1 + m log2 7 - log2 5 < n + 1/j  <=>  2^j 7^(mj) < 5^j 2^(nj + 1).
    if (ipow(2, j) * ipow(7, m * j) < ipow(5, j) * ipow(2, n * j + 1)) return {j, m, n};
  }
  throw ConvergenceError("no sequence term found for j = " + std::to_string(j));
}

FurstenbergCovers::FurstenbergCovers(std::size_t depth) {
  const MoranConstruction mc = furstenberg_construction();
  for (std::size_t k = 0; k <= depth; ++k) {
    const Rational r = pow(kHalf, static_cast<unsigned>(k));
    std::vector<Interval> parts;
    for (const Word& w : stopping_set(mc, r)) {
      const Box b = piece(mc, w);
      parts.push_back({b.lo(0), b.hi(0)});
    }
    levels_.emplace_back(std::move(parts));
  }
}

GeoSet furstenberg_k(const GeoSet& e) { return geo_union(e.affine(kHalf, 0), e.affine(kHalf, kHalf)); }

Rational k_point_value(const KPoint& p) {
  return (affine_of(p.word)(Rational(p.endpoint)) + p.half) / 2;
}

std::optional<KPoint> find_k_point(const Rational& a, const Rational& b, std::size_t max_length) {
  if (!(a < b)) return std::nullopt;
  const IfsSystem& system = shared_system();
  struct Node {
    int half;
    Word word;
    Affine f;
  };
  std::vector<Node> stack{{1, Word(3), Affine{}}, {0, Word(3), Affine{}}};
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    const Rational lo = (node.f(Rational(0)) + node.half) / 2;
    const Rational hi = (node.f(Rational(1)) + node.half) / 2;
    if (hi <= a || lo >= b) continue;
    if (a < lo) return KPoint{lo, node.half, node.word, 0};
    if (hi < b) return KPoint{hi, node.half, node.word, 1};
    if (node.word.size() >= max_length) continue;
    for (int s = 3; s >= 1; --s) {
      const auto sym = static_cast<Symbol>(s);
      stack.push_back({node.half, node.word.appended(sym), node.f.then(system.map(sym))});
    }
  }
  return std::nullopt;
}

WindowCertificate certify_window(const FurstenbergCovers& covers, const Word& u_word, const Word& v_word) {
  WindowCertificate c;
  c.u_word = u_word;
  c.v_word = v_word;
  c.u = affine_of(u_word)(Rational(0));
  c.v = affine_of(v_word)(Rational(1));
  c.depth = covers.depth();
  if (!(c.u < c.v)) throw ValidationError("window needs u < v");

  // Start where magnified pieces are at most eta/8 and refine toward the depth.
  const Rational target = (c.v - c.u) * Rational(11, 70) / 8;
  std::size_t k = 0;
  while (k < covers.depth() && pow(kHalf, static_cast<unsigned>(k)) > target) ++k;
  const Rational width = c.v - c.u;
  for (;; k = std::min(k + 2, covers.depth())) {
    // Gaps of the cover inside [u, v], longest first; u and v lie in E, so
    // every gap between consecutive intervals meeting [u, v] is interior.
    const auto& parts = covers.level(k).intervals();
    auto it = std::lower_bound(parts.begin(), parts.end(), c.u,
                               [](const Interval& p, const Rational& x) { return p.hi < x; });
    std::vector<std::pair<Rational, std::size_t>> gaps;
    for (; it != parts.end() && std::next(it) != parts.end() && std::next(it)->lo <= c.v; ++it) {
      gaps.emplace_back(std::next(it)->lo - it->hi, static_cast<std::size_t>(it - parts.begin()));
    }
    std::stable_sort(gaps.begin(), gaps.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& g : gaps) {
      const Rational a = (parts[g.second].hi - c.u) / width;
      const Rational b = (parts[g.second + 1].lo - c.u) / width;
      if (auto p = find_k_point(a, b)) {
        c.witness = std::move(p);
        return c;
      }
    }
    if (k == covers.depth()) return c;
  }
}

bool verify_certificate(const WindowCertificate& c, const GeoSet& e) {
  if (!c.witness) return false;
  if (c.u != affine_of(c.u_word)(Rational(0)) || c.v != affine_of(c.v_word)(Rational(1))) return false;
  const Rational k = k_point_value(*c.witness);
  if (k != c.witness->value || k < 0 || k > 1) return false;
  return !e.contains(c.u + k * (c.v - c.u));
}

std::vector<std::pair<Word, Word>> candidate_windows(std::size_t anchor_length) {
  if (anchor_length < 1) throw ValidationError("anchor length must be at least 1");
  std::map<Rational, Word> lefts, rights;  // value -> shortlex-least word
  auto keep = [](std::map<Rational, Word>& m, const Rational& x, const Word& w) {
    auto [it, inserted] = m.emplace(x, w);
    if (!inserted && shortlex_less(w, it->second)) it->second = w;
  };
  std::vector<Word> frontier{Word(3)};
  for (std::size_t len = 1; len <= anchor_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int s = 1; s <= 3; ++s) next.push_back(w.appended(static_cast<Symbol>(s)));
    }
    frontier.swap(next);
    for (const Word& w : frontier) {
      const Affine f = affine_of(w);
      if (w[0] != 3) keep(lefts, f(Rational(0)), w);
      if (w[0] != 1) keep(rights, f(Rational(1)), w);
    }
  }
  std::vector<std::pair<Word, Word>> out;
  for (const auto& [u, uw] : lefts) {
    for (const auto& [v, vw] : rights) {
      if (uw[0] < vw[0] && u < v) out.emplace_back(uw, vw);
    }
  }
  return out;
}

FurstenbergReport furstenberg_demo(std::size_t depth, std::size_t j_max, std::size_t anchor_length) {
  if (depth < 8) throw ValidationError("demo depth must be at least 8");
  if (j_max < 3) throw ValidationError("demo needs j_max >= 3");
  FurstenbergReport rep;
  rep.depth = depth;
  rep.j_max = j_max;
  rep.anchor_length = anchor_length;

  const MoranConstruction mc = furstenberg_construction();
  std::vector<Interval> first;
  for (int s = 1; s <= 3; ++s) {
    const Box b = piece(mc, Word(3, {static_cast<Symbol>(s)}));
    first.push_back({b.lo(0), b.hi(0)});
  }
  const auto level1_gaps = GeoSet(first).gaps();
  if (level1_gaps.size() != 1) throw ValidationError("expected one level-1 gap");
  rep.gap = level1_gaps.front();
  rep.eta = rep.gap.hi - rep.gap.lo;

  const FurstenbergCovers covers(depth);
  const GeoSet& e = covers.finest();
  const GeoSet k_set = furstenberg_k(e);
  rep.strictly_decreasing = true;
  for (std::size_t j = 1; j <= j_max; ++j) {
    ConvergenceRow row;
    row.index = furstenberg_sequence(j);
    const Rational h = pow(Rational(1, 7), static_cast<unsigned>(row.index.m)) / 2;
    row.u = kHalf - h;
    row.v = kHalf + h;
    row.distance = geo_hausdorff(geo_magnify(e, row.u, row.v), k_set);
    if (!rep.rows.empty() && !(row.distance < rep.rows.back().distance)) rep.strictly_decreasing = false;
    rep.rows.push_back(std::move(row));

    ScaleCheck sc;
    sc.index = rep.rows.back().index;
    const Rational mag = pow(Rational(7), static_cast<unsigned>(sc.index.m));
    Word left(3, {1}), right(3, {2});
    for (std::size_t t = 0; t < sc.index.m; ++t) left = left.appended(3);
    for (std::size_t t = 0; t < sc.index.n; ++t) right = right.appended(1);
    sc.left = mag * piece(mc, left).width()(0);
    sc.right = mag * piece(mc, right).width()(0);
    sc.left_exact = sc.left == kHalf;
    // right <= 2^{1/j} / 2  <=>  (2 right)^j <= 2.
    sc.right_sandwiched = sc.right >= kHalf && pow(Rational(2 * sc.right), static_cast<unsigned>(j)) <= 2;
    rep.scales.push_back(sc);
  }

  for (const auto& [uw, vw] : candidate_windows(anchor_length)) {
    rep.certificates.push_back(certify_window(covers, uw, vw));
    if (rep.certificates.back().certified()) {
      ++rep.certified;
    } else {
      ++rep.undecided;
    }
  }
  return rep;
}

}  // namespace moran
