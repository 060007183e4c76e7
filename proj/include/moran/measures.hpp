#pragma once

#include "moran/compact_tree.hpp"
#include "moran/errors.hpp"
#include "moran/microsets.hpp"
#include "moran/moran_construction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace moran {

/// Real type used for logs: the scalar itself when floating, else long double.
template <class Scalar>
using RealOf = std::conditional_t<std::is_floating_point_v<Scalar>, Scalar, long double>;

namespace detail {

template <class Scalar>
RealOf<Scalar> real_of(const Scalar& x) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return x;
  } else {
    return to_real(x);
  }
}

template <class Scalar>
RealOf<Scalar> log_real(const Scalar& x) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return std::log(x);
  } else {
    return log_of(x);
  }
}

template <class Scalar>
Scalar from_rational(const Rational& q) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return static_cast<Scalar>(to_real(q));
  } else {
    return q;
  }
}

/// Uniform in [0,1) from the top 53 bits.
inline long double uniform01(std::mt19937_64& rng) { return static_cast<long double>(rng() >> 11) * 0x1p-53L; }

}  // namespace detail

/// Markov measure on a subshift: mu([i]) = initial(i_1) prod transition(i_k, i_{k+1}).
template <class Scalar = long double>
class MarkovMeasure {
 public:
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  /// Checks stochasticity and that every positive-mass word is allowed.
  MarkovMeasure(Subshift subshift, Vec initial, Mat transition)
      : subshift_(std::move(subshift)), initial_(std::move(initial)), transition_(std::move(transition)) {
    validate();
  }

  static MarkovMeasure bernoulli(Subshift subshift, const Vec& p) {
    Mat t(p.size(), p.size());
    for (Eigen::Index a = 0; a < p.size(); ++a) t.row(a) = p.transpose();
    return MarkovMeasure(std::move(subshift), p, t);
  }

  const Subshift& subshift() const { return subshift_; }
  int alphabet() const { return subshift_.alphabet(); }
  const Vec& initial() const { return initial_; }
  const Mat& transition() const { return transition_; }

  Scalar initial(Symbol a) const { return initial_(a - 1); }
  Scalar transition(Symbol a, Symbol b) const { return transition_(a - 1, b - 1); }

 private:
  void validate() const {
    const auto k = static_cast<Eigen::Index>(subshift_.alphabet());
    if (initial_.size() != k || transition_.rows() != k || transition_.cols() != k) {
      throw ValidationError("measure dimensions do not match the alphabet");
    }
    auto check_row = [&](const auto& row, const std::string& what) {
      Scalar sum = 0;
      for (Eigen::Index b = 0; b < k; ++b) {
        if (row(b) < 0) throw ValidationError(what + " has a negative entry");
        sum += row(b);
      }
      if constexpr (std::is_floating_point_v<Scalar>) {
        if (std::abs(sum - 1) > Scalar(1e-14)) throw ValidationError(what + " does not sum to 1");
      } else {
        if (sum != 1) throw ValidationError(what + " does not sum to 1");
      }
    };
    check_row(initial_, "initial vector");
    for (Eigen::Index a = 0; a < k; ++a) check_row(transition_.row(a), "transition row " + std::to_string(a + 1));

    // Walk (subshift state, last symbol) pairs reachable with positive mass.
    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, int>> queue;
    for (Eigen::Index a = 0; a < k; ++a) {
      if (initial_(a) == 0) continue;
      const int v = subshift_.next(subshift_.initial_state(), static_cast<Symbol>(a + 1));
      if (v == Subshift::kDead) {
        throw ValidationError("measure gives positive mass to the forbidden word " + std::to_string(a + 1));
      }
      if (seen.insert({v, static_cast<int>(a)}).second) queue.emplace_back(v, static_cast<int>(a));
    }
    while (!queue.empty()) {
      const auto [q, a] = queue.front();
      queue.pop_front();
      for (Eigen::Index b = 0; b < k; ++b) {
        if (transition_(a, b) == 0) continue;
        const int v = subshift_.next(q, static_cast<Symbol>(b + 1));
        if (v == Subshift::kDead) {
          throw ValidationError("measure gives positive mass to a word outside the subshift (transition " +
                                std::to_string(a + 1) + " -> " + std::to_string(b + 1) + ")");
        }
        if (seen.insert({v, static_cast<int>(b)}).second) queue.emplace_back(v, static_cast<int>(b));
      }
    }
  }

  Subshift subshift_;
  Vec initial_;
  Mat transition_;
};

template <class Scalar>
Scalar cylinder_mass(const MarkovMeasure<Scalar>& mu, const Word& i) {
  if (i.alphabet() != mu.alphabet()) throw ValidationError("word and measure alphabets differ");
  if (i.empty()) return Scalar(1);
  Scalar m = mu.initial(i[0]);
  for (std::size_t k = 1; k < i.size() && m != 0; ++k) m *= mu.transition(i[k - 1], i[k]);
  return m;
}

/// mu_i([j]) = mu([ij]) / mu([i]).
template <class Scalar>
MarkovMeasure<Scalar> conditional(const MarkovMeasure<Scalar>& mu, const Word& i) {
  if (cylinder_mass(mu, i) == 0) throw ZeroMassError("conditional on a zero-mass cylinder " + i.str());
  if (i.empty()) return mu;
  return MarkovMeasure<Scalar>(mu.subshift(), mu.transition().row(i.back() - 1).transpose(), mu.transition());
}

/// (mu_{i|k}, consumed word i|k).
template <class Scalar = long double>
struct CpState {
  MarkovMeasure<Scalar> measure;
  Word consumed;
};

template <class Scalar>
CpState<Scalar> cp_start(const MarkovMeasure<Scalar>& mu) {
  return {mu, Word(mu.alphabet())};
}

template <class Scalar>
CpState<Scalar> cp_step(const CpState<Scalar>& state, Symbol s) {
  const Word one(state.measure.alphabet(), {s});
  return {conditional(state.measure, one), state.consumed.appended(s)};
}

/// -log mu([i|1]), or 0 when that mass vanishes (and for the empty word).
template <class Scalar>
RealOf<Scalar> information(const MarkovMeasure<Scalar>& mu, const Word& i) {
  if (i.empty()) return 0;
  const Scalar m = mu.initial(i[0]);
  if (m == 0) return 0;
  return -detail::log_real(m);
}

/// sum_{k<n} I(M^k(mu, i)); equals -log mu([i|n]) when that mass is positive.
template <class Scalar>
RealOf<Scalar> cp_information_sum(const MarkovMeasure<Scalar>& mu, const Word& i) {
  RealOf<Scalar> total = 0;
  CpState<Scalar> st = cp_start(mu);
  for (std::size_t k = 0; k < i.size(); ++k) {
    const Word rest = i.shifted(k);
    total += information(st.measure, rest);
    if (st.measure.initial(i[k]) == 0) break;
    st = cp_step(st, i[k]);
  }
  return total;
}

struct EntropyReport {
  std::string mode;  // "exact" or "empirical"
  long double value = 0;
  std::optional<long double> std_error;
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<long double> stationary;
};

/// Stationary vector of the chain restricted to the symbols reachable from the
/// initial support; throws when that restriction is not irreducible.
template <class Scalar>
std::vector<long double> stationary_vector(const MarkovMeasure<Scalar>& mu) {
  const int k = mu.alphabet();
  std::vector<bool> reach(static_cast<std::size_t>(k), false);
  std::deque<int> queue;
  for (int a = 0; a < k; ++a) {
    if (mu.initial()(a) != 0) {
      reach[static_cast<std::size_t>(a)] = true;
      queue.push_back(a);
    }
  }
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int b = 0; b < k; ++b) {
      if (mu.transition()(a, b) != 0 && !reach[static_cast<std::size_t>(b)]) {
        reach[static_cast<std::size_t>(b)] = true;
        queue.push_back(b);
      }
    }
  }
  std::vector<int> sym;
  for (int a = 0; a < k; ++a) {
    if (reach[static_cast<std::size_t>(a)]) sym.push_back(a);
  }
  // Irreducible iff every reachable symbol reaches every other one.
  for (int s : sym) {
    std::vector<bool> from(static_cast<std::size_t>(k), false);
    std::deque<int> q{s};
    from[static_cast<std::size_t>(s)] = true;
    while (!q.empty()) {
      const int a = q.front();
      q.pop_front();
      for (int b = 0; b < k; ++b) {
        if (mu.transition()(a, b) != 0 && !from[static_cast<std::size_t>(b)]) {
          from[static_cast<std::size_t>(b)] = true;
          q.push_back(b);
        }
      }
    }
    for (int t : sym) {
      if (!from[static_cast<std::size_t>(t)]) throw ValidationError("transition structure is not irreducible");
    }
  }
  const auto m = static_cast<Eigen::Index>(sym.size());
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> a(m + 1, m);
  Eigen::Matrix<long double, Eigen::Dynamic, 1> rhs = Eigen::Matrix<long double, Eigen::Dynamic, 1>::Zero(m + 1);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      a(r, c) = detail::real_of(mu.transition()(sym[static_cast<std::size_t>(c)], sym[static_cast<std::size_t>(r)])) -
                (r == c ? 1.0L : 0.0L);
    }
  }
  a.row(m).setOnes();
  rhs(m) = 1;
  const Eigen::Matrix<long double, Eigen::Dynamic, 1> pi = a.colPivHouseholderQr().solve(rhs);
  std::vector<long double> out(static_cast<std::size_t>(k), 0.0L);
  for (Eigen::Index r = 0; r < m; ++r) out[static_cast<std::size_t>(sym[static_cast<std::size_t>(r)])] = pi(r);
  return out;
}

template <class Scalar>
EntropyReport entropy_exact(const MarkovMeasure<Scalar>& mu) {
  EntropyReport rep;
  rep.mode = "exact";
  rep.stationary = stationary_vector(mu);
  long double h = 0;
  for (int a = 0; a < mu.alphabet(); ++a) {
    const long double pa = rep.stationary[static_cast<std::size_t>(a)];
    if (pa == 0) continue;
    for (int b = 0; b < mu.alphabet(); ++b) {
      const Scalar p = mu.transition()(a, b);
      if (p != 0) h -= pa * static_cast<long double>(detail::real_of(p)) * static_cast<long double>(detail::log_real(p));
    }
  }
  rep.value = h;
  return rep;
}

/// Draws words from mu with a seeded Mersenne twister.
template <class Scalar>
class PathSampler {
 public:
  PathSampler(const MarkovMeasure<Scalar>& mu, std::uint64_t seed) : mu_(mu), rng_(seed) {
    const int k = mu.alphabet();
    cum_init_ = cumulative(mu.initial());
    for (int a = 0; a < k; ++a) cum_rows_.push_back(cumulative(mu.transition().row(a).transpose()));
  }

  Word sample(std::size_t n) {
    std::vector<Symbol> s;
    s.reserve(n);
    for (std::size_t t = 0; t < n; ++t) s.push_back(draw(t == 0 ? cum_init_ : cum_rows_[s.back() - 1u]));
    return Word(mu_.alphabet(), std::move(s));
  }

 private:
  template <class V>
  static std::vector<long double> cumulative(const V& p) {
    std::vector<long double> out;
    long double acc = 0;
    for (Eigen::Index a = 0; a < p.size(); ++a) {
      acc += static_cast<long double>(detail::real_of(Scalar(p(a))));
      out.push_back(acc);
    }
    return out;
  }

  Symbol draw(const std::vector<long double>& cum) {
    const long double u = detail::uniform01(rng_) * cum.back();
    // Skip zero-probability symbols even when u lands on a boundary.
    std::size_t a = 0;
    while (a + 1 < cum.size() && (u >= cum[a] || (a == 0 ? cum[0] : cum[a] - cum[a - 1]) == 0)) ++a;
    return static_cast<Symbol>(a + 1);
  }

  const MarkovMeasure<Scalar>& mu_;
  std::mt19937_64 rng_;
  std::vector<long double> cum_init_;
  std::vector<std::vector<long double>> cum_rows_;
};

/// Mean over sampled i of -(1/n) log mu([i|n]), with its standard error.
template <class Scalar>
EntropyReport entropy_empirical(const MarkovMeasure<Scalar>& mu, std::size_t n, std::size_t samples,
                                std::uint64_t seed) {
  if (n < 1 || samples < 2) throw ValidationError("empirical entropy needs n >= 1 and at least 2 samples");
  PathSampler<Scalar> sampler(mu, seed);
  std::vector<long double> vals;
  for (std::size_t s = 0; s < samples; ++s) {
    const Word w = sampler.sample(n);
    long double lm = static_cast<long double>(detail::log_real(mu.initial(w[0])));
    for (std::size_t t = 1; t < n; ++t) lm += static_cast<long double>(detail::log_real(mu.transition(w[t - 1], w[t])));
    vals.push_back(-lm / static_cast<long double>(n));
  }
  long double mean = 0;
  for (long double v : vals) mean += v;
  mean /= static_cast<long double>(samples);
  long double var = 0;
  for (long double v : vals) var += (v - mean) * (v - mean);
  var /= static_cast<long double>(samples - 1);
  EntropyReport rep;
  rep.mode = "empirical";
  rep.value = mean;
  rep.std_error = std::sqrt(var / static_cast<long double>(samples));
  rep.n = n;
  rep.samples = samples;
  rep.seed = seed;
  return rep;
}

namespace detail {

/// log diam(E_i) carried symbol by symbol: per-axis log side lengths.
struct LogDiameter {
  std::vector<long double> side;

  explicit LogDiameter(const MoranConstruction& mc) {
    const Vector w = mc.seed().width();
    for (Eigen::Index ax = 0; ax < w.size(); ++ax) side.push_back(log_of(w(ax)));
  }
  void push(const MoranConstruction& mc, Symbol s) {
    for (std::size_t ax = 0; ax < side.size(); ++ax) side[ax] += log_of(mc.system().map(s).ratio(static_cast<Eigen::Index>(ax)));
  }
  long double value() const {
    if (side.size() == 1) return side[0];
    const long double m = std::max(side[0], side[1]);
    return m + std::log(std::exp(2 * (side[0] - m)) + std::exp(2 * (side[1] - m))) / 2;
  }
};

}  // namespace detail

struct LocalDimPath {
  Word prefix;  // first symbols of the sampled word, for provenance
  std::vector<std::size_t> levels;
  std::vector<long double> quotients;
  long double final_quotient = 0;
  long double tail_min = 0;    // running minimum over the last half of the checkpoints
  long double tail_slope = 0;  // least-squares slope of the quotient over that tail
};

struct LocalDimReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<LocalDimPath> paths;
  long double mean = 0;
  long double std_dev = 0;
  long double min = 0;
  long double max = 0;
};

namespace detail {

inline void summarize(LocalDimReport& rep) {
  long double sum = 0, lo = std::numeric_limits<long double>::infinity(), hi = -lo;
  for (const auto& p : rep.paths) {
    sum += p.final_quotient;
    lo = std::min(lo, p.final_quotient);
    hi = std::max(hi, p.final_quotient);
  }
  const auto m = static_cast<long double>(rep.paths.size());
  rep.mean = sum / m;
  long double var = 0;
  for (const auto& p : rep.paths) var += (p.final_quotient - rep.mean) * (p.final_quotient - rep.mean);
  rep.std_dev = rep.paths.size() > 1 ? std::sqrt(var / (m - 1)) : 0;
  rep.min = lo;
  rep.max = hi;
}

inline void tail_stats(LocalDimPath& p) {
  const std::size_t start = p.quotients.size() / 2;
  long double lo = std::numeric_limits<long double>::infinity();
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<long double>(p.quotients.size() - start);
  for (std::size_t k = start; k < p.quotients.size(); ++k) {
    lo = std::min(lo, p.quotients[k]);
    const auto x = static_cast<long double>(p.levels[k]);
    sx += x;
    sy += p.quotients[k];
    sxx += x * x;
    sxy += x * p.quotients[k];
  }
  p.tail_min = lo;
  const long double den = m * sxx - sx * sx;
  p.tail_slope = den != 0 ? (m * sxy - sx * sy) / den : 0;
  p.final_quotient = p.quotients.back();
}

}  // namespace detail

/// log mu([i|n]) / log diam(E_{i|n}) along sampled words, with checkpoints
/// every n / checkpoints symbols.
template <class Scalar>
LocalDimReport local_dim_symbolic(const MarkovMeasure<Scalar>& mu, const MoranConstruction& mc, std::size_t n,
                                  std::size_t samples, std::uint64_t seed, std::size_t checkpoints = 100) {
  if (n < 1 || samples < 1) throw ValidationError("local dimension needs n >= 1 and samples >= 1");
  if (mu.alphabet() != mc.alphabet()) throw ValidationError("measure and construction alphabets differ");
  const std::size_t step = std::max<std::size_t>(1, n / std::max<std::size_t>(1, checkpoints));
  LocalDimReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.seed = seed;
  PathSampler<Scalar> sampler(mu, seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Word w = sampler.sample(n);
    if (!mc.subshift().is_allowed(w.prefix(std::min<std::size_t>(n, 64)))) {
      throw ValidationError("measure is not supported on the construction's subshift");
    }
    LocalDimPath path;
    path.prefix = w.prefix(std::min<std::size_t>(n, 16));
    detail::LogDiameter ld(mc);
    long double lm = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const Scalar p = t == 0 ? mu.initial(w[0]) : mu.transition(w[t - 1], w[t]);
      lm += static_cast<long double>(detail::log_real(p));
      ld.push(mc, w[t]);
      if ((t + 1) % step == 0 || t + 1 == n) {
        path.levels.push_back(t + 1);
        path.quotients.push_back(lm / ld.value());
      }
    }
    detail::tail_stats(path);
    rep.paths.push_back(std::move(path));
  }
  detail::summarize(rep);
  return rep;
}

struct BallMass {
  Rational r;
  long double mass = 0;
  long double quotient = 0;  // log mass / log r
  std::size_t pieces = 0;
};

struct GeometricOptions {
  unsigned refinement = 10;         // aggregate pieces of diameter <= r 2^-refinement
  Rational floor{1, 1ULL << 62};    // smallest admissible aggregation scale
  std::size_t budget = kDefaultNodeBudget;
};

/// mu pi(B(x, r)) approximated from above by the cylinder masses of the
/// stopping-set words Gamma(r 2^-refinement) whose pieces meet B(x, r).
template <class Scalar>
BallMass ball_mass(const MarkovMeasure<Scalar>& mu, const MoranConstruction& mc, const Vector& x, const Rational& r,
                   const GeometricOptions& opt = {}) {
  if (r <= 0) throw ValidationError("ball radius must be positive");
  const Rational fine = r / pow(Rational(2), opt.refinement);
  if (fine < opt.floor) throw ValidationError("radius below the resolution floor");
  const Rational fine2 = fine * fine;
  const Subshift& sub = mc.subshift();
  struct Node {
    Word w;
    int state;
    ContractionMap f;
    Scalar mass;
  };
  std::vector<Node> stack;
  for (int a = mc.alphabet(); a >= 1; --a) {
    const auto s = static_cast<Symbol>(a);
    const int v = sub.next(sub.initial_state(), s);
    if (v == Subshift::kDead || mu.initial(s) == 0) continue;
    stack.push_back({Word(mc.alphabet(), {s}), v, mc.system().map(s), mu.initial(s)});
  }
  BallMass out;
  out.r = r;
  Scalar total = 0;
  std::size_t work = 0;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++work > opt.budget) throw BudgetError("ball mass exceeded node budget");
    const Box b = image(node.f, mc.seed());
    if (!meets_ball(b, x, r)) continue;
    if (b.diameter_squared() <= fine2) {
      total += node.mass;
      ++out.pieces;
      continue;
    }
    for (int a = mc.alphabet(); a >= 1; --a) {
      const auto s = static_cast<Symbol>(a);
      const int v = sub.next(node.state, s);
      if (v == Subshift::kDead) continue;
      const Scalar m = node.mass * mu.transition(node.w.back(), s);
      if (m == 0) continue;
      stack.push_back({node.w.appended(s), v, node.f * mc.system().map(s), m});
    }
  }
  out.mass = static_cast<long double>(detail::real_of(total));
  out.quotient = out.mass > 0 ? std::log(out.mass) / static_cast<long double>(log_of(r)) : 0;
  return out;
}

/// Quotient ladder log mu pi(B(x, r_k)) / log r_k.
template <class Scalar>
std::vector<BallMass> local_dim_geometric(const MarkovMeasure<Scalar>& mu, const MoranConstruction& mc,
                                          const Vector& x, const std::vector<Rational>& radii,
                                          const GeometricOptions& opt = {}) {
  std::vector<BallMass> out;
  for (const auto& r : radii) out.push_back(ball_mass(mu, mc, x, r, opt));
  return out;
}

/// pi of a sampled word, truncated at `length` symbols (image of the seed midpoint).
template <class Scalar>
Vector sample_point(PathSampler<Scalar>& sampler, const MoranConstruction& mc, std::size_t length = 64) {
  return compose(mc.system(), sampler.sample(length))(mc.seed().midpoint());
}

struct GeometricSummary {
  std::vector<Rational> radii;
  std::vector<long double> mean_quotient;  // per radius, over sampled points
  std::vector<std::vector<BallMass>> ladders;
  std::vector<Vector> points;
  std::uint64_t seed = 0;
};

template <class Scalar>
GeometricSummary local_dim_geometric_sampled(const MarkovMeasure<Scalar>& mu, const MoranConstruction& mc,
                                             const std::vector<Rational>& radii, std::size_t samples,
                                             std::uint64_t seed, const GeometricOptions& opt = {}) {
  GeometricSummary out;
  out.radii = radii;
  out.seed = seed;
  out.mean_quotient.assign(radii.size(), 0.0L);
  PathSampler<Scalar> sampler(mu, seed);
  for (std::size_t s = 0; s < samples; ++s) {
    out.points.push_back(sample_point(sampler, mc));
    out.ladders.push_back(local_dim_geometric(mu, mc, out.points.back(), radii, opt));
    for (std::size_t k = 0; k < radii.size(); ++k) out.mean_quotient[k] += out.ladders.back()[k].quotient;
  }
  for (auto& q : out.mean_quotient) q /= static_cast<long double>(samples);
  return out;
}

struct NnEntropy {
  std::size_t n = 0;
  Integer count;     // N_n(A)
  long double lhs = 0;  // -(1/n) sum mu_n([i]) log mu_n([i]) via the telescoping information sum
  long double rhs = 0;  // (1/n) log N_n(A)
  Word provenance{2};
};

/// Uniform measure on the largest depth-n miniset prefix set; its normalized
/// information integral against (1/n) log N_n.
inline NnEntropy nn_entropy_identity(const Subshift& s, std::size_t n, std::size_t budget = kDefaultNodeBudget) {
  const MicrosetFamily fam = microset_family(s, n, budget);
  const MicrosetMember* best = nullptr;
  for (const auto& m : fam.members) {
    if (!best || m.prefix_set.leaves().size() > best->prefix_set.leaves().size()) best = &m;
  }
  const CompactTree& tree = best->prefix_set;
  NnEntropy out;
  out.n = n;
  out.count = Integer(tree.leaves().size());
  out.provenance = best->provenance;

  // Leaves below every node, level by level from the bottom.
  std::vector<std::map<Word, std::size_t>> below(n + 1);
  for (const Word& w : tree.leaves()) below[n][w] = 1;
  for (std::size_t k = n; k-- > 0;) {
    for (const auto& [w, c] : below[k + 1]) below[k][w.parent()] += c;
  }
  const auto total = static_cast<long double>(tree.leaves().size());
  long double integral = 0;
  for (const Word& w : tree.leaves()) {
    // -log mu_n([w]) as the sum of conditional informations along w.
    long double info = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto parent = static_cast<long double>(below[k].at(w.prefix(k)));
      const auto child = static_cast<long double>(below[k + 1].at(w.prefix(k + 1)));
      info -= std::log(child / parent);
    }
    integral += info / total;
  }
  out.lhs = integral / static_cast<long double>(n);
  out.rhs = static_cast<long double>(log_of(out.count)) / static_cast<long double>(n);
  return out;
}

}  // namespace moran
