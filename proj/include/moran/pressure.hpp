#pragma once

#include "moran/errors.hpp"
#include "moran/moran_construction.hpp"
#include "moran/separation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace moran {

enum class PressureMethod { automatic, spectral, finite_level };

inline const char* method_name(PressureMethod m) {
  switch (m) {
    case PressureMethod::spectral:
      return "spectral";
    case PressureMethod::finite_level:
      return "finite_level";
    default:
      return "automatic";
  }
}

template <class Scalar = long double>
struct PressureCurve {
  PressureMethod method = PressureMethod::spectral;
  std::vector<std::pair<Scalar, Scalar>> samples;  // (t, P(t)), sorted by t
  Scalar t_star = 0;
  Scalar bracket_lo = 0;
  Scalar bracket_hi = 0;
  std::size_t n_used = 0;  // finite-level depth, 0 for spectral
  std::string note;
};

namespace detail {

template <class Scalar>
Scalar log_add(Scalar a, Scalar b) {
  if (a == -std::numeric_limits<Scalar>::infinity()) return b;
  if (b == -std::numeric_limits<Scalar>::infinity()) return a;
  const Scalar m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

template <class Scalar>
Scalar log_sum_exp(const std::vector<Scalar>& xs) {
  Scalar m = -std::numeric_limits<Scalar>::infinity();
  for (Scalar x : xs) m = std::max(m, x);
  if (m == -std::numeric_limits<Scalar>::infinity()) return m;
  Scalar s = 0;
  for (Scalar x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

template <class Scalar>
Scalar log_rational(const Rational& q) {
  return static_cast<Scalar>(log_of(q));
}

/// Gamma_n grouped by symbol-count vector: every word with the same counts has
/// the same ratios, hence the same diameter.
template <class Scalar>
struct LevelGroups {
  std::size_t n = 0;
  std::vector<Scalar> log_mult;
  std::vector<Scalar> log_diam;

  Scalar pressure(Scalar t) const {
    std::vector<Scalar> terms(log_mult.size());
    for (std::size_t g = 0; g < terms.size(); ++g) terms[g] = log_mult[g] + t * log_diam[g];
    return log_sum_exp(terms) / static_cast<Scalar>(n);
  }
};

template <class Scalar>
LevelGroups<Scalar> level_groups(const MoranConstruction& mc, std::size_t n, std::size_t budget) {
  if (n < 1) throw ValidationError("pressure level must be at least 1");
  const Subshift& sub = mc.subshift();
  const int k = mc.alphabet();
  using Key = std::pair<int, std::vector<std::uint16_t>>;
  std::map<Key, Scalar> cur;
  cur.emplace(Key{sub.initial_state(), std::vector<std::uint16_t>(static_cast<std::size_t>(k), 0)}, Scalar(0));
  std::size_t work = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::map<Key, Scalar> next;
    for (const auto& [key, lm] : cur) {
      for (int a = 1; a <= k; ++a) {
        const int v = sub.next(key.first, static_cast<Symbol>(a));
        if (v == Subshift::kDead) continue;
        if (++work > budget) throw BudgetError("pressure level sum exceeded node budget " + std::to_string(budget));
        Key nk{v, key.second};
        ++nk.second[static_cast<std::size_t>(a - 1)];
        auto [it, inserted] = next.emplace(std::move(nk), lm);
        if (!inserted) it->second = log_add(it->second, lm);
      }
    }
    cur.swap(next);
  }
  if (cur.empty()) throw ValidationError("Gamma_n is empty");

  // Merge states: only the counts matter for the diameter.
  std::map<std::vector<std::uint16_t>, Scalar> by_counts;
  for (const auto& [key, lm] : cur) {
    auto [it, inserted] = by_counts.emplace(key.second, lm);
    if (!inserted) it->second = log_add(it->second, lm);
  }

  const Eigen::Index d = mc.dimension();
  const Vector width = mc.seed().width();
  std::vector<std::vector<Scalar>> log_ratio(static_cast<std::size_t>(d), std::vector<Scalar>(static_cast<std::size_t>(k)));
  std::vector<Scalar> log_width(static_cast<std::size_t>(d));
  for (Eigen::Index ax = 0; ax < d; ++ax) {
    log_width[static_cast<std::size_t>(ax)] =
        width(ax) > 0 ? log_rational<Scalar>(width(ax)) : -std::numeric_limits<Scalar>::infinity();
    for (int a = 1; a <= k; ++a) {
      log_ratio[static_cast<std::size_t>(ax)][static_cast<std::size_t>(a - 1)] =
          log_rational<Scalar>(mc.system().map(static_cast<Symbol>(a)).ratio(ax));
    }
  }

  LevelGroups<Scalar> out;
  out.n = n;
  for (const auto& [counts, lm] : by_counts) {
    std::vector<Scalar> axis(static_cast<std::size_t>(d));
    for (std::size_t ax = 0; ax < static_cast<std::size_t>(d); ++ax) {
      Scalar s = log_width[ax];
      for (std::size_t a = 0; a < counts.size(); ++a) s += static_cast<Scalar>(counts[a]) * log_ratio[ax][a];
      axis[ax] = 2 * s;
    }
    out.log_mult.push_back(lm);
    out.log_diam.push_back(log_sum_exp(axis) / 2);
  }
  return out;
}

/// Tarjan strongly connected components of the live automaton.
inline std::vector<std::vector<int>> strongly_connected(const std::vector<std::vector<int>>& delta) {
  const int n = static_cast<int>(delta.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;
  // Iterative to keep deep automata off the call stack.
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> work{{root, 0}};
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!work.empty()) {
      auto& [u, edge] = work.back();
      const auto uu = static_cast<std::size_t>(u);
      if (edge < delta[uu].size()) {
        const int v = delta[uu][edge++];
        if (v < 0) continue;
        const auto vv = static_cast<std::size_t>(v);
        if (index[vv] < 0) {
          index[vv] = low[vv] = counter++;
          stack.push_back(v);
          on_stack[vv] = true;
          work.emplace_back(v, 0);
        } else if (on_stack[vv]) {
          low[uu] = std::min(low[uu], index[vv]);
        }
        continue;
      }
      if (low[uu] == index[uu]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != u);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      const int finished = u;
      work.pop_back();
      if (!work.empty()) {
        const auto parent = static_cast<std::size_t>(work.back().first);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return comps;
}

/// Perron root of a nonnegative irreducible matrix by power iteration on
/// M + sigma I with Collatz-Wielandt bounds taken on M itself.
template <class Scalar>
Scalar perron_root(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, Scalar rel_tol,
                   std::size_t max_iter = 1'000'000) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = m.rows();
  const Scalar sigma = m.rowwise().sum().maxCoeff();
  if (sigma == 0) return 0;
  Vec x = Vec::Ones(n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Vec mx = m * x;
    const Scalar lo = (mx.array() / x.array()).minCoeff();
    const Scalar hi = (mx.array() / x.array()).maxCoeff();
    if (hi - lo <= rel_tol * hi) return (lo + hi) / 2;
    x = mx + sigma * x;
    x /= x.maxCoeff();
  }
  throw ConvergenceError("power iteration did not reach relative tolerance");
}

template <class Scalar>
Scalar default_spectral_tol() {
  return std::max(Scalar(1e-14), 16 * std::numeric_limits<Scalar>::epsilon());
}

}  // namespace detail

/// (1/n) log sum_{i in Gamma_n} diam(E_i)^t.
template <class Scalar = long double>
Scalar pressure_at(const MoranConstruction& mc, Scalar t, std::size_t n, std::size_t budget = kDefaultNodeBudget) {
  if (t < 0) throw ValidationError("pressure needs t >= 0");
  return detail::level_groups<Scalar>(mc, n, budget).pressure(t);
}

/// log of the spectral radius of the automaton weighted by ratio_a^t, maximized
/// over strongly connected components.
template <class Scalar = long double>
Scalar pressure_spectral(const Subshift& subshift, const std::vector<Rational>& ratios, Scalar t,
                         Scalar rel_tol = detail::default_spectral_tol<Scalar>()) {
  if (ratios.size() != static_cast<std::size_t>(subshift.alphabet())) {
    throw ValidationError("need one ratio per symbol");
  }
  std::vector<Scalar> weight(ratios.size());
  for (std::size_t a = 0; a < ratios.size(); ++a) weight[a] = std::exp(t * detail::log_rational<Scalar>(ratios[a]));

  const auto& delta = subshift.transitions();
  Scalar best = 0;
  for (const auto& comp : detail::strongly_connected(delta)) {
    std::map<int, Eigen::Index> local;
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<Eigen::Index>(i);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(static_cast<Eigen::Index>(comp.size()),
                                                                   static_cast<Eigen::Index>(comp.size()));
    bool has_edge = false;
    for (int q : comp) {
      for (std::size_t a = 0; a < weight.size(); ++a) {
        const int v = delta[static_cast<std::size_t>(q)][a];
        if (v < 0) continue;
        const auto it = local.find(v);
        if (it == local.end()) continue;
        m(local[q], it->second) += weight[a];
        has_edge = true;
      }
    }
    if (!has_edge) continue;
    best = std::max(best, detail::perron_root<Scalar>(m, rel_tol));
  }
  if (best <= 0) throw EmptySubshiftError();
  return std::log(best);
}

/// Spectral pressure of a similarity construction: the limit of pressure_at.
template <class Scalar = long double>
Scalar pressure_spectral(const MoranConstruction& mc, Scalar t) {
  if (!mc.system().is_similarity()) throw ValidationError("spectral pressure needs similarity maps");
  std::vector<Rational> ratios;
  for (const auto& f : mc.system().maps()) ratios.push_back(f.ratio(0));
  return pressure_spectral<Scalar>(mc.subshift(), ratios, t);
}

namespace detail {

template <class Scalar, class F>
PressureCurve<Scalar> bisect_pressure(F&& p, Scalar t_hi_guess, Scalar tol, PressureMethod method,
                                      std::size_t max_iter = 400) {
  PressureCurve<Scalar> curve;
  curve.method = method;
  auto eval = [&](Scalar t) {
    const Scalar v = p(t);
    curve.samples.emplace_back(t, v);
    return v;
  };
  const Scalar p0 = eval(Scalar(0));
  if (p0 <= 0) {
    curve.t_star = curve.bracket_lo = curve.bracket_hi = 0;
    curve.note = "P(0) <= 0: zero topological entropy, t* = 0";
    return curve;
  }
  Scalar lo = 0;
  Scalar hi = t_hi_guess * (1 + Scalar(1e-9)) + Scalar(1e-12);
  std::size_t expansions = 0;
  while (eval(hi) > 0) {
    lo = hi;
    hi *= 2;
    if (++expansions > 64) throw ConvergenceError("could not bracket the pressure zero");
  }
  Scalar mid = (lo + hi) / 2;
  for (std::size_t it = 0; it < max_iter; ++it) {
    mid = (lo + hi) / 2;
    const Scalar v = eval(mid);
    if (v > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < tol && std::abs(v) < tol) break;
    if (it + 1 == max_iter) throw ConvergenceError("bisection budget exhausted");
  }
  curve.t_star = (lo + hi) / 2;
  curve.bracket_lo = lo;
  curve.bracket_hi = hi;
  std::sort(curve.samples.begin(), curve.samples.end());
  return curve;
}

}  // namespace detail

/// Spectral zero for a weighted subshift.
template <class Scalar = long double>
PressureCurve<Scalar> pressure_zero(const Subshift& subshift, const std::vector<Rational>& ratios, Scalar tol) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  if (ratios.empty()) throw ValidationError("need one ratio per symbol");
  for (const auto& r : ratios) {
    if (r <= 0 || r >= 1) throw ValidationError("ratios must lie in (0, 1)");
  }
  const Rational alpha = *std::max_element(ratios.begin(), ratios.end());
  const Scalar log_inv_alpha = -detail::log_rational<Scalar>(alpha);
  auto p = [&](Scalar t) { return pressure_spectral<Scalar>(subshift, ratios, t); };
  const Scalar p0 = p(Scalar(0));
  return detail::bisect_pressure<Scalar>(p, std::max(p0, Scalar(0)) / log_inv_alpha, tol, PressureMethod::spectral);
}

/// Zero of the pressure by bisection. Spectral for similarity systems,
/// otherwise finite-level sums with doubling n until Richardson-extrapolated
/// roots agree to tol.
template <class Scalar = long double>
PressureCurve<Scalar> pressure_zero(const MoranConstruction& mc, Scalar tol,
                                    PressureMethod method = PressureMethod::automatic,
                                    std::size_t budget = kDefaultNodeBudget, std::size_t n_max = 2048) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  if (method == PressureMethod::automatic) {
    method = mc.system().is_similarity() ? PressureMethod::spectral : PressureMethod::finite_level;
  }
  const Scalar log_inv_alpha = -detail::log_rational<Scalar>(mc.system().max_ratio());

  if (method == PressureMethod::spectral) {
    if (!mc.system().is_similarity()) throw ValidationError("spectral pressure needs similarity maps");
    std::vector<Rational> ratios;
    for (const auto& f : mc.system().maps()) ratios.push_back(f.ratio(0));
    return pressure_zero<Scalar>(mc.subshift(), ratios, tol);
  }

  Scalar prev_root = 0, prev_extrap = 0;
  bool have_prev = false, have_extrap = false;
  for (std::size_t n = 8; n <= n_max; n *= 2) {
    const auto groups = detail::level_groups<Scalar>(mc, n, budget);
    auto p = [&](Scalar t) { return groups.pressure(t); };
    const Scalar p0 = p(Scalar(0));
    PressureCurve<Scalar> c = detail::bisect_pressure<Scalar>(p, std::max(p0, Scalar(0)) / log_inv_alpha, tol / 4, method);
    c.n_used = n;
    if (have_prev) {
      const Scalar extrap = 2 * c.t_star - prev_root;
      if (have_extrap && std::abs(extrap - prev_extrap) < tol) {
        c.note = "finite-level root at n = " + std::to_string(n) + " with Richardson extrapolation (2 t_n - t_{n/2})";
        c.t_star = extrap;
        c.bracket_lo = extrap - tol / 2;
        c.bracket_hi = extrap + tol / 2;
        return c;
      }
      prev_extrap = extrap;
      have_extrap = true;
    }
    prev_root = c.t_star;
    have_prev = true;
  }
  throw ConvergenceError("finite-level pressure roots did not stabilize up to n = " + std::to_string(n_max));
}

template <class Scalar = long double>
struct BoxCount {
  std::vector<std::size_t> levels;
  std::vector<Scalar> log_inv_scale;
  std::vector<Scalar> log_count;
  Scalar slope = 0;
};

/// Box-counting slope over the four finest scales alpha_bar^k, k = depth-3..depth.
/// Pieces are the stopping sets at each scale; cells are half-open grid squares.
template <class Scalar = long double>
BoxCount<Scalar> box_count(const MoranConstruction& mc, std::size_t depth, std::size_t budget = kDefaultNodeBudget) {
  if (depth < 4) throw ValidationError("box count needs depth >= 4");
  BoxCount<Scalar> out;
  const Rational alpha = mc.system().max_ratio();
  for (std::size_t k = depth - 3; k <= depth; ++k) {
    const Rational delta = pow(alpha, static_cast<unsigned>(k));
    std::vector<std::vector<long long>> cells;
    for (const Word& w : stopping_set(mc, delta, budget)) {
      const Box b = piece(mc, w);
      std::vector<std::pair<long long, long long>> range;
      for (Eigen::Index ax = 0; ax < b.dimension(); ++ax) {
        const long long lo = floor_div(Rational(b.lo(ax) / delta)).convert_to<long long>();
        long long hi = ceil_div(Rational(b.hi(ax) / delta)).convert_to<long long>() - 1;
        hi = std::max(hi, lo);
        range.emplace_back(lo, hi);
      }
      if (range.size() == 1) {
        for (long long i = range[0].first; i <= range[0].second; ++i) cells.push_back({i});
      } else {
        for (long long i = range[0].first; i <= range[0].second; ++i) {
          for (long long j = range[1].first; j <= range[1].second; ++j) cells.push_back({i, j});
        }
      }
      if (cells.size() > budget) throw BudgetError("box count exceeded node budget");
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    out.levels.push_back(k);
    out.log_inv_scale.push_back(-detail::log_rational<Scalar>(delta));
    out.log_count.push_back(std::log(static_cast<Scalar>(cells.size())));
  }
  const auto m = static_cast<Scalar>(out.levels.size());
  Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < out.levels.size(); ++i) {
    sx += out.log_inv_scale[i];
    sy += out.log_count[i];
    sxx += out.log_inv_scale[i] * out.log_inv_scale[i];
    sxy += out.log_inv_scale[i] * out.log_count[i];
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

template <class Scalar = long double>
struct DimensionReport {
  PressureCurve<Scalar> root;
  BoxCount<Scalar> box;
  std::optional<ClusterReport> evidence;
  std::string claim;
};

/// t* together with the conditional dimension statement and a box-count check.
template <class Scalar = long double>
DimensionReport<Scalar> dimension_report(const MoranConstruction& mc, std::optional<ClusterReport> evidence,
                                         Scalar tol, std::size_t box_depth,
                                         std::size_t budget = kDefaultNodeBudget) {
  DimensionReport<Scalar> rep;
  rep.root = pressure_zero<Scalar>(mc, tol, PressureMethod::automatic, budget);
  rep.box = box_count<Scalar>(mc, box_depth, budget);
  rep.evidence = std::move(evidence);
  std::string ev = "no clustering evidence attached";
  if (rep.evidence) {
    ev = "empirical clustering scan max " + std::to_string(rep.evidence->max_count) +
         (rep.evidence->stabilized ? " (stable as r decreases)" : " (not stable as r decreases)");
  }
  rep.claim = "If the construction has the uniform finite clustering property, then dim_H(E) = dim_A(E) = t*. " +
              ev + "; this is evidence, not a proof.";
  return rep;
}

}  // namespace moran
