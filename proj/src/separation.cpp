#include "moran/separation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace moran {

std::string SignatureKey::str() const {
  std::string out = "(";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ", ";
    out += format_rational(values[k]);
  }
  return out + ")";
}

std::strong_ordering operator<=>(const SignatureKey& a, const SignatureKey& b) {
  const std::size_t n = std::min(a.values.size(), b.values.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.values[k] < b.values[k]) return std::strong_ordering::less;
    if (b.values[k] < a.values[k]) return std::strong_ordering::greater;
  }
  return a.values.size() <=> b.values.size();
}

SignatureKey map_signature(const ContractionMap& m) {
  SignatureKey key;
  key.values.reserve(static_cast<std::size_t>(2 * m.dimension()));
  for (Eigen::Index k = 0; k < m.dimension(); ++k) key.values.push_back(m.ratio(k));
  for (Eigen::Index k = 0; k < m.dimension(); ++k) key.values.push_back(m.shift(k));
  return key;
}

std::size_t wsc_count(const MoranConstruction& mc, const Vector& x, const Rational& r, std::size_t budget) {
  std::set<SignatureKey> keys;
  for (const auto& [w, f] : local_cluster_maps(mc, x, r, budget)) keys.insert(map_signature(f));
  return keys.size();
}

std::size_t wsc_count(const IfsSystem& system, const Box& seed, const Vector& x, const Rational& r,
                      std::size_t budget) {
  return wsc_count(MoranConstruction(system, full_shift(system.alphabet()), seed), x, r, budget);
}

namespace {

bool has_proper_factor_in(const Word& w, const std::set<Word>& words) {
  for (std::size_t start = 0; start < w.size(); ++start) {
    for (std::size_t len = 1; start + len <= w.size(); ++len) {
      if (len == w.size()) continue;
      if (words.count(w.shifted(start).prefix(len))) return true;
    }
  }
  return false;
}

}  // namespace

DedupResult dedup(const IfsSystem& system, std::size_t depth, std::size_t budget) {
  if (depth < 1) throw ValidationError("dedup depth must be at least 1");
  const int k = system.alphabet();
  std::vector<DedupLevel> levels;
  std::map<SignatureKey, Word> seen;
  std::vector<Word> rejected;

  std::vector<std::pair<Word, ContractionMap>> kept{{Word(k), ContractionMap{}}};
  std::set<SignatureKey> level_maps;  // D_{n-1}
  std::vector<ContractionMap> level_map_list;
  std::size_t work = 0;

  for (std::size_t n = 1; n <= depth; ++n) {
    DedupLevel lvl;
    lvl.length = n;
    std::vector<std::pair<Word, ContractionMap>> next;
    for (const auto& [w, f] : kept) {
      for (int a = 1; a <= k; ++a) {
        if (++work > budget) {
          throw DedupBudgetError("dedup exceeded node budget " + std::to_string(budget) + " at length " +
                                     std::to_string(n),
                                 levels);
        }
        const auto s = static_cast<Symbol>(a);
        ContractionMap g = n == 1 ? system.map(s) : f * system.map(s);
        Word wa = w.appended(s);
        auto [it, inserted] = seen.emplace(map_signature(g), wa);
        if (inserted) {
          next.emplace_back(std::move(wa), std::move(g));
          ++lvl.accepted;
        } else {
          rejected.push_back(std::move(wa));
          ++lvl.rejected;
        }
      }
    }
    kept.swap(next);

    // D_n = {f o phi_a : f in D_{n-1}}, independent of the kept words.
    std::vector<ContractionMap> next_maps;
    std::set<SignatureKey> next_keys;
    if (n == 1) {
      for (const auto& m : system.maps()) {
        if (next_keys.insert(map_signature(m)).second) next_maps.push_back(m);
      }
    } else {
      for (const auto& f : level_map_list) {
        for (const auto& m : system.maps()) {
          if (++work > budget) {
            throw DedupBudgetError("dedup exceeded node budget " + std::to_string(budget) + " at length " +
                                       std::to_string(n),
                                   levels);
          }
          ContractionMap g = f * m;
          if (next_keys.insert(map_signature(g)).second) next_maps.push_back(std::move(g));
        }
      }
    }
    level_map_list.swap(next_maps);
    lvl.distinct_maps = level_map_list.size();
    levels.push_back(lvl);
  }

  DedupResult out;
  out.depth = depth;
  const std::set<Word> rejected_set(rejected.begin(), rejected.end());
  for (const Word& w : rejected) {
    if (!has_proper_factor_in(w, rejected_set)) out.forbidden.push_back(w);
  }
  std::sort(out.forbidden.begin(), out.forbidden.end(), shortlex_less);
  out.subshift = build_subshift(k, out.forbidden);
  for (auto& lvl : levels) lvl.gamma_count = out.subshift.count(lvl.length);
  out.levels = std::move(levels);
  return out;
}

ClusterReport fcp_scan(const MoranConstruction& mc, const ScanGrid& grid, CountMode mode, std::size_t budget) {
  if (grid.num_radii == 0) throw ValidationError("scan grid has no radii");
  if (grid.rho <= 0 || grid.gamma <= 0 || grid.gamma >= 1) throw ValidationError("radius ladder needs rho > 0 and 0 < gamma < 1");

  std::vector<Vector> points;
  const Vector anchor = mc.seed().midpoint();
  if (grid.sample_depth == 0) {
    points.push_back(anchor);
  } else {
    for (const Word& w : allowed_words(mc.subshift(), grid.sample_depth, budget)) {
      points.push_back(compose(mc.system(), w)(anchor));
    }
  }
  for (const auto& x : grid.extra_points) {
    if (x.size() != mc.dimension()) throw ValidationError("extra sample point has the wrong dimension");
    points.push_back(x);
  }
  if (points.empty()) throw ValidationError("scan grid has no sample points");

  ClusterReport rep;
  rep.mode = mode;
  std::ostringstream desc;
  desc << "phi_i(midpoint) for i in Gamma_" << grid.sample_depth << " plus " << grid.extra_points.size()
       << " extra points; r_k = " << format_rational(grid.rho) << " * (" << format_rational(grid.gamma)
       << ")^k, k < " << grid.num_radii;
  rep.grid_description = desc.str();
  rep.max_per_radius.assign(grid.num_radii, 0);

  Rational r = grid.rho;
  for (std::size_t kr = 0; kr < grid.num_radii; ++kr, r *= grid.gamma) {
    for (const auto& x : points) {
      const std::size_t c =
          mode == CountMode::words ? local_cluster(mc, x, r, budget).size() : wsc_count(mc, x, r, budget);
      ClusterSample s{x, r, c};
      rep.max_per_radius[kr] = std::max(rep.max_per_radius[kr], c);
      if (!rep.witness || c > rep.max_count) {
        rep.max_count = c;
        rep.witness = s;
      }
      rep.samples.push_back(std::move(s));
    }
  }
  const std::size_t half = grid.num_radii / 2;
  const auto coarse = std::max_element(rep.max_per_radius.begin(), rep.max_per_radius.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(half, 1)));
  const auto fine = std::max_element(rep.max_per_radius.begin() + static_cast<std::ptrdiff_t>(half), rep.max_per_radius.end());
  rep.stabilized = *fine <= *coarse;
  return rep;
}

}  // namespace moran
