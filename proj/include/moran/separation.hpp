#pragma once

#include "moran/errors.hpp"
#include "moran/moran_construction.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace moran {

/// Canonical parameter tuple of a map: ratios then shifts, each in lowest
/// terms. Keys compare equal iff the maps agree as functions.
struct SignatureKey {
  std::vector<Rational> values;

  std::string str() const;
  friend bool operator==(const SignatureKey&, const SignatureKey&) = default;
  friend std::strong_ordering operator<=>(const SignatureKey& a, const SignatureKey& b);
};

SignatureKey map_signature(const ContractionMap& m);

/// Number of distinct maps among the words of Gamma(x, r) in mc.
std::size_t wsc_count(const MoranConstruction& mc, const Vector& x, const Rational& r,
                      std::size_t budget = kDefaultNodeBudget);
/// Same, on the full-shift construction over `seed`.
std::size_t wsc_count(const IfsSystem& system, const Box& seed, const Vector& x, const Rational& r,
                      std::size_t budget = kDefaultNodeBudget);

struct DedupLevel {
  std::size_t length = 0;
  Integer gamma_count;         // #Gamma_n of the returned subshift
  std::size_t accepted = 0;    // words kept at this length
  std::size_t rejected = 0;    // candidates whose map was already realized
  std::size_t distinct_maps = 0;  // #{phi_w : w in Sigma_n}
};

struct DedupResult {
  std::size_t depth = 0;
  std::vector<Word> forbidden;  // minimal truncated R, sorted shortlex
  Subshift subshift;            // Sigma[R truncated]
  std::vector<DedupLevel> levels;
};

/// Partial result of an interrupted deduplication.
class DedupBudgetError : public BudgetError {
 public:
  DedupBudgetError(const std::string& what, std::vector<DedupLevel> completed)
      : BudgetError(what), completed_(std::move(completed)) {}
  const std::vector<DedupLevel>& completed() const { return completed_; }

 private:
  std::vector<DedupLevel> completed_;
};

/// Forbids every word whose map is realized by a shortlex-smaller word, up to
/// the given length. Candidates at length n are the one-symbol extensions of
/// the kept words of length n - 1, visited in lexicographic order.
DedupResult dedup(const IfsSystem& system, std::size_t depth, std::size_t budget = kDefaultNodeBudget);

enum class CountMode { words, maps };

/// Sample points phi_i(anchor) for i in Gamma_m (anchor = seed midpoint) plus
/// extra points, against radii r_k = rho * gamma^k for k < num_radii.
struct ScanGrid {
  std::size_t sample_depth = 4;
  std::vector<Vector> extra_points;
  Rational rho{1, 2};
  Rational gamma{1, 2};
  std::size_t num_radii = 8;
};

struct ClusterSample {
  Vector x;
  Rational r;
  std::size_t count = 0;
};

struct ClusterReport {
  CountMode mode = CountMode::words;
  std::string grid_description;
  std::vector<ClusterSample> samples;
  std::vector<std::size_t> max_per_radius;
  std::size_t max_count = 0;
  std::optional<ClusterSample> witness;
  /// Max over the finer half of the radii does not exceed the coarser half.
  bool stabilized = false;
};

/// Empirical scan of #Gamma(x, r) (or #Phi(x, r)). The max is a certified lower
/// bound of the supremum; it proves nothing about the upper bound.
ClusterReport fcp_scan(const MoranConstruction& mc, const ScanGrid& grid, CountMode mode = CountMode::words,
                       std::size_t budget = kDefaultNodeBudget);

}  // namespace moran
