#pragma once

#include "moran/compact_tree.hpp"
#include "moran/contraction_map.hpp"
#include "moran/errors.hpp"
#include "moran/subshift.hpp"

#include <optional>
#include <vector>

namespace moran {

struct MicrosetMember {
  CompactTree prefix_set;  // depth-n prefix set of beta_i(A)
  Word provenance;         // shortlex-least i realizing it
};

/// Distinct depth-n prefix sets of minisets, ordered by their leaf lists.
struct MicrosetFamily {
  std::size_t depth = 0;
  std::vector<MicrosetMember> members;
  /// Exact for subshift input; tree input only sees nodes up to its depth.
  bool complete = false;
};

/// One member per live follower class.
MicrosetFamily microset_family(const Subshift& s, std::size_t n, std::size_t budget = kDefaultNodeBudget);
/// Windows subtree(i) truncated to depth n for every node i with |i| + n <= depth().
MicrosetFamily microset_family(const CompactTree& tree, std::size_t n);

/// N_n(A): the largest member of the family.
Integer branching_count(const Subshift& s, std::size_t n);
std::size_t branching_count(const CompactTree& tree, std::size_t n);

/// N_1, ..., N_n_max.
std::vector<Integer> branching_counts(const Subshift& s, std::size_t n_max);

struct AssouadEstimate {
  Rational alpha;
  std::vector<Integer> counts;       // N_1 .. N_{2 n_max}
  std::vector<long double> t;        // t_n = log N_n / (n log(1/alpha)), n = 1..n_max
  long double fekete_bound = 0;      // inf_n t_n
  std::size_t fekete_at = 0;
  std::vector<long double> quotients;  // (log N_2n - log N_n) / (n log(1/alpha)), n = 1..n_max
  long double estimate = 0;            // quotient at n_max
};

AssouadEstimate assouad_estimate(const Subshift& s, std::size_t n_max, const Rational& alpha);
/// Refuses systems whose ratios are not all equal.
AssouadEstimate assouad_estimate(const Subshift& s, std::size_t n_max, const IfsSystem& system);

}  // namespace moran
