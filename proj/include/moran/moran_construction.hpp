#pragma once

#include "moran/contraction_map.hpp"
#include "moran/errors.hpp"
#include "moran/subshift.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moran {

/// {E_i = phi_i(W) : i in Gamma_*} for an IFS restricted to a subshift.
class MoranConstruction {
 public:
  /// Checks alphabet agreement and phi_i(W) in W for every symbol.
  MoranConstruction(IfsSystem system, Subshift subshift, Box seed);
  /// Skips the forward-invariance check; used to diagnose broken systems.
  static MoranConstruction unchecked(IfsSystem system, Subshift subshift, Box seed);

  const IfsSystem& system() const { return system_; }
  const Subshift& subshift() const { return subshift_; }
  const Box& seed() const { return seed_; }
  int alphabet() const { return system_.alphabet(); }
  Eigen::Index dimension() const { return system_.dimension(); }

 private:
  MoranConstruction() = default;
  IfsSystem system_;
  Subshift subshift_;
  Box seed_;
};

/// Full-shift construction on the system's default seed set.
MoranConstruction full_construction(const IfsSystem& system);

/// E_i. The empty word gives W.
Box piece(const MoranConstruction& mc, const Word& i);

/// diam(E_i)^2, exact. Throws for words outside Gamma_*.
Rational diameter_squared(const MoranConstruction& mc, const Word& i);
/// sqrt of the exact square, long double.
long double diameter(const MoranConstruction& mc, const Word& i);

/// Gamma(r) = {i : diam(E_i) <= r < diam(E_{i^-})}, lexicographically sorted.
/// For r >= diam(W) the first level Gamma_1 is returned.
std::vector<Word> stopping_set(const MoranConstruction& mc, const Rational& r,
                               std::size_t budget = kDefaultNodeBudget);

/// Gamma(x, r): words of Gamma(r) whose piece meets the closed ball B(x, r).
std::vector<Word> local_cluster(const MoranConstruction& mc, const Vector& x, const Rational& r,
                                std::size_t budget = kDefaultNodeBudget);

/// Gamma(x, r) together with the composed map of each word.
std::vector<std::pair<Word, ContractionMap>> local_cluster_maps(const MoranConstruction& mc, const Vector& x,
                                                                const Rational& r,
                                                                std::size_t budget = kDefaultNodeBudget);

struct AxiomCheck {
  bool passed = true;
  std::optional<Word> witness;
  std::string detail;
};

struct MoranReport {
  std::size_t depth = 0;
  AxiomCheck nesting;         // E_i in E_{i^-}
  AxiomCheck decay;           // diam(E_i) <= C alpha_high^|i|
  AxiomCheck multiplicative;  // diam(E_ij) <= D diam(E_i) diam(E_j)
  AxiomCheck lower_ratio;     // diam(E_i) >= alpha_low diam(E_{i^-})
  Rational d_squared;         // certified D^2 (D >= 1)
  Rational observed_d_squared;
  Rational alpha_low;
  Rational alpha_high;
  Rational c_squared;  // C^2 = diam(W)^2
  std::size_t words_checked = 0;

  bool passed() const { return nesting.passed && decay.passed && multiplicative.passed && lower_ratio.passed; }
};

/// Exact check of the axioms over Gamma_n for 1 <= n <= depth.
MoranReport verify_moran_axioms(const MoranConstruction& mc, std::size_t depth,
                                std::size_t budget = kDefaultNodeBudget);

}  // namespace moran
