#pragma once

#include "moran/rational.hpp"
#include "moran/word.hpp"

#include <vector>

namespace moran {

/// x -> ratio .* x + shift on R^1 or R^2 with every ratio in (0,1). In one
/// dimension this is a homothety, in two a diagonal affine map.
struct ContractionMap {
  Vector ratio;
  Vector shift;

  static ContractionMap homothety(const Rational& r, const Rational& a);
  static ContractionMap diagonal_affine(const Rational& r, const Rational& s, const Rational& a, const Rational& b);

  Eigen::Index dimension() const { return ratio.size(); }
  /// Equal ratios on every axis.
  bool is_similarity() const;
  Rational min_ratio() const;
  Rational max_ratio() const;

  Vector operator()(const Vector& x) const { return ratio.cwiseProduct(x) + shift; }
  Vector fixed_point() const;

  friend bool operator==(const ContractionMap& f, const ContractionMap& g) {
    return f.ratio == g.ratio && f.shift == g.shift;
  }
};

/// f o g
ContractionMap operator*(const ContractionMap& f, const ContractionMap& g);

/// Closed axis-aligned box [lo, hi] (an interval in one dimension).
struct Box {
  Vector lo;
  Vector hi;

  static Box interval(const Rational& lo, const Rational& hi);
  static Box rectangle(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1);

  Eigen::Index dimension() const { return lo.size(); }
  Vector width() const { return hi - lo; }
  Vector midpoint() const;
  Rational diameter_squared() const;
  bool contains(const Box& inner) const;
  bool contains(const Vector& x) const;

  friend bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// f(B); exact because every ratio is positive.
Box image(const ContractionMap& f, const Box& b);

/// Squared Euclidean distance from x to the box (0 inside).
Rational distance_squared(const Box& b, const Vector& x);

/// B meets the closed ball B(x, r).
bool meets_ball(const Box& b, const Vector& x, const Rational& r);

/// Ordered list of maps; symbol k (1-based) selects maps()[k-1].
class IfsSystem {
 public:
  IfsSystem() = default;
  explicit IfsSystem(std::vector<ContractionMap> maps);

  Eigen::Index dimension() const { return maps_.front().dimension(); }
  int alphabet() const { return static_cast<int>(maps_.size()); }
  const ContractionMap& map(Symbol s) const { return maps_[s - 1u]; }
  const std::vector<ContractionMap>& maps() const { return maps_; }
  bool is_similarity() const;
  /// alpha lower / upper bar: extreme ratios over all maps and axes.
  Rational min_ratio() const;
  Rational max_ratio() const;

 private:
  std::vector<ContractionMap> maps_;
};

/// phi_i = phi_{i1} o ... o phi_{in}; the word must be nonempty.
ContractionMap compose(const IfsSystem& system, const Word& i);

/// Forward-invariant seed built from the fixed points z_i: the box
/// intersection of [z_i - R, z_i + R] per axis with R >= lambda / (1 - alpha),
/// lambda the largest distance between fixed points. Exact in one dimension;
/// in two R is a rational upper bound of the Euclidean value.
Box seed_set(const IfsSystem& system);

/// Validates a user box: same dimension, positive diameter, phi_i(W) in W.
Box seed_set(const IfsSystem& system, const Box& override_box);

}  // namespace moran
