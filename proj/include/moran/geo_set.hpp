#pragma once

#include "moran/errors.hpp"
#include "moran/rational.hpp"

#include <vector>

namespace moran {

struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of closed intervals in [0,1], sorted and merged. Degenerate
/// intervals (points) are allowed.
class GeoSet {
 public:
  GeoSet() = default;
  explicit GeoSet(std::vector<Interval> parts);

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  bool contains(const Rational& x) const;
  /// Distance from x to the set.
  Rational distance(const Rational& x) const;
  /// Intervals meeting [lo, hi], clipped to it.
  GeoSet slice(const Rational& lo, const Rational& hi) const;
  /// x -> scale * x + shift (scale > 0), then clipped to [0,1].
  GeoSet affine(const Rational& scale, const Rational& shift) const;
  /// Open gaps between consecutive intervals.
  std::vector<Interval> gaps() const;

  friend bool operator==(const GeoSet&, const GeoSet&) = default;

 private:
  std::vector<Interval> parts_;
};

GeoSet geo_union(const GeoSet& a, const GeoSet& b);

/// M_{u,v}(A cap [u,v]) with M_{u,v}(x) = (x - u) / (v - u).
GeoSet geo_magnify(const GeoSet& a, const Rational& u, const Rational& v);

/// Exact Hausdorff distance; both sets nonempty.
Rational geo_hausdorff(const GeoSet& a, const GeoSet& b);

}  // namespace moran
