#include "moran/geo_set.hpp"

#include <algorithm>

namespace moran {

GeoSet::GeoSet(std::vector<Interval> parts) {
  for (const auto& p : parts) {
    if (p.lo > p.hi) throw ValidationError("interval with lo > hi");
    if (p.lo < 0 || p.hi > 1) throw ValidationError("interval outside [0, 1]");
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (auto& p : parts) {
    if (!parts_.empty() && p.lo <= parts_.back().hi) {
      if (p.hi > parts_.back().hi) parts_.back().hi = p.hi;
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

namespace {

// First interval with hi >= x.
std::vector<Interval>::const_iterator first_reaching(const std::vector<Interval>& parts, const Rational& x) {
  return std::lower_bound(parts.begin(), parts.end(), x, [](const Interval& p, const Rational& v) { return p.hi < v; });
}

}  // namespace

bool GeoSet::contains(const Rational& x) const {
  const auto it = first_reaching(parts_, x);
  return it != parts_.end() && it->lo <= x;
}

Rational GeoSet::distance(const Rational& x) const {
  if (parts_.empty()) throw ValidationError("distance to an empty set");
  const auto it = first_reaching(parts_, x);
  if (it != parts_.end() && it->lo <= x) return 0;
  Rational best = -1;
  if (it != parts_.end()) best = it->lo - x;
  if (it != parts_.begin()) {
    const Rational left = x - std::prev(it)->hi;
    if (best < 0 || left < best) best = left;
  }
  return best;
}

GeoSet GeoSet::slice(const Rational& lo, const Rational& hi) const {
  GeoSet out;
  for (auto it = first_reaching(parts_, lo); it != parts_.end() && it->lo <= hi; ++it) {
    out.parts_.push_back({std::max(it->lo, lo), std::min(it->hi, hi)});
  }
  return out;
}

GeoSet GeoSet::affine(const Rational& scale, const Rational& shift) const {
  if (scale <= 0) throw ValidationError("affine image needs a positive scale");
  GeoSet out;
  for (const auto& p : parts_) {
    Rational lo = scale * p.lo + shift;
    Rational hi = scale * p.hi + shift;
    if (hi < 0 || lo > 1) continue;
    out.parts_.push_back({std::max(lo, Rational(0)), std::min(hi, Rational(1))});
  }
  return out;
}

std::vector<Interval> GeoSet::gaps() const {
  std::vector<Interval> out;
  for (std::size_t k = 1; k < parts_.size(); ++k) out.push_back({parts_[k - 1].hi, parts_[k].lo});
  return out;
}

GeoSet geo_union(const GeoSet& a, const GeoSet& b) {
  std::vector<Interval> parts = a.intervals();
  parts.insert(parts.end(), b.intervals().begin(), b.intervals().end());
  return GeoSet(std::move(parts));
}

GeoSet geo_magnify(const GeoSet& a, const Rational& u, const Rational& v) {
  if (!(u < v)) throw ValidationError("magnification window needs u < v");
  if (u < 0 || v > 1) throw ValidationError("magnification window outside [0, 1]");
  const Rational scale = 1 / (v - u);
  return a.slice(u, v).affine(scale, -u * scale);
}

namespace {

// sup over a of d(a, b). d(., b) is piecewise linear; its maxima on a sit at
// endpoints of a or at midpoints of gaps of b.
Rational directed(const GeoSet& a, const GeoSet& b) {
  Rational best = 0;
  auto consider = [&](const Rational& x) {
    const Rational d = b.distance(x);
    if (d > best) best = d;
  };
  for (const auto& p : a.intervals()) {
    consider(p.lo);
    consider(p.hi);
  }
  const auto& parts = b.intervals();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const Rational mid = (parts[k - 1].hi + parts[k].lo) / 2;
    if (a.contains(mid)) consider(mid);
  }
  return best;
}

}  // namespace

Rational geo_hausdorff(const GeoSet& a, const GeoSet& b) {
  if (a.empty() || b.empty()) throw ValidationError("Hausdorff distance needs nonempty sets");
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace moran
