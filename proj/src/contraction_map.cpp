#include "moran/contraction_map.hpp"

#include "moran/errors.hpp"

#include <algorithm>

namespace moran {

namespace {

void check_ratio(const Rational& r, const char* name) {
  if (r <= 0 || r >= 1) throw ValidationError(std::string("ratio ") + name + " = " + format_rational(r) + " not in (0,1)");
}

}  // namespace

ContractionMap ContractionMap::homothety(const Rational& r, const Rational& a) {
  check_ratio(r, "r");
  return {make_vector(r), make_vector(a)};
}

ContractionMap ContractionMap::diagonal_affine(const Rational& r, const Rational& s, const Rational& a,
                                               const Rational& b) {
  check_ratio(r, "r");
  check_ratio(s, "s");
  return {make_vector(r, s), make_vector(a, b)};
}

bool ContractionMap::is_similarity() const {
  return (ratio.array() == ratio(0)).all();
}

Rational ContractionMap::min_ratio() const { return ratio.minCoeff(); }
Rational ContractionMap::max_ratio() const { return ratio.maxCoeff(); }

Vector ContractionMap::fixed_point() const {
  Vector ones = Vector::Constant(ratio.size(), Rational(1));
  return shift.cwiseQuotient(ones - ratio);
}

ContractionMap operator*(const ContractionMap& f, const ContractionMap& g) {
  if (f.dimension() != g.dimension()) throw ValidationError("composing maps of different dimension");
  return {f.ratio.cwiseProduct(g.ratio), f.ratio.cwiseProduct(g.shift) + f.shift};
}

Box Box::interval(const Rational& lo, const Rational& hi) { return {make_vector(lo), make_vector(hi)}; }

Box Box::rectangle(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) {
  return {make_vector(x0, y0), make_vector(x1, y1)};
}

Vector Box::midpoint() const { return (lo + hi) / Rational(2); }

Rational Box::diameter_squared() const { return width().squaredNorm(); }

bool Box::contains(const Box& inner) const {
  return (lo.array() <= inner.lo.array()).all() && (inner.hi.array() <= hi.array()).all();
}

bool Box::contains(const Vector& x) const { return (lo.array() <= x.array()).all() && (x.array() <= hi.array()).all(); }

Box image(const ContractionMap& f, const Box& b) { return {f(b.lo), f(b.hi)}; }

Rational distance_squared(const Box& b, const Vector& x) {
  if (x.size() != b.dimension()) throw ValidationError("point dimension does not match the construction");
  Rational total(0);
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (x(k) < b.lo(k)) {
      const Rational d = b.lo(k) - x(k);
      total += d * d;
    } else if (x(k) > b.hi(k)) {
      const Rational d = x(k) - b.hi(k);
      total += d * d;
    }
  }
  return total;
}

bool meets_ball(const Box& b, const Vector& x, const Rational& r) { return distance_squared(b, x) <= r * r; }

IfsSystem::IfsSystem(std::vector<ContractionMap> maps) : maps_(std::move(maps)) {
  if (maps_.size() < 2) throw ValidationError("an IFS needs at least two maps");
  if (maps_.size() > 255) throw ValidationError("at most 255 maps are supported");
  const auto d = maps_.front().dimension();
  if (d != 1 && d != 2) throw ValidationError("dimension must be 1 or 2");
  for (const auto& m : maps_) {
    if (m.dimension() != d || m.shift.size() != d) throw ValidationError("maps have inconsistent dimensions");
    for (Eigen::Index k = 0; k < d; ++k) check_ratio(m.ratio(k), k == 0 ? "r" : "s");
  }
  const Vector z0 = maps_.front().fixed_point();
  const bool distinct = std::any_of(maps_.begin() + 1, maps_.end(), [&](const auto& m) { return m.fixed_point() != z0; });
  if (!distinct) throw ValidationError("all maps share one fixed point; the attractor is a single point");
}

bool IfsSystem::is_similarity() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const auto& m) { return m.is_similarity(); });
}

Rational IfsSystem::min_ratio() const {
  Rational out = maps_.front().min_ratio();
  for (const auto& m : maps_) out = std::min(out, m.min_ratio());
  return out;
}

Rational IfsSystem::max_ratio() const {
  Rational out = maps_.front().max_ratio();
  for (const auto& m : maps_) out = std::max(out, m.max_ratio());
  return out;
}

ContractionMap compose(const IfsSystem& system, const Word& i) {
  if (i.empty()) throw ValidationError("compose needs a nonempty word");
  if (i.alphabet() != system.alphabet()) throw ValidationError("word alphabet does not match the number of maps");
  ContractionMap out = system.map(i[0]);
  for (std::size_t k = 1; k < i.size(); ++k) out = out * system.map(i[k]);
  return out;
}

Box seed_set(const IfsSystem& system) {
  std::vector<Vector> z;
  for (const auto& m : system.maps()) z.push_back(m.fixed_point());
  Rational lambda(0);
  if (system.dimension() == 1) {
    for (const auto& p : z) {
      for (const auto& q : z) lambda = std::max(lambda, abs(p(0) - q(0)));
    }
  } else {
    Rational lambda_sq(0);
    for (const auto& p : z) {
      for (const auto& q : z) lambda_sq = std::max(lambda_sq, Rational((p - q).squaredNorm()));
    }
    lambda = sqrt_upper_bound(lambda_sq);
  }
  const Rational radius = lambda / (Rational(1) - system.max_ratio());
  Box w{z.front(), z.front()};
  for (Eigen::Index k = 0; k < w.dimension(); ++k) {
    w.lo(k) -= radius;
    w.hi(k) += radius;
    for (const auto& p : z) {
      w.lo(k) = std::max(w.lo(k), Rational(p(k) - radius));
      w.hi(k) = std::min(w.hi(k), Rational(p(k) + radius));
    }
  }
  return seed_set(system, w);
}

Box seed_set(const IfsSystem& system, const Box& override_box) {
  if (override_box.dimension() != system.dimension() || override_box.hi.size() != system.dimension()) {
    throw ValidationError("seed dimension does not match the system");
  }
  if ((override_box.lo.array() > override_box.hi.array()).any() || override_box.diameter_squared() == 0) {
    throw ValidationError("seed must have lo <= hi and positive diameter");
  }
  for (int s = 1; s <= system.alphabet(); ++s) {
    if (!override_box.contains(image(system.map(static_cast<Symbol>(s)), override_box))) {
      throw ValidationError("seed is not forward-invariant: map " + std::to_string(s) + " sends it outside itself");
    }
  }
  return override_box;
}

}  // namespace moran
