#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library beyond Word and Rational value types.

#include "moran/rational.hpp"
#include "moran/word.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using moran::Rational;
using moran::Word;

inline bool has_factor(const std::vector<int>& w, const std::vector<std::vector<int>>& forbidden) {
  for (const auto& r : forbidden) {
    if (r.size() > w.size()) continue;
    for (std::size_t s = 0; s + r.size() <= w.size(); ++s) {
      if (std::equal(r.begin(), r.end(), w.begin() + static_cast<std::ptrdiff_t>(s))) return true;
    }
  }
  return false;
}

inline bool suffix_forbidden(const std::vector<int>& w, const std::vector<std::vector<int>>& forbidden) {
  for (const auto& r : forbidden) {
    if (r.size() <= w.size() && std::equal(r.begin(), r.end(), w.end() - static_cast<std::ptrdiff_t>(r.size()))) {
      return true;
    }
  }
  return false;
}

// Depth-first search for an extension by `extra` further symbols that avoids
// R. With forbidden words of length <= L over kappa symbols, extra >=
// kappa^(L-1) + 1 forces a repeated context and hence an infinite extension.
inline bool extends(std::vector<int>& w, int kappa, const std::vector<std::vector<int>>& forbidden, int extra) {
  if (extra == 0) return true;
  for (int a = 1; a <= kappa; ++a) {
    w.push_back(a);
    const bool ok = !suffix_forbidden(w, forbidden) && extends(w, kappa, forbidden, extra - 1);
    w.pop_back();
    if (ok) return true;
  }
  return false;
}

inline std::vector<std::vector<int>> to_int_words(const std::vector<std::string>& words) {
  std::vector<std::vector<int>> out;
  for (const auto& s : words) {
    std::vector<int> w;
    for (char c : s) w.push_back(c - '0');
    out.push_back(w);
  }
  return out;
}

/// Brute-force Gamma_n: all kappa^n words, filtered by factor avoidance and
/// bounded extendability.
inline std::set<std::string> gamma_n(int kappa, const std::vector<std::string>& forbidden_s, int n, int extra = 12) {
  const auto forbidden = to_int_words(forbidden_s);
  std::set<std::string> out;
  std::vector<int> w(static_cast<std::size_t>(n), 1);
  while (true) {
    std::vector<int> copy = w;
    if (!has_factor(copy, forbidden) && extends(copy, kappa, forbidden, extra)) {
      std::string s;
      for (int a : w) s.push_back(static_cast<char>('0' + a));
      out.insert(s);
    }
    int k = n - 1;
    while (k >= 0 && w[static_cast<std::size_t>(k)] == kappa) w[static_cast<std::size_t>(k--)] = 1;
    if (k < 0) break;
    ++w[static_cast<std::size_t>(k)];
  }
  return out;
}

inline std::vector<std::string> strs(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.str());
  return out;
}

/// Fibonacci with F_1 = F_2 = 1.
inline long long fib(int n) {
  long long a = 0, b = 1;
  for (int k = 0; k < n; ++k) {
    const long long c = a + b;
    a = b;
    b = c;
  }
  return a;
}

/// Plain bisection for a decreasing function on [lo, hi].
inline long double bisect(const std::function<long double(long double)>& f, long double lo, long double hi,
                          int iterations = 200) {
  for (int k = 0; k < iterations; ++k) {
    const long double mid = (lo + hi) / 2;
    if (f(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

/// Root of sum r_i^t = 1.
inline long double similarity_dimension(const std::vector<long double>& ratios) {
  return bisect(
      [&](long double t) {
        long double s = 0;
        for (long double r : ratios) s += std::pow(r, t);
        return s - 1;
      },
      0.0L, 64.0L);
}

/// 1D homothety evaluated pointwise; composition by evaluating on two points.
struct Affine1 {
  Rational r, a;
  Rational operator()(const Rational& x) const { return r * x + a; }
};

/// phi_w(x) = phi_{w1}(phi_{w2}(...phi_{wn}(x))), recovered as (slope, intercept)
/// from the images of 0 and 1.
inline Affine1 compose_by_evaluation(const std::vector<Affine1>& maps, const std::string& w) {
  auto eval = [&](Rational x) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = maps[static_cast<std::size_t>(*it - '1')](x);
    return x;
  };
  const Rational y0 = eval(Rational(0));
  const Rational y1 = eval(Rational(1));
  return {y1 - y0, y0};
}

/// Brute-force level counts of distinct composite maps for a 1D system: the
/// number of distinct phi_w over all words of length exactly n.
inline std::vector<std::size_t> distinct_maps_per_level(const std::vector<Affine1>& maps, int depth) {
  std::vector<std::size_t> out;
  std::set<std::pair<Rational, Rational>> level{{Rational(1), Rational(0)}};
  for (int n = 1; n <= depth; ++n) {
    std::set<std::pair<Rational, Rational>> next;
    for (const auto& [r, a] : level) {
      for (const auto& m : maps) next.insert({r * m.r, r * m.a + a});
    }
    level.swap(next);
    out.push_back(level.size());
  }
  return out;
}

}  // namespace oracle
