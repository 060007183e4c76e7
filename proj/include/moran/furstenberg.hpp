#pragma once

#include "moran/geo_set.hpp"
#include "moran/moran_construction.hpp"

#include <optional>
#include <vector>

namespace moran {

/// The open-set-condition example {x/2, x/5 + 1/2, x/7 + 6/7} on [0,1].
IfsSystem furstenberg_system();
MoranConstruction furstenberg_construction();

struct FurstenbergIndex {
  std::size_t j = 0;
  std::size_t m = 0;
  std::size_t n = 0;
};

/// Smallest m with n = floor(1 + m log2 7 - log2 5) satisfying
/// n <= 1 + m log2 7 - log2 5 < n + 1/j, decided with exact integer powers.
FurstenbergIndex furstenberg_sequence(std::size_t j);

/// Unions of the stopping-set pieces Gamma(2^-k), k = 0..depth. Each level
/// contains the next, and all contain E.
class FurstenbergCovers {
 public:
  explicit FurstenbergCovers(std::size_t depth);
  std::size_t depth() const { return levels_.size() - 1; }
  const GeoSet& level(std::size_t k) const { return levels_.at(k); }
  const GeoSet& finest() const { return levels_.back(); }

 private:
  std::vector<GeoSet> levels_;
};

/// K = E/2 cup (E/2 + 1/2) built from a cover of E.
GeoSet furstenberg_k(const GeoSet& e);

/// k = (phi_word(endpoint) + half) / 2, a point of K.
struct KPoint {
  Rational value;
  int half = 0;
  Word word{3};
  int endpoint = 0;
};

Rational k_point_value(const KPoint& p);

/// Finds a point of K inside the open interval (a, b), searching pieces up to
/// the given word length.
std::optional<KPoint> find_k_point(const Rational& a, const Rational& b, std::size_t max_length = 48);

struct WindowCertificate {
  Rational u;  // phi_{u_word}(0)
  Rational v;  // phi_{v_word}(1)
  Word u_word{3};
  Word v_word{3};
  std::size_t depth = 0;
  std::optional<KPoint> witness;  // k in K with k outside M_{u,v}(E_depth cap [u,v])
  bool certified() const { return witness.has_value(); }
};

WindowCertificate certify_window(const FurstenbergCovers& covers, const Word& u_word, const Word& v_word);
/// Recomputes k from its word and checks u + k (v - u) is not in e.
bool verify_certificate(const WindowCertificate& c, const GeoSet& e);

struct ConvergenceRow {
  FurstenbergIndex index;
  Rational u;
  Rational v;
  Rational distance;  // D(M_{u,v}(E_depth cap [u,v]), K_depth)
};

struct ScaleCheck {
  FurstenbergIndex index;
  Rational left;   // 7^m diam(phi_{1 3^m}(E)), equal to 1/2
  Rational right;  // 7^m diam(phi_{2 1^n}(E))
  bool left_exact = false;
  bool right_sandwiched = false;  // 1/2 <= right <= 2^{1/j} / 2
};

struct FurstenbergReport {
  std::size_t depth = 0;
  std::size_t j_max = 0;
  std::size_t anchor_length = 0;
  Interval gap;  // level-1 complement
  Rational eta;
  std::vector<ConvergenceRow> rows;
  bool strictly_decreasing = false;
  std::vector<ScaleCheck> scales;
  std::vector<WindowCertificate> certificates;
  std::size_t certified = 0;
  std::size_t undecided = 0;
};

/// Windows (phi_w(0), phi_w'(1)) with 1 <= |w|, |w'| <= anchor_length,
/// w_1 < w'_1, deduplicated by value keeping the shortlex-least words.
std::vector<std::pair<Word, Word>> candidate_windows(std::size_t anchor_length);

FurstenbergReport furstenberg_demo(std::size_t depth, std::size_t j_max, std::size_t anchor_length = 6);

}  // namespace moran
