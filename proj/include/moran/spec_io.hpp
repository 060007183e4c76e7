#pragma once

#include "moran/moran_construction.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moran {

/// Initial vector and transition rows of a Markov measure, exact.
struct MeasureSpec {
  std::vector<Rational> initial;
  std::vector<std::vector<Rational>> transition;

  static MeasureSpec bernoulli(std::vector<Rational> p);
  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

/// A construction as read from a JSON spec file.
///
///   {"dimension": 1,
///    "maps": [{"type": "homothety", "r": "1/2", "a": "0"}, ...],
///    "subshift": {"alphabet": 2, "forbidden": ["22"]},
///    "seed": {"lo": "0", "hi": "1"},
///    "measure": {"initial": [...], "transition": [[...], ...]},
///    "name": "...", "labels": {"k": "v"}}
///
/// In two dimensions maps are {"type": "diag_affine", "r", "s", "a", "b"} and the
/// seed is {"lo": [x0, y0], "hi": [x1, y1]}. Seed, measure, name and labels are
/// optional.
struct IfsSpec {
  int dimension = 1;
  IfsSystem system;
  std::vector<Word> forbidden;
  Subshift subshift;
  std::optional<Box> seed_override;
  Box seed;
  std::optional<MeasureSpec> measure;
  std::string name;
  std::map<std::string, std::string> labels;

  MoranConstruction construction() const { return MoranConstruction(system, subshift, seed); }
  int alphabet() const { return system.alphabet(); }
};

bool operator==(const IfsSpec& a, const IfsSpec& b);

IfsSpec parse_spec(const nlohmann::json& doc);
IfsSpec parse_spec_text(const std::string& text);
IfsSpec parse_spec_file(const std::string& path);

nlohmann::json emit_spec(const IfsSpec& spec);

/// FNV-1a (64 bit) of the canonical emitted form, as 16 hex digits.
std::string spec_digest(const IfsSpec& spec);
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace moran
