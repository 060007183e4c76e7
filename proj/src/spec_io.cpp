#include "moran/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace moran {

using nlohmann::json;

MeasureSpec MeasureSpec::bernoulli(std::vector<Rational> p) {
  MeasureSpec m;
  m.transition.assign(p.size(), p);
  m.initial = std::move(p);
  return m;
}

bool operator==(const IfsSpec& a, const IfsSpec& b) {
  return a.dimension == b.dimension && a.system.maps() == b.system.maps() && a.forbidden == b.forbidden &&
         a.seed_override == b.seed_override && a.measure == b.measure && a.name == b.name && a.labels == b.labels;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& field) {
  if (!obj.is_object()) fail(field, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(field + "." + key, "missing");
  return *it;
}

Rational rational(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "rationals must be strings like \"1/3\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ValidationError& e) {
    fail(field, e.what());
  }
}

Rational ratio(const json& obj, const char* key, const std::string& field) {
  const Rational r = rational(member(obj, key, field), field + "." + key);
  if (r <= 0 || r >= 1) fail(field + "." + key, "ratio " + format_rational(r) + " must lie in (0, 1)");
  return r;
}

ContractionMap parse_map(const json& m, int dimension, const std::string& field) {
  const json& type = member(m, "type", field);
  if (!type.is_string()) fail(field + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  if (dimension == 1) {
    if (t != "homothety") fail(field + ".type", "one-dimensional maps must be homothety");
    return ContractionMap::homothety(ratio(m, "r", field), rational(member(m, "a", field), field + ".a"));
  }
  if (t != "diag_affine") fail(field + ".type", "two-dimensional maps must be diag_affine");
  return ContractionMap::diagonal_affine(ratio(m, "r", field), ratio(m, "s", field),
                                         rational(member(m, "a", field), field + ".a"),
                                         rational(member(m, "b", field), field + ".b"));
}

Vector point(const json& v, int dimension, const std::string& field) {
  if (dimension == 1) return make_vector(rational(v, field));
  if (!v.is_array() || v.size() != 2) fail(field, "expected [x, y]");
  return make_vector(rational(v[0], field + "[0]"), rational(v[1], field + "[1]"));
}

std::vector<Rational> rational_list(const json& v, std::size_t size, const std::string& field) {
  if (!v.is_array() || v.size() != size) fail(field, "expected " + std::to_string(size) + " entries");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < size; ++k) out.push_back(rational(v[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

json point_json(const Vector& x) {
  if (x.size() == 1) return format_rational(x(0));
  return json::array({format_rational(x(0)), format_rational(x(1))});
}

json rational_list_json(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(format_rational(x));
  return out;
}

}  // namespace

IfsSpec parse_spec(const json& doc) {
  IfsSpec spec;
  if (!doc.is_object()) fail("spec", "expected a JSON object");
  const json& dim = member(doc, "dimension", "spec");
  if (!dim.is_number_integer() || (dim.get<int>() != 1 && dim.get<int>() != 2)) fail("dimension", "must be 1 or 2");
  spec.dimension = dim.get<int>();

  const json& maps = member(doc, "maps", "spec");
  if (!maps.is_array() || maps.size() < 2) fail("maps", "expected a list of at least two maps");
  std::vector<ContractionMap> parsed;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    parsed.push_back(parse_map(maps[k], spec.dimension, "maps[" + std::to_string(k) + "]"));
  }
  spec.system = IfsSystem(std::move(parsed));

  const json& sub = member(doc, "subshift", "spec");
  const json& alpha = member(sub, "alphabet", "subshift");
  if (!alpha.is_number_integer() || alpha.get<int>() != spec.system.alphabet()) {
    fail("subshift.alphabet", "must equal the number of maps (" + std::to_string(spec.system.alphabet()) + ")");
  }
  if (sub.contains("forbidden")) {
    const json& fb = sub["forbidden"];
    if (!fb.is_array()) fail("subshift.forbidden", "expected a list of digit strings");
    for (std::size_t k = 0; k < fb.size(); ++k) {
      const std::string field = "subshift.forbidden[" + std::to_string(k) + "]";
      if (!fb[k].is_string()) fail(field, "expected a digit string");
      try {
        spec.forbidden.push_back(Word::parse(fb[k].get<std::string>(), spec.system.alphabet()));
      } catch (const ValidationError& e) {
        fail(field, e.what());
      }
    }
  }
  try {
    spec.subshift = build_subshift(spec.system.alphabet(), spec.forbidden);
  } catch (const ValidationError& e) {
    fail("subshift", e.what());
  }

  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    const Vector lo = point(member(s, "lo", "seed"), spec.dimension, "seed.lo");
    const Vector hi = point(member(s, "hi", "seed"), spec.dimension, "seed.hi");
    try {
      spec.seed_override = Box{lo, hi};
      spec.seed = seed_set(spec.system, *spec.seed_override);
    } catch (const ValidationError& e) {
      fail("seed", e.what());
    }
  } else {
    spec.seed = seed_set(spec.system);
  }

  if (doc.contains("measure")) {
    const json& m = doc["measure"];
    const auto k = static_cast<std::size_t>(spec.system.alphabet());
    MeasureSpec ms;
    ms.initial = rational_list(member(m, "initial", "measure"), k, "measure.initial");
    const json& rows = member(m, "transition", "measure");
    if (!rows.is_array() || rows.size() != k) fail("measure.transition", "expected " + std::to_string(k) + " rows");
    for (std::size_t a = 0; a < k; ++a) {
      ms.transition.push_back(rational_list(rows[a], k, "measure.transition[" + std::to_string(a) + "]"));
    }
    spec.measure = std::move(ms);
  }

  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name", "expected a string");
    spec.name = doc["name"].get<std::string>();
  }
  if (doc.contains("labels")) {
    const json& l = doc["labels"];
    if (!l.is_object()) fail("labels", "expected an object of strings");
    for (const auto& [key, value] : l.items()) {
      if (!value.is_string()) fail("labels." + key, "expected a string");
      spec.labels[key] = value.get<std::string>();
    }
  }

  try {
    (void)spec.construction();
  } catch (const ValidationError& e) {
    fail("spec", e.what());
  }
  return spec;
}

IfsSpec parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("spec: malformed JSON: ") + e.what());
  }
  return parse_spec(doc);
}

IfsSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("spec: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

json emit_spec(const IfsSpec& spec) {
  json doc;
  doc["dimension"] = spec.dimension;
  json maps = json::array();
  for (const auto& m : spec.system.maps()) {
    if (spec.dimension == 1) {
      maps.push_back({{"type", "homothety"}, {"r", format_rational(m.ratio(0))}, {"a", format_rational(m.shift(0))}});
    } else {
      maps.push_back({{"type", "diag_affine"},
                      {"r", format_rational(m.ratio(0))},
                      {"s", format_rational(m.ratio(1))},
                      {"a", format_rational(m.shift(0))},
                      {"b", format_rational(m.shift(1))}});
    }
  }
  doc["maps"] = std::move(maps);
  json forbidden = json::array();
  for (const auto& w : spec.forbidden) forbidden.push_back(w.str());
  doc["subshift"] = {{"alphabet", spec.system.alphabet()}, {"forbidden", std::move(forbidden)}};
  if (spec.seed_override) doc["seed"] = {{"lo", point_json(spec.seed_override->lo)}, {"hi", point_json(spec.seed_override->hi)}};
  if (spec.measure) {
    json rows = json::array();
    for (const auto& row : spec.measure->transition) rows.push_back(rational_list_json(row));
    doc["measure"] = {{"initial", rational_list_json(spec.measure->initial)}, {"transition", std::move(rows)}};
  }
  if (!spec.name.empty()) doc["name"] = spec.name;
  if (!spec.labels.empty()) doc["labels"] = spec.labels;
  return doc;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string spec_digest(const IfsSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(emit_spec(spec).dump())));
  return buf;
}

}  // namespace moran
