#include "doctest.h"

#include "moran/render.hpp"
#include "moran/spec_io.hpp"

#include <regex>

using namespace moran;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

const char* kThreeMaps = R"({
  "dimension": 1,
  "maps": [{"type": "homothety", "r": "1/2", "a": "0"},
           {"type": "homothety", "r": "1/5", "a": "1/2"},
           {"type": "homothety", "r": "1/7", "a": "6/7"}],
  "subshift": {"alphabet": 3, "forbidden": []},
  "seed": {"lo": "0", "hi": "1"}
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kThreeMaps;
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

std::string error_of(const std::string& text) {
  try {
    parse_spec_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

std::size_t count(const std::string& s, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("spec parsing") {
    const IfsSpec spec = parse_spec_text(kThreeMaps);
    CHECK(spec.dimension == 1);
    CHECK(spec.alphabet() == 3);
    CHECK(spec.system.map(2).ratio(0) == q(1, 5));
    CHECK(spec.system.map(3).shift(0) == q(6, 7));
    CHECK(spec.seed == Box::interval(q(0), q(1)));
    CHECK(spec.subshift.count(4) == 81);

    // Without an override the seed is derived from the fixed points.
    std::string no_seed = kThreeMaps;
    no_seed.replace(no_seed.find(",\n  \"seed\""), std::string(",\n  \"seed\": {\"lo\": \"0\", \"hi\": \"1\"}").size(), "");
    const IfsSpec derived = parse_spec_text(no_seed);
    CHECK(!derived.seed_override);
    CHECK(derived.seed == seed_set(derived.system));

    const IfsSpec two = parse_spec_text(R"({"dimension": 2,
      "maps": [{"type": "diag_affine", "r": "1/2", "s": "1/3", "a": "0", "b": "0"},
               {"type": "diag_affine", "r": "1/3", "s": "1/2", "a": "2/3", "b": "1/2"}],
      "subshift": {"alphabet": 2, "forbidden": ["22"]},
      "seed": {"lo": ["0", "0"], "hi": ["1", "1"]},
      "measure": {"initial": ["2/3", "1/3"], "transition": [["1/2", "1/2"], ["1", "0"]]},
      "name": "pair", "labels": {"source": "test"}})");
    CHECK(two.system.map(2).ratio(1) == q(1, 2));
    CHECK(two.subshift.count(3) == 5);
    REQUIRE(two.measure);
    CHECK(two.measure->transition[1][0] == 1);
    CHECK(two.labels.at("source") == "test");
  }

  TEST_CASE("spec errors name the field") {
    CHECK(error_of(with("\"r\": \"1/5\"", "\"r\": \"3/2\"")).find("maps[1].r") != std::string::npos);
    CHECK(error_of(with("\"r\": \"1/5\"", "\"r\": \"0.2\"")).find("maps[1].r") != std::string::npos);
    CHECK(error_of(with("\"r\": \"1/5\"", "\"r\": \"1/0\"")).find("maps[1].r") != std::string::npos);
    CHECK(error_of(with("\"forbidden\": []", "\"forbidden\": [\"24\"]")).find("subshift.forbidden[0]") !=
          std::string::npos);
    CHECK(error_of(with("\"alphabet\": 3", "\"alphabet\": 2")).find("subshift.alphabet") != std::string::npos);
    CHECK(error_of(with("\"hi\": \"1\"", "\"hi\": \"1/2\"")).find("seed") == 0);
    CHECK(error_of(with("\"a\": \"6/7\"", "\"b\": \"6/7\"")).find("maps[2].a") != std::string::npos);
    CHECK(error_of(with("\"dimension\": 1", "\"dimension\": 3")).find("dimension") == 0);
    CHECK(error_of("{\"dimension\": 1,").find("malformed JSON") != std::string::npos);
    CHECK_THROWS_AS(parse_spec_file("/nonexistent/spec.json"), ValidationError);
  }

  TEST_CASE("round trip and digest") {
    const IfsSpec spec = parse_spec_text(kThreeMaps);
    const IfsSpec again = parse_spec(emit_spec(spec));
    CHECK(again == spec);
    CHECK(spec_digest(again) == spec_digest(spec));
    CHECK(spec_digest(spec).size() == 16);

    IfsSpec other = spec;
    other.name = "renamed";
    CHECK(!(other == spec));
    CHECK(spec_digest(other) != spec_digest(spec));
    CHECK(parse_spec(emit_spec(other)) == other);

    // Reference values of 64-bit FNV-1a.
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);

    // Rationals are written exactly.
    const std::string text = emit_spec(spec).dump();
    CHECK(text.find("\"1/7\"") != std::string::npos);
    CHECK(text.find("0.14") == std::string::npos);
  }

  TEST_CASE("render") {
    const MoranConstruction dyadic(IfsSystem({ContractionMap::homothety(q(1, 2), q(0)),
                                              ContractionMap::homothety(q(1, 2), q(1, 2))}),
                                   full_shift(2), Box::interval(q(0), q(1)));
    const std::string svg = render_svg(dyadic, 4);
    CHECK(count(svg, "class=\"piece\"") == 1 + 2 + 4 + 8 + 16);
    // Level 4: sixteen pieces of equal width 50 px.
    CHECK(count(svg, "width=\"50.000\" height=\"12.000\" fill=\"#9467bd\"") == 16);
    // Adjacent pieces merge in the union strip.
    CHECK(count(svg, "class=\"union\"") == 1);
    CHECK(render_svg(dyadic, 4) == svg);

    const IfsSpec three = parse_spec_text(kThreeMaps);
    RenderStyle style;
    style.gaps = true;
    const std::string g = render_svg(three.construction(), 3, style);
    CHECK(count(g, "class=\"gap\"") == 1);
    // The gap (7/10, 6/7) on an 800 px strip starting at x = 50.
    CHECK(g.find("x=\"610.000\"") != std::string::npos);
    std::vector<Interval> parts;
    for (const auto& w : allowed_words(three.subshift, 3)) {
      const Box b = piece(three.construction(), w);
      parts.push_back({b.lo(0), b.hi(0)});
    }
    CHECK(count(g, "class=\"union\"") == GeoSet(parts).size());

    const MoranConstruction affine(IfsSystem({ContractionMap::diagonal_affine(q(1, 2), q(1, 3), q(0), q(0)),
                                              ContractionMap::diagonal_affine(q(1, 3), q(1, 2), q(2, 3), q(1, 2))}),
                                   full_shift(2), Box::rectangle(q(0), q(0), q(1), q(1)));
    const std::string a = render_svg(affine, 3);
    CHECK(count(a, "class=\"piece\"") == 1 + 2 + 4 + 8);
    CHECK(count(a, "fill=\"black\"") == 8);
    CHECK_THROWS_AS(render_svg(dyadic, 12, {}, 1000), BudgetError);

    const std::string strips = render_strips({{"A", GeoSet({{q(0), q(1, 4)}, {q(1, 2), q(1)}})}, {"B", GeoSet({{q(0), q(1)}})}});
    CHECK(count(strips, "class=\"piece\"") == 3);
  }
}
