#include "doctest.h"
#include "oracles.hpp"

#include "moran/moran_construction.hpp"

#include <set>

using namespace moran;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

IfsSystem homotheties(std::initializer_list<std::pair<Rational, Rational>> ra) {
  std::vector<ContractionMap> maps;
  for (const auto& [r, a] : ra) maps.push_back(ContractionMap::homothety(r, a));
  return IfsSystem(maps);
}

IfsSystem dyadic() { return homotheties({{q(1, 2), q(0)}, {q(1, 2), q(1, 2)}}); }
IfsSystem overlap3() { return homotheties({{q(1, 2), q(0)}, {q(1, 2), q(1, 4)}, {q(1, 2), q(1, 2)}}); }
IfsSystem furstenberg_system() { return homotheties({{q(1, 2), q(0)}, {q(1, 5), q(1, 2)}, {q(1, 7), q(6, 7)}}); }

MoranConstruction on_unit(const IfsSystem& s) {
  return MoranConstruction(s, full_shift(s.alphabet()), Box::interval(q(0), q(1)));
}

Word w(const char* s, int k) { return Word::parse(s, k); }

}  // namespace

TEST_SUITE("ifs_geometry") {
  TEST_CASE("compose") {
    const IfsSystem s = overlap3();
    const ContractionMap f21 = compose(s, w("21", 3));
    CHECK(f21.ratio(0) == q(1, 4));
    CHECK(f21.shift(0) == q(1, 4));
    CHECK(compose(s, w("13", 3)) == f21);
    CHECK(compose(s, w("1", 3)) == s.map(1));
    CHECK_THROWS_AS(compose(s, Word(3)), ValidationError);
    CHECK_THROWS_AS(compose(s, w("1", 2)), ValidationError);

    // Independent check by pointwise evaluation.
    const std::vector<oracle::Affine1> maps{{q(1, 2), q(0)}, {q(1, 2), q(1, 4)}, {q(1, 2), q(1, 2)}};
    for (const char* word : {"1", "23", "312", "3321", "1213"}) {
      const auto o = oracle::compose_by_evaluation(maps, word);
      const auto f = compose(s, w(word, 3));
      CHECK(f.ratio(0) == o.r);
      CHECK(f.shift(0) == o.a);
    }
  }

  TEST_CASE("diagonal affine composition") {
    const IfsSystem s({ContractionMap::diagonal_affine(q(1, 2), q(1, 3), q(0), q(0)),
                       ContractionMap::diagonal_affine(q(1, 3), q(1, 2), q(2, 3), q(1, 2))});
    const ContractionMap f = compose(s, w("12", 2));
    CHECK(f.ratio == make_vector(q(1, 6), q(1, 6)));
    CHECK(f.shift == make_vector(q(1, 3), q(1, 6)));
    CHECK(f(make_vector(q(1), q(1))) == s.map(1)(s.map(2)(make_vector(q(1), q(1)))));
  }

  TEST_CASE("system validation") {
    CHECK_THROWS_AS(ContractionMap::homothety(q(3, 2), q(0)), ValidationError);
    CHECK_THROWS_AS(ContractionMap::homothety(q(0), q(0)), ValidationError);
    CHECK_THROWS_AS(homotheties({{q(1, 2), q(0)}}), ValidationError);
    CHECK_THROWS_AS(homotheties({{q(1, 2), q(0)}, {q(1, 3), q(0)}}), ValidationError);
    CHECK_NOTHROW(homotheties({{q(1, 2), q(0)}, {q(1, 3), q(1)}}));
  }

  TEST_CASE("seed set") {
    const Box w0 = seed_set(dyadic());
    CHECK(w0 == Box::interval(q(-1), q(2)));
    CHECK(seed_set(dyadic(), Box::interval(q(0), q(1))) == Box::interval(q(0), q(1)));
    CHECK_THROWS_AS(seed_set(dyadic(), Box::interval(q(0), q(1, 2))), ValidationError);
    CHECK_NOTHROW(seed_set(furstenberg_system(), Box::interval(q(0), q(1))));

    const IfsSystem s({ContractionMap::diagonal_affine(q(1, 2), q(1, 3), q(0), q(0)),
                       ContractionMap::diagonal_affine(q(1, 3), q(1, 2), q(2, 3), q(1, 2))});
    const Box w2 = seed_set(s);
    // Contains the Euclidean ball intersection: every fixed point lies inside
    // and the box is forward-invariant (checked by seed_set itself).
    for (const auto& m : s.maps()) CHECK(w2.contains(m.fixed_point()));
    CHECK(w2.contains(Box::rectangle(q(0), q(0), q(1), q(1))));
  }

  TEST_CASE("diameters") {
    const MoranConstruction d = on_unit(dyadic());
    CHECK(diameter_squared(d, w("121", 2)) == q(1, 64));
    CHECK(diameter(d, w("121", 2)) == doctest::Approx(0.125));
    CHECK(diameter_squared(d, Word(2)) == 1);

    const IfsSystem s({ContractionMap::diagonal_affine(q(1, 2), q(1, 3), q(0), q(0)),
                       ContractionMap::diagonal_affine(q(1, 2), q(1, 3), q(1, 2), q(2, 3))});
    const MoranConstruction m(s, full_shift(2), Box::rectangle(q(0), q(0), q(1), q(1)));
    CHECK(diameter_squared(m, w("1", 2)) == q(13, 36));

    const MoranConstruction f = on_unit(furstenberg_system());
    CHECK(diameter_squared(f, w("2", 3)) == q(1, 25));

    const MoranConstruction g(dyadic(), build_subshift(2, {w("22", 2)}), Box::interval(q(0), q(1)));
    CHECK_THROWS_AS(diameter_squared(g, w("122", 2)), ValidationError);
  }

  TEST_CASE("stopping sets") {
    const MoranConstruction d = on_unit(dyadic());
    CHECK(oracle::strs(stopping_set(d, q(1, 4))) == std::vector<std::string>{"11", "12", "21", "22"});
    CHECK(stopping_set(d, q(3, 10)).size() == 4);
    CHECK(stopping_set(d, q(1)).size() == 2);
    CHECK_THROWS_AS(stopping_set(d, q(0)), ValidationError);

    // Example with three ratios: brute force over words with exact ratio products.
    const MoranConstruction f = on_unit(furstenberg_system());
    const std::vector<Rational> ratios{q(1, 2), q(1, 5), q(1, 7)};
    const Rational r = q(1, 5);
    std::vector<std::string> expected;
    std::function<void(std::string, Rational)> walk = [&](std::string word, Rational diam) {
      for (int a = 0; a < 3; ++a) {
        const Rational dd = diam * ratios[static_cast<std::size_t>(a)];
        const std::string ww = word + static_cast<char>('1' + a);
        if (dd <= r) {
          expected.push_back(ww);
        } else {
          walk(ww, dd);
        }
      }
    };
    walk("", q(1));
    CHECK(oracle::strs(stopping_set(f, r)) == expected);
    CHECK(oracle::strs(stopping_set(f, r)) == std::vector<std::string>{"111", "112", "113", "12", "13", "2", "3"});
  }

  TEST_CASE("local clusters") {
    const MoranConstruction d = on_unit(dyadic());
    CHECK(local_cluster(d, make_vector(q(1, 2)), q(1, 4)).size() == 4);
    CHECK(local_cluster(d, make_vector(q(10)), q(1, 4)).empty());
    // Closed balls: [-1/8, 1/8] meets [0,1/8] and touches [1/8,1/4].
    CHECK(oracle::strs(local_cluster(d, make_vector(q(0)), q(1, 8))) == std::vector<std::string>{"111", "112"});
    CHECK(oracle::strs(local_cluster(d, make_vector(q(0)), q(1, 9))) == std::vector<std::string>{"1111", "1112"});
    CHECK_THROWS_AS(local_cluster(d, make_vector(q(0), q(0)), q(1, 8)), ValidationError);

    const IfsSystem s({ContractionMap::diagonal_affine(q(1, 2), q(1, 2), q(0), q(0)),
                       ContractionMap::diagonal_affine(q(1, 2), q(1, 2), q(1, 2), q(1, 2))});
    const MoranConstruction m(s, full_shift(2), Box::rectangle(q(0), q(0), q(1), q(1)));
    // Gamma(1) is the first level; tangency at distance exactly 1 counts.
    CHECK(oracle::strs(local_cluster(m, make_vector(q(3, 4), q(-3, 4)), q(1))) == std::vector<std::string>{"1"});
    CHECK(oracle::strs(local_cluster(m, make_vector(q(1, 2), q(-1, 2)), q(1))) == std::vector<std::string>{"1", "2"});
    CHECK(local_cluster(m, make_vector(q(3, 4), q(0)), q(1, 2)).size() == 3);
  }

  TEST_CASE("moran axioms") {
    const MoranReport rd = verify_moran_axioms(on_unit(dyadic()), 6);
    CHECK(rd.passed());
    CHECK(rd.d_squared == 1);
    CHECK(rd.observed_d_squared == 1);

    const MoranReport rf = verify_moran_axioms(on_unit(furstenberg_system()), 5);
    CHECK(rf.passed());
    CHECK(rf.alpha_low == q(1, 7));
    CHECK(rf.alpha_high == q(1, 2));

    const IfsSystem pos({ContractionMap::diagonal_affine(q(1, 2), q(1, 3), q(0), q(0)),
                         ContractionMap::diagonal_affine(q(1, 3), q(1, 2), q(2, 3), q(1, 2))});
    const MoranReport rp =
        verify_moran_axioms(MoranConstruction(pos, full_shift(2), Box::rectangle(q(0), q(0), q(1), q(1))), 6);
    CHECK(rp.passed());
    CHECK(rp.alpha_low == q(1, 3));
    CHECK(rp.observed_d_squared <= rp.d_squared);
    CHECK(rp.d_squared <= 2);

    const IfsSystem broken = homotheties({{q(1, 2), q(0)}, {q(1, 2), q(3, 4)}});
    CHECK_THROWS_AS(MoranConstruction(broken, full_shift(2), Box::interval(q(0), q(1))), ValidationError);
    const MoranReport rb =
        verify_moran_axioms(MoranConstruction::unchecked(broken, full_shift(2), Box::interval(q(0), q(1))), 3);
    CHECK_FALSE(rb.nesting.passed);
    REQUIRE(rb.nesting.witness);
    CHECK(rb.nesting.witness->str() == "2");
  }
}
