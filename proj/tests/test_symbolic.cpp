#include "doctest.h"
#include "oracles.hpp"

#include "moran/compact_tree.hpp"
#include "moran/subshift.hpp"
#include "moran/word.hpp"

#include <random>

using namespace moran;

namespace {

Word w2(const char* s) { return Word::parse(s, 2); }
Word w3(const char* s) { return Word::parse(s, 3); }

std::vector<Word> words2(std::initializer_list<const char*> xs) {
  std::vector<Word> out;
  for (auto x : xs) out.push_back(w2(x));
  return out;
}

}  // namespace

TEST_SUITE("symbolic_core") {
  TEST_CASE("lcp") {
    CHECK(lcp(w2("1212"), w2("1221")).str() == "12");
    CHECK(lcp(w3("1213"), w3("1221")).str() == "12");
    CHECK(lcp(w2("12"), w2("12")).str() == "12");
    CHECK(lcp(w3("3"), w3("1")).empty());
    CHECK_THROWS_AS(lcp(w2("1"), w3("1")), ValidationError);
  }

  TEST_CASE("orthogonality") {
    CHECK(is_orthogonal(w3("12"), w3("13")));
    CHECK_FALSE(is_orthogonal(w3("12"), w3("123")));
    CHECK_FALSE(is_orthogonal(w3("1"), w3("1")));
  }

  TEST_CASE("lexicographic order") {
    CHECK(lex_less(w2("1"), w2("12")));
    CHECK(lex_less(w3("13"), w3("21")));
    CHECK_FALSE(lex_less(w2("2"), w2("2")));
    CHECK_FALSE(lex_less(w2("12"), w2("1")));
    CHECK(shortlex_less(w2("2"), w2("11")));
  }

  TEST_CASE("word validation") {
    CHECK_THROWS_AS(Word::parse("13", 2), ValidationError);
    CHECK_THROWS_AS(Word::parse("1x", 2), ValidationError);
    CHECK_THROWS_AS(Word(1), ValidationError);
    CHECK_THROWS_AS(Word(2).parent(), ValidationError);
    CHECK(w2("121").parent().str() == "12");
    CHECK(w2("121").shifted(1).str() == "21");
    CHECK(w2("12").concat(w2("21")).str() == "1221");
  }

  TEST_CASE("full shift counts") {
    const Subshift s = full_shift(2);
    CHECK(s.num_states() == 1);
    for (std::size_t n = 0; n <= 20; ++n) CHECK(s.count(n) == Integer(1) << static_cast<unsigned>(n));
    CHECK(allowed_words(s, 3).size() == 8);
  }

  TEST_CASE("golden mean") {
    const Subshift s = build_subshift(2, words2({"22"}));
    CHECK(s.num_states() == 2);
    CHECK(s.count(1) == 2);
    CHECK(s.count(2) == 3);
    CHECK(s.count(3) == 5);
    CHECK(allowed_words(s, 4).size() == static_cast<std::size_t>(oracle::fib(6)));
    CHECK_FALSE(s.is_allowed(w2("1221")));
    CHECK(s.is_allowed(w2("1212")));
  }

  TEST_CASE("sigma of 21 forbids descents") {
    const Subshift s = build_subshift(2, words2({"21"}));
    CHECK(oracle::strs(allowed_words(s, 3)) == std::vector<std::string>{"111", "112", "122", "222"});
    for (std::size_t n = 0; n <= 16; ++n) CHECK(s.count(n) == Integer(n + 1));
  }

  TEST_CASE("non-extendable words are pruned") {
    // "12" and "22" forbidden: after a 2 nothing can follow, so 2 never occurs.
    const Subshift s = build_subshift(2, words2({"21", "22"}));
    CHECK(oracle::strs(allowed_words(s, 2)) == std::vector<std::string>{"11"});
    CHECK(s.avoids_forbidden(w2("12")));
    CHECK_FALSE(s.is_allowed(w2("12")));
  }

  TEST_CASE("empty subshift") {
    CHECK_THROWS_AS(build_subshift(2, words2({"1", "2"})), EmptySubshiftError);
    CHECK_THROWS_AS(build_subshift(2, words2({"11", "12", "2"})), EmptySubshiftError);
    CHECK_THROWS_AS(build_subshift(2, {Word::parse("13", 3)}), ValidationError);
  }

  TEST_CASE("allowed words agree with brute force on random subshifts") {
    std::mt19937_64 rng(20240611);
    int checked = 0;
    while (checked < 60) {
      const int kappa = 2 + static_cast<int>(rng() % 2);
      const int nr = 1 + static_cast<int>(rng() % 4);
      std::vector<std::string> rs;
      std::vector<Word> r;
      for (int k = 0; k < nr; ++k) {
        const int len = 1 + static_cast<int>(rng() % 3);
        std::string s;
        for (int q = 0; q < len; ++q) s.push_back(static_cast<char>('1' + rng() % static_cast<unsigned>(kappa)));
        rs.push_back(s);
        r.push_back(Word::parse(s, kappa));
      }
      Subshift sub;
      try {
        sub = build_subshift(kappa, r);
      } catch (const EmptySubshiftError&) {
        CHECK(oracle::gamma_n(kappa, rs, 1).empty());
        continue;
      }
      for (int n = 0; n <= 5; ++n) {
        const auto expected = oracle::gamma_n(kappa, rs, n);
        const auto got = oracle::strs(allowed_words(sub, static_cast<std::size_t>(n)));
        CHECK(std::vector<std::string>(expected.begin(), expected.end()) == got);
        CHECK(sub.count(static_cast<std::size_t>(n)) == Integer(expected.size()));
      }
      ++checked;
    }
  }

  TEST_CASE("subtree") {
    const CompactTree a = CompactTree::from_leaves(2, 2, words2({"12"}));
    const CompactTree b = a.subtree(w2("1"));
    CHECK(b.depth() == 1);
    CHECK(oracle::strs(b.leaves()) == std::vector<std::string>{"2"});
    CHECK(a.subtree(Word(2)) == a);
    CHECK(a.subtree(w2("2")).empty());
    CHECK_THROWS_AS(a.subtree(w2("121")), ValidationError);

    const CompactTree g = CompactTree::from_subshift(build_subshift(2, words2({"22"})), 6);
    CHECK(g.subtree(w2("1")).subtree(w2("2")) == g.subtree(w2("12")));
  }

  TEST_CASE("tree structure") {
    const CompactTree t = CompactTree::from_leaves(2, 3, words2({"121", "122", "211"}));
    CHECK(t.level(0).size() == 1);
    CHECK(oracle::strs(t.level(1)) == std::vector<std::string>{"1", "2"});
    CHECK(oracle::strs(t.level(2)) == std::vector<std::string>{"12", "21"});
    CHECK(t.node_count() == 1 + 2 + 2 + 3);
    CHECK_THROWS_AS(CompactTree::from_leaves(2, 3, words2({"12"})), ValidationError);
  }

  TEST_CASE("symbolic distance") {
    const CompactTree a = CompactTree::from_leaves(2, 3, words2({"111", "112"}));
    const CompactTree b = CompactTree::from_leaves(2, 3, words2({"111", "122"}));
    const CompactTree c = CompactTree::from_leaves(2, 3, words2({"211"}));
    CHECK(symbolic_distance(a, a) == 0);
    CHECK(symbolic_distance(a, b) == Rational(1, 4));
    CHECK(symbolic_distance(a, c) == Rational(1, 2));
    CHECK(symbolic_distance(a, b.truncated(1)) == 0);
  }
}
