#include <doctest.h>

#include <random>

#include "loopshort/words.hpp"

using namespace loopshort;

TEST_CASE("case-pair alphabet wiring") {
  Alphabet a = Alphabet::from_case_pairs("abs");
  CHECK(a.size() == 6);
  CHECK(a.name(0) == "a");
  CHECK(a.name(a.inverse(0)) == "A");
  for (Letter x = 0; x < a.size(); ++x) {
    CHECK(a.inverse(a.inverse(x)) == x);
    CHECK(a.inverse(x) != x);
  }
}

TEST_CASE("alphabet rejects bad input") {
  CHECK_THROWS(Alphabet({"a", "a"}, {{"a", "a"}}));
  CHECK_THROWS(Alphabet({"a", "A"}, {{"a", "a"}}));       // self-inverse
  CHECK_THROWS(Alphabet({"a", "A", "b"}, {{"a", "A"}}));  // b lacks an inverse
}

TEST_CASE("tokenizer prefers longest match") {
  // Two-symbol generator names coexist with single-symbol ones only in
  // separate alphabets, but the tokenizer must be greedy regardless.
  Alphabet edges({"aC", "cA", "cB", "bC"}, {{"aC", "cA"}, {"cB", "bC"}});
  Word g = edges.word("aCcB");
  REQUIRE(g.size() == 2);
  CHECK(edges.str(g) == "aCcB");
  CHECK_THROWS(edges.word("ax"));

  Alphabet simple = Alphabet::from_case_pairs("as");
  Word w = simple.word("SasA");
  CHECK(w.size() == 4);
}

TEST_CASE("free reduction") {
  Alphabet a = Alphabet::from_case_pairs("abc");
  CHECK(free_reduce(a, a.word("aA")).empty());
  CHECK(free_reduce(a, a.word("abBA")).empty());
  CHECK(a.str(free_reduce(a, a.word("abBc"))) == "ac");
}

TEST_CASE("free reduction is idempotent and length-nonincreasing; w·w^-1 cancels") {
  Alphabet a = Alphabet::from_case_pairs("ab");
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> len(0, 12), pick(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Word w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) w.push_back(static_cast<Letter>(pick(rng)));
    Word r = free_reduce(a, w);
    CHECK(r.size() <= w.size());
    CHECK(free_reduce(a, r) == r);
    CHECK(free_reduce(a, concat(w, invert(a, w))).empty());
    CHECK(invert(a, invert(a, w)) == w);
  }
}

TEST_CASE("invert basics") {
  Alphabet a = Alphabet::from_case_pairs("ab");
  CHECK(a.str(invert(a, a.word("ab"))) == "BA");
  CHECK(invert(a, Word{}).empty());
}

TEST_CASE("shortlex order follows declaration order") {
  Alphabet a = Alphabet::from_case_pairs("ab");
  CHECK(shortlex_less(a.word("b"), a.word("aa")));
  CHECK(shortlex_less(a.word("aa"), a.word("aA")));
  CHECK(!shortlex_less(a.word("a"), a.word("a")));
}
