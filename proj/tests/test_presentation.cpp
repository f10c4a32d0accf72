#include <doctest.h>

#include <stdexcept>

#include "loopshort/presentation.hpp"

using namespace loopshort;

TEST_CASE("parse a free presentation of rank 2") {
  auto f = parse_presentation(
      "name f2\n"
      "generators a A b B\n"
      "inverses a=A b=B\n"
      "backend free\n");
  CHECK(!f.is_hnn());
  CHECK(f.pres.backend == BackendHint::free_group);
  CHECK(f.pres.relators.empty());
  CHECK(f.pres.alphabet.size() == 4);
}

TEST_CASE("parse the double HNN extension with lattice base") {
  auto f = parse_presentation(
      "name wise\n"
      "generators a A b B c C d D s S t T\n"
      "inverses a=A b=B c=C d=D s=S t=T\n"
      "relator cBA\n"
      "relator SasD\n"
      "backend hnn\n"
      "base-backend free-abelian dim 2 map a=(1,0) b=(0,1) c=(1,1) d=(2,2)\n"
      "stable s pair a -> d\n"
      "stable t pair b -> d\n");
  REQUIRE(f.is_hnn());
  CHECK(f.hnn->stables.size() == 2);
  CHECK(f.hnn->base.alphabet.size() == 8);
  CHECK(f.hnn->base.backend == BackendHint::free_abelian);
  // Base relators are separated out; the stable relator stays in the full list.
  CHECK(f.hnn->base.relators.size() == 1);
  CHECK(f.pres.relators.size() == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(parse_presentation("generators a A a\ninverses a=A\nbackend free\n"),
                       doctest::Contains("duplicate letter"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_presentation("name x\ngenerators a A\ninverses a=A\n"
                                          "relator ab\nbackend free\n"),
                       doctest::Contains("cannot tokenize"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_presentation("name x\ngenerators a A\ninverses a=A\n"
                                          "frobnicate yes\nbackend free\n"),
                       doctest::Contains("unknown key"), std::invalid_argument);
  // A stable letter must exist among the generators.
  CHECK_THROWS(parse_presentation("name x\ngenerators a A\ninverses a=A\nbackend hnn\n"
                                  "base-backend free\nstable s pair a -> a\n"));
}

TEST_CASE("serialization is a fixed point on the canonical form") {
  std::string text =
      "name wise\n"
      "generators a A b B c C d D s S t T\n"
      "inverses a=A b=B c=C d=D s=S t=T\n"
      "relator cBA\n"
      "relator cAB\n"
      "relator dCC\n"
      "relator SasD\n"
      "relator TbtD\n"
      "backend hnn\n"
      "base-backend free-abelian dim 2 map a=(1,0) b=(0,1) c=(1,1) d=(2,2)\n"
      "stable s pair a -> d\n"
      "stable t pair b -> d\n";
  auto f = parse_presentation(text);
  CHECK(serialize_presentation(f) == text);
  CHECK(serialize_presentation(parse_presentation(serialize_presentation(f))) ==
        serialize_presentation(f));
}
