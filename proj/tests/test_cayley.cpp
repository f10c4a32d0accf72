#include <doctest.h>

#include <random>
#include <set>

#include "loopshort/cayley.hpp"
#include "loopshort/zoo.hpp"

using namespace loopshort;

TEST_CASE("key index detects collisions by full-key comparison") {
  KeyIndex idx;
  // Many short keys; several will share low hash bits in a 64-slot table.
  for (int i = 0; i < 5000; ++i) {
    std::string payload(reinterpret_cast<const char*>(&i), sizeof(i));
    auto [id, fresh] = idx.insert(ElementKey(payload));
    CHECK(fresh);
    CHECK(id == static_cast<uint32_t>(i));
  }
  for (int i = 0; i < 5000; ++i) {
    std::string payload(reinterpret_cast<const char*>(&i), sizeof(i));
    auto found = idx.find(ElementKey(payload));
    REQUIRE(found.has_value());
    CHECK(*found == static_cast<uint32_t>(i));
    auto [id, fresh] = idx.insert(ElementKey(payload));
    CHECK(!fresh);
    CHECK(id == static_cast<uint32_t>(i));
  }
  int missing = 7777777;
  CHECK(!idx.find(ElementKey(std::string(reinterpret_cast<const char*>(&missing), 4))).has_value());
}

TEST_CASE("ball of radius zero is the identity") {
  for (const char* name : {"wise", "f2", "stallings"}) {
    BallIndex b = build_ball(*preset(name).solver, 0);
    CHECK(b.size() == 1);
    CHECK(b.sphere_sizes == std::vector<uint64_t>{1});
    CHECK(b.complete());
  }
}

TEST_CASE("lattice base sphere S(1) has the eight generator vectors") {
  BallIndex z2 = build_ball(*preset("z2-wise-base").solver, 3);
  CHECK(z2.sphere_sizes[1] == 8);
}

TEST_CASE("free group sphere sizes are 4*3^(r-1)") {
  BallIndex f2 = build_ball(*preset("f2").solver, 6);
  uint64_t expect = 4;
  for (int r = 1; r <= 6; ++r) {
    CHECK(f2.sphere_sizes[r] == expect);
    expect *= 3;
  }
}

TEST_CASE("ball layers match brute-force word enumeration") {
  for (const char* name : {"wise", "gersten", "bridson"}) {
    const Preset& p = preset(name);
    const GroupSolver& s = *p.solver;
    BallIndex ball = build_ball(s, 4);
    // Collect eval of every word of length <= 4 and derive exact distances.
    std::map<std::string, int> dist;
    std::vector<ElementKey> layer{s.identity()};
    dist[s.identity().payload()] = 0;
    for (int r = 1; r <= 4; ++r) {
      std::vector<ElementKey> next;
      for (const auto& e : layer)
        for (Letter x = 0; x < s.alphabet().size(); ++x) {
          ElementKey n = s.apply(e, x);
          if (dist.emplace(n.payload(), r).second) next.push_back(n);
        }
      layer = std::move(next);
      CHECK(ball.sphere_sizes[r] == layer.size());
    }
    CHECK(ball.size() == dist.size());
    for (uint32_t i = 0; i < ball.size(); ++i) {
      auto it = dist.find(ball.index.key(i).payload());
      REQUIRE(it != dist.end());
      CHECK(it->second == ball.dist[i]);
    }
  }
}

TEST_CASE("parent words are geodesics that trace back to the identity") {
  const Preset& p = preset("wise");
  BallIndex ball = build_ball(*p.solver, 4);
  for (uint32_t i = 0; i < ball.size(); i += 7) {
    Word w = ball.parent_word(ball.index.key(i));
    CHECK(w.size() == ball.dist[i]);
    CHECK(p.solver->eval(w) == ball.index.key(i));
  }
}

TEST_CASE("memory budget yields a partial ball with completed radius") {
  BallOptions opts;
  opts.memory_budget_bytes = 20 * 1024;
  BallIndex ball = build_ball(*preset("f2").solver, 12, opts);
  CHECK(!ball.complete());
  CHECK(ball.radius < 12);
  CHECK(ball.radius >= 1);
}

TEST_CASE("bounded distance agrees with ball distances") {
  const Preset& p = preset("gersten");
  const GroupSolver& s = *p.solver;
  BallIndex ball = build_ball(s, 4);
  std::mt19937 rng(77);
  std::uniform_int_distribution<uint32_t> pick(0, static_cast<uint32_t>(ball.size()) - 1);
  for (int trial = 0; trial < 120; ++trial) {
    const ElementKey& x = ball.index.key(pick(rng));
    const ElementKey& y = ball.index.key(pick(rng));
    auto d = bounded_distance(s, x, y, 8);
    REQUIRE(d.has_value());
    // Symmetry and the triangle inequality through the identity.
    CHECK(bounded_distance(s, y, x, 8) == d);
    auto dz = bounded_distance(s, x, y, *d == 0 ? 0 : *d - 1);
    CHECK((*d == 0 ? dz.has_value() : !dz.has_value()));
    int dx = ball.dist[*ball.index.find(x)];
    int dy = ball.dist[*ball.index.find(y)];
    CHECK(*d <= dx + dy);
    CHECK(*d >= std::abs(dx - dy));
  }
  CHECK(bounded_distance(s, s.identity(), s.identity(), 0) == 0);
}

TEST_CASE("distance oracle equals plain bounded distance") {
  const Preset& p = preset("wise");
  const GroupSolver& s = *p.solver;
  DistanceOracle oracle(s, 500);  // force the fallback path quickly
  BallIndex ball = build_ball(s, 3);
  for (uint32_t i = 0; i < ball.size(); i += 3)
    for (uint32_t j = 0; j < ball.size(); j += 11) {
      const ElementKey& x = ball.index.key(i);
      const ElementKey& y = ball.index.key(j);
      for (int cutoff : {1, 3, 6})
        CHECK(oracle.distance(x, y, cutoff) == bounded_distance(s, x, y, cutoff));
    }
}

TEST_CASE("geodesic tests") {
  const Preset& z2 = preset("z2-wise-base");
  CHECK(!is_geodesic(*z2.solver, z2.word("ab")));  // c is shorter
  CHECK(is_geodesic(*z2.solver, z2.word("aa")));
  CHECK(is_geodesic(*z2.solver, Word{}));

  BallIndex ball = build_ball(*z2.solver, 3);
  CHECK(is_geodesic(ball, z2.word("ab")) == Geodesy::non_geodesic);
  CHECK(is_geodesic(ball, z2.word("ad")) == Geodesy::geodesic);
  CHECK(is_geodesic(ball, z2.word("aaaa")) == Geodesy::radius_shortfall);
}

TEST_CASE("geodesic enumeration in shortlex order") {
  const Preset& z2 = preset("z2-wise-base");
  const GroupSolver& s = *z2.solver;
  BallIndex ball = build_ball(s, 3);

  SUBCASE("identity has exactly the empty word") {
    auto g = all_geodesics_to(ball, s.identity());
    REQUIRE(g.size() == 1);
    CHECK(g[0].empty());
  }

  SUBCASE("(2,0) has aa, cd, dc in the gersten base") {
    const Preset& zg = preset("z2-gersten-base");
    BallIndex gb = build_ball(*zg.solver, 3);
    auto g = all_geodesics_to(gb, zg.solver->eval(zg.word("aa")));
    std::vector<std::string> names;
    for (const Word& w : g) names.push_back(zg.alphabet().str(w));
    CHECK(names == std::vector<std::string>{"aa", "cd", "dc"});
  }

  SUBCASE("free group targets have exactly one geodesic") {
    const Preset& f2 = preset("f2");
    BallIndex fb = build_ball(*f2.solver, 4);
    for (uint32_t i = 0; i < fb.size(); i += 13) {
      auto g = all_geodesics_to(fb, fb.index.key(i));
      CHECK(g.size() == 1);
    }
  }

  SUBCASE("every prefix of an enumerated geodesic is geodesic") {
    auto g = all_geodesics_to(ball, s.eval(z2.word("aab")));
    CHECK(!g.empty());
    for (const Word& w : g)
      for (size_t cut = 0; cut <= w.size(); ++cut)
        CHECK(is_geodesic(ball, subword(w, 0, cut)) == Geodesy::geodesic);
  }
}

TEST_CASE("shortlex-least geodesic word between arbitrary points") {
  const Preset& z2 = preset("z2-wise-base");
  const GroupSolver& s = *z2.solver;
  DistanceOracle oracle(s);
  auto g = geodesic_word(s, s.eval(z2.word("a")), s.eval(z2.word("abb")), 4, &oracle);
  REQUIRE(g.has_value());
  CHECK(g->size() == 2);
  CHECK(s.eval_from(s.eval(z2.word("a")), *g) == s.eval(z2.word("abb")));
  CHECK(!geodesic_word(s, s.identity(), s.eval(z2.word("aaaa")), 1, &oracle).has_value());
}
