#include <doctest.h>

#include <random>

#include "loopshort/fellow.hpp"
#include "loopshort/zoo.hpp"

using namespace loopshort;

TEST_CASE("sync_ft basics") {
  const Preset& p = preset("wise");
  const GroupSolver& s = *p.solver;
  DistanceOracle oracle(s);

  SUBCASE("identical paths 0-fellow travel") {
    auto rep = sync_ft(s, p.word("abAB"), p.word("abAB"), 0, identity_context(s), &oracle);
    CHECK(rep.ok);
    CHECK(rep.max_distance == 0);
    CHECK(rep.continuous_k == 1);
  }

  SUBCASE("Sas and d 2-fellow travel but not 1") {
    auto rep = sync_ft(s, p.word("Sas"), p.word("d"), 2, identity_context(s), &oracle);
    CHECK(rep.ok);
    CHECK(rep.max_distance == 2);
    auto rep1 = sync_ft(s, p.word("Sas"), p.word("d"), 1, identity_context(s), &oracle);
    CHECK(!rep1.ok);
    CHECK(rep1.first_violation == 1);
  }

  SUBCASE("abAB and cC 1-fellow travel in the lattice") {
    const Preset& z2 = preset("z2-wise-base");
    DistanceOracle zo(*z2.solver);
    auto rep = sync_ft(*z2.solver, z2.word("abAB"), z2.word("cC"), 1,
                       identity_context(*z2.solver), &zo);
    CHECK(rep.ok);
    CHECK(rep.max_distance == 1);
  }
}

TEST_CASE("sync reports certify against a fresh uncached search") {
  const Preset& p = preset("gersten");
  const GroupSolver& s = *p.solver;
  DistanceOracle oracle(s);
  Word w = p.word("SasC");
  Word u = p.word("sCSc");
  auto rep = sync_ft(s, w, u, 4, identity_context(s), &oracle);
  auto wp = path_positions(s, s.identity(), w);
  auto up = path_positions(s, s.identity(), u);
  bool ok = true;
  int maxd = 0;
  for (size_t t = 0; t <= 4; ++t) {
    auto d = bounded_distance(s, position_at(wp, t), position_at(up, t), 4);
    if (!d) {
      ok = false;
      break;
    }
    maxd = std::max(maxd, *d);
  }
  CHECK(rep.ok == ok);
  if (rep.ok) CHECK(rep.max_distance == maxd);
}

TEST_CASE("async_ft finds a reparameterization") {
  const Preset& p = preset("wise");
  const GroupSolver& s = *p.solver;
  DistanceOracle oracle(s);

  SUBCASE("identical words at k=0 get the diagonal") {
    Word w = p.word("abAB");
    auto phi = async_ft(s, w, w, 0, identity_context(s), &oracle);
    REQUIRE(phi.has_value());
    for (int t = 0; t <= 4; ++t) CHECK(phi->phi[t] == t);
  }

  SUBCASE("sync at k implies async at k") {
    Word w = p.word("Sas"), u = p.word("d");
    REQUIRE(sync_ft(s, w, u, 2, identity_context(s), &oracle).ok);
    CHECK(async_ft(s, w, u, 2, identity_context(s), &oracle).has_value());
  }

  SUBCASE("Sas vs d at k=1: no sync, but a monotone grid path exists") {
    // Regression: the passable grid leaves (0,0)->(1,0)->(2,1)->(3,1).
    auto phi = async_ft(s, p.word("Sas"), p.word("d"), 1, identity_context(s), &oracle);
    REQUIRE(phi.has_value());
    CHECK(phi->phi == std::vector<int>{0, 0, 1, 1});
    CHECK(!sync_ft(s, p.word("Sas"), p.word("d"), 1, identity_context(s), &oracle).ok);
  }

  SUBCASE("monotone in k") {
    std::mt19937 rng(4242);
    const Preset& z2 = preset("z2-wise-base");
    DistanceOracle zo(*z2.solver);
    std::uniform_int_distribution<int> pick(0, 7), len(1, 6);
    for (int trial = 0; trial < 40; ++trial) {
      Word w, u;
      for (int i = len(rng); i > 0; --i) w.push_back(static_cast<Letter>(pick(rng)));
      for (int i = len(rng); i > 0; --i) u.push_back(static_cast<Letter>(pick(rng)));
      bool prev = false;
      for (int k = 0; k <= 4; ++k) {
        bool now = async_ft(*z2.solver, w, u, k, identity_context(*z2.solver), &zo).has_value();
        if (prev) CHECK(now);
        prev = now;
      }
    }
  }
}

TEST_CASE("synchronize case 1: a lagging but close companion") {
  const Preset& z2 = preset("z2-wise-base");
  const GroupSolver& s = *z2.solver;
  DistanceOracle oracle(s);
  Word w = z2.word("abAB");
  Word u = z2.word("cC");
  auto phi = async_ft(s, w, u, 1, identity_context(s), &oracle);
  REQUIRE(phi.has_value());
  auto res = synchronize(s, w, u, *phi, 1, identity_context(s), &oracle);
  CHECK(res.case_id == 1);
  CHECK(res.v == u);
  CHECK(res.continuous_constant == 4);  // 3k+1
  CHECK(res.verification.ok);
}

TEST_CASE("synchronize case 2: the companion dawdles behind") {
  const Preset& z2 = preset("z2-wise-base");
  const GroupSolver& s = *z2.solver;
  DistanceOracle oracle(s);
  // Positions of w = abBA stay within 1 of the identity (ab = c); a flat
  // phi forces t - phi(t) = 3 > 2k at t = 3.
  Word w = z2.word("abBA");
  Word u = z2.word("aA");
  Reparameterization phi;
  phi.phi = {0, 0, 0, 0, 2};
  auto res = synchronize(s, w, u, phi, 1, identity_context(s), &oracle);
  CHECK(res.case_id == 2);
  CHECK(res.j == 3);
  CHECK(res.l == 0);
  CHECK(static_cast<int>(res.v.size()) < 4);
  CHECK(res.continuous_constant == 7);  // 6k+1
  CHECK(res.verification.ok);
  CHECK(s.is_identity(s.eval(res.v)));
}

TEST_CASE("synchronize case 3: the companion runs ahead") {
  const Preset& z2 = preset("z2-wise-base");
  const GroupSolver& s = *z2.solver;
  DistanceOracle oracle(s);
  Word w = z2.word("aAaAaA");
  Word u = z2.word("aAaA");
  Reparameterization phi;
  phi.phi = {0, 4, 4, 4, 4, 4, 4};
  auto res = synchronize(s, w, u, phi, 1, identity_context(s), &oracle);
  CHECK(res.case_id == 3);
  CHECK(res.j == 1);
  CHECK(static_cast<int>(res.v.size()) < 6);
  CHECK(res.continuous_constant == 7);  // 5k+2
  CHECK(res.verification.ok);
  CHECK(s.is_identity(s.eval(res.v)));
}

TEST_CASE("synchronize validates its premises") {
  const Preset& z2 = preset("z2-wise-base");
  const GroupSolver& s = *z2.solver;
  DistanceOracle oracle(s);
  Word w = z2.word("abBA");
  Word u = z2.word("aA");
  Reparameterization bad;
  bad.phi = {0, 0, 0, 0, 1};  // endpoint is not |u|
  CHECK_THROWS_AS(synchronize(s, w, u, bad, 1, identity_context(s), &oracle),
                  std::invalid_argument);
  Reparameterization same;
  same.phi = {0, 1, 2};
  CHECK_THROWS_AS(synchronize(s, u, u, same, 1, identity_context(s), &oracle),
                  std::invalid_argument);  // |u| < |w| required
  Reparameterization id2;
  id2.phi = {0, 0, 1};
  CHECK_THROWS_AS(synchronize(s, z2.word("ab"), z2.word("c"), id2, 1, identity_context(s),
                              &oracle),
                  std::invalid_argument);  // loops required
}
