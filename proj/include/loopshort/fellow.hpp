// Synchronous and asynchronous fellow-traveler checks, and the
// constructive conversion of an asynchronous fellow-traveling loop pair
// into a synchronous one (three cases with constants 3k+1, 6k+1, 5k+2).
//
// All checks run on the integer grid; a successful integer check at k
// certifies the continuous statement at k+1, which is the constant the
// reports carry alongside the checked integer bound.

#pragma once

#include "loopshort/cayley.hpp"

namespace loopshort {

struct PathContext {
  ElementKey start_w;
  ElementKey start_u;
};

inline PathContext identity_context(const GroupSolver& s) {
  return PathContext{s.identity(), s.identity()};
}

struct SyncReport {
  bool ok = false;
  int checked_k = 0;     // integer-grid bound that was verified
  int continuous_k = 0;  // checked_k + 1
  int max_distance = 0;  // largest pointwise distance seen (only when ok)
  std::optional<int> first_violation;  // earliest t with d > k
};

SyncReport sync_ft(const GroupSolver& solver, const Word& w, const Word& u, int k,
                   const PathContext& ctx, DistanceOracle* oracle = nullptr);

// Monotone nondecreasing integer map {0..|w|} -> {0..|u|} with phi(0)=0
// and phi(|w|)=|u|.
struct Reparameterization {
  std::vector<int> phi;
  int at(int t) const { return phi[std::min<size_t>(t, phi.size() - 1)]; }
};

// Monotone grid path from (0,0) to (|w|,|u|) through cells with
// d(w(i),u(j)) <= k, found by dynamic programming; nullopt when none.
std::optional<Reparameterization> async_ft(const GroupSolver& solver, const Word& w, const Word& u,
                                           int k, const PathContext& ctx,
                                           DistanceOracle* oracle = nullptr);

struct SynchronizeResult {
  Word v;                   // the synchronous companion loop (case 1: u itself)
  int case_id = 0;          // 1, 2 or 3
  int continuous_constant;  // 3k+1, 6k+1 or 5k+2
  int checked_constant;     // integer bound verified: 3k, 6k or 5k+1
  int j = -1, l = -1;
  Word p1, p2;
  SyncReport verification;
};

// Theorem machinery: w, u loops with |u| < |w| that asynchronously
// k-fellow travel under phi. Produces a loop v with |v| < |w| (case 1
// returns u) that synchronously fellow travels w at the case constant,
// re-verified before returning. Throws std::invalid_argument when the
// asynchronous premise fails, std::logic_error when the construction
// misses its own bound.
SynchronizeResult synchronize(const GroupSolver& solver, const Word& w, const Word& u,
                              const Reparameterization& phi, int k, const PathContext& ctx,
                              DistanceOracle* oracle = nullptr);

}  // namespace loopshort
