// Metric structure over a solver: radius-N balls with exact distances and
// parent letters, bounded pairwise distances, geodesic tests and geodesic
// enumeration in shortlex order.

#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>

#include "loopshort/solver.hpp"

namespace loopshort {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Open-addressing map ElementKey -> dense id. Linear probing over 64-bit
// payload hashes with full-key verification on every probe hit.
class KeyIndex {
 public:
  KeyIndex();

  // Returns (id, inserted).
  std::pair<uint32_t, bool> insert(const ElementKey& k);
  std::optional<uint32_t> find(const ElementKey& k) const;
  size_t size() const { return keys_.size(); }
  const ElementKey& key(uint32_t id) const { return keys_[id]; }
  size_t memory_bytes() const;
  void reserve(size_t n);

 private:
  void grow();

  struct Slot {
    uint64_t hash;
    uint32_t id_plus_1;  // 0 means empty
  };
  std::vector<ElementKey> keys_;
  std::vector<Slot> slots_;  // power-of-two size
  size_t heap_bytes_ = 0;    // payload bytes living off the small-string buffer
};

struct BallOptions {
  uint64_t memory_budget_bytes = 8ull << 30;
};

class BallIndex {
 public:
  const GroupSolver* solver = nullptr;
  KeyIndex index;  // id 0 is the identity
  std::vector<uint8_t> dist;
  std::vector<Letter> parent;  // letter applied at the parent to reach this entry
  std::vector<uint64_t> sphere_sizes;
  int radius = -1;  // largest completed radius
  int requested_radius = -1;

  bool complete() const { return radius == requested_radius; }
  std::optional<int> distance(const ElementKey& k) const;
  bool contains(const ElementKey& k) const { return index.find(k).has_value(); }
  // Word read along parent letters from the identity; a geodesic.
  Word parent_word(const ElementKey& k) const;
  size_t size() const { return index.size(); }
};

// Exact distances for B(N) by breadth-first search. If the memory budget
// runs out the ball is returned with the largest completed radius (check
// complete()).
BallIndex build_ball(const GroupSolver& solver, int radius, const BallOptions& opts = {});

// d(x, y) computed as d(1, x^-1 y) by bidirectional search on lazily
// generated neighbors; nullopt when the distance exceeds cutoff.
std::optional<int> bounded_distance(const GroupSolver& solver, const ElementKey& x,
                                    const ElementKey& y, int cutoff);

// Repeated-query frontend: keeps one identity-centered ball, grown on
// demand while it stays under the entry cap, and a result cache for
// queries past the cap.
class DistanceOracle {
 public:
  explicit DistanceOracle(const GroupSolver& solver, size_t ball_entry_cap = 4'000'000);

  std::optional<int> distance(const ElementKey& x, const ElementKey& y, int cutoff);
  std::optional<int> distance_to_identity(const ElementKey& z, int cutoff);
  bool within(const ElementKey& x, const ElementKey& y, int k);

  // The shared identity-centered ball, grown to min_radius if the entry
  // cap allows; check .radius before trusting it.
  const BallIndex& identity_ball(int min_radius);

  const GroupSolver& solver() const { return *solver_; }

 private:
  const GroupSolver* solver_;
  size_t cap_;
  BallIndex ball_;
  bool ball_usable_ = true;
  std::unordered_map<std::string, int> cache_;              // payload -> exact distance
  std::unordered_map<std::string, int> lower_bound_cache_;  // payload -> known d >= value
};

enum class Geodesy { non_geodesic, geodesic, radius_shortfall };

Geodesy is_geodesic(const BallIndex& ball, const Word& w);
bool is_geodesic(const GroupSolver& solver, const Word& w);

// Enumerates exactly the geodesic words to x, in shortlex order under the
// alphabet's declared letter order.
class GeodesicEnumerator {
 public:
  GeodesicEnumerator(const BallIndex& ball, const ElementKey& target, DistanceOracle* oracle);
  std::optional<Word> next();

 private:
  const BallIndex* ball_;
  DistanceOracle* oracle_;
  std::unique_ptr<DistanceOracle> own_oracle_;
  ElementKey target_;
  int target_dist_;
  struct Frame {
    ElementKey at;
    Letter next_letter;
  };
  std::vector<Frame> stack_;
  Word current_;
  bool done_ = false;
};

std::vector<Word> all_geodesics_to(const BallIndex& ball, const ElementKey& target,
                                   DistanceOracle* oracle = nullptr, size_t limit = SIZE_MAX);

// Shortlex-least geodesic word from `from` to `to` of length d(from, to),
// nullopt if the distance exceeds cutoff.
std::optional<Word> geodesic_word(const GroupSolver& solver, const ElementKey& from,
                                  const ElementKey& to, int cutoff, DistanceOracle* oracle);

// Positions w(0..|w|) of the path starting at `start`.
std::vector<ElementKey> path_positions(const GroupSolver& solver, const ElementKey& start,
                                       const Word& w);

// Frozen-endpoint position function.
inline const ElementKey& position_at(const std::vector<ElementKey>& positions, size_t t) {
  return positions[std::min(t, positions.size() - 1)];
}

}  // namespace loopshort
