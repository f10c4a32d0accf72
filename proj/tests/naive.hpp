// Test-only independent oracles for the Z^2 lattice presets: a bounded
// distance table computed by plain BFS over int pairs, and brute-force
// loop-shortening / falsification searches by direct word enumeration.
// Nothing here touches the library's solvers or search code.

#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

namespace naive {

struct Vec {
  int x = 0, y = 0;
  friend Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(Vec a, Vec b) { return a.x == b.x && a.y == b.y; }
};

// Generators of the wise base (d = (2,2)) or gersten base (d = (1,-1)),
// in the presets' letter order a A b B c C d D.
inline std::array<Vec, 8> generators(bool wise_base) {
  Vec d = wise_base ? Vec{2, 2} : Vec{1, -1};
  return {Vec{1, 0}, Vec{-1, 0}, Vec{0, 1}, Vec{0, -1},
          Vec{1, 1}, Vec{-1, -1}, d, Vec{-d.x, -d.y}};
}

// Exact word-metric distances on a box around the origin, by BFS.
class DistanceTable {
 public:
  DistanceTable(bool wise_base, int box) : box_(box), side_(2 * box + 1) {
    table_.assign(side_ * side_, -1);
    auto gens = generators(wise_base);
    std::vector<Vec> frontier{{0, 0}};
    at({0, 0}) = 0;
    for (int d = 1; !frontier.empty(); ++d) {
      std::vector<Vec> next;
      for (Vec v : frontier)
        for (Vec g : gens) {
          Vec n = v + g;
          if (std::abs(n.x) > box_ || std::abs(n.y) > box_) continue;
          if (at(n) >= 0) continue;
          at(n) = d;
          next.push_back(n);
        }
      frontier = std::move(next);
    }
  }

  // Distance, exact as long as |v| is well inside the box (interior values
  // are exact because every geodesic between interior points stays within
  // the box for these generator sets; callers keep a wide margin).
  int dist(Vec v) const {
    if (std::abs(v.x) > box_ || std::abs(v.y) > box_) return INT32_MAX;
    return at(v);
  }
  bool within(Vec a, Vec b, int k) const { return dist(b - a) <= k; }

 private:
  int& at(Vec v) { return table_[(v.y + box_) * side_ + (v.x + box_)]; }
  int at(Vec v) const { return table_[(v.y + box_) * side_ + (v.x + box_)]; }
  int box_, side_;
  std::vector<int> table_;
};

inline std::vector<Vec> positions(const std::vector<int>& word, const std::array<Vec, 8>& gens,
                                  Vec start = {0, 0}) {
  std::vector<Vec> pos{start};
  for (int letter : word) pos.push_back(pos.back() + gens[letter]);
  return pos;
}

// Does some loop u with |u| < |w|, based at b within distance k of w(0),
// synchronously k-fellow travel w? Stratified DFS over all candidate
// words, no state merging: the independent side of the completeness check.
inline bool shortening_exists(const std::vector<int>& w, int k, bool basepoint,
                              const DistanceTable& dt, const std::array<Vec, 8>& gens) {
  auto wp = positions(w, gens);
  const int n = static_cast<int>(w.size());

  std::vector<Vec> bases;
  for (int dx = -k; dx <= k; ++dx)
    for (int dy = -k; dy <= k; ++dy)
      if (dt.dist({dx, dy}) <= k) bases.push_back(Vec{dx, dy});
  if (basepoint) bases = {Vec{0, 0}};

  for (Vec b : bases) {
    // Latest time whose w-position strays beyond k of b: u must still be
    // moving then, so only lengths >= that time can close at b.
    int must_move_until = 0;
    for (int t = n; t >= 1; --t)
      if (!dt.within(wp[t], b, k)) {
        must_move_until = t;
        break;
      }
    if (!dt.within(wp[0], b, k)) continue;
    for (int m = must_move_until; m < n; ++m) {
      // All words u of length exactly m staying in the tube, ending at b.
      std::vector<int> u(m);
      std::vector<Vec> at{b};
      int depth = 0;
      std::vector<int> next(m + 1, 0);
      while (depth >= 0) {
        if (depth == m) {
          if (at.back() == b) return true;
          --depth;
          at.pop_back();
          continue;
        }
        if (next[depth] >= 8) {
          next[depth] = 0;
          --depth;
          at.pop_back();
          continue;
        }
        int x = next[depth]++;
        Vec child = at.back() + gens[x];
        if (!dt.within(wp[depth + 1], child, k)) continue;
        // Reachability prune mirrors plain distance, still independent.
        if (dt.dist(b - child) > m - depth - 1) continue;
        u[depth] = x;
        at.push_back(child);
        ++depth;
      }
    }
  }
  return false;
}

// Same-endpoint falsification: a strictly shorter word from 0 to wp.back()
// k-fellow traveling w.
inline bool falsification_exists(const std::vector<int>& w, int k, const DistanceTable& dt,
                                 const std::array<Vec, 8>& gens) {
  auto wp = positions(w, gens);
  const int n = static_cast<int>(w.size());
  Vec target = wp.back();
  int must_move_until = 0;
  for (int t = n; t >= 1; --t)
    if (!dt.within(wp[t], target, k)) {
      must_move_until = t;
      break;
    }
  for (int m = must_move_until; m < n; ++m) {
    std::vector<Vec> at{{0, 0}};
    int depth = 0;
    std::vector<int> next(m + 1, 0);
    if (!dt.within(wp[0], {0, 0}, k)) break;
    while (depth >= 0) {
      if (depth == m) {
        if (at.back() == target) return true;
        --depth;
        at.pop_back();
        continue;
      }
      if (next[depth] >= 8) {
        next[depth] = 0;
        --depth;
        at.pop_back();
        continue;
      }
      int x = next[depth]++;
      Vec child = at.back() + gens[x];
      if (!dt.within(wp[depth + 1], child, k)) continue;
      if (dt.dist(target - child) > m - depth - 1) continue;
      at.push_back(child);
      ++depth;
    }
  }
  return false;
}

}  // namespace naive
