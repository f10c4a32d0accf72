// HNN-specific machinery over words: pinch detection, Britton reduction,
// strip-equidistance and totally-geodesic verification at finite radius,
// strips and half-space sides, and the basepoint-loop-shortening strategy
// for strip-equidistant extensions with totally geodesic subgroups.

#pragma once

#include "loopshort/cayley.hpp"
#include "loopshort/hnn_solver.hpp"

namespace loopshort {

struct Pinch {
  size_t begin;  // index of the opening stable letter
  size_t end;    // index of the closing stable letter
  int stable_index;
  bool opens_negative;  // true: s^-1 u s with u in U; false: s v s^-1 with v in V
  Word inner;           // base-only word strictly between the stable letters
  std::optional<int64_t> exponent;  // from the membership oracle (cyclic only)
};

// Innermost pinch (inner word free of stable letters), leftmost on ties;
// nullopt iff w is stable letter reduced.
std::optional<Pinch> find_pinch(const HnnSolver& hnn, const Word& w);

// Repeatedly removes pinches, then respells every maximal base segment in
// the base backend's canonical form. The result equals w in the group and
// admits no pinch.
Word britton_reduce(const HnnSolver& hnn, const Word& w);

struct Verdict;  // properties.hpp

// |u^m| = |phi(u^m)| for every pair generator u and every power with
// base-group distance at most R. Pairs with trivial u hold vacuously.
struct StripEquidistantReport {
  bool holds = true;
  int radius;
  // (stable index, pair index, exponent, |u^m|, |v^m|) for the first failure.
  std::optional<std::tuple<int, int, int64_t, int, int>> failure;
};
StripEquidistantReport check_strip_equidistant(const GroupSolver& base,
                                               const std::vector<HnnStable>& stables, int R);
StripEquidistantReport check_strip_equidistant(const HnnSolver& hnn, int R);

// Every geodesic word to a subgroup element inside B(R) must be spelled
// over Y (letters and their inverses, concatenated literally).
struct TotallyGeodesicReport {
  bool holds = true;
  int radius;
  std::optional<ElementKey> element;
  std::optional<Word> offending_geodesic;
};
TotallyGeodesicReport check_totally_geodesic(const BallIndex& ball,
                                             const std::vector<Word>& subgroup_generators,
                                             int R);

struct Strip {
  ElementKey anchor;     // w in the strip (w<x>, r)
  Letter direction;      // x
  Letter stable;         // r (possibly an inverse stable letter)
};

enum class StripSide { minus, plus };

// Side of v relative to the strip: parity of strip-edge crossings along
// the shortlex geodesic from the anchor to v; the anchor's side is minus.
StripSide strip_side(const HnnSolver& hnn, const ElementKey& v, const Strip& strip,
                     int search_radius, DistanceOracle* oracle = nullptr);

// True when v is an endpoint of one of the strip's edges.
bool on_strip(const HnnSolver& hnn, const ElementKey& v, const Strip& strip);

struct HnnShortenResult {
  Word loop;
  ElementKey basepoint;
  int constant;  // fellow-traveling constant achieved
  enum class Rule { cancellation, base_fftp, inner_fftp, pinch_replacement } rule;
};

// One shortening step following the strip-equidistant proof: free
// cancellation, base falsification when no stable letters remain, and
// otherwise the innermost pinch with either an inner falsification at
// k_base or replacement by the subgroup image (2-fellow traveled).
// nullopt for the empty loop. Throws NoShorteningStep when every rule
// fails, which falsifies the hypothesis bundle at this scale.
struct NoShorteningStep : std::runtime_error {
  Word loop;
  explicit NoShorteningStep(Word w)
      : std::runtime_error("no shortening step applies"), loop(std::move(w)) {}
};
std::optional<HnnShortenResult> hnn_shorten(const HnnSolver& hnn, const Word& w, int k_base,
                                            DistanceOracle* oracle = nullptr);

}  // namespace loopshort
