// Finite-radius certifiers and falsifiers: loop shortening (with and
// without basepoint), falsification by fellow traveler, almost convexity,
// quadratic filling certificates, and the basepoint-shortening route to
// in-ball connecting paths.
//
// Verdicts are always per-parameter ("holds up to this bound"), never
// absolute claims; counterexample witnesses re-verify in isolation.

#pragma once

#include <functional>
#include <map>

#include "loopshort/cayley.hpp"
#include "loopshort/fellow.hpp"

namespace loopshort {

struct SearchStats {
  uint64_t items_examined = 0;
  uint64_t dp_transitions = 0;
};

struct SearchBudget {
  uint64_t max_transitions = UINT64_MAX;
};

struct Verdict {
  std::string property;
  std::string group;
  std::map<std::string, int64_t> params;
  bool holds = true;
  std::string search_space;           // the quantifier actually checked
  std::vector<std::string> witness;   // words / elements, human-readable
  SearchStats stats;
};

// Complete search for a companion path: a word u with |u| in
// [min_len, max_len], u(0) = start, u(|u|) = end, frozen at its endpoint,
// and d(w(t), u(t)) <= k for every integer t in [0, |w_positions|-1].
// The witness has minimal length, ties broken by the deterministic DP
// expansion order (states in insertion order, letters ascending).
std::optional<Word> tube_companion_search(const GroupSolver& solver,
                                          const std::vector<ElementKey>& w_positions, int k,
                                          const ElementKey& start, const ElementKey& end,
                                          int min_len, int max_len, DistanceOracle& oracle,
                                          SearchStats* stats = nullptr,
                                          const SearchBudget& budget = {});

struct ShortenResult {
  Word loop;
  ElementKey basepoint;
};

// A loop u with |u| < |w| synchronously k-fellow traveling w (positions
// from the identity). basepoint=true pins u(0) = w(0); otherwise u(0)
// ranges over the k-neighborhood of w(0) in ball-discovery order.
// nullopt means exhaustive failure of the complete DP.
std::optional<ShortenResult> shorten_loop(const GroupSolver& solver, const Word& w, int k,
                                          bool basepoint, DistanceOracle& oracle,
                                          SearchStats* stats = nullptr,
                                          const SearchBudget& budget = {});

// Runs shorten_loop over every loop of length <= L based at the identity,
// in shortlex order (pruned depth-first enumeration); the counterexample,
// if any, is the first loop admitting no shortening.
Verdict check_lsp(const GroupSolver& solver, int k, int L, bool basepoint,
                  const SearchBudget& budget = {});

// Same check over an explicit loop family (used by --family).
Verdict check_loop_family(const GroupSolver& solver, const std::vector<Word>& loops, int k,
                          bool basepoint, const std::string& family_name,
                          const SearchBudget& budget = {});

enum class FftpMode { all_words, geodesic_prefix };

// Every non-geodesic word of length <= R must admit a strictly shorter
// path with the same endpoints k-fellow traveling it.
Verdict check_fftp(const GroupSolver& solver, int k, int R, FftpMode mode = FftpMode::all_words,
                   const SearchBudget& budget = {});

// BFS over ball members only; nullopt when y is unreachable from x inside
// the ball within the cutoff.
std::optional<int> restricted_distance(const BallIndex& ball, const ElementKey& x,
                                       const ElementKey& y, int cutoff = INT32_MAX);

// Every pair at ambient distance <= 2 inside B(N) (or on S(N) when
// sphere_only) must be joined inside B(N) by a path of length <= C.
Verdict check_ac(const BallIndex& ball, int C, bool sphere_only);

struct FillingStep {
  Word loop;
  ElementKey basepoint;
  uint32_t relators = 0;
  int max_relator_len = 0;
};

struct FillingCertificate {
  int k = 0;
  std::vector<FillingStep> steps;  // w = steps[0].loop, ..., empty word last
  uint64_t total_relators = 0;
  int max_relator_len = 0;
  // Rectangles kept only on request (CLI traces).
  std::vector<Word> rectangles;
};

struct FillStuck : std::runtime_error {
  Word loop;
  explicit FillStuck(Word w)
      : std::runtime_error("loop admits no k-fellow-traveling shortening"), loop(std::move(w)) {}
};

struct FillOptions {
  bool keep_rectangles = false;
  SearchBudget budget;
};

// Iterative shortening chain down to the empty word with an annular
// decomposition between consecutive loops: at most |w_i| relators per
// step, each of length <= 2k+2, total <= |w|^2. All three bounds are
// recomputed and enforced on the result. Throws FillStuck when a stage
// admits no shortening (an LSP counterexample at this k).
FillingCertificate fill_loop(const GroupSolver& solver, const Word& w, int k,
                             DistanceOracle& oracle, const FillOptions& opts = {});

struct AcPathResult {
  Word path;    // from the endpoint of w to the endpoint of u
  int k_used;   // k rounded up to even
  int length_bound;  // 6k+2
};

struct BlspUnavailable : std::runtime_error {
  explicit BlspUnavailable(const std::string& what) : std::runtime_error(what) {}
};

// The connecting-path construction: w, u geodesics of length N (= ball
// radius) with endpoints at distance <= 2 realized by gamma. Applies two
// basepoint shortenings to w·gamma·u^-1 and routes across the shortened
// loops; the result has length <= 6k+2 and is verified to stay in B(N).
// Throws BlspUnavailable when a basepoint shortening does not exist at k.
AcPathResult blsp_to_ac_path(const BallIndex& ball, const Word& w, const Word& u,
                             const Word& gamma, int k, DistanceOracle& oracle);

// Deterministic shortlex enumeration of words with d(1, prefix) pruning:
// visits every word of exact length `len` that evaluates to `target`,
// lex order; fn returns false to stop early. Returns false if stopped.
bool for_each_word_to(const GroupSolver& solver, int len, const ElementKey& target,
                      DistanceOracle& oracle,
                      const std::function<bool(const Word&, const std::vector<ElementKey>&)>& fn);

}  // namespace loopshort
