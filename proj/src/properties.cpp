#include "loopshort/properties.hpp"

#include <algorithm>

#include "loopshort/hnn_tools.hpp"

namespace loopshort {

std::optional<Word> tube_companion_search(const GroupSolver& solver,
                                          const std::vector<ElementKey>& w_positions, int k,
                                          const ElementKey& start, const ElementKey& end,
                                          int min_len, int max_len, DistanceOracle& oracle,
                                          SearchStats* stats, const SearchBudget& budget) {
  const int horizon = static_cast<int>(w_positions.size()) - 1;
  max_len = std::min(max_len, horizon);
  if (min_len > max_len) return std::nullopt;
  if (!oracle.within(w_positions[0], start, k)) return std::nullopt;

  // Once u finishes at time m it sits at `end`; every later w position
  // must stay within k of it, so m must be at least last_violation.
  int last_violation = 0;
  for (int t = horizon; t >= 1; --t)
    if (!oracle.within(w_positions[t], end, k)) {
      last_violation = t;
      break;
    }
  if (last_violation > max_len) return std::nullopt;

  struct Node {
    ElementKey at;
    uint32_t parent;  // index into previous layer
    Letter via;
  };
  std::vector<std::vector<Node>> layers(1);
  layers[0].push_back(Node{start, 0, 0});

  uint64_t transitions = 0;
  auto accept = [&](int m) {
    return m >= min_len && m >= last_violation && m <= max_len;
  };

  // Layer 0 acceptance: the empty companion.
  if (start == end && accept(0)) return Word{};

  KeyIndex dedup;
  for (int t = 0; t < max_len; ++t) {
    const ElementKey& w_next = w_positions[std::min(t + 1, horizon)];
    std::vector<Node> next;
    dedup = KeyIndex();
    std::optional<uint32_t> hit;
    for (uint32_t i = 0; i < layers[t].size() && !hit; ++i) {
      for (Letter x = 0; x < solver.alphabet().size(); ++x) {
        ++transitions;
        if (transitions > budget.max_transitions)
          throw BudgetExceeded("tube search transition budget");
        ElementKey child = solver.apply(layers[t][i].at, x);
        if (!oracle.within(w_next, child, k)) continue;
        // u must still be able to reach `end` within the remaining moves;
        // only worth a distance query once few moves remain (large-cutoff
        // queries would force the oracle to build huge balls).
        int remaining = max_len - (t + 1);
        if (remaining <= 2 * k + 2 && !oracle.within(child, end, remaining)) continue;
        auto [id, fresh] = dedup.insert(child);
        if (!fresh) continue;
        next.push_back(Node{std::move(child), i, x});
        if (accept(t + 1) && next.back().at == end) {
          hit = static_cast<uint32_t>(next.size() - 1);
          break;
        }
      }
    }
    layers.push_back(std::move(next));
    if (hit) {
      Word u;
      uint32_t idx = *hit;
      for (int tt = t + 1; tt >= 1; --tt) {
        u.push_back(layers[tt][idx].via);
        idx = layers[tt][idx].parent;
      }
      std::reverse(u.begin(), u.end());
      if (stats) stats->dp_transitions += transitions;
      return u;
    }
    if (layers.back().empty()) break;
  }
  if (stats) stats->dp_transitions += transitions;
  return std::nullopt;
}

namespace {

// Quick shortening candidates, each verified with sync_ft before use.
// (a) delete an adjacent canceling pair; (b) replace a two-step window by
// a shortlex geodesic when that saves length.
std::optional<Word> quick_loop_candidate(const GroupSolver& solver, const Word& w,
                                         const std::vector<ElementKey>& wp, int k,
                                         DistanceOracle& oracle) {
  const Alphabet& a = solver.alphabet();
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (a.inverse(w[i]) != w[i + 1]) continue;
    Word u = w;
    u.erase(u.begin() + i, u.begin() + i + 2);
    if (sync_ft(solver, w, u, k, identity_context(solver), &oracle).ok) return u;
  }
  for (size_t i = 0; i + 2 <= w.size(); ++i) {
    auto g = geodesic_word(solver, wp[i], wp[i + 2], 1, &oracle);
    if (!g) continue;  // the two steps are not replaceable by <= 1
    Word u = concat(concat(subword(w, 0, i), *g), subword(w, i + 2, w.size()));
    if (u.size() >= w.size()) continue;
    if (sync_ft(solver, w, u, k, identity_context(solver), &oracle).ok) return u;
  }
  return std::nullopt;
}

// Elements of B(k) in ball-discovery order, served from the oracle's
// shared identity ball when it is large enough.
std::vector<ElementKey> basepoint_candidates(const GroupSolver& solver, int k,
                                             DistanceOracle& oracle) {
  const BallIndex* ball = &oracle.identity_ball(k);
  BallIndex own;
  if (ball->radius < k) {
    own = build_ball(solver, k);
    ball = &own;
  }
  std::vector<ElementKey> out;
  for (uint32_t i = 0; i < ball->size() && ball->dist[i] <= k; ++i)
    out.push_back(ball->index.key(i));
  return out;
}

}  // namespace

std::optional<ShortenResult> shorten_loop(const GroupSolver& solver, const Word& w, int k,
                                          bool basepoint, DistanceOracle& oracle,
                                          SearchStats* stats, const SearchBudget& budget) {
  if (w.empty()) return std::nullopt;
  if (!solver.is_identity(solver.eval(w)))
    throw std::invalid_argument("shorten_loop expects an identity word");
  if (k < 1) throw std::invalid_argument("shorten_loop expects k >= 1");
  auto wp = path_positions(solver, solver.identity(), w);
  if (stats) ++stats->items_examined;

  if (k >= 2) {
    if (auto u = quick_loop_candidate(solver, w, wp, k, oracle))
      return ShortenResult{std::move(*u), solver.identity()};
  }

  // Escalation ladder: a complete pass at a smaller constant is cheaper
  // and any companion it finds is valid at k; the final pass at k settles
  // exhaustive failure.
  std::vector<int> rungs;
  if (k > 2) rungs.push_back(2);
  rungs.push_back(k);
  const int n = static_cast<int>(w.size());
  for (int rung : rungs) {
    if (basepoint) {
      auto u = tube_companion_search(solver, wp, rung, solver.identity(), solver.identity(), 0,
                                     n - 1, oracle, stats, budget);
      if (u) return ShortenResult{std::move(*u), solver.identity()};
    } else {
      for (const ElementKey& b : basepoint_candidates(solver, rung, oracle)) {
        auto u = tube_companion_search(solver, wp, rung, b, b, 0, n - 1, oracle, stats, budget);
        if (u) return ShortenResult{std::move(*u), b};
      }
    }
  }
  return std::nullopt;
}

bool for_each_word_to(const GroupSolver& solver, int len, const ElementKey& target,
                      DistanceOracle& oracle,
                      const std::function<bool(const Word&, const std::vector<ElementKey>&)>& fn) {
  Word word(len, 0);
  std::vector<ElementKey> pos;
  pos.reserve(len + 1);
  pos.push_back(solver.identity());
  const int n_letters = static_cast<int>(solver.alphabet().size());
  const bool identity_target = solver.is_identity(target);

  // Depth-first with explicit letter counters; prune when the prefix
  // element cannot reach the target in the remaining letters.
  int depth = 0;
  std::vector<int> next_letter(len + 1, 0);
  while (depth >= 0) {
    if (depth == len) {
      if (pos.back() == target) {
        if (!fn(word, pos)) return false;
      }
      --depth;
      pos.pop_back();
      continue;
    }
    if (next_letter[depth] >= n_letters) {
      next_letter[depth] = 0;
      --depth;
      pos.pop_back();
      continue;
    }
    Letter x = static_cast<Letter>(next_letter[depth]++);
    ElementKey child = solver.apply(pos.back(), x);
    int remaining = len - depth - 1;
    // d(child, target) <= remaining is necessary. For the identity target
    // the prefix length already bounds the distance, so the query only
    // matters once remaining < |prefix|.
    if (!identity_target || remaining < depth + 1) {
      if (!oracle.within(child, target, remaining)) continue;
    }
    word[depth] = x;
    pos.push_back(std::move(child));
    ++depth;
  }
  return true;
}

Verdict check_loop_family(const GroupSolver& solver, const std::vector<Word>& loops, int k,
                          bool basepoint, const std::string& family_name,
                          const SearchBudget& budget) {
  Verdict v;
  v.property = basepoint ? "blsp" : "lsp";
  v.params["k"] = k;
  v.search_space = "loops from family " + family_name;
  DistanceOracle oracle(solver);
  for (const Word& w : loops) {
    ++v.stats.items_examined;
    if (!shorten_loop(solver, w, k, basepoint, oracle, &v.stats, budget)) {
      v.holds = false;
      v.witness.push_back(solver.alphabet().str(w));
      return v;
    }
  }
  return v;
}

Verdict check_lsp(const GroupSolver& solver, int k, int L, bool basepoint,
                  const SearchBudget& budget) {
  Verdict v;
  v.property = basepoint ? "blsp" : "lsp";
  v.params["k"] = k;
  v.params["max_loop_len"] = L;
  v.search_space = "all identity words of length <= " + std::to_string(L) +
                   " based at the identity, shortlex order";
  DistanceOracle oracle(solver);
  for (int len = 1; len <= L && v.holds; ++len) {
    for_each_word_to(solver, len, solver.identity(), oracle,
                     [&](const Word& w, const std::vector<ElementKey>&) {
                       ++v.stats.items_examined;
                       if (!shorten_loop(solver, w, k, basepoint, oracle, &v.stats, budget)) {
                         v.holds = false;
                         v.witness.push_back(solver.alphabet().str(w));
                         return false;
                       }
                       return true;
                     });
  }
  return v;
}

Verdict check_fftp(const GroupSolver& solver, int k, int R, FftpMode mode,
                   const SearchBudget& budget) {
  Verdict v;
  v.property = "fftp";
  v.params["k"] = k;
  v.params["max_len"] = R;
  v.search_space = mode == FftpMode::all_words
                       ? "all non-geodesic words of length <= " + std::to_string(R)
                       : "words v·x with v geodesic, v·x non-geodesic, |v·x| <= " +
                             std::to_string(R);
  DistanceOracle oracle(solver);

  // Length-major enumeration so the counterexample is shortlex-first; a
  // depth-first pass per exact length, tracking positions and prefix
  // geodesy (descent stops below non-geodesic prefixes in prefix mode).
  for (int len = 1; len <= R && v.holds; ++len) {
    Word word;
    std::vector<ElementKey> pos{solver.identity()};
    std::vector<int> next_letter(len + 1, 0);
    std::vector<char> prefix_geodesic{1};
    int depth = 0;
    while (depth >= 0 && v.holds) {
      bool at_leaf = depth == static_cast<int>(word.size()) && depth == len;
      bool pruned = mode == FftpMode::geodesic_prefix && !prefix_geodesic.back() && depth < len;
      if (at_leaf || pruned ||
          next_letter[depth] >= static_cast<int>(solver.alphabet().size())) {
        if (!at_leaf && !pruned) next_letter[depth] = 0;
        --depth;
        if (depth >= 0) {
          pos.pop_back();
          prefix_geodesic.pop_back();
          word.pop_back();
        }
        continue;
      }
      Letter x = static_cast<Letter>(next_letter[depth]++);
      word.push_back(x);
      pos.push_back(solver.apply(pos.back(), x));
      ++depth;
      auto d = oracle.distance_to_identity(pos.back(), depth);
      bool geodesic = d && *d == depth;
      prefix_geodesic.push_back(geodesic ? 1 : 0);
      if (depth == len && !geodesic &&
          (mode == FftpMode::all_words || prefix_geodesic[prefix_geodesic.size() - 2])) {
        ++v.stats.items_examined;
        auto u = tube_companion_search(solver, pos, k, solver.identity(), pos.back(), 0,
                                       len - 1, oracle, &v.stats, budget);
        if (!u) {
          v.holds = false;
          v.witness.push_back(solver.alphabet().str(word));
        }
      }
    }
  }
  return v;
}

std::optional<int> restricted_distance(const BallIndex& ball, const ElementKey& x,
                                       const ElementKey& y, int cutoff) {
  if (!ball.contains(x) || !ball.contains(y))
    throw std::invalid_argument("restricted_distance endpoints must lie in the ball");
  if (x == y) return 0;
  const GroupSolver& solver = *ball.solver;
  KeyIndex seen;
  seen.insert(x);
  std::vector<uint32_t> frontier{0};
  for (int d = 1; d <= cutoff && !frontier.empty(); ++d) {
    std::vector<uint32_t> next;
    for (uint32_t i : frontier) {
      for (Letter a = 0; a < solver.alphabet().size(); ++a) {
        ElementKey n = solver.apply(seen.key(i), a);
        if (n == y) return d;
        if (!ball.contains(n)) continue;
        auto [id, fresh] = seen.insert(n);
        if (fresh) next.push_back(id);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

Verdict check_ac(const BallIndex& ball, int C, bool sphere_only) {
  Verdict v;
  v.property = "ac";
  v.params["N"] = ball.radius;
  v.params["C"] = C;
  v.search_space = std::string(sphere_only ? "pairs on S(N)" : "pairs in B(N)") +
                   " at ambient distance <= 2";
  const GroupSolver& solver = *ball.solver;
  const int N = ball.radius;

  // For C >= 2 a violating pair must have both members on S(N): otherwise
  // an ambient geodesic of length <= 2 passes within B(N).
  bool sphere_suffices = C >= 2;

  BallIndex two = build_ball(solver, 2);
  std::vector<ElementKey> offsets;
  std::vector<int> offset_dist;
  for (uint32_t i = 1; i < two.size(); ++i) {
    offsets.push_back(two.index.key(i));
    offset_dist.push_back(two.dist[i]);
  }

  for (uint32_t xi = 0; xi < ball.size() && v.holds; ++xi) {
    if ((sphere_only || sphere_suffices) && ball.dist[xi] != N) continue;
    const ElementKey& x = ball.index.key(xi);
    for (size_t zi = 0; zi < offsets.size(); ++zi) {
      ElementKey y = solver.mul(x, offsets[zi]);
      auto yid = ball.index.find(y);
      if (!yid || *yid <= xi) continue;  // outside the ball, or pair already seen
      if ((sphere_only || sphere_suffices) && ball.dist[*yid] != N) continue;
      ++v.stats.items_examined;
      if (restricted_distance(ball, x, y, C).has_value()) continue;
      v.holds = false;
      v.witness.push_back(solver.describe(x));
      v.witness.push_back(solver.describe(y));
      auto reported = restricted_distance(ball, x, y, C + 8);
      v.witness.push_back(reported ? std::to_string(*reported) : (">" + std::to_string(C + 8)));
      break;
    }
  }
  return v;
}

FillingCertificate fill_loop(const GroupSolver& solver, const Word& w, int k,
                             DistanceOracle& oracle, const FillOptions& opts) {
  if (!solver.is_identity(solver.eval(w)))
    throw std::invalid_argument("fill_loop expects an identity word");
  FillingCertificate cert;
  cert.k = k;
  const auto* hnn = dynamic_cast<const HnnSolver*>(&solver);

  Word cur = w;
  ElementKey cur_base = solver.identity();
  while (!cur.empty()) {
    auto wp = path_positions(solver, cur_base, cur);
    // Find the next loop: cheap candidates, the proof strategy for HNN
    // presentations, then the complete DP.
    std::optional<ShortenResult> next;
    if (k >= 2) {
      if (auto u = quick_loop_candidate(solver, cur, wp, k, oracle))
        next = ShortenResult{std::move(*u), cur_base};
    }
    if (!next && hnn && k >= 2) {
      try {
        auto step = hnn_shorten(*hnn, cur, std::max(2, k), &oracle);
        if (step && step->constant <= k) {
          // hnn_shorten works from identity-based positions; translate the
          // basepoint when this stage of the chain sits elsewhere.
          ElementKey b = solver.mul(cur_base, step->basepoint);
          if (sync_ft(solver, cur, step->loop, k, PathContext{cur_base, b}, &oracle).ok)
            next = ShortenResult{step->loop, b};
        }
      } catch (const NoShorteningStep&) {
      }
    }
    if (!next) {
      // Positions here start at cur_base, not the identity, so inline the
      // DP rather than reusing shorten_loop's identity-based wrapper.
      auto u = tube_companion_search(solver, wp, k, cur_base, cur_base, 0,
                                     static_cast<int>(cur.size()) - 1, oracle, nullptr,
                                     opts.budget);
      if (u) {
        next = ShortenResult{std::move(*u), cur_base};
      } else {
        for (const ElementKey& z : basepoint_candidates(solver, k, oracle)) {
          ElementKey b = solver.mul(cur_base, z);
          auto u2 = tube_companion_search(solver, wp, k, b, b, 0,
                                          static_cast<int>(cur.size()) - 1, oracle, nullptr,
                                          opts.budget);
          if (u2) {
            next = ShortenResult{std::move(*u2), b};
            break;
          }
        }
      }
    }
    if (!next) throw FillStuck(cur);

    // Annular decomposition between cur and next: one rectangle per
    // position of cur, degenerate rectangles skipped.
    auto up = path_positions(solver, next->basepoint, next->loop);
    FillingStep step;
    step.loop = cur;
    step.basepoint = cur_base;
    const size_t n = cur.size();
    std::vector<Word> connectors(n + 1);
    for (size_t t = 0; t <= n; ++t) {
      auto g = geodesic_word(solver, position_at(wp, t), position_at(up, t), k, &oracle);
      if (!g) throw std::logic_error("fill connector exceeds k");
      connectors[t] = std::move(*g);
    }
    const Alphabet& alpha = solver.alphabet();
    for (size_t t = 0; t < n; ++t) {
      Word top{cur[t]};
      Word bottom = t < next->loop.size() ? Word{next->loop[t]} : Word{};
      Word rect = concat(concat(top, connectors[t + 1]),
                         concat(invert(alpha, bottom), invert(alpha, connectors[t])));
      Word reduced = free_reduce(alpha, rect);
      if (reduced.empty()) continue;  // degenerate rectangle
      if (!solver.is_identity(solver.eval(rect)))
        throw std::logic_error("fill rectangle is not a relator");
      int len = static_cast<int>(rect.size());
      if (len > 2 * k + 2) throw std::logic_error("fill rectangle exceeds 2k+2");
      ++step.relators;
      step.max_relator_len = std::max(step.max_relator_len, len);
      if (opts.keep_rectangles) cert.rectangles.push_back(rect);
    }
    if (step.relators > n) throw std::logic_error("fill step exceeds |w_i| relators");
    cert.total_relators += step.relators;
    cert.max_relator_len = std::max(cert.max_relator_len, step.max_relator_len);
    cert.steps.push_back(std::move(step));

    cur = next->loop;
    cur_base = next->basepoint;
  }
  cert.steps.push_back(FillingStep{Word{}, cur_base, 0, 0});
  if (cert.total_relators > static_cast<uint64_t>(w.size()) * w.size())
    throw std::logic_error("fill certificate exceeds |w|^2 relators");
  return cert;
}

AcPathResult blsp_to_ac_path(const BallIndex& ball, const Word& w, const Word& u,
                             const Word& gamma, int k, DistanceOracle& oracle) {
  const GroupSolver& solver = *ball.solver;
  const int N = ball.radius;
  if (static_cast<int>(w.size()) != N || static_cast<int>(u.size()) != N)
    throw std::invalid_argument("w and u must be geodesics of length N = ball radius");
  if (gamma.size() > 2) throw std::invalid_argument("gamma must have length <= 2");
  ElementKey w_end = solver.eval(w);
  ElementKey u_end = solver.eval(u);
  if (solver.eval_from(w_end, gamma) != u_end)
    throw std::invalid_argument("gamma does not connect the endpoints");
  if (k % 2) ++k;  // the construction assumes an even constant

  AcPathResult res;
  res.k_used = k;
  res.length_bound = 6 * k + 2;
  if (gamma.size() <= 1) {
    // Both endpoints lie in the ball; a path of length <= 1 stays inside.
    res.path = gamma;
    return res;
  }

  Word big = concat(concat(w, gamma), invert(solver.alphabet(), u));
  auto y = shorten_loop(solver, big, k, true, oracle);
  if (!y) throw BlspUnavailable("no basepoint shortening of w·gamma·u^-1 at k=" +
                                std::to_string(k));
  auto v = shorten_loop(solver, y->loop, k, true, oracle);
  if (!v) throw BlspUnavailable("no basepoint shortening of the shortened loop at k=" +
                                std::to_string(k));

  auto wp = path_positions(solver, solver.identity(), w);
  auto up = path_positions(solver, solver.identity(), u);
  auto bigp = path_positions(solver, solver.identity(), big);
  auto yp = path_positions(solver, solver.identity(), y->loop);
  auto vp = path_positions(solver, solver.identity(), v->loop);

  auto geo = [&](const ElementKey& a, const ElementKey& b) {
    auto g = geodesic_word(solver, a, b, k, &oracle);
    if (!g) throw std::logic_error("connector exceeds k");
    return *g;
  };

  const size_t t1 = static_cast<size_t>(std::max(0, N - k / 2));
  const size_t t2 = static_cast<size_t>(N + k / 2 + 2);

  Word path;
  // Retrace w from its end back to w(t1).
  path = invert(solver.alphabet(), subword(w, t1, w.size()));
  path = concat(path, geo(position_at(wp, t1), position_at(yp, t1)));
  path = concat(path, geo(position_at(yp, t1), position_at(vp, t1)));
  path = concat(path, subword(v->loop, t1, t2));
  path = concat(path, geo(position_at(vp, t2), position_at(yp, t2)));
  path = concat(path, geo(position_at(yp, t2), position_at(bigp, t2)));
  // big(t2) sits on u at arc 2N + |gamma| - t2; walk u forward to its end.
  size_t a2 = static_cast<size_t>(
      std::clamp<int>(2 * N + static_cast<int>(gamma.size()) - static_cast<int>(t2), 0, N));
  path = concat(path, subword(u, a2, u.size()));

  if (solver.eval_from(w_end, path) != u_end)
    throw std::logic_error("connecting path misses its endpoint");
  if (static_cast<int>(path.size()) > res.length_bound)
    throw std::logic_error("connecting path exceeds 6k+2");
  ElementKey at = w_end;
  if (!ball.contains(at)) throw std::logic_error("connecting path leaves the ball");
  for (Letter x : path) {
    at = solver.apply(at, x);
    if (!ball.contains(at)) throw std::logic_error("connecting path leaves the ball");
  }
  res.path = std::move(path);
  return res;
}

}  // namespace loopshort
