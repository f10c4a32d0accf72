#include "loopshort/hnn_tools.hpp"

#include <algorithm>

#include "loopshort/properties.hpp"

namespace loopshort {

std::optional<Pinch> find_pinch(const HnnSolver& hnn, const Word& w) {
  // Scan left to right; whenever a stable letter closes against the most
  // recent open stable letter (same letter, opposite sign) the enclosed
  // base word is membership-tested. The first success is the leftmost
  // innermost pinch.
  struct Open {
    size_t pos;
    int index;
    bool negative;
  };
  std::vector<Open> stack;
  for (size_t i = 0; i < w.size(); ++i) {
    if (!hnn.is_stable(w[i])) continue;
    auto [index, negative] = hnn.stable_of(w[i]);
    if (!stack.empty()) {
      const Open& top = stack.back();
      if (top.index == index && top.negative != negative) {
        Word inner = subword(w, top.pos + 1, i);
        bool base_only = std::none_of(inner.begin(), inner.end(),
                                      [&](Letter x) { return hnn.is_stable(x); });
        if (base_only) {
          ElementKey e = hnn.base().eval(hnn.to_base_word(inner));
          // s^-1 u s pinches with u in U; s v s^-1 with v in V.
          bool side_v = !top.negative;
          auto m = hnn.subgroup_member(index, side_v, e);
          if (m || hnn.oracle_is_full(index)) {
            Pinch p;
            p.begin = top.pos;
            p.end = i;
            p.stable_index = index;
            p.opens_negative = top.negative;
            p.inner = inner;
            if (!hnn.oracle_is_full(index)) p.exponent = m;
            return p;
          }
        }
      }
    }
    stack.push_back(Open{i, index, negative});
  }
  return std::nullopt;
}

Word britton_reduce(const HnnSolver& hnn, const Word& w) {
  Word cur = w;
  while (auto p = find_pinch(hnn, cur)) {
    bool side_v = !p->opens_negative;
    ElementKey inner = hnn.base().eval(hnn.to_base_word(p->inner));
    ElementKey image = hnn.subgroup_image(p->stable_index, side_v, inner);
    Word replacement = hnn.from_base_word(hnn.base().canonical_word(image));
    Word next = concat(concat(subword(cur, 0, p->begin), replacement),
                       subword(cur, p->end + 1, cur.size()));
    cur = std::move(next);
  }
  // Respell every maximal base segment canonically.
  Word out;
  Word segment;
  auto flush = [&]() {
    if (segment.empty()) return;
    ElementKey e = hnn.base().eval(hnn.to_base_word(segment));
    Word canon = hnn.from_base_word(hnn.base().canonical_word(e));
    out.insert(out.end(), canon.begin(), canon.end());
    segment.clear();
  };
  for (Letter x : cur) {
    if (hnn.is_stable(x)) {
      flush();
      out.push_back(x);
    } else {
      segment.push_back(x);
    }
  }
  flush();
  return out;
}

StripEquidistantReport check_strip_equidistant(const GroupSolver& base,
                                               const std::vector<HnnStable>& stables, int R) {
  StripEquidistantReport rep;
  rep.radius = R;
  DistanceOracle oracle(base);
  for (size_t i = 0; i < stables.size(); ++i) {
    for (size_t j = 0; j < stables[i].pairs.size(); ++j) {
      ElementKey u = base.eval(stables[i].pairs[j].first);
      ElementKey v = base.eval(stables[i].pairs[j].second);
      if (base.is_identity(u)) continue;  // vacuous
      for (int64_t m = 1; m <= 4 * R + 8; ++m) {
        for (int sign : {+1, -1}) {
          ElementKey um = base.power(u, sign * m);
          auto du = oracle.distance_to_identity(um, R);
          if (!du) continue;
          ElementKey vm = base.power(v, sign * m);
          auto dv = oracle.distance_to_identity(vm, std::max(R, *du + 1));
          if (!dv || *dv != *du) {
            rep.holds = false;
            rep.failure = {static_cast<int>(i), static_cast<int>(j), sign * m, *du,
                           dv ? *dv : -1};
            return rep;
          }
        }
        // Powers only grow; once both directions leave B(R) stop.
        auto dpos = oracle.distance_to_identity(base.power(u, m), R);
        auto dneg = oracle.distance_to_identity(base.power(u, -m), R);
        if (!dpos && !dneg) break;
      }
    }
  }
  return rep;
}

StripEquidistantReport check_strip_equidistant(const HnnSolver& hnn, int R) {
  return check_strip_equidistant(hnn.base(), hnn.structure().stables, R);
}

TotallyGeodesicReport check_totally_geodesic(const BallIndex& ball,
                                             const std::vector<Word>& subgroup_generators,
                                             int R) {
  TotallyGeodesicReport rep;
  rep.radius = R;
  const GroupSolver& solver = *ball.solver;
  if (R > ball.radius) throw std::invalid_argument("ball smaller than requested radius");

  // Subgroup elements inside B(R), reached by generator words of length
  // at most R; breadth-first so elements appear by generator length.
  std::vector<Word> gens;
  for (const Word& y : subgroup_generators) {
    gens.push_back(y);
    gens.push_back(invert(solver.alphabet(), y));
  }
  KeyIndex members;
  members.insert(solver.identity());
  std::vector<uint32_t> frontier{0};
  for (int step = 0; step < R && !frontier.empty(); ++step) {
    std::vector<uint32_t> next;
    for (uint32_t i : frontier)
      for (const Word& g : gens) {
        ElementKey e = solver.eval_from(members.key(i), g);
        auto d = ball.distance(e);
        if (!d || *d > R) continue;
        auto [id, fresh] = members.insert(e);
        if (fresh) next.push_back(id);
      }
    frontier = std::move(next);
  }

  // Literal factorization over the generator words and their inverses.
  auto in_star = [&](const Word& w) {
    std::vector<char> reach(w.size() + 1, 0);
    reach[0] = 1;
    for (size_t i = 0; i < w.size(); ++i) {
      if (!reach[i]) continue;
      for (const Word& g : gens) {
        if (g.empty() || i + g.size() > w.size()) continue;
        if (std::equal(g.begin(), g.end(), w.begin() + i)) reach[i + g.size()] = 1;
      }
    }
    return reach[w.size()] == 1;
  };

  DistanceOracle oracle(solver);
  for (uint32_t i = 0; i < members.size(); ++i) {
    const ElementKey& g = members.key(i);
    GeodesicEnumerator en(ball, g, &oracle);
    while (auto w = en.next()) {
      if (!in_star(*w)) {
        rep.holds = false;
        rep.element = g;
        rep.offending_geodesic = *w;
        return rep;
      }
    }
  }
  return rep;
}

bool on_strip(const HnnSolver& hnn, const ElementKey& v, const Strip& strip) {
  // v = anchor · x^i  or  v = anchor · x^i · r for some integer i: the
  // offset must be a power of x, possibly after removing a trailing r.
  ElementKey x_gen = hnn.eval(Word{strip.direction});
  auto offset_is_power = [&](const ElementKey& off) {
    const auto* base = &hnn.base();
    // The offset must be a pure base element.
    if (hnn.stable_syllables(off) != 0) return false;
    Word spelled = hnn.canonical_word(off);
    ElementKey base_off = base->eval(hnn.to_base_word(spelled));
    ElementKey base_x = base->eval(hnn.to_base_word(hnn.canonical_word(x_gen)));
    return base->cyclic_exponent(base_x, base_off).has_value();
  };
  ElementKey off = hnn.mul(hnn.inverse(strip.anchor), v);
  if (offset_is_power(off)) return true;
  ElementKey off2 = hnn.mul(off, hnn.inverse(hnn.eval(Word{strip.stable})));
  return offset_is_power(off2);
}

StripSide strip_side(const HnnSolver& hnn, const ElementKey& v, const Strip& strip,
                     int search_radius, DistanceOracle* oracle) {
  std::unique_ptr<DistanceOracle> own;
  if (!oracle) {
    own = std::make_unique<DistanceOracle>(hnn);
    oracle = own.get();
  }
  auto path = geodesic_word(hnn, strip.anchor, v, search_radius, oracle);
  if (!path) throw std::invalid_argument("vertex beyond the strip-side search radius");

  // Count crossings of strip edges (anchor·x^i, anchor·x^i·r) in either
  // direction along the geodesic.
  ElementKey x_gen_base = hnn.base().eval(
      hnn.to_base_word(Word{strip.direction}));
  auto is_rail_point = [&](const ElementKey& p) {
    ElementKey off = hnn.mul(hnn.inverse(strip.anchor), p);
    if (hnn.stable_syllables(off) != 0) return false;
    ElementKey base_off = hnn.base().eval(hnn.to_base_word(hnn.canonical_word(off)));
    return hnn.base().cyclic_exponent(x_gen_base, base_off).has_value();
  };
  int crossings = 0;
  ElementKey at = strip.anchor;
  Letter r = strip.stable;
  Letter r_inv = hnn.alphabet().inverse(r);
  for (Letter step : *path) {
    ElementKey next = hnn.apply(at, step);
    if (step == r && is_rail_point(at))
      ++crossings;
    else if (step == r_inv && is_rail_point(next))
      ++crossings;
    at = std::move(next);
  }
  return crossings % 2 == 0 ? StripSide::minus : StripSide::plus;
}

std::optional<HnnShortenResult> hnn_shorten(const HnnSolver& hnn, const Word& w, int k_base,
                                            DistanceOracle* oracle) {
  if (w.empty()) return std::nullopt;
  if (!hnn.is_identity(hnn.eval(w)))
    throw std::invalid_argument("hnn_shorten expects an identity word");
  std::unique_ptr<DistanceOracle> own;
  if (!oracle) {
    own = std::make_unique<DistanceOracle>(hnn);
    oracle = own.get();
  }
  const Alphabet& alpha = hnn.alphabet();

  auto finish = [&](Word loop, const ElementKey& basepoint, int constant,
                    HnnShortenResult::Rule rule) {
    if (loop.size() >= w.size()) throw std::logic_error("hnn_shorten failed to shorten");
    SyncReport rep = sync_ft(hnn, w, loop, constant,
                             PathContext{hnn.identity(), basepoint}, oracle);
    if (!rep.ok)
      throw std::logic_error("hnn_shorten output misses its fellow-traveling constant");
    return HnnShortenResult{std::move(loop), basepoint, constant, rule};
  };

  // Free cancellation first: Britton's lemma speaks about freely reduced
  // words, and deleting x·x^-1 is 2-fellow traveled.
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (alpha.inverse(w[i]) != w[i + 1]) continue;
    Word u = w;
    u.erase(u.begin() + i, u.begin() + i + 2);
    return finish(std::move(u), hnn.identity(), std::max(k_base, 2),
                  HnnShortenResult::Rule::cancellation);
  }

  bool has_stable = std::any_of(w.begin(), w.end(), [&](Letter x) { return hnn.is_stable(x); });
  if (!has_stable) {
    // Base loop: nonempty identity words are non-geodesic, so the base
    // falsification applies to the whole loop.
    auto wp = path_positions(hnn, hnn.identity(), w);
    auto u = tube_companion_search(hnn, wp, k_base, hnn.identity(), hnn.identity(), 0,
                                   static_cast<int>(w.size()) - 1, *oracle);
    if (!u) throw NoShorteningStep(w);
    return finish(std::move(*u), hnn.identity(), std::max(k_base, 2),
                  HnnShortenResult::Rule::base_fftp);
  }

  auto pinch = find_pinch(hnn, w);
  if (!pinch) throw NoShorteningStep(w);

  const GroupSolver& base = hnn.base();
  DistanceOracle base_oracle(base);
  Word inner_base = hnn.to_base_word(pinch->inner);
  ElementKey inner_elt = base.eval(inner_base);
  auto inner_dist = base_oracle.distance_to_identity(inner_elt,
                                                     static_cast<int>(inner_base.size()));

  if (inner_dist && *inner_dist < static_cast<int>(inner_base.size())) {
    // Inner word is not geodesic: falsify it inside the base group (the
    // base falsification search, applied to this single word), preferring
    // companions at most 2 shorter so the whole loop stays within
    // max(k_base, 2).
    auto bp = path_positions(base, base.identity(), inner_base);
    std::optional<Word> u;
    for (int min_len : {static_cast<int>(inner_base.size()) - 2, 0}) {
      u = tube_companion_search(base, bp, k_base, base.identity(), inner_elt,
                                std::max(0, min_len),
                                static_cast<int>(inner_base.size()) - 1, base_oracle);
      if (u) break;
    }
    if (!u) throw NoShorteningStep(w);
    int delta = static_cast<int>(inner_base.size() - u->size());
    Word next = concat(concat(subword(w, 0, pinch->begin + 1), hnn.from_base_word(*u)),
                       subword(w, pinch->end, w.size()));
    return finish(std::move(next), hnn.identity(), std::max({k_base, 2, delta}),
                  HnnShortenResult::Rule::inner_fftp);
  }

  // Inner word is geodesic: under the totally-geodesic hypothesis it is a
  // literal power of the pair generator (single-letter images for a full
  // oracle), and the pinch is 2-fellow traveled by its image. A geodesic
  // inner spelled outside the subgroup generators falsifies the
  // hypothesis bundle at this instance.
  Word replacement;
  if (hnn.oracle_is_full(pinch->stable_index)) {
    bool side_v = !pinch->opens_negative;
    for (Letter x : pinch->inner) {
      ElementKey img = hnn.subgroup_image(pinch->stable_index, side_v,
                                          base.eval(hnn.to_base_word(Word{x})));
      Word img_word = base.canonical_word(img);
      if (img_word.size() != 1) throw NoShorteningStep(w);
      replacement.push_back(hnn.from_base_word(img_word)[0]);
    }
  } else {
    const auto& [u_word, v_word] = hnn.pairs(pinch->stable_index)[0];
    bool side_v = !pinch->opens_negative;
    const Word& from = side_v ? v_word : u_word;
    const Word& to = side_v ? u_word : v_word;
    const Alphabet& ba = base.alphabet();
    auto literal_power = [&](const Word& unit) {
      if (unit.empty() || inner_base.size() % unit.size()) return -1;
      for (size_t i = 0; i < inner_base.size(); ++i)
        if (inner_base[i] != unit[i % unit.size()]) return -1;
      return static_cast<int>(inner_base.size() / unit.size());
    };
    int m = literal_power(from);
    Word to_unit = to;
    if (m < 0) {
      m = literal_power(invert(ba, from));
      to_unit = invert(ba, to);
    }
    if (m < 0) throw NoShorteningStep(w);  // totally-geodesic hypothesis fails here
    replacement = hnn.from_base_word(repeat(to_unit, m));
  }
  Word next = concat(concat(subword(w, 0, pinch->begin), replacement),
                     subword(w, pinch->end + 1, w.size()));
  return finish(std::move(next), hnn.identity(), std::max(k_base, 2),
                HnnShortenResult::Rule::pinch_replacement);
}

}  // namespace loopshort
