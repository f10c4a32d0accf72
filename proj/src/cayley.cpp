#include "loopshort/cayley.hpp"

#include <algorithm>

namespace loopshort {

KeyIndex::KeyIndex() : slots_(64, Slot{0, 0}) {}

void KeyIndex::reserve(size_t n) {
  keys_.reserve(n);
  size_t want = 64;
  while (want < n * 2) want <<= 1;
  if (want > slots_.size()) {
    std::vector<ElementKey> old = std::move(keys_);
    keys_.clear();
    slots_.assign(want, Slot{0, 0});
    heap_bytes_ = 0;
    for (auto& k : old) insert(k);
    keys_.reserve(n);
  }
}

void KeyIndex::grow() {
  std::vector<Slot> old = std::move(slots_);
  slots_.assign(old.size() * 2, Slot{0, 0});
  size_t mask = slots_.size() - 1;
  for (const Slot& s : old) {
    if (!s.id_plus_1) continue;
    size_t i = s.hash & mask;
    while (slots_[i].id_plus_1) i = (i + 1) & mask;
    slots_[i] = s;
  }
}

std::pair<uint32_t, bool> KeyIndex::insert(const ElementKey& k) {
  if ((keys_.size() + 1) * 5 > slots_.size() * 3) grow();
  size_t mask = slots_.size() - 1;
  size_t i = k.hash() & mask;
  while (slots_[i].id_plus_1) {
    const Slot& s = slots_[i];
    if (s.hash == k.hash() && keys_[s.id_plus_1 - 1] == k) return {s.id_plus_1 - 1, false};
    i = (i + 1) & mask;
  }
  auto id = static_cast<uint32_t>(keys_.size());
  if (k.payload().size() > sizeof(std::string)) heap_bytes_ += k.payload().capacity();
  keys_.push_back(k);
  slots_[i] = Slot{k.hash(), id + 1};
  return {id, true};
}

std::optional<uint32_t> KeyIndex::find(const ElementKey& k) const {
  size_t mask = slots_.size() - 1;
  size_t i = k.hash() & mask;
  while (slots_[i].id_plus_1) {
    const Slot& s = slots_[i];
    if (s.hash == k.hash() && keys_[s.id_plus_1 - 1] == k) return s.id_plus_1 - 1;
    i = (i + 1) & mask;
  }
  return std::nullopt;
}

size_t KeyIndex::memory_bytes() const {
  return keys_.capacity() * sizeof(ElementKey) + slots_.capacity() * sizeof(Slot) + heap_bytes_;
}

std::optional<int> BallIndex::distance(const ElementKey& k) const {
  auto id = index.find(k);
  if (!id) return std::nullopt;
  return dist[*id];
}

Word BallIndex::parent_word(const ElementKey& k) const {
  auto id = index.find(k);
  if (!id) throw std::invalid_argument("element not in ball");
  Word w;
  uint32_t cur = *id;
  while (dist[cur] > 0) {
    Letter x = parent[cur];
    w.push_back(x);
    ElementKey prev = solver->apply(index.key(cur), solver->alphabet().inverse(x));
    cur = *index.find(prev);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

BallIndex build_ball(const GroupSolver& solver, int radius, const BallOptions& opts) {
  BallIndex ball;
  ball.solver = &solver;
  ball.requested_radius = radius;
  ball.index.insert(solver.identity());
  ball.dist.push_back(0);
  ball.parent.push_back(0);
  ball.sphere_sizes.push_back(1);
  ball.radius = 0;

  uint32_t layer_begin = 0, layer_end = 1;
  for (int r = 1; r <= radius; ++r) {
    for (uint32_t i = layer_begin; i < layer_end; ++i) {
      for (Letter x = 0; x < solver.alphabet().size(); ++x) {
        ElementKey next = solver.apply(ball.index.key(i), x);
        auto [id, fresh] = ball.index.insert(next);
        if (fresh) {
          ball.dist.push_back(static_cast<uint8_t>(r));
          ball.parent.push_back(x);
        }
      }
      if (ball.index.memory_bytes() > opts.memory_budget_bytes) return ball;
    }
    ball.sphere_sizes.push_back(ball.index.size() - layer_end);
    ball.radius = r;
    layer_begin = layer_end;
    layer_end = static_cast<uint32_t>(ball.index.size());
    if (layer_begin == layer_end) break;  // finite group exhausted
  }
  if (ball.radius < radius) {
    // Group exhausted before the requested radius: later spheres are empty.
    while (ball.radius < radius) {
      ball.sphere_sizes.push_back(0);
      ++ball.radius;
    }
  }
  return ball;
}

std::optional<int> bounded_distance(const GroupSolver& solver, const ElementKey& x,
                                    const ElementKey& y, int cutoff) {
  if (cutoff < 0) return std::nullopt;
  ElementKey z = solver.mul(solver.inverse(x), y);
  if (solver.is_identity(z)) return 0;
  if (cutoff == 0) return std::nullopt;

  // Bidirectional BFS between 1 and z, expanding the smaller frontier.
  struct Side {
    KeyIndex seen;
    std::vector<uint8_t> dist;
    std::vector<uint32_t> frontier;
    int depth = 0;
  };
  Side from, to;
  from.seen.insert(solver.identity());
  from.dist.push_back(0);
  from.frontier.push_back(0);
  to.seen.insert(z);
  to.dist.push_back(0);
  to.frontier.push_back(0);

  auto expand = [&](Side& side, Side& other) -> std::optional<int> {
    std::vector<uint32_t> next;
    ++side.depth;
    std::optional<int> best;
    for (uint32_t i : side.frontier) {
      for (Letter a = 0; a < solver.alphabet().size(); ++a) {
        ElementKey n = solver.apply(side.seen.key(i), a);
        auto [id, fresh] = side.seen.insert(n);
        if (!fresh) continue;
        side.dist.push_back(static_cast<uint8_t>(side.depth));
        if (auto hit = other.seen.find(n)) {
          int total = side.depth + other.dist[*hit];
          if (!best || total < *best) best = total;
        }
        next.push_back(id);
      }
    }
    side.frontier = std::move(next);
    return best;
  };

  // A meeting found right after expanding depth d can still be beaten by
  // pairs found one expansion later, but no more; run one extra round.
  std::optional<int> best;
  while (from.depth + to.depth < cutoff) {
    Side& smaller = from.frontier.size() <= to.frontier.size() ? from : to;
    Side& other = (&smaller == &from) ? to : from;
    if (smaller.frontier.empty()) break;
    auto found = expand(smaller, other);
    if (found && (!best || *found < *best)) best = *found;
    if (best && *best <= from.depth + to.depth) break;
  }
  if (best && *best <= cutoff) return best;
  return std::nullopt;
}

DistanceOracle::DistanceOracle(const GroupSolver& solver, size_t ball_entry_cap)
    : solver_(&solver), cap_(ball_entry_cap) {
  ball_ = build_ball(solver, 0);
}

std::optional<int> DistanceOracle::distance_to_identity(const ElementKey& z, int cutoff) {
  if (cutoff < 0) return std::nullopt;
  while (ball_usable_ && ball_.radius < cutoff) {
    // Stop growing once the next layer could breach the entry cap.
    size_t predicted = ball_.size() * std::max<size_t>(solver_->alphabet().size(), 2);
    if (predicted > cap_) {
      ball_usable_ = false;
      break;
    }
    BallIndex grown = build_ball(*solver_, ball_.radius + 1);
    bool advanced = grown.radius > ball_.radius;
    ball_ = std::move(grown);
    if (!advanced) {
      ball_usable_ = false;
      break;
    }
  }
  if (ball_.radius >= cutoff) {
    auto d = ball_.distance(z);
    if (d && *d <= cutoff) return d;
    return std::nullopt;
  }
  if (auto d = ball_.distance(z)) return d;  // exact even past the cap
  auto it = cache_.find(z.payload());
  if (it != cache_.end())
    return it->second <= cutoff ? std::optional<int>(it->second) : std::nullopt;
  auto lb = lower_bound_cache_.find(z.payload());
  if (lb != lower_bound_cache_.end() && lb->second > cutoff) return std::nullopt;
  auto d = bounded_distance(*solver_, solver_->identity(), z, cutoff);
  if (d)
    cache_[z.payload()] = *d;
  else {
    auto& slot = lower_bound_cache_[z.payload()];
    slot = std::max(slot, cutoff + 1);
  }
  return d;
}

std::optional<int> DistanceOracle::distance(const ElementKey& x, const ElementKey& y, int cutoff) {
  // d(x, y) = d(1, x^-1 y); the identity cases skip the key arithmetic
  // (d(1, z) = d(1, z^-1) by left translation).
  if (solver_->is_identity(y)) return distance_to_identity(x, cutoff);
  if (solver_->is_identity(x)) return distance_to_identity(y, cutoff);
  return distance_to_identity(solver_->mul(solver_->inverse(x), y), cutoff);
}

bool DistanceOracle::within(const ElementKey& x, const ElementKey& y, int k) {
  return distance(x, y, k).has_value();
}

const BallIndex& DistanceOracle::identity_ball(int min_radius) {
  distance_to_identity(solver_->identity(), min_radius);  // grows as a side effect
  return ball_;
}

Geodesy is_geodesic(const BallIndex& ball, const Word& w) {
  if (static_cast<int>(w.size()) > ball.radius) return Geodesy::radius_shortfall;
  ElementKey e = ball.solver->eval(w);
  auto d = ball.distance(e);
  if (!d) return Geodesy::radius_shortfall;
  return *d == static_cast<int>(w.size()) ? Geodesy::geodesic : Geodesy::non_geodesic;
}

bool is_geodesic(const GroupSolver& solver, const Word& w) {
  if (w.empty()) return true;
  ElementKey e = solver.eval(w);
  return !bounded_distance(solver, solver.identity(), e, static_cast<int>(w.size()) - 1)
              .has_value();
}

GeodesicEnumerator::GeodesicEnumerator(const BallIndex& ball, const ElementKey& target,
                                       DistanceOracle* oracle)
    : ball_(&ball), oracle_(oracle), target_(target) {
  auto d = ball.distance(target);
  if (!d) throw std::invalid_argument("geodesic target not in ball");
  target_dist_ = *d;
  if (!oracle_) {
    own_oracle_ = std::make_unique<DistanceOracle>(*ball.solver);
    oracle_ = own_oracle_.get();
  }
  stack_.push_back(Frame{ball.solver->identity(), 0});
}

std::optional<Word> GeodesicEnumerator::next() {
  if (done_) return std::nullopt;
  const GroupSolver& solver = *ball_->solver;
  while (!stack_.empty()) {
    if (static_cast<int>(current_.size()) == target_dist_ &&
        stack_.back().at == target_ && stack_.back().next_letter == 0) {
      // Emit, then backtrack past this leaf.
      Word out = current_;
      stack_.pop_back();
      if (!current_.empty()) current_.pop_back();
      return out;
    }
    Frame& top = stack_.back();
    int remaining = target_dist_ - static_cast<int>(current_.size());
    bool descended = false;
    while (top.next_letter < solver.alphabet().size()) {
      Letter x = top.next_letter++;
      ElementKey child = solver.apply(top.at, x);
      auto d = ball_->distance(child);
      if (!d || *d != static_cast<int>(current_.size()) + 1) continue;
      auto rest = oracle_->distance(child, target_, remaining - 1);
      if (!rest || *rest != remaining - 1) continue;
      current_.push_back(x);
      stack_.push_back(Frame{std::move(child), 0});
      descended = true;
      break;
    }
    if (!descended) {
      stack_.pop_back();
      if (!current_.empty()) current_.pop_back();
    }
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Word> all_geodesics_to(const BallIndex& ball, const ElementKey& target,
                                   DistanceOracle* oracle, size_t limit) {
  GeodesicEnumerator en(ball, target, oracle);
  std::vector<Word> out;
  while (out.size() < limit) {
    auto w = en.next();
    if (!w) break;
    out.push_back(std::move(*w));
  }
  return out;
}

std::optional<Word> geodesic_word(const GroupSolver& solver, const ElementKey& from,
                                  const ElementKey& to, int cutoff, DistanceOracle* oracle) {
  std::unique_ptr<DistanceOracle> own;
  if (!oracle) {
    own = std::make_unique<DistanceOracle>(solver);
    oracle = own.get();
  }
  auto d = oracle->distance(from, to, cutoff);
  if (!d) return std::nullopt;
  Word w;
  ElementKey cur = from;
  for (int remaining = *d; remaining > 0; --remaining) {
    bool stepped = false;
    for (Letter x = 0; x < solver.alphabet().size(); ++x) {
      ElementKey next = solver.apply(cur, x);
      auto rest = oracle->distance(next, to, remaining - 1);
      if (rest && *rest == remaining - 1) {
        w.push_back(x);
        cur = std::move(next);
        stepped = true;
        break;
      }
    }
    if (!stepped) throw std::logic_error("geodesic reconstruction failed");
  }
  return w;
}

std::vector<ElementKey> path_positions(const GroupSolver& solver, const ElementKey& start,
                                       const Word& w) {
  std::vector<ElementKey> pos;
  pos.reserve(w.size() + 1);
  pos.push_back(start);
  for (Letter x : w) pos.push_back(solver.apply(pos.back(), x));
  return pos;
}

}  // namespace loopshort
