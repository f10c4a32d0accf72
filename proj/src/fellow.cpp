#include "loopshort/fellow.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopshort {

SyncReport sync_ft(const GroupSolver& solver, const Word& w, const Word& u, int k,
                   const PathContext& ctx, DistanceOracle* oracle) {
  std::unique_ptr<DistanceOracle> own;
  if (!oracle) {
    own = std::make_unique<DistanceOracle>(solver);
    oracle = own.get();
  }
  auto wp = path_positions(solver, ctx.start_w, w);
  auto up = path_positions(solver, ctx.start_u, u);
  SyncReport rep;
  rep.checked_k = k;
  rep.continuous_k = k + 1;
  size_t horizon = std::max(w.size(), u.size());
  for (size_t t = 0; t <= horizon; ++t) {
    auto d = oracle->distance(position_at(wp, t), position_at(up, t), k);
    if (!d) {
      rep.ok = false;
      rep.first_violation = static_cast<int>(t);
      return rep;
    }
    rep.max_distance = std::max(rep.max_distance, *d);
  }
  rep.ok = true;
  return rep;
}

std::optional<Reparameterization> async_ft(const GroupSolver& solver, const Word& w, const Word& u,
                                           int k, const PathContext& ctx, DistanceOracle* oracle) {
  std::unique_ptr<DistanceOracle> own;
  if (!oracle) {
    own = std::make_unique<DistanceOracle>(solver);
    oracle = own.get();
  }
  auto wp = path_positions(solver, ctx.start_w, w);
  auto up = path_positions(solver, ctx.start_u, u);
  const int n = static_cast<int>(w.size());
  const int m = static_cast<int>(u.size());

  // reachable[i][j]: a monotone path of grid moves (i+1,j), (i,j+1),
  // (i+1,j+1) through passable cells reaches (i,j) from (0,0).
  std::vector<std::vector<uint8_t>> pass(n + 1, std::vector<uint8_t>(m + 1, 0));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j)
      pass[i][j] = oracle->within(wp[i], up[j], k) ? 1 : 0;
  if (!pass[0][0] || !pass[n][m]) return std::nullopt;
  std::vector<std::vector<uint8_t>> reach(n + 1, std::vector<uint8_t>(m + 1, 0));
  reach[0][0] = 1;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j) {
      if (reach[i][j] || !pass[i][j]) continue;
      if (i > 0 && reach[i - 1][j]) reach[i][j] = 1;
      if (j > 0 && reach[i][j - 1]) reach[i][j] = 1;
      if (i > 0 && j > 0 && reach[i - 1][j - 1]) reach[i][j] = 1;
    }
  if (!reach[n][m]) return std::nullopt;

  // Reconstruct a path backwards, preferring the diagonal, then the
  // vertical, then the horizontal predecessor; phi(i) is the least j the
  // path visits at column i, with the endpoint pinned to |u|.
  std::vector<int> min_j(n + 1, m + 1);
  int i = n, j = m;
  while (true) {
    min_j[i] = std::min(min_j[i], j);
    if (i == 0 && j == 0) break;
    if (i > 0 && j > 0 && reach[i - 1][j - 1])
      --i, --j;
    else if (i > 0 && reach[i - 1][j])
      --i;
    else
      --j;
  }
  Reparameterization phi;
  phi.phi.resize(n + 1);
  for (int t = 0; t <= n; ++t) phi.phi[t] = min_j[t];
  phi.phi[n] = m;
  return phi;
}

SynchronizeResult synchronize(const GroupSolver& solver, const Word& w, const Word& u,
                              const Reparameterization& phi, int k, const PathContext& ctx,
                              DistanceOracle* oracle) {
  std::unique_ptr<DistanceOracle> own;
  if (!oracle) {
    own = std::make_unique<DistanceOracle>(solver);
    oracle = own.get();
  }
  const int n = static_cast<int>(w.size());
  const int m = static_cast<int>(u.size());
  if (m >= n) throw std::invalid_argument("synchronize requires |u| < |w|");
  if (k < 1) throw std::invalid_argument("synchronize requires k >= 1");
  if (!solver.is_identity(solver.eval(w)) || !solver.is_identity(solver.eval(u)))
    throw std::invalid_argument("synchronize requires loops");
  if (static_cast<int>(phi.phi.size()) != n + 1 || phi.phi[0] != 0 || phi.phi[n] != m)
    throw std::invalid_argument("reparameterization endpoints not normalized");
  for (int t = 1; t <= n; ++t)
    if (phi.phi[t] < phi.phi[t - 1] || phi.phi[t] > m)
      throw std::invalid_argument("reparameterization not monotone into range");

  auto wp = path_positions(solver, ctx.start_w, w);
  auto up = path_positions(solver, ctx.start_u, u);
  for (int t = 0; t <= n; ++t)
    if (!oracle->within(wp[t], up[phi.phi[t]], k))
      throw std::invalid_argument("asynchronous premise fails at t=" + std::to_string(t));

  SynchronizeResult res;

  bool case2 = false, case3 = false;
  int j2 = -1, j3 = -1;
  for (int t = 0; t <= n; ++t) {
    if (t - phi.phi[t] > 2 * k && !case2) {
      case2 = true;
      j2 = t;  // minimal such t
    }
    if (phi.phi[t] - t > 2 * k) {
      case3 = true;
      j3 = t;  // maximal such t after the loop
    }
  }

  auto verify = [&](const Word& v, int checked, const ElementKey& start_v) {
    SyncReport rep = sync_ft(solver, w, v, checked, PathContext{ctx.start_w, start_v}, oracle);
    if (!rep.ok)
      throw std::logic_error("synchronize failed its own bound at t=" +
                             std::to_string(rep.first_violation.value_or(-1)));
    return rep;
  };

  if (!case2 && !case3) {
    res.case_id = 1;
    res.v = u;
    res.checked_constant = 3 * k;
    res.continuous_constant = 3 * k + 1;
    res.verification = verify(u, res.checked_constant, ctx.start_u);
    return res;
  }

  if (case2) {
    // j minimal with j - phi(j) > 2k; l maximal below j with
    // j - l > phi(j) - phi(l) + 2k (l = 0 qualifies, so the set is nonempty).
    int j = j2;
    int l = -1;
    for (int c = j - 1; c >= 0; --c)
      if (j - c > phi.phi[j] - phi.phi[c] + 2 * k) {
        l = c;
        break;
      }
    if (l < 0) throw std::logic_error("case 2 without a valid l");
    auto p1 = geodesic_word(solver, wp[l], up[phi.phi[l]], k, oracle);
    auto p2 = geodesic_word(solver, up[phi.phi[j]], wp[j], k, oracle);
    if (!p1 || !p2) throw std::logic_error("case 2 connector exceeds k");
    res.case_id = 2;
    res.j = j;
    res.l = l;
    res.p1 = *p1;
    res.p2 = *p2;
    Word u2 = subword(u, phi.phi[l], phi.phi[j]);
    res.v = concat(concat(concat(subword(w, 0, l), *p1), u2), concat(*p2, subword(w, j, n)));
    if (static_cast<int>(res.v.size()) >= n) throw std::logic_error("case 2 loop not shorter");
    res.checked_constant = 6 * k;
    res.continuous_constant = 6 * k + 1;
    res.verification = verify(res.v, res.checked_constant, ctx.start_w);
    return res;
  }

  // Case 3: j maximal with phi(j) - j > 2k. The final connector runs from
  // u(|u|) to w(n) (the sources write u(phi(|u|)); the loop's endpoint is
  // meant).
  int j = j3;
  auto p1 = geodesic_word(solver, wp[j], up[phi.phi[j]], k, oracle);
  auto p2 = geodesic_word(solver, up[m], wp[n], k, oracle);
  if (!p1 || !p2) throw std::logic_error("case 3 connector exceeds k");
  res.case_id = 3;
  res.j = j;
  res.p1 = *p1;
  res.p2 = *p2;
  res.v = concat(concat(subword(w, 0, j), *p1), concat(subword(u, phi.phi[j], m), *p2));
  if (static_cast<int>(res.v.size()) >= n) throw std::logic_error("case 3 loop not shorter");
  res.checked_constant = 5 * k + 1;
  res.continuous_constant = 5 * k + 2;
  res.verification = verify(res.v, res.checked_constant, ctx.start_w);
  return res;
}

}  // namespace loopshort
