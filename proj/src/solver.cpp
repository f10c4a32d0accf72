#include "loopshort/solver.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace loopshort {

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::optional<int64_t> GroupSolver::cyclic_exponent(const ElementKey&, const ElementKey&) const {
  throw std::logic_error("backend does not support cyclic subgroup membership");
}

std::pair<ElementKey, int64_t> GroupSolver::cyclic_coset_split(const ElementKey&,
                                                               const ElementKey&) const {
  throw std::logic_error("backend does not support cyclic coset splitting");
}

void GroupSolver::validate_cyclic_generator(const ElementKey&) const {
  throw std::logic_error("backend does not support cyclic subgroups");
}

ElementKey GroupSolver::power(const ElementKey& g, int64_t m) const {
  ElementKey base = m < 0 ? inverse(g) : g;
  uint64_t n = m < 0 ? -static_cast<uint64_t>(m) : static_cast<uint64_t>(m);
  ElementKey acc = identity();
  while (n) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

ElementKey GroupSolver::eval(const Word& w) const { return eval_from(identity(), w); }

ElementKey GroupSolver::eval_from(const ElementKey& start, const Word& w) const {
  ElementKey k = start;
  for (Letter x : w) k = apply(k, x);
  return k;
}

// ---------------------------------------------------------------- free group

namespace {

// Appends letter x to a reduced letter string, cancelling at the boundary.
void push_reduced(std::string& s, Letter x, const Alphabet& a) {
  if (!s.empty() && a.inverse(static_cast<Letter>(s.back())) == x)
    s.pop_back();
  else
    s.push_back(static_cast<char>(x));
}

std::string concat_reduced(const std::string& a, const std::string& b, const Alphabet& alpha) {
  std::string out = a;
  for (char c : b) push_reduced(out, static_cast<Letter>(c), alpha);
  return out;
}

}  // namespace

FreeGroupSolver::FreeGroupSolver(Alphabet alphabet, FreeBackendParams params)
    : GroupSolver(std::move(alphabet)) {
  const Alphabet& a = this->alphabet();
  std::vector<bool> is_core(a.size(), false);
  for (Letter x : params.core) is_core[x] = true;
  for (Letter x : params.core)
    if (!is_core[a.inverse(x)]) throw std::invalid_argument("core set not inverse-closed");
  expansions_.resize(a.size());
  for (Letter x = 0; x < a.size(); ++x) {
    if (is_core[x]) {
      expansions_[x] = Word{x};
      continue;
    }
    auto it = params.expansions.find(x);
    auto jt = params.expansions.find(a.inverse(x));
    if (it != params.expansions.end()) {
      expansions_[x] = free_reduce(a, it->second);
    } else if (jt != params.expansions.end()) {
      expansions_[x] = free_reduce(a, invert(a, jt->second));
    } else {
      throw std::invalid_argument("free backend: no expansion for " + a.name(x));
    }
    for (Letter y : expansions_[x])
      if (!is_core[y]) throw std::invalid_argument("expansion not over core letters");
  }
}

ElementKey FreeGroupSolver::apply(const ElementKey& k, Letter x) const {
  std::string s = k.payload();
  for (Letter y : expansions_[x]) push_reduced(s, y, alphabet());
  return ElementKey(std::move(s));
}

ElementKey FreeGroupSolver::mul(const ElementKey& a, const ElementKey& b) const {
  return ElementKey(concat_reduced(a.payload(), b.payload(), alphabet()));
}

ElementKey FreeGroupSolver::inverse(const ElementKey& k) const {
  const std::string& s = k.payload();
  std::string out;
  out.reserve(s.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it)
    out.push_back(static_cast<char>(alphabet().inverse(static_cast<Letter>(*it))));
  return ElementKey(std::move(out));
}

Word FreeGroupSolver::canonical_word(const ElementKey& k) const {
  Word w;
  for (char c : k.payload()) w.push_back(static_cast<Letter>(c));
  return w;
}

std::optional<int64_t> FreeGroupSolver::cyclic_exponent(const ElementKey& g,
                                                        const ElementKey& x) const {
  if (g.payload().empty()) throw std::invalid_argument("cyclic subgroup generator is trivial");
  const std::string& gs = g.payload();
  const std::string& xs = x.payload();
  if (xs.empty()) return 0;
  // Try positive and negative literal powers, relying on the caller to
  // hand a cyclically reduced generator (powers then concatenate freely).
  for (int sign : {+1, -1}) {
    std::string unit = sign > 0 ? gs : inverse(g).payload();
    if (xs.size() % unit.size() != 0) continue;
    size_t m = xs.size() / unit.size();
    bool ok = true;
    for (size_t i = 0; i < m && ok; ++i)
      if (xs.compare(i * unit.size(), unit.size(), unit) != 0) ok = false;
    if (ok) return sign * static_cast<int64_t>(m);
  }
  return std::nullopt;
}

std::pair<ElementKey, int64_t> FreeGroupSolver::cyclic_coset_split(const ElementKey& g,
                                                                   const ElementKey& x) const {
  if (g.payload().empty()) throw std::invalid_argument("cyclic subgroup generator is trivial");
  // Representative of x<g>: the shortlex-least among the minimum-length
  // elements of the coset. The scan window covers every possible minimum.
  int64_t window = static_cast<int64_t>(2 * x.payload().size() / g.payload().size()) + 2;
  ElementKey best = x;
  int64_t best_m = 0;
  ElementKey cur = x;
  ElementKey ginv = inverse(g);
  auto better = [](const ElementKey& a, const ElementKey& b) {
    if (a.payload().size() != b.payload().size()) return a.payload().size() < b.payload().size();
    return a.payload() < b.payload();
  };
  for (int64_t m = 1; m <= window; ++m) {
    cur = mul(cur, g);
    if (better(cur, best)) {
      best = cur;
      best_m = m;
    }
  }
  cur = x;
  for (int64_t m = 1; m <= window; ++m) {
    cur = mul(cur, ginv);
    if (better(cur, best)) {
      best = cur;
      best_m = -m;
    }
  }
  // x = rep * g^m with rep = x * g^best_m  =>  m = -best_m.
  return {best, -best_m};
}

void FreeGroupSolver::validate_cyclic_generator(const ElementKey& g) const {
  CyclicFreeOracle check(alphabet(), canonical_word(g));
  (void)check;
}

// -------------------------------------------------------------- free abelian

namespace {

std::string encode_vec(const std::vector<int64_t>& v) {
  std::string s(v.size() * 4, '\0');
  for (size_t i = 0; i < v.size(); ++i) {
    auto c = static_cast<int32_t>(v[i]);
    if (c != v[i]) throw std::overflow_error("lattice coordinate overflow");
    std::memcpy(s.data() + 4 * i, &c, 4);
  }
  return s;
}

std::vector<int64_t> decode_vec(const std::string& s) {
  std::vector<int64_t> v(s.size() / 4);
  for (size_t i = 0; i < v.size(); ++i) {
    int32_t c;
    std::memcpy(&c, s.data() + 4 * i, 4);
    v[i] = c;
  }
  return v;
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

FreeAbelianSolver::FreeAbelianSolver(Alphabet alphabet, AbelianBackendParams params)
    : GroupSolver(std::move(alphabet)), dim_(params.dim) {
  const Alphabet& a = this->alphabet();
  images_.resize(a.size());
  for (Letter x = 0; x < a.size(); ++x) {
    auto it = params.images.find(x);
    auto jt = params.images.find(a.inverse(x));
    if (it != params.images.end()) {
      images_[x] = it->second;
    } else if (jt != params.images.end()) {
      images_[x] = jt->second;
      for (auto& c : images_[x]) c = -c;
    } else {
      throw std::invalid_argument("abelian backend: no vector for " + a.name(x));
    }
    if (static_cast<int>(images_[x].size()) != dim_)
      throw std::invalid_argument("abelian backend: wrong dimension for " + a.name(x));
  }
}

ElementKey FreeAbelianSolver::identity() const {
  return ElementKey(encode_vec(std::vector<int64_t>(dim_, 0)));
}

ElementKey FreeAbelianSolver::apply(const ElementKey& k, Letter x) const {
  auto v = decode_vec(k.payload());
  for (int i = 0; i < dim_; ++i) v[i] += images_[x][i];
  return ElementKey(encode_vec(v));
}

ElementKey FreeAbelianSolver::mul(const ElementKey& a, const ElementKey& b) const {
  auto v = decode_vec(a.payload());
  auto w = decode_vec(b.payload());
  for (int i = 0; i < dim_; ++i) v[i] += w[i];
  return ElementKey(encode_vec(v));
}

ElementKey FreeAbelianSolver::inverse(const ElementKey& k) const {
  auto v = decode_vec(k.payload());
  for (auto& c : v) c = -c;
  return ElementKey(encode_vec(v));
}

Word FreeAbelianSolver::canonical_word(const ElementKey& k) const {
  // The shortlex-least geodesic spelling, found by breadth-first search
  // from the origin (first arrival with letters in declaration order is
  // the lex-least geodesic). Desk-scale vectors keep this cheap.
  if (is_identity(k)) return {};
  struct Entry {
    std::string payload;
    Letter via;
    uint32_t parent;
  };
  std::vector<Entry> entries{{identity().payload(), 0, 0}};
  std::unordered_map<std::string, uint32_t> seen{{identity().payload(), 0}};
  for (uint32_t i = 0; i < entries.size(); ++i) {
    if (entries.size() > 4'000'000)
      throw std::logic_error("canonical spelling search exploded; generators may not span");
    for (Letter x = 0; x < alphabet().size(); ++x) {
      ElementKey next = apply(ElementKey(entries[i].payload), x);
      auto [it, fresh] = seen.emplace(next.payload(), static_cast<uint32_t>(entries.size()));
      if (!fresh) continue;
      entries.push_back({next.payload(), x, i});
      if (next == k) {
        Word w;
        uint32_t cur = static_cast<uint32_t>(entries.size()) - 1;
        while (cur != 0) {
          w.push_back(entries[cur].via);
          cur = entries[cur].parent;
        }
        std::reverse(w.begin(), w.end());
        return w;
      }
    }
  }
  throw std::logic_error("element not reachable from the generators");
}

std::vector<int64_t> FreeAbelianSolver::vector_of(const ElementKey& k) const {
  return decode_vec(k.payload());
}

ElementKey FreeAbelianSolver::key_of(const std::vector<int64_t>& v) const {
  if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("wrong dimension");
  return ElementKey(encode_vec(v));
}

std::optional<int64_t> FreeAbelianSolver::cyclic_exponent(const ElementKey& g,
                                                          const ElementKey& x) const {
  return cyclic_membership_lattice(decode_vec(x.payload()), decode_vec(g.payload()));
}

std::pair<ElementKey, int64_t> FreeAbelianSolver::cyclic_coset_split(const ElementKey& g,
                                                                     const ElementKey& x) const {
  auto gv = decode_vec(g.payload());
  auto xv = decode_vec(x.payload());
  int pivot = -1;
  for (size_t i = 0; i < gv.size(); ++i)
    if (gv[i] != 0) {
      pivot = static_cast<int>(i);
      break;
    }
  if (pivot < 0) throw std::invalid_argument("cyclic subgroup generator is trivial");
  // m normalizes the pivot coordinate into [0, |g[pivot]|).
  int64_t m = gv[pivot] > 0 ? floor_div(xv[pivot], gv[pivot])
                            : -floor_div(xv[pivot], -gv[pivot]);
  for (size_t i = 0; i < gv.size(); ++i) xv[i] -= m * gv[i];
  return {ElementKey(encode_vec(xv)), m};
}

void FreeAbelianSolver::validate_cyclic_generator(const ElementKey& g) const {
  if (is_identity(g)) throw std::invalid_argument("lattice generator must be nonzero");
}

// ------------------------------------------------------- product of frees

ProductFreeSolver::ProductFreeSolver(Alphabet alphabet, ProductBackendParams params)
    : GroupSolver(std::move(alphabet)), factors_(params.factors) {
  std::vector<std::string> tnames;
  std::vector<std::pair<std::string, std::string>> tpairs;
  for (const std::string& f : factors_) {
    for (char c : f) {
      std::string lo(1, c);
      std::string hi(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      tnames.push_back(lo);
      tnames.push_back(hi);
      tpairs.emplace_back(lo, hi);
    }
  }
  target_ = Alphabet(std::move(tnames), tpairs);
  factor_of_target_letter_.assign(target_.size(), -1);
  {
    size_t next = 0;
    for (size_t fi = 0; fi < factors_.size(); ++fi)
      for (size_t j = 0; j < factors_[fi].size(); ++j) {
        factor_of_target_letter_[next++] = static_cast<int>(fi);
        factor_of_target_letter_[next++] = static_cast<int>(fi);
      }
  }

  const Alphabet& a = this->alphabet();
  images_.resize(a.size());
  for (Letter x = 0; x < a.size(); ++x) {
    std::string img;
    auto it = params.images.find(x);
    if (it != params.images.end()) {
      img = it->second;
    } else {
      auto jt = params.images.find(a.inverse(x));
      if (jt == params.images.end())
        throw std::invalid_argument("product backend: no image for " + a.name(x));
      Word w = target_.word(jt->second);
      img = target_.str(invert(target_, w));
    }
    for (Letter t : target_.word(img))
      images_[x].emplace_back(factor_of_target_letter_[t], t);
  }
}

ElementKey ProductFreeSolver::apply(const ElementKey& k, Letter x) const {
  auto comps = components(k);
  for (auto [f, t] : images_[x]) {
    Word& c = comps[f];
    if (!c.empty() && target_.inverse(c.back()) == t)
      c.pop_back();
    else
      c.push_back(t);
  }
  return key_of(comps);
}

ElementKey ProductFreeSolver::mul(const ElementKey& a, const ElementKey& b) const {
  auto ca = components(a);
  auto cb = components(b);
  for (size_t f = 0; f < ca.size(); ++f) {
    for (Letter t : cb[f]) {
      if (!ca[f].empty() && target_.inverse(ca[f].back()) == t)
        ca[f].pop_back();
      else
        ca[f].push_back(t);
    }
  }
  return key_of(ca);
}

ElementKey ProductFreeSolver::inverse(const ElementKey& k) const {
  auto comps = components(k);
  for (auto& c : comps) c = invert(target_, c);
  return key_of(comps);
}

Word ProductFreeSolver::canonical_word(const ElementKey&) const {
  throw std::logic_error("product backend has no canonical spelling over the generators");
}

std::string ProductFreeSolver::describe(const ElementKey& k) const {
  auto comps = components(k);
  std::string s = "(";
  for (size_t f = 0; f < comps.size(); ++f) {
    if (f) s += ",";
    s += comps[f].empty() ? "1" : target_.str(comps[f]);
  }
  return s + ")";
}

std::vector<Word> ProductFreeSolver::components(const ElementKey& k) const {
  std::vector<Word> comps(factors_.size());
  size_t f = 0;
  for (char c : k.payload()) {
    if (static_cast<unsigned char>(c) == 0xff) {
      ++f;
      continue;
    }
    comps[f].push_back(static_cast<Letter>(c));
  }
  return comps;
}

ElementKey ProductFreeSolver::key_of(const std::vector<Word>& comps) const {
  std::string s;
  for (size_t f = 0; f < comps.size(); ++f) {
    if (f) s.push_back(static_cast<char>(0xff));
    for (Letter t : comps[f]) s.push_back(static_cast<char>(t));
  }
  return ElementKey(std::move(s));
}

ElementKey ProductFreeSolver::identity() const {
  return key_of(std::vector<Word>(factors_.size()));
}

// ------------------------------------------------------------ cyclic oracles

CyclicFreeOracle::CyclicFreeOracle(const Alphabet& a, Word g) : alphabet_(&a), g_(std::move(g)) {
  Word r = free_reduce(a, g_);
  if (r != g_ || r.empty()) throw std::invalid_argument("cyclic generator must be reduced");
  if (a.inverse(r.front()) == r.back())
    throw std::invalid_argument("cyclic generator must be cyclically reduced");
  for (size_t d = 1; d <= r.size() / 2; ++d) {
    if (r.size() % d != 0) continue;
    bool periodic = true;
    for (size_t i = d; i < r.size() && periodic; ++i)
      if (r[i] != r[i - d]) periodic = false;
    if (periodic) throw std::invalid_argument("cyclic generator must not be a proper power");
  }
}

std::optional<int64_t> CyclicFreeOracle::exponent(const Word& reduced) const {
  if (reduced.empty()) return 0;
  for (int sign : {+1, -1}) {
    Word unit = sign > 0 ? g_ : invert(*alphabet_, g_);
    if (reduced.size() % unit.size() != 0) continue;
    size_t m = reduced.size() / unit.size();
    bool ok = true;
    for (size_t i = 0; i < reduced.size() && ok; ++i)
      if (reduced[i] != unit[i % unit.size()]) ok = false;
    if (ok) return sign * static_cast<int64_t>(m);
  }
  return std::nullopt;
}

std::optional<int64_t> cyclic_membership_free(const Alphabet& a, const Word& w, const Word& g) {
  CyclicFreeOracle oracle(a, g);
  return oracle.exponent(free_reduce(a, w));
}

std::optional<int64_t> cyclic_membership_lattice(const std::vector<int64_t>& v,
                                                 const std::vector<int64_t>& g) {
  int pivot = -1;
  for (size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0) {
      pivot = static_cast<int>(i);
      break;
    }
  if (pivot < 0) throw std::invalid_argument("lattice generator must be nonzero");
  if (v[pivot] % g[pivot] != 0) return std::nullopt;
  int64_t m = v[pivot] / g[pivot];
  for (size_t i = 0; i < g.size(); ++i)
    if (v[i] != m * g[i]) return std::nullopt;
  return m;
}

std::unique_ptr<GroupSolver> make_base_solver(const Presentation& p) {
  switch (p.backend) {
    case BackendHint::free_group:
      if (!p.free_params) throw std::invalid_argument("free backend missing params");
      return std::make_unique<FreeGroupSolver>(p.alphabet, *p.free_params);
    case BackendHint::free_abelian:
      if (!p.abelian_params) throw std::invalid_argument("abelian backend missing params");
      return std::make_unique<FreeAbelianSolver>(p.alphabet, *p.abelian_params);
    case BackendHint::direct_product_free:
      if (!p.product_params) throw std::invalid_argument("product backend missing params");
      return std::make_unique<ProductFreeSolver>(p.alphabet, *p.product_params);
    case BackendHint::hnn:
      throw std::invalid_argument("hnn is not a base backend");
  }
  throw std::invalid_argument("unknown backend");
}

}  // namespace loopshort
