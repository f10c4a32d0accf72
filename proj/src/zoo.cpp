#include "loopshort/zoo.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "loopshort/cayley.hpp"

namespace loopshort {

namespace {

std::string stallings_text() {
  // Octahedron with opposite vertex pairs {a,b}, {c,d}, {e,f}: one
  // generator per directed edge, the edge from y to x written "xY".
  const std::string verts = "abcdef";
  auto opposite = [&](char v) {
    size_t i = verts.find(v);
    return verts[i ^ 1];
  };
  std::vector<std::pair<char, char>> edges;
  for (char x : verts)
    for (char y : verts)
      if (x < y && y != opposite(x)) edges.emplace_back(x, y);

  auto gen_name = [](char head, char tail) {
    return std::string(1, head) + static_cast<char>(std::toupper(tail));
  };

  std::string gens, invs, maps;
  for (auto [x, y] : edges) {
    std::string fwd = gen_name(x, y), bwd = gen_name(y, x);
    gens += " " + fwd + " " + bwd;
    invs += " " + fwd + "=" + bwd;
    maps += " " + fwd + "=" + fwd + " " + bwd + "=" + bwd;
  }

  // Two relations per octahedron face {x,y,z}, one vertex per pair.
  std::string relators;
  for (char x : {'a', 'b'})
    for (char y : {'c', 'd'})
      for (char z : {'e', 'f'}) {
        std::string xY = gen_name(x, y), yZ = gen_name(y, z), zX = gen_name(z, x);
        relators += "relator " + xY + yZ + zX + "\n";
        relators += "relator " + xY + zX + yZ + "\n";
      }

  return "name stallings\ngenerators" + gens + "\ninverses" + invs + "\n" + relators +
         "backend direct-product-free factors ab|cd|ef map" + maps + "\n";
}

std::string preset_text(const std::string& name) {
  if (name == "f2")
    return "name f2\n"
           "generators a A b B\n"
           "inverses a=A b=B\n"
           "backend free\n";
  if (name == "z2-wise-base")
    return "name z2-wise-base\n"
           "generators a A b B c C d D\n"
           "inverses a=A b=B c=C d=D\n"
           "relator cBA\n"
           "relator cAB\n"
           "relator dCC\n"
           "backend free-abelian dim 2 map a=(1,0) b=(0,1) c=(1,1) d=(2,2)\n";
  if (name == "z2-gersten-base")
    return "name z2-gersten-base\n"
           "generators a A b B c C d D\n"
           "inverses a=A b=B c=C d=D\n"
           "relator cBA\n"
           "relator cAB\n"
           "relator dbA\n"
           "backend free-abelian dim 2 map a=(1,0) b=(0,1) c=(1,1) d=(1,-1)\n";
  if (name == "f2c-bridson-base")
    return "name f2c-bridson-base\n"
           "generators a A b B c C\n"
           "inverses a=A b=B c=C\n"
           "relator cbaBA\n"
           "backend free core a A b B map c=abAB\n";
  if (name == "wise")
    return "name wise\n"
           "generators a A b B c C d D s S t T\n"
           "inverses a=A b=B c=C d=D s=S t=T\n"
           "relator cBA\n"
           "relator cAB\n"
           "relator dCC\n"
           "relator SasD\n"
           "relator TbtD\n"
           "backend hnn\n"
           "base-backend free-abelian dim 2 map a=(1,0) b=(0,1) c=(1,1) d=(2,2)\n"
           "stable s pair a -> d\n"
           "stable t pair b -> d\n";
  if (name == "bridson")
    return "name bridson\n"
           "generators a A b B c C g G s S t T\n"
           "inverses a=A b=B c=C g=G s=S t=T\n"
           "relator cbaBA\n"
           "relator gaGa\n"
           "relator gbGb\n"
           "relator saSC\n"
           "relator tbTC\n"
           "backend hnn\n"
           "base-backend free core a A b B map c=abAB\n"
           "stable g oracle full pair a -> A pair b -> B\n"
           "stable s pair c -> a\n"
           "stable t pair c -> b\n";
  if (name == "gersten")
    return "name gersten\n"
           "generators a A b B c C d D s S t T\n"
           "inverses a=A b=B c=C d=D s=S t=T\n"
           "relator cBA\n"
           "relator cAB\n"
           "relator dbA\n"
           "relator SasC\n"
           "relator TatD\n"
           "backend hnn\n"
           "base-backend free-abelian dim 2 map a=(1,0) b=(0,1) c=(1,1) d=(1,-1)\n"
           "stable s pair a -> c\n"
           "stable t pair a -> d\n";
  if (name == "stallings") return stallings_text();
  throw std::invalid_argument("unknown preset: " + name);
}

Preset build_preset(const std::string& name) {
  Preset p;
  p.name = name;
  p.text = preset_text(name);
  p.file = parse_presentation(p.text);
  p.solver = make_solver(p.file);
  for (const Word& r : p.file.pres.relators)
    if (!p.solver->is_identity(p.solver->eval(r)))
      throw std::logic_error("preset " + name + " relator is not a relation: " +
                             p.file.pres.alphabet.str(r));
  if (name == "stallings") {
    // Every generator must have exponent sum zero in (F_2)^3 (the kernel
    // of the exponent-sum homomorphism).
    const auto& prod = dynamic_cast<const ProductFreeSolver&>(*p.solver);
    const Alphabet& target = prod.target_alphabet();
    for (Letter x = 0; x < p.alphabet().size(); ++x) {
      auto comps = prod.components(prod.eval(Word{x}));
      int sum = 0;
      for (const Word& c : comps)
        for (Letter t : c) {
          // Lowercase target symbols carry +1, their inverses -1.
          bool positive = std::islower(static_cast<unsigned char>(target.name(t)[0])) != 0;
          sum += positive ? 1 : -1;
        }
      if (sum != 0)
        throw std::logic_error("stallings generator with nonzero exponent sum: " +
                               p.alphabet().name(x));
    }
    if (p.alphabet().size() != 24 || p.file.pres.relators.size() != 16)
      throw std::logic_error("stallings preset must have 24 letters and 16 relations");
  }
  return p;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "f2",   "z2-wise-base", "z2-gersten-base", "f2c-bridson-base",
      "wise", "bridson",      "gersten",         "stallings"};
  return names;
}

const Preset& preset(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, Preset> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_preset(name)).first;
  return it->second;
}

namespace {
std::string times(const std::string& s, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += s;
  return out;
}
}  // namespace

std::string gersten_loop(int n) {
  // Four plane excursions, hopping out via s t^-1 and back via t s^-1 (the
  // t^-1 [c^n d^n] t pinch closes because c^n d^n = a^{2n} lies in <a>).
  if (n < 1) throw std::invalid_argument("gersten_loop needs n >= 1");
  return times("d", n) + "sT" + times("c", n) + times("d", n) + "tS" + times("C", n) +
         times("D", n) + "sT" + times("C", n) + times("D", n) + "tS" + times("c", n);
}

std::string stallings_alpha(int n) {
  if (n < 1) throw std::invalid_argument("stallings_alpha needs n >= 1");
  return times("fA", n) + times("dE", n) + times("aC", n - 1);
}

std::string stallings_beta(int n) {
  if (n < 1) throw std::invalid_argument("stallings_beta needs n >= 1");
  return times("fB", n) + times("dE", n) + times("bC", n - 1);
}

std::string stallings_gamma() { return "aCcB"; }

namespace {

MinLengthResult image_min_length(const ProductFreeSolver& prod, const ElementKey& target,
                                 int depth_cap) {
  const Alphabet& alpha = prod.alphabet();

  // Admissible remaining-cost bound: one generator shortens the reduced
  // image difference by at most 2 letters (one per touched factor).
  auto heuristic = [&](const ElementKey& at) {
    ElementKey diff = prod.mul(prod.inverse(at), target);
    size_t len = 0;
    for (const Word& c : prod.components(diff)) len += c.size();
    return static_cast<int>((len + 1) / 2);
  };

  MinLengthResult res;
  res.min_length = -1;
  Word word;
  std::function<bool(const ElementKey&, int, int)> dfs = [&](const ElementKey& at, int depth,
                                                             int limit) {
    ++res.nodes;
    if (at == target) {
      res.min_length = depth;
      res.witness = word;
      return true;
    }
    if (depth + heuristic(at) > limit) return false;
    for (Letter x = 0; x < alpha.size(); ++x) {
      word.push_back(x);
      if (dfs(prod.apply(at, x), depth + 1, limit)) return true;
      word.pop_back();
    }
    return false;
  };

  for (int limit = heuristic(prod.identity()); limit <= depth_cap; ++limit) {
    word.clear();
    if (dfs(prod.identity(), 0, limit)) return res;
  }
  throw BudgetExceeded("image search exceeded depth cap " + std::to_string(depth_cap));
}

ElementKey bb_target(const ProductFreeSolver& prod, int n, const Word& v, char z) {
  const Alphabet& target_alpha = prod.target_alphabet();
  auto letter = [&](char c) {
    auto x = target_alpha.find(std::string(1, c));
    if (!x) throw std::invalid_argument("unknown target symbol");
    return *x;
  };
  std::vector<Word> comps(prod.factor_count());
  // f^n d^n E^n C^(n-1) split per factor: factor 1 holds d^n C^(n-1),
  // factor 2 holds f^n E^n.
  for (int i = 0; i < n; ++i) comps[1].push_back(letter('d'));
  for (int i = 0; i + 1 < n; ++i) comps[1].push_back(letter('C'));
  for (int i = 0; i < n; ++i) comps[2].push_back(letter('f'));
  for (int i = 0; i < n; ++i) comps[2].push_back(letter('E'));
  ElementKey key = prod.key_of(comps);
  if (!v.empty()) key = prod.mul(key, prod.eval(v));
  std::vector<Word> zc(prod.factor_count());
  char zu = static_cast<char>(std::toupper(static_cast<unsigned char>(z)));
  zc[std::string("cdef").find(z) < 2 ? 1 : 2].push_back(letter(zu));
  return prod.mul(key, prod.key_of(zc));
}

}  // namespace

MinLengthResult lemma_bb_min_length(int n, char z) {
  return lemma_bb2_min_length(n, Word{}, z);
}

MinLengthResult lemma_bb2_min_length(int n, const Word& v, char z) {
  if (n < 1) throw std::invalid_argument("n >= 1 required");
  if (std::string("cdef").find(z) == std::string::npos)
    throw std::invalid_argument("z must be one of c,d,e,f");
  const auto& prod = dynamic_cast<const ProductFreeSolver&>(*preset("stallings").solver);
  if (static_cast<int>(v.size()) + 1 >= n && !v.empty())
    throw std::invalid_argument("v must be shorter than n-1");
  if (!v.empty()) {
    auto comps = prod.components(prod.eval(v));
    if (!comps[0].empty())
      throw std::invalid_argument("v must have trivial image in the first factor");
  }
  return image_min_length(prod, bb_target(prod, n, v, z), 6 * n + 4);
}

}  // namespace loopshort
