#include "loopshort/presentation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace loopshort {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

[[noreturn]] void fail(size_t lineno, const std::string& msg) {
  throw std::invalid_argument("presentation line " + std::to_string(lineno) + ": " + msg);
}

std::vector<int64_t> parse_vector(const std::string& s, int dim, size_t lineno) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') fail(lineno, "expected (c1,..): " + s);
  std::vector<int64_t> v;
  std::string body = s.substr(1, s.size() - 2);
  std::istringstream in(body);
  std::string part;
  while (std::getline(in, part, ',')) {
    size_t pos = 0;
    long long c = std::stoll(part, &pos);
    if (pos != part.size()) fail(lineno, "bad coordinate: " + part);
    v.push_back(c);
  }
  if (dim != 0 && static_cast<int>(v.size()) != dim) fail(lineno, "wrong dimension in " + s);
  return v;
}

std::string vector_str(const std::vector<int64_t>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace

std::string backend_name(BackendHint b) {
  switch (b) {
    case BackendHint::free_group: return "free";
    case BackendHint::free_abelian: return "free-abelian";
    case BackendHint::direct_product_free: return "direct-product-free";
    case BackendHint::hnn: return "hnn";
  }
  return "?";
}

PresentationFile parse_presentation(const std::string& text) {
  std::string name;
  std::vector<std::string> gen_names;
  std::vector<std::pair<std::string, std::string>> inv_pairs;
  std::vector<std::string> relator_strs;
  std::optional<std::string> backend_line;
  std::optional<std::string> base_backend_line;
  std::vector<std::string> stable_lines;
  std::vector<size_t> stable_linenos;
  size_t backend_lineno = 0, base_backend_lineno = 0;
  std::vector<std::pair<size_t, std::string>> relator_linenos;

  std::istringstream in(text);
  std::string raw;
  size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tks = tokens(raw);
    if (tks.empty()) continue;
    const std::string& key = tks[0];
    std::string rest = raw.substr(raw.find(key) + key.size());
    if (key == "name") {
      if (tks.size() != 2) fail(lineno, "name takes one token");
      name = tks[1];
    } else if (key == "generators") {
      gen_names.assign(tks.begin() + 1, tks.end());
    } else if (key == "inverses") {
      for (size_t i = 1; i < tks.size(); ++i) {
        auto eq = tks[i].find('=');
        if (eq == std::string::npos) fail(lineno, "expected x=X: " + tks[i]);
        inv_pairs.emplace_back(tks[i].substr(0, eq), tks[i].substr(eq + 1));
      }
    } else if (key == "relator") {
      if (tks.size() != 2) fail(lineno, "relator takes one word");
      relator_strs.push_back(tks[1]);
      relator_linenos.emplace_back(lineno, tks[1]);
    } else if (key == "backend") {
      backend_line = rest;
      backend_lineno = lineno;
    } else if (key == "base-backend") {
      base_backend_line = rest;
      base_backend_lineno = lineno;
    } else if (key == "stable") {
      stable_lines.push_back(rest);
      stable_linenos.push_back(lineno);
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (gen_names.empty()) throw std::invalid_argument("presentation has no generators line");
  if (!backend_line) throw std::invalid_argument("presentation has no backend line");

  Alphabet alphabet(gen_names, inv_pairs);

  PresentationFile file;
  file.pres.name = name;
  file.pres.alphabet = alphabet;
  for (auto& [ln, rs] : relator_linenos) {
    try {
      file.pres.relators.push_back(alphabet.word(rs));
    } catch (const std::invalid_argument& e) {
      fail(ln, e.what());
    }
  }

  // Parses "<kind> <params...>" into a Presentation's backend fields.
  auto parse_backend = [&](const std::string& line, size_t ln, const Alphabet& alpha,
                           Presentation& out) {
    auto tks = tokens(line);
    if (tks.empty()) fail(ln, "missing backend kind");
    size_t i = 1;
    auto need = [&](const char* what) -> const std::string& {
      if (i >= tks.size()) fail(ln, std::string("expected ") + what);
      return tks[i];
    };
    if (tks[0] == "free") {
      out.backend = BackendHint::free_group;
      FreeBackendParams fp;
      while (i < tks.size()) {
        if (tks[i] == "core") {
          ++i;
          while (i < tks.size() && tks[i] != "map") {
            auto x = alpha.find(tks[i]);
            if (!x) fail(ln, "unknown core letter " + tks[i]);
            fp.core.push_back(*x);
            ++i;
          }
        } else if (tks[i] == "map") {
          ++i;
          while (i < tks.size()) {
            auto eq = tks[i].find('=');
            if (eq == std::string::npos) fail(ln, "expected g=word: " + tks[i]);
            auto g = alpha.find(tks[i].substr(0, eq));
            if (!g) fail(ln, "unknown generator in map: " + tks[i]);
            fp.expansions[*g] = alpha.word(tks[i].substr(eq + 1));
            ++i;
          }
        } else {
          fail(ln, "unknown free backend token " + tks[i]);
        }
      }
      if (fp.core.empty()) {
        for (auto [lo, hi] : alpha.inverse_pairs()) {
          fp.core.push_back(lo);
          fp.core.push_back(hi);
        }
      }
      out.free_params = std::move(fp);
    } else if (tks[0] == "free-abelian") {
      out.backend = BackendHint::free_abelian;
      AbelianBackendParams ap;
      if (need("dim") != "dim") fail(ln, "expected dim");
      ++i;
      ap.dim = std::stoi(need("dimension"));
      ++i;
      if (need("map") != "map") fail(ln, "expected map");
      ++i;
      while (i < tks.size()) {
        auto eq = tks[i].find('=');
        if (eq == std::string::npos) fail(ln, "expected g=(..): " + tks[i]);
        auto g = alpha.find(tks[i].substr(0, eq));
        if (!g) fail(ln, "unknown generator in map: " + tks[i]);
        ap.images[*g] = parse_vector(tks[i].substr(eq + 1), ap.dim, ln);
        ++i;
      }
      out.abelian_params = std::move(ap);
    } else if (tks[0] == "direct-product-free") {
      out.backend = BackendHint::direct_product_free;
      ProductBackendParams pp;
      if (need("factors") != "factors") fail(ln, "expected factors");
      ++i;
      {
        std::istringstream fs(need("factor list"));
        std::string part;
        while (std::getline(fs, part, '|')) pp.factors.push_back(part);
        ++i;
      }
      if (i < tks.size()) {
        if (tks[i] != "map") fail(ln, "expected map");
        ++i;
        while (i < tks.size()) {
          auto eq = tks[i].find('=');
          if (eq == std::string::npos) fail(ln, "expected g=word: " + tks[i]);
          auto g = alpha.find(tks[i].substr(0, eq));
          if (!g) fail(ln, "unknown generator in map: " + tks[i]);
          pp.images[*g] = tks[i].substr(eq + 1);
          ++i;
        }
      }
      out.product_params = std::move(pp);
    } else if (tks[0] == "hnn") {
      out.backend = BackendHint::hnn;
    } else {
      fail(ln, "unknown backend kind " + tks[0]);
    }
  };

  parse_backend(*backend_line, backend_lineno, alphabet, file.pres);

  if (file.pres.backend == BackendHint::hnn) {
    if (!base_backend_line) throw std::invalid_argument("hnn backend requires base-backend line");
    if (stable_lines.empty()) throw std::invalid_argument("hnn backend requires stable lines");

    HnnStructure hnn;
    // Stable letters are collected first so the base alphabet can exclude them.
    std::vector<bool> is_stable(alphabet.size(), false);
    std::vector<std::pair<Letter, size_t>> stable_letters;
    for (size_t s = 0; s < stable_lines.size(); ++s) {
      auto tks = tokens(stable_lines[s]);
      if (tks.empty()) fail(stable_linenos[s], "stable line needs a letter");
      auto x = alphabet.find(tks[0]);
      if (!x) fail(stable_linenos[s], "unknown stable letter " + tks[0]);
      if (is_stable[*x] || is_stable[alphabet.inverse(*x)])
        fail(stable_linenos[s], "stable letter repeated: " + tks[0]);
      is_stable[*x] = is_stable[alphabet.inverse(*x)] = true;
      stable_letters.emplace_back(*x, s);
    }

    std::vector<std::string> base_names;
    std::vector<std::pair<std::string, std::string>> base_pairs;
    hnn.full_to_base.assign(alphabet.size(), -1);
    for (Letter x = 0; x < alphabet.size(); ++x) {
      if (is_stable[x]) continue;
      hnn.full_to_base[x] = static_cast<int>(base_names.size());
      hnn.base_to_full.push_back(x);
      base_names.push_back(alphabet.name(x));
    }
    for (auto [lo, hi] : alphabet.inverse_pairs())
      if (!is_stable[lo]) base_pairs.emplace_back(alphabet.name(lo), alphabet.name(hi));
    Alphabet base_alphabet(base_names, base_pairs);

    auto to_base = [&](const Word& w, size_t ln) {
      Word out;
      for (Letter x : w) {
        if (hnn.full_to_base[x] < 0) fail(ln, "stable letter inside base word");
        out.push_back(static_cast<Letter>(hnn.full_to_base[x]));
      }
      return out;
    };

    hnn.base.name = file.pres.name + "-base";
    hnn.base.alphabet = base_alphabet;
    parse_backend(*base_backend_line, base_backend_lineno, base_alphabet, hnn.base);
    // Relators without stable letters belong to the base presentation.
    for (const Word& r : file.pres.relators) {
      bool base_only = std::all_of(r.begin(), r.end(), [&](Letter x) { return !is_stable[x]; });
      if (base_only) hnn.base.relators.push_back(to_base(r, 0));
    }

    for (auto [letter, s] : stable_letters) {
      auto tks = tokens(stable_lines[s]);
      size_t ln = stable_linenos[s];
      HnnStable st;
      st.letter = letter;
      size_t i = 1;
      if (i < tks.size() && tks[i] == "oracle") {
        ++i;
        if (i >= tks.size()) fail(ln, "oracle needs a kind");
        if (tks[i] == "cyclic")
          st.oracle = HnnStable::Oracle::cyclic;
        else if (tks[i] == "full")
          st.oracle = HnnStable::Oracle::full;
        else
          fail(ln, "unknown oracle kind " + tks[i]);
        ++i;
      }
      while (i < tks.size()) {
        if (tks[i] != "pair") fail(ln, "expected pair, got " + tks[i]);
        if (i + 3 >= tks.size() || tks[i + 2] != "->") fail(ln, "expected pair u -> v");
        Word u, v;
        try {
          u = to_base(alphabet.word(tks[i + 1]), ln);
          v = to_base(alphabet.word(tks[i + 3]), ln);
        } catch (const std::invalid_argument& e) {
          fail(ln, e.what());
        }
        st.pairs.emplace_back(std::move(u), std::move(v));
        i += 4;
      }
      if (st.pairs.empty()) fail(ln, "stable letter without pairs");
      hnn.stables.push_back(std::move(st));
    }
    file.hnn = std::move(hnn);
  } else if (base_backend_line || !stable_lines.empty()) {
    throw std::invalid_argument("base-backend/stable lines require backend hnn");
  }

  return file;
}

namespace {

void serialize_backend_params(const Presentation& p, const Alphabet& alpha, std::string& out) {
  out += backend_name(p.backend);
  switch (p.backend) {
    case BackendHint::free_group: {
      const auto& fp = *p.free_params;
      bool core_is_everything = fp.core.size() == alpha.size();
      if (!core_is_everything) {
        out += " core";
        for (Letter x : fp.core) out += " " + alpha.name(x);
      }
      bool any_map = false;
      for (const auto& [g, w] : fp.expansions) {
        if (w.size() == 1 && w[0] == g) continue;
        if (!any_map) {
          out += " map";
          any_map = true;
        }
        out += " " + alpha.name(g) + "=" + alpha.str(w);
      }
      break;
    }
    case BackendHint::free_abelian: {
      const auto& ap = *p.abelian_params;
      out += " dim " + std::to_string(ap.dim) + " map";
      for (const auto& [g, v] : ap.images) out += " " + alpha.name(g) + "=" + vector_str(v);
      break;
    }
    case BackendHint::direct_product_free: {
      const auto& pp = *p.product_params;
      out += " factors ";
      for (size_t i = 0; i < pp.factors.size(); ++i) {
        if (i) out += "|";
        out += pp.factors[i];
      }
      if (!pp.images.empty()) {
        out += " map";
        for (const auto& [g, s] : pp.images) out += " " + alpha.name(g) + "=" + s;
      }
      break;
    }
    case BackendHint::hnn:
      break;
  }
}

}  // namespace

std::string serialize_presentation(const PresentationFile& f) {
  const Alphabet& alpha = f.pres.alphabet;
  std::string out;
  out += "name " + f.pres.name + "\n";
  out += "generators";
  for (Letter x = 0; x < alpha.size(); ++x) out += " " + alpha.name(x);
  out += "\n";
  out += "inverses";
  for (auto [lo, hi] : alpha.inverse_pairs()) out += " " + alpha.name(lo) + "=" + alpha.name(hi);
  out += "\n";
  for (const Word& r : f.pres.relators) out += "relator " + alpha.str(r) + "\n";
  out += "backend ";
  serialize_backend_params(f.pres, alpha, out);
  out += "\n";
  if (f.hnn) {
    const HnnStructure& h = *f.hnn;
    out += "base-backend ";
    serialize_backend_params(h.base, h.base.alphabet, out);
    out += "\n";
    for (const auto& st : h.stables) {
      out += "stable " + alpha.name(st.letter);
      if (st.oracle == HnnStable::Oracle::full) out += " oracle full";
      for (const auto& [u, v] : st.pairs)
        out += " pair " + h.base.alphabet.str(u) + " -> " + h.base.alphabet.str(v);
      out += "\n";
    }
  }
  return out;
}

}  // namespace loopshort
