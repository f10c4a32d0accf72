#include "loopshort/hnn_solver.hpp"

#include <stdexcept>

namespace loopshort {

HnnSolver::HnnSolver(const PresentationFile& file)
    : GroupSolver(file.pres.alphabet), structure_(*file.hnn) {
  base_ = make_base_solver(structure_.base);
  stable_code_.assign(alphabet().size(), -1);
  for (size_t i = 0; i < structure_.stables.size(); ++i) {
    const HnnStable& spec = structure_.stables[i];
    StableData data;
    data.spec = spec;
    if (spec.oracle == HnnStable::Oracle::cyclic) {
      if (spec.pairs.size() != 1)
        throw std::invalid_argument("cyclic oracle expects exactly one pair");
      data.u_key = base_->eval(spec.pairs[0].first);
      data.v_key = base_->eval(spec.pairs[0].second);
      base_->validate_cyclic_generator(data.u_key);
      base_->validate_cyclic_generator(data.v_key);
    } else {
      // phi defined letterwise; pairs cover the core, images of derived
      // generators follow by expanding their canonical words.
      const Alphabet& ba = structure_.base.alphabet;
      data.forward_map.assign(ba.size(), Word{});
      data.backward_map.assign(ba.size(), Word{});
      std::vector<bool> have(ba.size(), false);
      for (const auto& [u, v] : spec.pairs) {
        if (u.size() != 1)
          throw std::invalid_argument("full oracle pairs must map single letters");
        data.forward_map[u[0]] = v;
        data.forward_map[ba.inverse(u[0])] = invert(ba, v);
        have[u[0]] = have[ba.inverse(u[0])] = true;
      }
      for (Letter x = 0; x < ba.size(); ++x) {
        if (have[x]) continue;
        // Expand via the base solver's canonical spelling of the letter.
        Word spelled = base_->canonical_word(base_->eval(Word{x}));
        Word image;
        for (Letter y : spelled) {
          if (!have[y]) throw std::invalid_argument("full oracle map does not cover core");
          image = concat(image, data.forward_map[y]);
        }
        data.forward_map[x] = image;
      }
      for (Letter x = 0; x < ba.size(); ++x) {
        // The involution a->a^-1 is its own inverse; in general invert by
        // mapping through forward twice and checking.
        data.backward_map[x] = data.forward_map[x];
      }
      for (Letter x = 0; x < ba.size(); ++x) {
        ElementKey round = apply_letter_map(data.forward_map, base_->eval(data.forward_map[x]));
        if (round != base_->eval(Word{x}))
          throw std::invalid_argument("full oracle map must be an involution");
      }
    }
    Letter pos = spec.letter;
    Letter neg = alphabet().inverse(pos);
    stable_code_[pos] = static_cast<int>(i) * 2;
    stable_code_[neg] = static_cast<int>(i) * 2 + 1;
    stables_.push_back(std::move(data));
  }
}

std::pair<int, bool> HnnSolver::stable_of(Letter x) const {
  int c = stable_code_[x];
  if (c < 0) throw std::invalid_argument("not a stable letter");
  return {c / 2, c % 2 == 1};
}

Letter HnnSolver::stable_letter(int index, bool negative) const {
  Letter pos = stables_[index].spec.letter;
  return negative ? alphabet().inverse(pos) : pos;
}

Word HnnSolver::to_base_word(const Word& w) const {
  Word out;
  for (Letter x : w) {
    int b = structure_.full_to_base[x];
    if (b < 0) throw std::invalid_argument("stable letter in base word");
    out.push_back(static_cast<Letter>(b));
  }
  return out;
}

Word HnnSolver::from_base_word(const Word& w) const {
  Word out;
  for (Letter x : w) out.push_back(structure_.base_to_full[x]);
  return out;
}

ElementKey HnnSolver::apply_letter_map(const std::vector<Word>& map, const ElementKey& e) const {
  Word spelled = base_->canonical_word(e);
  ElementKey out = base_->identity();
  for (Letter x : spelled) out = base_->mul(out, base_->eval(map[x]));
  return out;
}

std::optional<int64_t> HnnSolver::subgroup_member(int index, bool side_v,
                                                  const ElementKey& base_elt) const {
  const StableData& st = stables_[index];
  if (st.spec.oracle == HnnStable::Oracle::full) return 0;
  return base_->cyclic_exponent(side_v ? st.v_key : st.u_key, base_elt);
}

ElementKey HnnSolver::subgroup_image(int index, bool side_v, const ElementKey& base_elt) const {
  const StableData& st = stables_[index];
  if (st.spec.oracle == HnnStable::Oracle::full)
    return apply_letter_map(side_v ? st.backward_map : st.forward_map, base_elt);
  auto m = base_->cyclic_exponent(side_v ? st.v_key : st.u_key, base_elt);
  if (!m) throw std::logic_error("subgroup_image on a non-member");
  return base_->power(side_v ? st.u_key : st.v_key, *m);
}

bool HnnSolver::oracle_is_full(int index) const {
  return stables_[index].spec.oracle == HnnStable::Oracle::full;
}

std::pair<ElementKey, ElementKey> HnnSolver::cyclic_pair(int index) const {
  return {stables_[index].u_key, stables_[index].v_key};
}

// Payload layout: ( [u8 seglen][segment bytes][u8 stable code] )* then
// [u8 seglen][segment bytes] for the final segment.

std::vector<HnnSolver::Token> HnnSolver::decode(const ElementKey& k) const {
  std::vector<Token> tokens;
  const std::string& s = k.payload();
  size_t i = 0;
  while (true) {
    if (i >= s.size()) throw std::logic_error("truncated hnn key");
    size_t len = static_cast<unsigned char>(s[i++]);
    if (i + len > s.size()) throw std::logic_error("truncated hnn key segment");
    Token t;
    t.seg = ElementKey(s.substr(i, len));
    i += len;
    if (i == s.size()) {
      t.stable = -1;
      tokens.push_back(std::move(t));
      return tokens;
    }
    int code = static_cast<unsigned char>(s[i++]);
    t.stable = code / 2;
    t.negative = code % 2 == 1;
    tokens.push_back(std::move(t));
  }
}

ElementKey HnnSolver::encode(const std::vector<Token>& tokens) const {
  std::string s;
  for (const Token& t : tokens) {
    const std::string& seg = t.seg.payload();
    if (seg.size() > 255) throw std::overflow_error("hnn base segment too large");
    s.push_back(static_cast<char>(seg.size()));
    s += seg;
    if (t.stable >= 0) s.push_back(static_cast<char>(t.stable * 2 + (t.negative ? 1 : 0)));
  }
  return ElementKey(std::move(s));
}

ElementKey HnnSolver::identity() const {
  return encode({Token{base_->identity(), -1, false}});
}

void HnnSolver::push_stable(std::vector<Token>& tokens, int index, bool negative) const {
  Token& last = tokens.back();
  // Pinch test: previous stable letter is the same s with opposite sign
  // and the enclosed segment lies in the matching subgroup. For s^-1 u s
  // the subgroup is U (negative == false here means we are appending s).
  if (tokens.size() >= 2) {
    const Token& prev = tokens[tokens.size() - 2];
    if (prev.stable == index && prev.negative != negative) {
      bool side_v = negative;  // appending s^-1 closes s v s^-1 with v in V
      if (subgroup_member(index, side_v, last.seg)) {
        ElementKey image = subgroup_image(index, side_v, last.seg);
        ElementKey merged = base_->mul(tokens[tokens.size() - 2].seg, image);
        tokens.pop_back();
        tokens.back().seg = std::move(merged);
        tokens.back().stable = -1;
        return;
      }
    }
  }
  // No pinch: normalize the segment to its canonical coset representative
  // and push the quotient through (u s = s phi(u), v s^-1 = s^-1 phi^-1(v)).
  bool side_v = negative;
  ElementKey rep, pushed;
  const StableData& st = stables_[index];
  if (st.spec.oracle == HnnStable::Oracle::full) {
    rep = base_->identity();
    pushed = apply_letter_map(side_v ? st.backward_map : st.forward_map, last.seg);
  } else {
    auto [r, m] = base_->cyclic_coset_split(side_v ? st.v_key : st.u_key, last.seg);
    rep = std::move(r);
    pushed = base_->power(side_v ? st.u_key : st.v_key, m);
  }
  last.seg = std::move(rep);
  last.stable = index;
  last.negative = negative;
  tokens.push_back(Token{std::move(pushed), -1, false});
}

ElementKey HnnSolver::apply(const ElementKey& k, Letter x) const {
  int code = stable_code_[x];
  if (code < 0) {
    // Base letters only touch the final segment; skip the full decode.
    const std::string& s = k.payload();
    size_t last = 0;
    for (size_t i = 0; i < s.size();) {
      size_t len = static_cast<unsigned char>(s[i]);
      if (i + 1 + len == s.size()) {
        last = i;
        break;
      }
      i += 1 + len + 1;
    }
    ElementKey seg2 = base_->apply(ElementKey(s.substr(last + 1)),
                                   static_cast<Letter>(structure_.full_to_base[x]));
    if (seg2.payload().size() > 255) throw std::overflow_error("hnn base segment too large");
    std::string out;
    out.reserve(last + 1 + seg2.payload().size());
    out.append(s, 0, last);
    out.push_back(static_cast<char>(seg2.payload().size()));
    out += seg2.payload();
    return ElementKey(std::move(out));
  }
  std::vector<Token> tokens = decode(k);
  push_stable(tokens, code / 2, code % 2 == 1);
  return encode(tokens);
}

ElementKey HnnSolver::mul(const ElementKey& a, const ElementKey& b) const {
  std::vector<Token> tokens = decode(a);
  for (const Token& t : decode(b)) {
    tokens.back().seg = base_->mul(tokens.back().seg, t.seg);
    if (t.stable >= 0) push_stable(tokens, t.stable, t.negative);
  }
  return encode(tokens);
}

ElementKey HnnSolver::inverse(const ElementKey& k) const {
  std::vector<Token> tokens = decode(k);
  std::vector<Token> out;
  out.push_back(Token{base_->inverse(tokens.back().seg), -1, false});
  for (size_t i = tokens.size() - 1; i-- > 0;) {
    push_stable(out, tokens[i].stable, !tokens[i].negative);
    out.back().seg = base_->mul(out.back().seg, base_->inverse(tokens[i].seg));
  }
  return encode(out);
}

Word HnnSolver::canonical_word(const ElementKey& k) const {
  Word w;
  for (const Token& t : decode(k)) {
    Word seg = base_->canonical_word(t.seg);
    Word full = from_base_word(seg);
    w.insert(w.end(), full.begin(), full.end());
    if (t.stable >= 0) w.push_back(stable_letter(t.stable, t.negative));
  }
  return w;
}

std::string HnnSolver::describe(const ElementKey& k) const {
  std::string s;
  for (const Token& t : decode(k)) {
    std::string seg = base_->describe(t.seg);
    if (!seg.empty() && seg != "1" && seg != "()") s += seg;
    if (t.stable >= 0) s += alphabet().name(stable_letter(t.stable, t.negative));
  }
  return s.empty() ? "1" : s;
}

int HnnSolver::stable_syllables(const ElementKey& k) const {
  return static_cast<int>(decode(k).size()) - 1;
}

std::shared_ptr<GroupSolver> make_solver(const PresentationFile& file) {
  if (file.is_hnn()) return std::make_shared<HnnSolver>(file);
  return std::shared_ptr<GroupSolver>(make_base_solver(file.pres));
}

}  // namespace loopshort
