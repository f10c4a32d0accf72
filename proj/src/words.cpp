#include "loopshort/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopshort {

Alphabet::Alphabet(std::vector<std::string> names,
                   const std::vector<std::pair<std::string, std::string>>& inverse_pairs)
    : names_(std::move(names)) {
  if (names_.size() > 250) throw std::invalid_argument("alphabet too large");
  inv_.assign(names_.size(), 0xff);
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty letter name");
    auto [it, fresh] = by_name_.emplace(names_[i], static_cast<Letter>(i));
    if (!fresh) throw std::invalid_argument("duplicate letter: " + names_[i]);
    max_name_len_ = std::max(max_name_len_, names_[i].size());
  }
  for (const auto& [lo, hi] : inverse_pairs) {
    auto a = find(lo), b = find(hi);
    if (!a || !b) throw std::invalid_argument("inverse pair uses unknown letter: " + lo + "=" + hi);
    if (*a == *b) throw std::invalid_argument("letter equal to its own inverse: " + lo);
    if (inv_[*a] != 0xff || inv_[*b] != 0xff)
      throw std::invalid_argument("letter listed in two inverse pairs: " + lo);
    inv_[*a] = *b;
    inv_[*b] = *a;
  }
  for (size_t i = 0; i < names_.size(); ++i)
    if (inv_[i] == 0xff)
      throw std::invalid_argument("letter without inverse: " + names_[i]);
}

Alphabet Alphabet::from_case_pairs(std::string_view lowercase_letters) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (char c : lowercase_letters) {
    std::string lo(1, c);
    std::string hi(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    names.push_back(lo);
    names.push_back(hi);
    pairs.emplace_back(lo, hi);
  }
  return Alphabet(std::move(names), pairs);
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

Word Alphabet::word(std::string_view text) const {
  Word w;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    bool matched = false;
    for (size_t len = std::min(max_name_len_, text.size() - i); len >= 1; --len) {
      if (auto x = find(text.substr(i, len))) {
        w.push_back(*x);
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched)
      throw std::invalid_argument("cannot tokenize word at '" + std::string(text.substr(i)) + "'");
  }
  return w;
}

std::string Alphabet::str(const Word& w) const {
  std::string s;
  for (Letter x : w) s += names_[x];
  return s;
}

std::vector<std::pair<Letter, Letter>> Alphabet::inverse_pairs() const {
  std::vector<std::pair<Letter, Letter>> out;
  std::vector<bool> seen(size(), false);
  for (Letter x = 0; x < size(); ++x) {
    if (seen[x]) continue;
    seen[x] = seen[inv_[x]] = true;
    out.emplace_back(x, inv_[x]);
  }
  return out;
}

Word free_reduce(const Alphabet& a, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && a.inverse(out.back()) == x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word invert(const Alphabet& a, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(a.inverse(*it));
  return out;
}

Word subword(const Word& w, size_t from, size_t to) {
  from = std::min(from, w.size());
  to = std::min(std::max(to, from), w.size());
  return Word(w.begin() + from, w.begin() + to);
}

Word repeat(const Word& w, int n) {
  Word out;
  out.reserve(w.size() * std::max(n, 0));
  for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
}

}  // namespace loopshort
