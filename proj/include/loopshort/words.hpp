// Involutive alphabets and words: the shared vocabulary of every module.
//
// Letters are small integer ids into an Alphabet. Letter names are short
// strings; for most groups a name is a single symbol with the convention
// that a lowercase/uppercase pair denotes a formal inverse (a/A, s/S).
// Generators named by directed edges (the Stallings-kernel presentation)
// use two-symbol names like "aC", whose inverse is "cA".

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace loopshort {

using Letter = uint8_t;
using Word = std::vector<Letter>;

class Alphabet {
 public:
  Alphabet() = default;
  // names in declaration order (this order defines shortlex tie-breaking);
  // inverse_pairs completes the involution, every letter must be covered.
  Alphabet(std::vector<std::string> names,
           const std::vector<std::pair<std::string, std::string>>& inverse_pairs);

  // "ab" -> letters a A b B with a=A, b=B.
  static Alphabet from_case_pairs(std::string_view lowercase_letters);

  size_t size() const { return names_.size(); }
  const std::string& name(Letter x) const { return names_[x]; }
  Letter inverse(Letter x) const { return inv_[x]; }
  std::optional<Letter> find(std::string_view name) const;

  // Greedy longest-match tokenizer; whitespace is skipped. Throws
  // std::invalid_argument on any unmatchable input.
  Word word(std::string_view text) const;
  std::string str(const Word& w) const;
  std::string str(Letter x) const { return names_[x]; }

  // The pairs (x, inv(x)) with x listed first in declaration order.
  std::vector<std::pair<Letter, Letter>> inverse_pairs() const;

  bool operator==(const Alphabet& other) const {
    return names_ == other.names_ && inv_ == other.inv_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inv_;
  std::unordered_map<std::string, Letter> by_name_;
  size_t max_name_len_ = 0;
};

// Removes adjacent x·inv(x) pairs until none remain. Result is freely
// equal to the input; idempotent and length-nonincreasing.
Word free_reduce(const Alphabet& a, const Word& w);

// Reverse the sequence and replace each letter by its involution image.
Word invert(const Alphabet& a, const Word& w);

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// w[from..to) as a word; indices clamped to [0, |w|].
Word subword(const Word& w, size_t from, size_t to);

// Word repeated n times (n >= 0).
Word repeat(const Word& w, int n);

// True if u precedes v in shortlex order under the alphabet's letter order.
bool shortlex_less(const Word& u, const Word& v);

}  // namespace loopshort
