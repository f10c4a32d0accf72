// Word problem for multiple HNN extensions via Britton's lemma.
//
// Keys are reduced sequences  k0 s1^e1 k1 ... sm^em km  of base-group
// elements and signed stable letters with no pinch (no s^-1 u s, u in U,
// or s v s^-1, v in V). To make keys canonical, each segment standing
// before a stable letter is replaced by a canonical representative of its
// coset modulo the associated subgroup, pushing the quotient through the
// stable letter (u s = s phi(u)); the final segment is unconstrained.
// Uniqueness then follows from the HNN normal form theorem.

#pragma once

#include <memory>

#include "loopshort/solver.hpp"

namespace loopshort {

class HnnSolver : public GroupSolver {
 public:
  HnnSolver(const PresentationFile& file);

  ElementKey identity() const override;
  ElementKey apply(const ElementKey& k, Letter x) const override;
  ElementKey mul(const ElementKey& a, const ElementKey& b) const override;
  ElementKey inverse(const ElementKey& k) const override;
  Word canonical_word(const ElementKey& k) const override;
  std::string describe(const ElementKey& k) const override;

  const GroupSolver& base() const { return *base_; }
  const HnnStructure& structure() const { return structure_; }

  // Letter classification in the full alphabet.
  bool is_stable(Letter x) const { return stable_code_[x] >= 0; }
  // For a stable letter: (stable index, negative?).
  std::pair<int, bool> stable_of(Letter x) const;
  Letter stable_letter(int index, bool negative) const;
  int base_letter(Letter x) const { return structure_.full_to_base[x]; }
  Letter full_letter(Letter base_letter) const { return structure_.base_to_full[base_letter]; }

  Word to_base_word(const Word& w) const;    // word without stable letters
  Word from_base_word(const Word& w) const;  // base word respelled in the full alphabet

  size_t stable_count() const { return stables_.size(); }
  // Membership of a base element in U_i (side=false) or V_i (side=true).
  // Returns the exponent for cyclic subgroups, 0 for full-group oracles.
  std::optional<int64_t> subgroup_member(int index, bool side_v, const ElementKey& base_elt) const;
  // Image of a member under phi_i (or its inverse when side_v).
  ElementKey subgroup_image(int index, bool side_v, const ElementKey& base_elt) const;
  bool oracle_is_full(int index) const;
  // Generator pair (u_key, v_key) for cyclic subgroups.
  std::pair<ElementKey, ElementKey> cyclic_pair(int index) const;
  const std::vector<std::pair<Word, Word>>& pairs(int index) const {
    return stables_[index].spec.pairs;
  }

  // Number of stable letters in the key's reduced form.
  int stable_syllables(const ElementKey& k) const;

 private:
  struct StableData {
    HnnStable spec;
    ElementKey u_key, v_key;          // cyclic generators (unset for full)
    std::vector<Word> forward_map;    // full oracle: base letter -> image word
    std::vector<Word> backward_map;
  };

  struct Token {
    ElementKey seg;
    int stable = -1;  // -1 for the final segment marker
    bool negative = false;
  };

  std::vector<Token> decode(const ElementKey& k) const;
  ElementKey encode(const std::vector<Token>& tokens) const;
  // Appends s^e to the token sequence, maintaining the reduced normal form.
  void push_stable(std::vector<Token>& tokens, int index, bool negative) const;
  ElementKey apply_letter_map(const std::vector<Word>& map, const ElementKey& e) const;

  std::unique_ptr<GroupSolver> base_;
  HnnStructure structure_;
  std::vector<StableData> stables_;
  std::vector<int> stable_code_;  // per full letter: -1 or (index*2 + negative)
};

// Builds a solver for any presentation file, HNN or base.
std::shared_ptr<GroupSolver> make_solver(const PresentationFile& file);

}  // namespace loopshort
