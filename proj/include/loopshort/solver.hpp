// Word-problem backends. A solver canonicalizes words into ElementKeys:
// two words represent the same group element iff their keys are equal.
// Keys carry cheap multiplication and inversion so metric code can use
// d(x,y) = d(1, x^-1 y).

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopshort/presentation.hpp"
#include "loopshort/words.hpp"

namespace loopshort {

uint64_t fnv1a64(const std::string& bytes);

class ElementKey {
 public:
  ElementKey() : hash_(fnv1a64(payload_)) {}
  explicit ElementKey(std::string payload)
      : payload_(std::move(payload)), hash_(fnv1a64(payload_)) {}

  const std::string& payload() const { return payload_; }
  uint64_t hash() const { return hash_; }

  friend bool operator==(const ElementKey& a, const ElementKey& b) {
    return a.hash_ == b.hash_ && a.payload_ == b.payload_;
  }
  friend bool operator!=(const ElementKey& a, const ElementKey& b) { return !(a == b); }
  // Arbitrary but stable order, used only for deterministic tie-breaks.
  friend bool operator<(const ElementKey& a, const ElementKey& b) {
    return a.payload_ < b.payload_;
  }

 private:
  std::string payload_;
  uint64_t hash_;
};

class GroupSolver {
 public:
  explicit GroupSolver(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  virtual ~GroupSolver() = default;

  const Alphabet& alphabet() const { return alphabet_; }

  virtual ElementKey identity() const { return ElementKey(); }
  virtual ElementKey apply(const ElementKey& k, Letter x) const = 0;
  virtual ElementKey mul(const ElementKey& a, const ElementKey& b) const = 0;
  virtual ElementKey inverse(const ElementKey& k) const = 0;
  // A word spelling the element; canonical per backend.
  virtual Word canonical_word(const ElementKey& k) const = 0;

  // Cyclic-subgroup support, required of backends that serve as HNN bases.
  // exponent: m with x = g^m, if any. coset_split: (rep, m) with
  // x = rep * g^m and rep a canonical representative of the coset x<g>.
  virtual std::optional<int64_t> cyclic_exponent(const ElementKey& g, const ElementKey& x) const;
  virtual std::pair<ElementKey, int64_t> cyclic_coset_split(const ElementKey& g,
                                                            const ElementKey& x) const;
  // Throws unless g is a usable cyclic-subgroup generator for this backend.
  virtual void validate_cyclic_generator(const ElementKey& g) const;

  ElementKey power(const ElementKey& g, int64_t m) const;
  ElementKey eval(const Word& w) const;
  ElementKey eval_from(const ElementKey& start, const Word& w) const;
  bool is_identity(const ElementKey& k) const { return k == identity(); }
  virtual std::string describe(const ElementKey& k) const {
    return alphabet_.str(canonical_word(k));
  }

 private:
  Alphabet alphabet_;
};

// Free group; generators may expand to words over a designated core set
// (the Bridson base carries c = aba^-1b^-1 as an extra generator).
class FreeGroupSolver : public GroupSolver {
 public:
  FreeGroupSolver(Alphabet alphabet, FreeBackendParams params);

  ElementKey apply(const ElementKey& k, Letter x) const override;
  ElementKey mul(const ElementKey& a, const ElementKey& b) const override;
  ElementKey inverse(const ElementKey& k) const override;
  Word canonical_word(const ElementKey& k) const override;
  std::optional<int64_t> cyclic_exponent(const ElementKey& g, const ElementKey& x) const override;
  std::pair<ElementKey, int64_t> cyclic_coset_split(const ElementKey& g,
                                                    const ElementKey& x) const override;
  void validate_cyclic_generator(const ElementKey& g) const override;

  const Word& expansion(Letter x) const { return expansions_[x]; }

 private:
  std::vector<Word> expansions_;  // per alphabet letter, over core letters
};

class FreeAbelianSolver : public GroupSolver {
 public:
  FreeAbelianSolver(Alphabet alphabet, AbelianBackendParams params);

  ElementKey identity() const override;
  ElementKey apply(const ElementKey& k, Letter x) const override;
  ElementKey mul(const ElementKey& a, const ElementKey& b) const override;
  ElementKey inverse(const ElementKey& k) const override;
  Word canonical_word(const ElementKey& k) const override;
  std::optional<int64_t> cyclic_exponent(const ElementKey& g, const ElementKey& x) const override;
  std::pair<ElementKey, int64_t> cyclic_coset_split(const ElementKey& g,
                                                    const ElementKey& x) const override;
  void validate_cyclic_generator(const ElementKey& g) const override;

  int dim() const { return dim_; }
  std::vector<int64_t> vector_of(const ElementKey& k) const;
  ElementKey key_of(const std::vector<int64_t>& v) const;
  const std::vector<int64_t>& letter_vector(Letter x) const { return images_[x]; }

 private:
  int dim_;
  std::vector<std::vector<int64_t>> images_;  // per letter
};

// Direct product of free groups; each generator maps to a word over the
// target factor symbols (the Stallings-kernel rho homomorphism).
class ProductFreeSolver : public GroupSolver {
 public:
  ProductFreeSolver(Alphabet alphabet, ProductBackendParams params);

  ElementKey identity() const override;
  ElementKey apply(const ElementKey& k, Letter x) const override;
  ElementKey mul(const ElementKey& a, const ElementKey& b) const override;
  ElementKey inverse(const ElementKey& k) const override;
  Word canonical_word(const ElementKey& k) const override;
  std::string describe(const ElementKey& k) const override;

  size_t factor_count() const { return factors_.size(); }
  const Alphabet& target_alphabet() const { return target_; }
  // Componentwise reduced image, as words over the target alphabet.
  std::vector<Word> components(const ElementKey& k) const;
  ElementKey key_of(const std::vector<Word>& comps) const;

 private:
  std::vector<std::string> factors_;
  Alphabet target_;                           // all factor symbols with case inverses
  std::vector<int> factor_of_target_letter_;  // target letter -> factor index
  std::vector<std::vector<std::pair<int, Letter>>> images_;  // per gen: (factor, target letter)+
};

// Literal-power membership in <g> for a free group: m with red(w) = g^m.
// g must be cyclically reduced and not a proper power.
class CyclicFreeOracle {
 public:
  CyclicFreeOracle(const Alphabet& a, Word g);
  std::optional<int64_t> exponent(const Word& reduced) const;
  const Word& generator() const { return g_; }

 private:
  const Alphabet* alphabet_;
  Word g_;
};

std::optional<int64_t> cyclic_membership_free(const Alphabet& a, const Word& w, const Word& g);
std::optional<int64_t> cyclic_membership_lattice(const std::vector<int64_t>& v,
                                                 const std::vector<int64_t>& g);

std::unique_ptr<GroupSolver> make_base_solver(const Presentation& p);

}  // namespace loopshort
