// Built-in presentations and solvers for the groups under study, plus
// their witness-word families and the minimal-length search behind the
// image-length lower bound.
//
//   f2                free group of rank 2
//   z2-wise-base      Z^2 with generators a,b,c,d = (1,0),(0,1),(1,1),(2,2)
//   z2-gersten-base   Z^2 with d = (1,-1) instead
//   f2c-bridson-base  F_2 with the commutator c = aba^-1b^-1 as a generator
//   wise              double HNN extension of z2-wise-base (s: a->d, t: b->d)
//   bridson           triple HNN extension of f2c-bridson-base
//   gersten           double HNN extension of z2-gersten-base (s: a->c, t: a->d)
//   stallings         kernel of (F_2)^3 -> Z, Dicks-Leary presentation
//                     (12 edge generators of the octahedron, 16 relations)

#pragma once

#include <memory>

#include "loopshort/hnn_solver.hpp"

namespace loopshort {

struct Preset {
  std::string name;
  PresentationFile file;
  std::shared_ptr<GroupSolver> solver;
  std::string text;  // the presentation file contents, serializer-canonical

  const Alphabet& alphabet() const { return file.pres.alphabet; }
  Word word(std::string_view s) const { return alphabet().word(s); }
};

const std::vector<std::string>& preset_names();
// Cached; throws std::invalid_argument for unknown names. Relators are
// verified to evaluate to the identity at first construction.
const Preset& preset(const std::string& name);

// d^n s t^-1 c^n d^n s t^-1 c^-n d^-n s t^-1 c^-n d^-n s t^-1 c^n,
// length 8n+8, a loop in the gersten preset.
std::string gersten_loop(int n);

// (fA)^n (dE)^n (aC)^(n-1) and the b-side twin, each of length 3n-1;
// gamma = aCcB connects their endpoints.
std::string stallings_alpha(int n);
std::string stallings_beta(int n);
std::string stallings_gamma();

struct MinLengthResult {
  int min_length;
  Word witness;  // over the stallings alphabet
  uint64_t nodes = 0;
};

// Exact minimal length of a word over the stallings generators whose
// image is f^n d^n E^n C^(n-1) Z for z in {c,d,e,f}: iterative deepening
// with the admissible bound ceil(remaining image length / 2) (each
// generator touches two factors). Exhaustive-equivalent, so failed depth
// limits are proofs of absence.
MinLengthResult lemma_bb_min_length(int n, char z);

// Variant with a factor-0-trivial word v of length < n-1 inserted before
// the final letter: image f^n d^n E^n C^(n-1) rho(v) Z.
MinLengthResult lemma_bb2_min_length(int n, const Word& v, char z);

}  // namespace loopshort
