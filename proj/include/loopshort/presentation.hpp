// Finite presentations and multiple-HNN structure descriptions, plus the
// line-based presentation file format.
//
// File format (UTF-8, '#' comments, unknown keys are errors):
//
//   name wise
//   generators a A b B c C d D s S t T
//   inverses a=A b=B c=C d=D s=S t=T
//   relator cBA
//   backend hnn
//   base-backend free-abelian dim 2 map a=(1,0) b=(0,1) c=(1,1) d=(2,2)
//   stable s pair a -> d
//   stable t pair b -> d
//
// Backends: free [core x y ...] [map g=word ...]
//           free-abelian dim D map g=(c1,..,cD) ...
//           direct-product-free factors ab|cd|ef map g=word ...
//           hnn  (requires base-backend and stable lines)
// Stable lines: stable <letter> [oracle cyclic|full] pair <w> -> <w> [pair ...]

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopshort/words.hpp"

namespace loopshort {

enum class BackendHint { free_group, free_abelian, direct_product_free, hnn };

std::string backend_name(BackendHint b);

struct FreeBackendParams {
  // Core letters generate freely; other generators expand to core words.
  std::vector<Letter> core;
  std::map<Letter, Word> expansions;  // over core letters; core letters map to themselves
};

struct AbelianBackendParams {
  int dim = 0;
  std::map<Letter, std::vector<int64_t>> images;  // one entry per non-inverse generator
};

struct ProductBackendParams {
  // Target free factors, e.g. {"ab","cd","ef"} for (F_2)^3. The factor
  // string lists the lowercase core symbols of that factor.
  std::vector<std::string> factors;
  std::map<Letter, std::string> images;  // generator -> word over factor symbols (case = inverse)
};

struct Presentation {
  std::string name;
  Alphabet alphabet;
  std::vector<Word> relators;
  BackendHint backend = BackendHint::free_group;
  std::optional<FreeBackendParams> free_params;
  std::optional<AbelianBackendParams> abelian_params;
  std::optional<ProductBackendParams> product_params;
};

struct HnnStable {
  enum class Oracle { cyclic, full };
  Letter letter;  // the positive stable letter in the full alphabet
  Oracle oracle = Oracle::cyclic;
  // Pairs (u, v) over the base alphabet encoding phi(u) = v, i.e. the
  // relation s^-1 u s = v.
  std::vector<std::pair<Word, Word>> pairs;
};

struct HnnStructure {
  Presentation base;  // alphabet = full alphabet minus stable letters, ids remapped
  std::vector<HnnStable> stables;
  // Letter translation between the full alphabet and the base alphabet.
  std::vector<int> full_to_base;  // -1 for stable letters
  std::vector<Letter> base_to_full;
};

struct PresentationFile {
  Presentation pres;  // alphabet/relators/backend over the full alphabet
  std::optional<HnnStructure> hnn;
  bool is_hnn() const { return hnn.has_value(); }
};

PresentationFile parse_presentation(const std::string& text);
std::string serialize_presentation(const PresentationFile& f);

}  // namespace loopshort
