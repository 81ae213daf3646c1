#pragma once

#include <string>
#include <vector>

#include "modred/ambient.hpp"

namespace modred {

// Decoded finite-set morphism. Encodings: object = decimal cardinality
// ("3" is {0,1,2}); morphism = "<dom>><cod>:<images>" with comma-separated
// images, e.g. "2>3:0,2" (empty image list when dom = 0).
struct FinSetMor {
  int dom = 0;
  int cod = 0;
  std::vector<int> img;

  std::string encode() const;
  bool injective() const;
  bool surjective() const;
};

FinSetMor finset_decode(const std::string& f);

// Finite sets with the (injection, surjection) weak factorization system
// promoted to a model structure by taking every map to be a weak
// equivalence. Generating sets: I = J = {the unique map 0 -> 1}.
AmbientPtr finset_wfs();

}  // namespace modred
