#pragma once

#include <string>
#include <vector>

#include "modred/ambient.hpp"
#include "modred/fpmat.hpp"

namespace modred {

// A finitely supported non-negatively graded complex of finite-dimensional
// vector spaces over F_p. Encoding: "ch(d0,d1,..|D1|D2|..)" with one matrix
// section (row-major CSV) per differential d_i : level i -> level i-1; the
// zero complex is "ch()". Trailing zero dimensions are trimmed, so encodings
// are canonical and equality is string equality.
struct ChainObj {
  int p = 2;
  std::vector<int> dims;
  std::vector<FpMat> diff;  // diff[i] = d_{i+1} : level i+1 -> level i

  int top() const { return int(dims.size()) - 1; }
  int dim_at(int i) const;
  FpMat d_at(int i) const;  // d_i : level i -> level i-1 (zero-shaped off support)
  int homology_dim(int i) const;
  std::string encode() const;
  void validate() const;  // shapes, d∘d = 0, canonical trimming
};

// A chain map. Encoding: "chm(<dom>-><cod>|M0|M1|..)" with one matrix per
// level up to the larger support.
struct ChainMor {
  ChainObj dom_o, cod_o;
  std::vector<FpMat> level;  // level[i] : dom level i -> cod level i

  FpMat at(int i) const;
  int levels() const { return std::max(dom_o.top(), cod_o.top()) + 1; }
  std::string encode() const;
  void validate() const;  // shapes and the chain condition
};

ChainObj chain_obj_decode(int p, const std::string& s);
ChainMor chain_mor_decode(int p, const std::string& s);

ChainObj chain_zero(int p);
ChainObj chain_sphere(int p, int n);  // F_p concentrated in degree n
ChainObj chain_disk(int p, int n);    // F_p in degrees n, n-1 with identity differential (n >= 1)
ChainMor chain_zero_map(const ChainObj& a, const ChainObj& b);

// The projective-style model structure: we = quasi-isomorphism, fib =
// surjection in strictly positive degrees, cof = degreewise injection.
// I = {0 -> S^0} ∪ {S^{n-1} -> D^n}, J = {0 -> D^n} within the degree
// budget; J is not literally a subset of I and the generating-set report
// says so. The stored budget only guards degree growth in factorizations.
AmbientPtr chain_complexes(int p, const Budget& safety);

}  // namespace modred
