#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "modred/ambient.hpp"
#include "modred/diagram.hpp"
#include "modred/reedy.hpp"
#include "modred/report.hpp"

namespace modred {

// A functor between two ambient categories, given directly on encodings.
struct AmbientFunctor {
  AmbientPtr src;
  AmbientPtr dst;
  std::function<std::string(const std::string&)> on_obj;
  std::function<std::string(const std::string&)> on_mor;
};

AmbientFunctor identity_functor(const AmbientPtr& m);

// Checks the functor laws (endpoints, identities, composition) on objects
// and morphisms enumerated within the budget.
CheckReport verify_functor(const AmbientFunctor& f, const Budget& b);

// An adjunction left -| right with explicit hom-set transposition.
struct AdjointPair {
  AmbientFunctor left;   // src -> dst
  AmbientFunctor right;  // dst -> src
  // (x, y, f : left(x) -> y)  |->  x -> right(y), and its inverse.
  std::function<std::string(const std::string&, const std::string&, const std::string&)>
      to_right;
  std::function<std::string(const std::string&, const std::string&, const std::string&)>
      to_left;
};

AdjointPair identity_adjunction(const AmbientPtr& m);

// Verifies the transpositions are mutually inverse bijections
// Hom(left x, y) <-> Hom(x, right y) on enumerated object pairs.
CheckReport verify_adjoint_pair(const AdjointPair& p, const Budget& b);

// Entrywise application of a functor to diagrams and diagram maps.
Diagram apply_functor(const AmbientFunctor& f, const Diagram& x);
DiagramMap apply_functor_map(const AmbientFunctor& f, const DiagramMap& g);

// Verifies, on diagram maps enumerated within budget, that the entrywise
// prolongation of the pair's left functor carries the colimit-side class and
// its acyclic part of the source marked-objects structure into the same
// classes on the target side (both computed by classify). Functor laws and
// the hom bijection are checked first; class checks are skipped when they
// fail, so a broken functor is reported at the root cause.
CheckReport check_quillen_prolongation(const AdjointPair& pair, const ReedyStructure& r,
                                       const std::vector<std::string>& marked,
                                       const ModelAssignment& assign_src,
                                       const ModelAssignment& assign_dst, Side side,
                                       const Budget& b);

// Verifies, on diagram maps enumerated within budget, the identity-functor
// comparisons between the three structures over one assignment:
//  (a) the limit-favoring and colimit-favoring structures have the same weak
//      equivalences, and every limit-favoring fibration is a colimit-favoring
//      one;
//  (b) dropping a marked object keeps every weak equivalence and leaves the
//      colimit-favoring fibrations unchanged (checked per dropped object);
//  (c) for monotone increasing degree structures, the colimit-favoring and
//      entrywise structures classify every map identically.
CheckReport check_identity_comparisons(const ReedyStructure& r,
                                       const std::vector<std::string>& marked,
                                       const ModelAssignment& assign, const Budget& b);

// -------- categorical nerve levels --------

// Functors [n] -> M with entries enumerated within budget, realized as
// diagrams over the length-n chain shape; morphisms are all natural
// transformations, compiled into an explicit finite category.
struct NerveLevel {
  int n = 0;
  AmbientPtr m;
  std::vector<Diagram> objects;  // canonical enumeration order
  std::vector<std::string> ids;  // canonical encodings, same order
  FinCatPtr cat;
  std::map<std::string, Diagram> by_id;
  // morphism id -> components (absent for identities)
  std::map<std::string, std::map<std::string, std::string>> components;
};

// Canonical encoding of one [n]-ladder: entries and consecutive maps.
std::string nerve_encode(const Diagram& x);

NerveLevel nerve_level(const AmbientPtr& m, int n, const Budget& b);

// Structure maps between adjacent levels, acting on ladder objects:
// face drops entry i (composing through it), degen repeats entry i with an
// identity, pad_front prepends the initial object, pad_back appends the
// final one. The pads add no entries beyond those endpoint objects.
Diagram nerve_face(const Diagram& x, int i);
Diagram nerve_degen(const Diagram& x, int i);
Diagram nerve_pad_front(const Diagram& x);
Diagram nerve_pad_back(const Diagram& x);

// Face/degeneracy interchange identities on all ladders enumerated within
// budget, for every level up to max_n.
CheckReport check_nerve_identities(const AmbientPtr& m, int max_n, const Budget& b);

// The four adjunction families between levels n-1 and n — (face_i, degen_i)
// and (degen_i, face_{i+1}) for 0 <= i <= n-1, (pad_front, face_0),
// (face_n, pad_back) — verified by constructing the explicit ladder
// bijection on every enumerated hom-set pair and checking it is well
// defined, injective, surjective, and mutually inverse. A failure here
// falsifies a theorem instance, so it raises HardError instead of a failing
// report item.
CheckReport check_nerve_adjunctions(const AmbientPtr& m, int n, const Budget& b);

}  // namespace modred
