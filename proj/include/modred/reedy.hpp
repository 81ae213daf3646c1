#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "modred/ambient.hpp"
#include "modred/common.hpp"
#include "modred/fincat.hpp"
#include "modred/report.hpp"

namespace modred {

// A finite category with a degree function and two wide subcategories: a
// degree-raising class and a degree-lowering class, such that every morphism
// factors uniquely as a lowering map followed by a raising map. The classes
// are stored as morphism-id sets that always include the identities.
struct ReedyStructure {
  FinCatPtr base;
  std::map<std::string, int> degree;      // object -> degree
  std::set<std::string> raising;          // morphism ids ("plus" class)
  std::set<std::string> lowering;         // morphism ids ("minus" class)

  int degree_of(const std::string& obj) const;
  bool is_raising(const std::string& mor_id) const { return raising.count(mor_id) > 0; }
  bool is_lowering(const std::string& mor_id) const { return lowering.count(mor_id) > 0; }

  // Every non-identity morphism raises degree (the lowering class is just
  // the identities); dually for decreasing.
  bool monotone_increasing() const;
  bool monotone_decreasing() const;

  int max_degree() const;
  std::vector<std::string> objects_of_degree(int n) const;
  std::vector<std::string> objects_up_to_degree(int n) const;

  // The structure inherited by the full subcategory on objs: restricted
  // degree, intersected classes. Not validated here; run check_reedy.
  ReedyStructure restrict_to(const std::vector<std::string>& objs) const;

  // Full subcategory on the objects of degree <= n, with inherited structure.
  ReedyStructure truncate_to_degree(int n) const;

  // The unique (lowering, raising) factorization of a morphism, as computed
  // by exhaustive search; check_reedy guarantees existence and uniqueness.
  struct TwoStep {
    std::string lower;  // first factor, in the lowering class
    std::string raise;  // second factor, in the raising class
  };
  TwoStep factor(const std::string& mor_id) const;
};

// Validates every ReedyStructure invariant exhaustively. Report items carry
// the offending morphisms as witnesses. Also flags (as a failure) a nonempty
// base with no degree-0 object, since the degreewise induction used by the
// rest of the library starts at degree 0.
CheckReport check_reedy(const ReedyStructure& r);

// A latching or matching category compiled to an explicit finite category,
// with the forgetful functor back to the base.
//   Latching at x: objects are the non-identity raising maps b -> x; an arrow
//   (f: b -> x) -> (f': b' -> x) is a base morphism h: b -> b' with
//   f' ∘ h = f; the functor sends f to b and the arrow to h.
//   Matching at x: objects are the non-identity lowering maps x -> c; an
//   arrow (g: x -> c) -> (g': x -> c') is h: c -> c' with h ∘ g = g'; the
//   functor sends g to c and the arrow to h.
// Arrow ids are "t_<from>_<h>_<to>"; object ids are the base morphism ids.
struct CompiledCat {
  FinCatPtr cat;
  CatFunctor forget;  // cat -> base
};

CompiledCat latching_category(const ReedyStructure& r, const std::string& x);
CompiledCat matching_category(const ReedyStructure& r, const std::string& x);

// Result of the acceptability check for a marked object subset: whether the
// subset's inherited structure computes the same matching objects (left) and
// latching objects (right) as the whole base at each marked object. "Proof"
// tiers need no enumeration; the "enumerated" tier searched diagrams over an
// ambient category within budget and found no counterexample.
struct AcceptabilityReport {
  bool left = false;
  bool right = false;
  CheckReport detail{"acceptability"};

  // Populated on failure: the marked object, a serialized diagram over the
  // ambient category, and the comparison morphism that is not invertible.
  // Re-running the two (co)limit computations on witness_diagram reproduces
  // the discrepancy.
  struct Witness {
    std::string side;             // "left" | "right"
    std::string at_object;
    ShapeDiagramData witness_diagram;  // over the local witness shape
    std::vector<std::string> witness_shape_objects;
    std::string comparison;       // the non-invertible comparison morphism
  };
  std::vector<Witness> witnesses;
};

// Checks acceptability of the marked subset semantically over the given
// ambient category. Throws ValidationError (before any enumeration) when the
// subset fails to inherit a valid Reedy structure. Tiers, per side:
//   1. monotone fast path (increasing => left, decreasing => right): the
//      relevant index categories are all empty, so both (co)limits are the
//      (initial/final) object of the empty diagram — proof, no enumeration;
//   2. structural: the marked sub-structure's index category at x literally
//      equals the base's — proof, no enumeration;
//   3. enumerated: diagrams over the involved objects are enumerated within
//      budget and the induced comparison map is required to be invertible.
AcceptabilityReport check_acceptable(const ReedyStructure& r,
                                     const std::vector<std::string>& marked,
                                     const AmbientPtr& ambient, const Budget& b);

enum class Side { Left, Right, Projective };
Side side_from_string(const std::string& s);  // "left" | "right" | "proj"
std::string side_to_string(Side s);

// Verifies the per-object class-inclusion conditions that the chosen
// structure needs from an assignment of model-structure variants:
//   left:  for b the source of a latching-category object at x and c the
//          target of a matching-category object at x —
//          (1) Cof(M_b) ⊆ Cof(M_x); (2) Fib(M_x) ⊆ Fib(M_b);
//          (3) Fib(M_c) ⊆ Fib(M_x); (4) if x and c are both marked,
//          Cof(M_x) ⊆ Cof(M_c).
//   right: (1) Fib(M_c) ⊆ Fib(M_x); (2) Cof(M_x) ⊆ Cof(M_c);
//          (3) Cof(M_b) ⊆ Cof(M_x); (4) if x and b are both marked,
//          Fib(M_x) ⊆ Fib(M_b).
//   projective: whenever there is a morphism b -> x between marked objects,
//          Fib(M_x) ⊆ Fib(M_b).
// Inclusions are verified extensionally on all base-category morphisms
// enumerated within budget; failures carry a morphism witness.
CheckReport check_compat(const ReedyStructure& r, const std::vector<std::string>& marked,
                         const ModelAssignment& assign, Side side, const Budget& b);

}  // namespace modred
