#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modred/ambient.hpp"
#include "modred/common.hpp"
#include "modred/fincat.hpp"
#include "modred/reedy.hpp"
#include "modred/report.hpp"

namespace modred {

// A functor from a finite shape into an ambient category: one ambient object
// per shape object, one ambient morphism per non-identity shape morphism.
struct Diagram {
  FinCatPtr shape;
  AmbientPtr ambient;
  ShapeDiagramData data;

  // Throws ValidationError unless the data is a genuine functor (endpoints
  // line up and composition is preserved, checked exhaustively).
  void validate() const;

  const std::string& at(const std::string& obj) const;
  // The ambient morphism of any shape morphism, identities included.
  std::string edge(const std::string& mor) const;
};

// A natural transformation between two diagrams over the same shape and
// ambient: one component per shape object.
struct DiagramMap {
  Diagram src;
  Diagram dst;
  std::map<std::string, std::string> components;

  // Throws ValidationError unless both diagrams validate, the shapes and
  // ambients agree, every component has the right endpoints, and every
  // naturality square commutes (checked exhaustively).
  void validate() const;

  const std::string& at(const std::string& obj) const;
};

Diagram constant_diagram(const FinCatPtr& shape, const AmbientPtr& ambient,
                         const std::string& value);
DiagramMap identity_map(const Diagram& x);
// g after f, componentwise. Throws ValidationError if f.dst and g.src differ.
DiagramMap compose_maps(const DiagramMap& g, const DiagramMap& f);
// The unique map from the constant-initial diagram / to the constant-final one.
DiagramMap map_from_initial(const Diagram& x);
DiagramMap map_to_final(const Diagram& x);

struct EnumStats {
  long checked = 0;
  bool capped = false;
};

// Enumerates every functor shape -> m whose entries come from enum_objects
// and whose edges come from enum_homs, in canonical order. Only generating
// morphisms are chosen freely; the others are derived from generation
// witnesses, and a candidate is kept only when composition is preserved
// everywhere. visit returns false to stop early. At most b.max_diagrams
// functors are visited and b.max_search candidates examined; hitting either
// cap sets st.capped.
void for_each_diagram(const AmbientModel& m, const FinCatPtr& shape, const Budget& b,
                      const std::function<bool(const ShapeDiagramData&)>& visit, EnumStats& st);

// Enumerates every natural transformation x -> y in canonical order, pruning
// on naturality as components are chosen. Caps: b.max_maps visited,
// b.max_search candidates examined.
void for_each_map(const Diagram& x, const Diagram& y, const Budget& b,
                  const std::function<bool(const std::map<std::string, std::string>&)>& visit,
                  EnumStats& st);

// Diagonal fillers for the square
//
//          f
//     A ------> X
//     |         |
//   i |         | p
//     v         v
//     B ------> Y
//          g
//
// by exhaustive componentwise search with naturality pruning. Throws
// ValidationError unless the square commutes. Returns the components of the
// first filler in canonical order, or nullopt when none exists. Throws
// BudgetExceeded when the search is cut off before either answer is sure.
std::optional<std::map<std::string, std::string>> find_diagram_lift(const DiagramMap& i,
                                                                    const DiagramMap& p,
                                                                    const DiagramMap& f,
                                                                    const DiagramMap& g,
                                                                    const Budget& b);

// Does every commuting square from i to p admit a diagonal filler? Enumerates
// the squares within the budget; sets *capped when enumeration was cut short
// (a true answer is then only as good as the sample).
bool diagram_llp(const DiagramMap& i, const DiagramMap& p, const Budget& b,
                 bool* capped = nullptr);

// -------- degreewise data --------

// The colimit-side data of a degree structure at one object x: the compiled
// index category of raising maps into x, the induced diagram over it, its
// colimit, and (when x itself lies in the diagram's shape) the canonical map
// from the colimit into the entry at x.
struct ObjectColimitData {
  CompiledCat cat;
  ShapeDiagramData over;
  ColimitResult colim;
  std::string absolute;  // colim.apex -> X_x; empty when x is outside X.shape
};

// Dual: lowering maps out of x, limit, and the canonical map from the entry.
struct ObjectLimitData {
  CompiledCat cat;
  ShapeDiagramData over;
  LimitResult lim;
  std::string absolute;  // X_x -> lim.apex; empty when x is outside X.shape
};

// X.shape must contain every object a raising (resp. lowering) map at x
// involves; x itself is optional (absolute is then left empty).
ObjectColimitData latching_data(const ReedyStructure& r, const Diagram& x_diag,
                                const std::string& x);
ObjectLimitData matching_data(const ReedyStructure& r, const Diagram& x_diag,
                              const std::string& x);

// Pushout of the span a <-left- s -right-> b, with cocone legs keyed "a",
// "b", "s"; and pullback of the cospan a -left-> c <-right- b, with cone
// legs keyed "a", "b".
ColimitResult span_pushout(const AmbientPtr& amb, const std::string& s, const std::string& a,
                           const std::string& b, const std::string& left,
                           const std::string& right);
LimitResult cospan_pullback(const AmbientPtr& amb, const std::string& c, const std::string& a,
                            const std::string& b, const std::string& left,
                            const std::string& right);

// Relative colimit-side data of a map f : X -> Y at x:
//
//   L_x X ----------> L_x Y
//     | absolute        | (pushout leg from_latch)
//     v                 v
//    X_x ----------> object ---- relative ---> Y_x
//       (from_entry)
//
// with relative ∘ from_entry = f_x.
struct MapColimitData {
  ObjectColimitData src;  // over X
  ObjectColimitData dst;  // over Y
  std::string induced;    // L_x X -> L_x Y
  std::string object;     // the pushout apex
  std::string from_entry; // X_x -> object
  std::string from_latch; // L_x Y -> object
  std::string relative;   // object -> Y_x
};

// Dual: X_x -> object is `relative`, the pullback projections land in Y_x and
// M_x X, and to_entry ∘ relative = f_x.
struct MapLimitData {
  ObjectLimitData src;   // over X
  ObjectLimitData dst;   // over Y
  std::string induced;   // M_x X -> M_x Y
  std::string object;    // the pullback apex
  std::string to_entry;  // object -> Y_x
  std::string to_match;  // object -> M_x X
  std::string relative;  // X_x -> object
};

MapColimitData latching_of_map(const ReedyStructure& r, const DiagramMap& f,
                               const std::string& x);
MapLimitData matching_of_map(const ReedyStructure& r, const DiagramMap& f, const std::string& x);

// -------- classification --------

struct ClassVector {
  bool we = false;
  bool cof = false;
  bool fib = false;
  bool acy_cof = false;
  bool acy_fib = false;

  bool operator==(const ClassVector&) const = default;
  std::string to_string() const;
};

struct Classification {
  ClassVector classes;
  CheckReport evidence{"classification"};
};

// Classifies a diagram map in the marked-objects structure on the chosen
// side. Weak equivalences are tested on the entries at marked objects.
// On the colimit-favoring side, a map is a cofibration when its relative
// colimit-side map is a cofibration at every object and additionally acyclic
// at the unmarked ones; fibrations ask the relative limit-side map to be a
// fibration everywhere. The limit-favoring side is dual. Both acyclic
// classes are computed twice — by definition (class ∧ we) and by their
// relative characterization — and a disagreement raises HardError, since the
// two routes are provably equal.
// On the projective side, weak equivalences and fibrations are entrywise at
// the marked objects. For monotone increasing structures, cofibrations are
// computed exactly through the equivalent colimit-favoring structure whose
// unmarked objects carry the cofibrations-trivial structure; otherwise a
// budget-capped probe against enumerated entrywise acyclic fibrations is
// used (negatives are definitive, positives are labeled budget-limited).
Classification classify(const ReedyStructure& r, const std::vector<std::string>& marked,
                        const ModelAssignment& assign, const DiagramMap& f, Side side,
                        const Budget& b);

// -------- free diagrams and generating sets --------

// The diagram whose entry at b is the coproduct of copies of `value` indexed
// by hom(at_obj, b); left adjoint to evaluation at at_obj.
Diagram free_diagram(const FinCatPtr& shape, const AmbientPtr& ambient,
                     const std::string& at_obj, const std::string& value);
// Its action on an ambient morphism: a map of free diagrams.
DiagramMap free_map(const FinCatPtr& shape, const AmbientPtr& ambient, const std::string& at_obj,
                    const std::string& value_mor);

struct GeneratingSets {
  std::vector<DiagramMap> cofs;
  std::vector<DiagramMap> acyclic_cofs;
  CheckReport notes{"generating sets"};
};

// Object-indexed generating sets for the marked-objects structure, built by
// applying the free-diagram construction to the ambient's generators: on the
// colimit-favoring side the cofibration set uses the ambient cofibration
// generators at marked objects and the acyclic generators elsewhere, while
// the acyclic set uses the acyclic generators everywhere; the projective side
// uses marked objects only. Requires a monotone increasing structure and an
// ambient with generating sets (ValidationError otherwise; the limit-favoring
// side has no object-indexed description here and is likewise rejected).
GeneratingSets generating_sets(const ReedyStructure& r, const std::vector<std::string>& marked,
                               const AmbientPtr& ambient, Side side, const Budget& b);

// -------- restriction and extension --------

// The restriction of x to the full subcategory on objs.
Diagram restrict_diagram(const Diagram& x, const std::vector<std::string>& objs);

// Extension along the full inclusion of small.shape's objects into big,
// computed pointwise: the entry at c is the colimit over the category of
// pairs (a, phi : a -> c) with a in the subcategory. `unit` gives, at each
// subcategory object a, the comparison from small's entry into the extended
// entry at a; it is invertible because the inclusion is full.
struct Extension {
  Diagram extended;
  std::map<std::string, std::string> unit;
};

Extension extend_along_inclusion(const Diagram& small, const FinCatPtr& big);

// Extends, restricts back, and checks the comparison at every subcategory
// object is invertible.
CheckReport check_extension_unit(const Diagram& small, const FinCatPtr& big);

// -------- level-zero right extension --------

// The right adjoint to level-zero evaluation on truncated simplicial
// diagrams: level n is the product of n+1 copies of `value`, a structure map
// re-indexes coordinates along its underlying monotone map. Returns a
// validated diagram over truncated_simplex_op(levels).
Diagram r_zero(const AmbientPtr& ambient, const std::string& value, int levels);
// The projection (r_zero value)_[0] -> value (an isomorphism).
std::string r_zero_counit(const AmbientPtr& ambient, const std::string& value);

}  // namespace modred
