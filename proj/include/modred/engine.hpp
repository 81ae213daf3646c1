#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modred/ambient.hpp"
#include "modred/common.hpp"
#include "modred/diagram.hpp"
#include "modred/fincat.hpp"
#include "modred/reedy.hpp"

namespace modred {

// The degreewise machine: diagrams, maps, factorizations, and lifts over a
// degree structure are built one degree at a time. At each new object the
// entry is pinned between the colimit of what maps in from below (latching
// side) and the limit of what maps out to below (matching side); everything
// else is forced, and is re-verified exhaustively after each step.

// A diagram defined on the full subcategory of objects of degree <= level.
// level -1 means the empty stage.
struct SkeletalDiagram {
  Diagram part;
  int level = -1;

  // Throws ValidationError unless part is a functor on exactly the
  // degree-<= level full subcategory of r.
  void validate(const ReedyStructure& r) const;
};

SkeletalDiagram empty_skeleton(const ReedyStructure& r, const AmbientPtr& ambient);
// Restriction of a diagram over the whole base to degree <= level.
SkeletalDiagram skeleton(const ReedyStructure& r, const Diagram& x, int level);

// The two-sided data pinning a new entry at alpha over a stage one degree
// below: the latching colimit, the matching limit, and the canonical map
// between them (each composite latching object -> matching object is an edge
// of the stage, so the map exists before the entry does).
struct DegreeData {
  ObjectColimitData lat;
  ObjectLimitData mat;
  std::string canonical;  // lat.colim.apex -> mat.lim.apex
};

DegreeData degree_data(const ReedyStructure& r, const SkeletalDiagram& xhat,
                       const std::string& alpha);

// Extends a stage by one degree. choices maps every object of degree
// level+1 to a factorization of its canonical map: first lands in the new
// entry (the middle), second continues to the matching limit. New edges are
// forced by the unique lowering-then-raising factorization; the result is
// re-validated exhaustively.
// Throws ValidationError when a choice is missing, has wrong endpoints, or
// does not compose to the canonical map.
SkeletalDiagram extend_object(const ReedyStructure& r, const SkeletalDiagram& xhat,
                              const std::map<std::string, Factorization>& choices);

// Relative colimit-side data of a map at alpha, computed from components
// below degree |alpha| only: the pushout of
//   L_a(dst) <- L_a(src) -> src_alpha.
// src must contain alpha; dst needs only the latching objects.
struct PushData {
  ObjectColimitData lat_src, lat_dst;
  std::string induced;     // L_a(src) -> L_a(dst)
  ColimitResult push;      // legs keyed "a" (entry), "b" (latch), "s"
  std::string apex;
  std::string from_entry;  // src_alpha -> apex
  std::string from_latch;  // L_a(dst) -> apex
};

PushData relative_push(const ReedyStructure& r, const Diagram& src, const Diagram& dst,
                       const std::map<std::string, std::string>& f_below,
                       const std::string& alpha);

// Dual: the pullback of dst_alpha -> M_a(dst) <- M_a(src). dst must contain
// alpha; src needs only the matching objects.
struct PullData {
  ObjectLimitData mat_src, mat_dst;
  std::string induced;   // M_a(src) -> M_a(dst)
  LimitResult pull;      // legs keyed "a" (entry), "b" (match)
  std::string apex;
  std::string to_entry;  // apex -> dst_alpha
  std::string to_match;  // apex -> M_a(src)
};

PullData relative_pull(const ReedyStructure& r, const Diagram& src, const Diagram& dst,
                       const std::map<std::string, std::string>& f_below,
                       const std::string& alpha);

// The degree-n choice for extending a map: the two diagonals of the square
//   src_a -> push apex          (from_entry)
//     |           |
//   match         latch
//     v           v
//   pull apex -> dst_a          (to_entry)
// whose commuting composite becomes the new component.
struct MapSquare {
  std::string match_part;  // src_alpha -> pull apex
  std::string latch_part;  // push apex -> dst_alpha
};

// Extends a natural transformation by one degree: xn and yn are stages at
// the same level, f_below its components on the stage one degree down, and
// choices covers every object of the top degree. Naturality of the result is
// verified exhaustively. Throws ValidationError when a square does not
// commute or a choice is missing/mistyped.
DiagramMap extend_map(const ReedyStructure& r, const SkeletalDiagram& xn,
                      const SkeletalDiagram& yn,
                      const std::map<std::string, std::string>& f_below,
                      const std::map<std::string, MapSquare>& choices);

// -------- factorization --------

enum class FactorMode { CofThenAcyFib, AcyCofThenFib };
FactorMode factor_mode_from_string(const std::string& s);  // "cof_acyfib" | "acycof_fib"
std::string factor_mode_to_string(FactorMode m);

struct FactorResult {
  DiagramMap f;  // src = the factored map's source, dst = z
  Diagram z;
  DiagramMap p;  // src = z, dst = the factored map's target
};

// Factors g = p . f degree by degree in the marked-object structure on the
// chosen side (colimit- or limit-favoring; the entrywise side is rejected).
// At each new object the canonical relative map is factored by the ambient
// oracle of the local structure variant, picking the class pair the side's
// table prescribes for the mode at marked/unmarked objects. The composite
// equals g on the nose, and every stage is re-validated exhaustively.
// Throws ValidationError when the class-inclusion compatibility check fails
// for the assignment, and HardError if an internal invariant breaks.
FactorResult factorize(const ReedyStructure& r, const std::vector<std::string>& marked,
                       const ModelAssignment& assign, const DiagramMap& g, Side side,
                       FactorMode mode, const Budget& b);

// -------- lifting --------

// Searches for a diagonal in the commuting square
//
//        top
//     A -----> X
//     |        |
//   f |        | p
//     v        v
//     B -----> Y
//       bottom
//
// degree by degree: at each object the choice reduces to lifting one square
// between the relative pushout of f and the relative pullback of p, and the
// per-object candidates are enumerated exhaustively (lexicographically
// first), with full backtracking across degrees. Returns the first complete
// diagonal (both triangles verified), or nullopt when the exhaustive search
// proves none exists. Throws ValidationError when the square does not
// commute, and BudgetExceeded when the search is cut off undecided.
std::optional<DiagramMap> reedy_lift(const ReedyStructure& r, const DiagramMap& f,
                                     const DiagramMap& p, const DiagramMap& top,
                                     const DiagramMap& bottom, const Budget& b);

// -------- fibrant / cofibrant replacement --------

enum class ReplacementKind { Fibrant, Cofibrant };

struct ReplacementResult {
  // Fibrant: map is x -> object (an acyclic cofibration when the structure's
  // hypotheses hold), and object -> final is the fibration half.
  // Cofibrant: map is object -> x (an acyclic fibration likewise), and
  // initial -> object is the cofibration half.
  DiagramMap map;
  Diagram object;
  FactorResult via;
};

ReplacementResult replacement(const ReedyStructure& r, const std::vector<std::string>& marked,
                              const ModelAssignment& assign, const Diagram& x,
                              ReplacementKind kind, Side side, const Budget& b);

}  // namespace modred
