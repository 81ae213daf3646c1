#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "modred/ambient.hpp"
#include "modred/common.hpp"
#include "modred/diagram.hpp"
#include "modred/fincat.hpp"
#include "modred/reedy.hpp"
#include "modred/report.hpp"

namespace modred {

// A pointed full subcategory of cofibrant objects inside an ambient model
// category, described by a membership predicate on canonical encodings plus
// a bounded enumerator. Closure properties are not assumed here;
// waldhausen_check verifies them.
struct WaldhausenSubcat {
  AmbientPtr ambient;
  std::string label;
  std::string zero;  // the distinguished point (normally the initial object)
  std::function<bool(const std::string&)> member;
  // Narrows an enumeration budget to this subcategory's natural bounds
  // (for instance, cap the chain degree at zero); identity when absent.
  std::function<Budget(const Budget&)> tune;

  Budget tuned(const Budget& b) const;
  // All members among the ambient objects enumerated under the tuned
  // budget, in the ambient's canonical order.
  std::vector<std::string> enumerate(const Budget& b) const;
};

// Chain complexes concentrated in degree 0, of dimension <= max_dim
// (no cap beyond the budget when max_dim < 0).
WaldhausenSubcat degree_zero_complexes(const AmbientPtr& chains, int max_dim);
// Just the distinguished point.
WaldhausenSubcat zero_object_only(const AmbientPtr& m);

// Verifies that u is a pointed subcategory of cofibrant objects closed
// under the pushouts it needs: the ambient is pointed (initial = final
// object), the distinguished point is a member, every enumerated member is
// cofibrant, and the pushout of every enumerated span C <- A -> B of
// members with at least one cofibration leg is again a member. Failing
// items carry the offending object or span as a witness.
CheckReport waldhausen_check(const WaldhausenSubcat& u, const Budget& b);

// -------- cofibration chains --------

// Chains of cofibrations between members: diagrams over the length-n chain
// shape whose entries are all members and whose from-initial map is a
// cofibration in the everything-marked colimit-side structure.
struct TLevel {
  int n = 0;
  AmbientPtr ambient;
  std::vector<Diagram> objects;  // sorted by encoding
  std::vector<std::string> ids;  // canonical encodings, same order
};

// Throws BudgetExceeded when the underlying enumeration is cut short.
TLevel t_level(const AmbientPtr& m, const WaldhausenSubcat& u, int n, const Budget& b);

// The broad class of maps between chains: the relative colimit-side
// comparison at every positive position is a weak equivalence (no condition
// at position 0).
bool thomason_w(const DiagramMap& f);
// The narrow class: cofibrations in the colimit-side structure marking only
// position 0, i.e. the position-0 component is a cofibration and every
// later relative comparison is an acyclic cofibration. Narrow implies
// broad.
bool thomason_wbar(const DiagramMap& f, const Budget& b);

// -------- rectangle diagrams --------

// Cached shapes (one instance per size, so diagrams over equal sizes share
// their shape and compose freely).
FinCatPtr grid_shape(int rows_top, int cols_top);  // objects "ij"
FinCatPtr chain_shape(int top);                    // objects "0".."top"

// The marked objects of the rectangle structure: first row and first
// column.
std::vector<std::string> grid_marked(int rows_top, int cols_top);
// The rectangle shape with its taxicab degree, every non-identity morphism
// raising.
ReedyStructure grid_structure(int rows_top, int cols_top);

// Builds the rectangle diagram with the given rows (diagrams over one
// chain shape) and vertical components between consecutive rows; each mixed
// edge is the common composite. Validates functoriality.
Diagram grid_from_rows(const AmbientPtr& ambient, const std::vector<Diagram>& rows,
                       const std::vector<std::map<std::string, std::string>>& verticals);

// Canonical encoding of a rectangle diagram: its size, then entries, then
// edges, each section in lexicographic id order. grid_decode inverts it and
// validates the result.
std::string grid_encode(const Diagram& g);
Diagram grid_decode(const AmbientPtr& ambient, const std::string& enc);

// Structure operations on rectangle diagrams. Faces delete one column
// (horizontal) or row (vertical), composing through the deleted line;
// degeneracies duplicate a line, inserting identities. The pads prepend a
// constant line on the initial object (front) or append one on the final
// object (back). Index range: 0..cols_top for horizontal, 0..rows_top for
// vertical; ValidationError outside it or when a face would empty the
// rectangle.
Diagram grid_h_face(const Diagram& g, int i);
Diagram grid_v_face(const Diagram& g, int i);
Diagram grid_h_degen(const Diagram& g, int i);
Diagram grid_v_degen(const Diagram& g, int i);
Diagram grid_h_pad_front(const Diagram& g);
Diagram grid_h_pad_back(const Diagram& g);
Diagram grid_v_pad_front(const Diagram& g);
Diagram grid_v_pad_back(const Diagram& g);

// The same operations applied to maps of rectangle diagrams, componentwise.
DiagramMap grid_map_h_face(const DiagramMap& f, int i);
DiagramMap grid_map_v_face(const DiagramMap& f, int i);
DiagramMap grid_map_h_degen(const DiagramMap& f, int i);
DiagramMap grid_map_v_degen(const DiagramMap& f, int i);
DiagramMap grid_map_h_pad_front(const DiagramMap& f);
DiagramMap grid_map_h_pad_back(const DiagramMap& f);
DiagramMap grid_map_v_pad_front(const DiagramMap& f);
DiagramMap grid_map_v_pad_back(const DiagramMap& f);

// -------- truncated two-directional families --------

// A truncated two-directional family of entry sets with face and
// degeneracy index maps. Levels are the bidegrees (n, m) with
// n + m <= truncation; each entry list holds canonical rectangle encodings
// in sorted order, and an index map sends the k-th entry of its source
// level to the recorded index in its target level. Keys are "n,m" for
// entries and "n,m,i" for the map with index i out of level (n, m); maps
// are present exactly when source and target levels both lie inside the
// truncation.
struct BisimplicialSet {
  int truncation = 0;
  std::map<std::string, std::vector<std::string>> entries;
  std::map<std::string, std::vector<int>> h_faces;   // (n,m,i) : (n,m) -> (n,m-1)
  std::map<std::string, std::vector<int>> v_faces;   // (n,m,i) : (n,m) -> (n-1,m)
  std::map<std::string, std::vector<int>> h_degens;  // (n,m,i) : (n,m) -> (n,m+1)
  std::map<std::string, std::vector<int>> v_degens;  // (n,m,i) : (n,m) -> (n+1,m)
};

enum class BiPipeline { EvCof, NerveWbarT };
BiPipeline pipeline_from_string(const std::string& s);  // "evcof" | "nerve_wbar_t"
std::string pipeline_to_string(BiPipeline p);

// Builds the truncated family over u along one of two routes:
//  - EvCof enumerates rectangle diagrams with member entries and keeps
//    those whose from-initial map is a cofibration in the first-row-and-
//    column structure;
//  - NerveWbarT enumerates cofibration chains for each row length and
//    stacks them along enumerated maps of the narrow class.
// Both routes sort entries by encoding and derive the face/degeneracy index
// maps with the same rectangle operations, so route agreement is literal
// equality of the structs. Every entry is re-verified (membership,
// cofibrancy, and an encode/decode round trip); a failure there or a
// structure-map image missing from its target level raises HardError.
// Throws BudgetExceeded when an enumeration is cut short and
// ValidationError when a level's marked subset fails acceptability or the
// truncation is negative.
BisimplicialSet build_bisimplicial(const AmbientPtr& m, const WaldhausenSubcat& u,
                                   int truncation, BiPipeline pipeline, const Budget& b);

struct BiCompare {
  bool equal = false;
  std::string witness;  // first difference, empty when equal
};

// Literal comparison of two families: level sets, entry lists, and all four
// index-map tables. Throws ValidationError on mismatched truncations.
BiCompare compare_bisimplicial(const BisimplicialSet& a, const BisimplicialSet& b);

// Exhaustive face/degeneracy identities on the index maps, within the
// truncation: face-face, degeneracy-degeneracy, and face-degeneracy
// interchange in each direction, plus commutation of every horizontal
// operation with every vertical one. Only instances whose intermediate and
// final levels lie inside the truncation are checked; item labels carry
// instance counts.
CheckReport check_bisimplicial_identities(const BisimplicialSet& s);

// For every level inside the truncation and both directions, sweeps
// enumerated maps of rectangle diagrams with member entries and verifies
// the preservation half of each structure map's adjunction roles in the
// first-row-and-column structures: every face is checked on cofibrations,
// acyclic cofibrations, fibrations, and acyclic fibrations; every
// degeneracy likewise; the initial pad on cofibrations and acyclic
// cofibrations; the final pad on fibrations and acyclic fibrations.
// Enumeration is budget-capped (diagram pool by max_diagrams, map count by
// max_maps) and deterministic. Failing items carry the first offending map
// and are reported rather than raised, so a refuted preservation claim
// shows up red with its witness. Also confirms, on the built family, that
// every face and degeneracy image of an entry is again an entry.
CheckReport check_structure_maps_quillen(const AmbientPtr& m, const WaldhausenSubcat& u,
                                         int truncation, const Budget& b);

}  // namespace modred
