#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace modred {

struct MorData {
  std::string id;
  std::string src;
  std::string dst;
};

struct ComposeTriple {
  std::string g;   // outer
  std::string f;   // inner
  std::string gf;  // composite g after f
};

class FinCategory;
using FinCatPtr = std::shared_ptr<const FinCategory>;

// A finite category with a total composition table. Identities are implicit
// in the construction inputs (id "id_<object>") and materialized on build.
// Objects and morphism ids are kept in sorted order; every enumeration that
// walks them is therefore canonical.
class FinCategory {
 public:
  // Throws ValidationError (with a witness) unless the data form a category:
  // unique ids, endpoints exist, the table covers exactly the composable
  // non-identity pairs, identity laws, associativity.
  static FinCatPtr build(std::string name, std::vector<std::string> objects,
                         std::vector<MorData> morphisms,
                         std::vector<ComposeTriple> composition);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& morphisms() const { return mor_ids_; }

  bool has_object(const std::string& o) const;
  bool has_morphism(const std::string& m) const;
  const MorData& mor(const std::string& id) const;
  const std::string& src(const std::string& id) const { return mor(id).src; }
  const std::string& dst(const std::string& id) const { return mor(id).dst; }

  static std::string identity_id(const std::string& obj) { return "id_" + obj; }
  bool is_identity(const std::string& id) const;

  // g after f; throws if dst(f) != src(g).
  const std::string& compose(const std::string& g, const std::string& f) const;

  std::vector<std::string> hom(const std::string& a, const std::string& b) const;
  std::vector<std::string> nonidentity_morphisms() const;

  // Non-identity morphisms that are not a composite of two non-identity
  // morphisms. In a poset these generate; in general they need not (a
  // section/retraction pair lets every arrow detour through a third object),
  // so enumeration code uses generating_morphisms() instead.
  std::vector<std::string> indecomposables() const;

  // A minimal generating set: identities plus composites of these reach every
  // morphism, and dropping any member breaks that. Deterministic (greedy
  // removal in sorted order); always contains every indecomposable.
  std::vector<std::string> generating_morphisms() const;

  // For each morphism outside gens (identities included), one factorization
  // outer∘inner whose factors are generated earlier; empty optional marks the
  // generators and identities themselves. Throws if gens does not generate.
  struct GenWitness {
    std::string outer, inner;
  };
  std::map<std::string, std::optional<GenWitness>> generation_witnesses(
      const std::vector<std::string>& gens) const;

  bool same_structure(const FinCategory& o) const;

 private:
  FinCategory() = default;
  int idx(const std::string& id) const;

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::string> mor_ids_;
  std::map<std::string, MorData> mors_;
  std::map<std::string, int> mor_index_;
  std::vector<int> table_;  // mor_count x mor_count; table_[g*n+f] = gf or -1
};

// A functor between finite categories, validated on construction.
struct CatFunctor {
  FinCatPtr source;
  FinCatPtr target;
  std::map<std::string, std::string> obj_map;
  std::map<std::string, std::string> mor_map;

  void validate() const;  // identities, endpoints, composition
};

// Builders. All return validated categories.

// The poset [m] x [n]; objects "ij" (digits, so m,n <= 9 enforced),
// a unique morphism ij -> kl whenever i <= k and j <= l, id "g_ij_kl".
FinCatPtr grid_category(int m, int n);

// The poset [n] = {0 -> 1 -> ... -> n}; morphisms "g_i_j".
FinCatPtr chain_category(int n);

// Full subcategory on the given objects (ids preserved).
FinCatPtr full_subcategory(const FinCatPtr& c, const std::vector<std::string>& objs);

// Opposite category: same ids, endpoints swapped, composition reversed.
FinCatPtr opposite_category(const FinCatPtr& c);

// The opposite of the full subcategory of the simplex category on [0..N]:
// objects "[k]"; a morphism "[m]" -> "[n]" is a monotone map [n] -> [m],
// named "s_<m>_<n>_<values>". N is capped (default 6) because hom sets grow
// combinatorially.
FinCatPtr truncated_simplex_op(int N, int cap = 6);

// Decodes the underlying monotone map of a truncated_simplex_op morphism id:
// values has length n+1 with entries in [0, m] for a morphism "[m]" -> "[n]".
struct SimplexOpMor {
  int src_level;
  int dst_level;
  std::vector<int> values;
  bool mono() const;  // strictly increasing (dual class: degree-lowering)
  bool epi() const;   // surjective onto [src_level] (dual class: degree-raising)
};
SimplexOpMor simplex_op_decode(const std::string& morphism_id);

// Number of monotone maps [a] -> [b] (an independent counting oracle).
long monotone_map_count(int a, int b);

}  // namespace modred
