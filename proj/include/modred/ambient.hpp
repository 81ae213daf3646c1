#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "modred/common.hpp"
#include "modred/fincat.hpp"
#include "modred/report.hpp"

namespace modred {

// A diagram's raw data over some finite shape; the shape itself travels
// separately. Edges cover the non-identity shape morphisms (identity keys,
// if present, are ignored). Kept as a plain struct so the ambient layer and
// the diagram layer can share it without a dependency cycle.
struct ShapeDiagramData {
  std::map<std::string, std::string> entries;  // shape object -> ambient object
  std::map<std::string, std::string> edges;    // shape morphism -> ambient morphism
};

// second ∘ first = the factored morphism; middle is cod(first) = dom(second).
struct Factorization {
  std::string first;
  std::string middle;
  std::string second;
};

// Colimit with explicit cocone and the induced-map constructor: given a
// commuting cocone (legs into a target), produce the unique mediating
// morphism apex -> target. induce throws ValidationError on a non-cocone.
struct ColimitResult {
  std::string apex;
  std::map<std::string, std::string> legs;  // shape object -> (entry -> apex)
  std::function<std::string(const std::map<std::string, std::string>&, const std::string&)>
      induce;  // (cocone legs, target object) -> morphism apex -> target
};

struct LimitResult {
  std::string apex;
  std::map<std::string, std::string> legs;  // shape object -> (apex -> entry)
  std::function<std::string(const std::map<std::string, std::string>&, const std::string&)>
      induce;  // (cone legs, source object) -> morphism source -> apex
};

// A computable category with decidable morphism classes, factorization
// oracles, finite (co)limits, and bounded hom-set enumeration. Objects and
// morphisms are canonical strings, so equality is string equality.
class AmbientModel {
 public:
  virtual ~AmbientModel() = default;

  virtual std::string name() const = 0;

  virtual bool valid_object(const std::string& x) const = 0;
  virtual bool valid_morphism(const std::string& f) const = 0;
  virtual std::string dom(const std::string& f) const = 0;
  virtual std::string cod(const std::string& f) const = 0;
  virtual std::string identity(const std::string& x) const = 0;
  virtual std::string compose(const std::string& g, const std::string& f) const = 0;

  virtual std::string initial_object() const = 0;
  virtual std::string final_object() const = 0;
  virtual std::string from_initial(const std::string& x) const = 0;
  virtual std::string to_final(const std::string& x) const = 0;

  virtual ColimitResult colimit(const FinCatPtr& shape, const ShapeDiagramData& d) const = 0;
  virtual LimitResult limit(const FinCatPtr& shape, const ShapeDiagramData& d) const = 0;

  virtual bool is_cof(const std::string& f) const = 0;
  virtual bool is_fib(const std::string& f) const = 0;
  virtual bool is_we(const std::string& f) const = 0;
  virtual bool is_iso(const std::string& f) const = 0;
  bool is_acyclic_cof(const std::string& f) const { return is_cof(f) && is_we(f); }
  bool is_acyclic_fib(const std::string& f) const { return is_fib(f) && is_we(f); }

  virtual Factorization factor_cof_acyfib(const std::string& f) const = 0;
  virtual Factorization factor_acycof_fib(const std::string& f) const = 0;

  virtual std::vector<std::string> enum_objects(const Budget& b) const = 0;
  virtual std::vector<std::string> enum_homs(const std::string& x, const std::string& y,
                                             const Budget& b) const = 0;

  virtual bool has_generating_sets() const { return false; }
  virtual std::vector<std::string> gen_cofibrations(const Budget&) const { return {}; }
  virtual std::vector<std::string> gen_acyclic_cofibrations(const Budget&) const { return {}; }
};

using AmbientPtr = std::shared_ptr<const AmbientModel>;

// Checks that d is a functor shape -> M: entries cover the objects, edges
// cover the non-identity morphisms with the right endpoints, and composition
// is preserved. Throws ValidationError with a witness.
void validate_shape_diagram(const AmbientModel& m, const FinCatPtr& shape,
                            const ShapeDiagramData& d);

// The ambient morphism for any shape morphism, identities included.
std::string edge_of(const AmbientModel& m, const FinCatPtr& shape, const ShapeDiagramData& d,
                    const std::string& shape_mor);

enum class Variant { Full, CofTrivial, WeIso };
Variant variant_from_string(const std::string& s);  // "full" | "cof-trivial" | "we-iso"
std::string variant_to_string(Variant v);

// One structure per shape object, all over a single carrier: Full keeps the
// carrier's classes; CofTrivial has cof = iso, fib = we = everything; WeIso
// has we = iso, cof = fib = everything. The three share objects, morphisms
// and (co)limits, so diagrams mix them freely.
class ModelAssignment {
 public:
  explicit ModelAssignment(AmbientPtr base);

  const AmbientPtr& base() const { return base_; }
  void set_variant(const std::string& shape_obj, Variant v) { variant_[shape_obj] = v; }
  Variant variant_at(const std::string& shape_obj) const;
  const AmbientModel& model_at(const std::string& shape_obj) const;
  bool constant_full() const;
  std::map<std::string, Variant> variants() const { return variant_; }

 private:
  AmbientPtr base_;
  AmbientPtr cof_trivial_;
  AmbientPtr we_iso_;
  std::map<std::string, Variant> variant_;
};

// The lopsided structures over a carrier; also usable stand-alone.
AmbientPtr trivial_structure(AmbientPtr base, Variant kind);

struct AxiomOptions {
  bool lifting = true;
  bool two_of_three = true;
  bool retracts = true;
  bool properness = false;
};

// Brute-force verification of the model-structure laws on everything the
// budget lets us enumerate. Failures carry witnesses; they are report
// content, not exceptions.
CheckReport verify_model_axioms(const AmbientModel& m, const Budget& b, const AxiomOptions& opt);

// f lifts in every commuting square against g (f on the left). Helper used
// by both the axiom checks and the diagram-level RLP sweeps.
bool has_lifting_property(const AmbientModel& m, const std::string& f, const std::string& g,
                          const Budget& b);

}  // namespace modred
