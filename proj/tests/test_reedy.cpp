#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "modred/ambient.hpp"
#include "modred/chain.hpp"
#include "modred/fincat.hpp"
#include "modred/finset.hpp"
#include "modred/reedy.hpp"

using namespace modred;

namespace {

ReedyStructure grid_reedy(int m, int n) {
  ReedyStructure r;
  r.base = grid_category(m, n);
  for (const auto& o : r.base->objects()) r.degree[o] = (o[0] - '0') + (o[1] - '0');
  for (const auto& mor : r.base->morphisms()) {
    r.raising.insert(mor);
    if (r.base->is_identity(mor)) r.lowering.insert(mor);
  }
  return r;
}

ReedyStructure chain_reedy(int n) {
  ReedyStructure r;
  r.base = chain_category(n);
  for (const auto& o : r.base->objects()) r.degree[o] = o[0] - '0';
  for (const auto& mor : r.base->morphisms()) {
    r.raising.insert(mor);
    if (r.base->is_identity(mor)) r.lowering.insert(mor);
  }
  return r;
}

ReedyStructure simplex_op_reedy(int N) {
  ReedyStructure r;
  r.base = truncated_simplex_op(N);
  for (const auto& o : r.base->objects()) r.degree[o] = o[1] - '0';
  for (const auto& mor : r.base->morphisms()) {
    if (r.base->is_identity(mor)) {
      r.raising.insert(mor);
      r.lowering.insert(mor);
      continue;
    }
    SimplexOpMor s = simplex_op_decode(mor);
    if (s.epi()) r.raising.insert(mor);
    if (s.mono()) r.lowering.insert(mor);
  }
  return r;
}

// Two objects joined by one arrow whose direction lowers degree: a -> b with
// degree(a) = 1, degree(b) = 0 and the arrow in the lowering class.
ReedyStructure lowering_arrow() {
  ReedyStructure r;
  r.base = FinCategory::build("lowarrow", {"a", "b"}, {{"g", "a", "b"}}, {});
  r.degree = {{"a", 1}, {"b", 0}};
  r.lowering = {"g", "id_a", "id_b"};
  r.raising = {"id_a", "id_b"};
  return r;
}

}  // namespace

TEST_CASE("grid degree structure validates") {
  ReedyStructure r = grid_reedy(1, 1);
  CheckReport rep = check_reedy(r);
  CHECK(rep.ok());
  CHECK(r.monotone_increasing());
  CHECK_FALSE(r.monotone_decreasing());
  CHECK(r.max_degree() == 2);
  CHECK(r.objects_of_degree(1) == std::vector<std::string>{"01", "10"});
}

TEST_CASE("constant degree fails to raise") {
  ReedyStructure r = grid_reedy(1, 1);
  for (auto& [o, d] : r.degree) d = 0;
  CheckReport rep = check_reedy(r);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& it : rep.items)
    if (!it.pass && it.label.find("strictly raise") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("truncated simplex-op degree structure validates") {
  ReedyStructure r = simplex_op_reedy(2);
  CheckReport rep = check_reedy(r);
  CHECK(rep.ok());
  CHECK_FALSE(r.monotone_increasing());
  // The unique-factorization item was verified exhaustively over all 31
  // morphisms of the truncation.
  CHECK(r.base->morphisms().size() == 31);
}

TEST_CASE("factor recovers the two-step decomposition") {
  ReedyStructure r = simplex_op_reedy(2);
  for (const auto& mor : r.base->morphisms()) {
    auto two = r.factor(mor);
    CHECK(r.is_lowering(two.lower));
    CHECK(r.is_raising(two.raise));
    CHECK(r.base->compose(two.raise, two.lower) == mor);
  }
}

TEST_CASE("missing bottom degree is flagged") {
  ReedyStructure r = chain_reedy(1);
  r.degree = {{"0", 1}, {"1", 2}};
  CheckReport rep = check_reedy(r);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const auto& it : rep.items)
    if (!it.pass && it.label.find("degree-0 object") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("latching category of the grid corner") {
  ReedyStructure r = grid_reedy(1, 1);
  CompiledCat lc = latching_category(r, "11");
  CHECK(lc.cat->objects().size() == 3);
  CHECK(lc.cat->morphisms().size() == 5);
  // Forgetful functor lands strictly below the corner's degree.
  for (const auto& o : lc.cat->objects())
    CHECK(r.degree_of(lc.forget.obj_map.at(o)) < r.degree_of("11"));
}

TEST_CASE("degree-0 objects have empty latching and matching categories") {
  ReedyStructure r = grid_reedy(1, 1);
  CHECK(latching_category(r, "00").cat->objects().empty());
  CHECK(matching_category(r, "00").cat->objects().empty());
  ReedyStructure s = simplex_op_reedy(2);
  CHECK(latching_category(s, "[0]").cat->objects().empty());
  CHECK(matching_category(s, "[0]").cat->objects().empty());
}

TEST_CASE("latching category over the two-step chain") {
  ReedyStructure r = chain_reedy(1);
  CompiledCat lc = latching_category(r, "1");
  CHECK(lc.cat->objects() == std::vector<std::string>{"g_0_1"});
  CHECK(lc.cat->morphisms().size() == 1);  // just the identity
}

TEST_CASE("matching categories of monotone increasing structures are empty") {
  ReedyStructure r = grid_reedy(2, 1);
  for (const auto& o : r.base->objects())
    CHECK(matching_category(r, o).cat->objects().empty());
}

TEST_CASE("matching category at the simplex-op 1-level") {
  ReedyStructure r = simplex_op_reedy(1);
  CompiledCat mc = matching_category(r, "[1]");
  CHECK(mc.cat->objects().size() == 2);
  CHECK(mc.cat->morphisms().size() == 2);  // two identities, no cross arrows
  for (const auto& o : mc.cat->objects()) {
    CHECK(mc.forget.obj_map.at(o) == "[0]");
    CHECK(r.degree_of(mc.forget.obj_map.at(o)) < r.degree_of("[1]"));
  }
}

TEST_CASE("latching categories over the simplex-op truncation") {
  ReedyStructure r = simplex_op_reedy(2);
  // Raising maps into "[1]": the one monotone surjection [1] -> [0] viewed
  // in the opposite direction. Into "[2]": the two surjections [2] -> [1]
  // and the one onto [0]; triangles connect the latter to each of the former.
  CHECK(latching_category(r, "[1]").cat->objects().size() == 1);
  CompiledCat l2 = latching_category(r, "[2]");
  CHECK(l2.cat->objects().size() == 3);
  CHECK(l2.cat->morphisms().size() == 5);
}

TEST_CASE("acceptability fast path on the grid") {
  Budget b = Budget::quick();
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = grid_reedy(1, 1);
  auto rep = check_acceptable(r, {"00", "01", "10"}, fs, b);
  CHECK(rep.left);
  CHECK(rep.witnesses.empty());
}

TEST_CASE("every full subcategory of small grids is left acceptable") {
  Budget b = Budget::quick();
  AmbientPtr fs = finset_wfs();
  for (auto [m, n] : {std::pair<int, int>{1, 1}, std::pair<int, int>{2, 1}}) {
    ReedyStructure r = grid_reedy(m, n);
    const auto& objs = r.base->objects();
    for (unsigned mask = 1; mask < (1u << objs.size()); ++mask) {
      std::vector<std::string> sub;
      for (size_t i = 0; i < objs.size(); ++i)
        if (mask & (1u << i)) sub.push_back(objs[i]);
      auto rep = check_acceptable(r, sub, fs, b);
      CHECK(rep.left);
    }
  }
}

TEST_CASE("degree-0 singletons are acceptable on both sides") {
  Budget b = Budget::quick();
  AmbientPtr fs = finset_wfs();
  {
    ReedyStructure r = grid_reedy(1, 1);
    auto rep = check_acceptable(r, {"00"}, fs, b);
    CHECK(rep.left);
    CHECK(rep.right);
  }
  {
    ReedyStructure r = simplex_op_reedy(2);
    auto rep = check_acceptable(r, {"[0]"}, fs, b);
    CHECK(rep.left);
    CHECK(rep.right);
  }
}

TEST_CASE("simplex-op truncation accepts its lower levels") {
  Budget b = Budget::quick();
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = simplex_op_reedy(2);
  auto rep = check_acceptable(r, {"[0]", "[1]"}, fs, b);
  CHECK(rep.left);
  CHECK(rep.right);
  // Both sides resolve without enumeration: the restricted index categories
  // coincide with the full ones at every marked object.
  for (const auto& it : rep.detail.items) CHECK(it.label.find("proof") != std::string::npos);
}

TEST_CASE("marked subset that loses a lowering target fails left acceptability") {
  Budget b = Budget::quick();
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = lowering_arrow();
  REQUIRE(check_reedy(r).ok());
  auto rep = check_acceptable(r, {"a"}, fs, b);
  CHECK(rep.right);  // monotone decreasing fast path
  CHECK_FALSE(rep.left);
  REQUIRE(rep.witnesses.size() == 1);
  const auto& w = rep.witnesses[0];
  CHECK(w.side == "left");
  CHECK(w.at_object == "a");
  // Re-verify the witness: the full-structure matching object at "a" is the
  // entry at "b", the restricted one is the final object, and the comparison
  // is the recorded non-invertible morphism.
  CHECK(w.witness_diagram.entries.at("b") == "0");
  CHECK(w.comparison == fs->to_final("0"));
  CHECK_FALSE(fs->is_iso(w.comparison));
}

TEST_CASE("marked subset that loses a raising source fails right acceptability") {
  Budget b = Budget::quick();
  AmbientPtr fs = finset_wfs();
  ReedyStructure r;
  r.base = FinCategory::build("raisearrow", {"a", "b"}, {{"g", "a", "b"}}, {});
  r.degree = {{"a", 0}, {"b", 1}};
  r.raising = {"g", "id_a", "id_b"};
  r.lowering = {"id_a", "id_b"};
  REQUIRE(check_reedy(r).ok());
  auto rep = check_acceptable(r, {"b"}, fs, b);
  CHECK(rep.left);  // monotone increasing fast path
  CHECK_FALSE(rep.right);
  REQUIRE(!rep.witnesses.empty());
  const auto& w = rep.witnesses[0];
  CHECK(w.side == "right");
  // First counterexample in enumeration order: the nonempty entry whose
  // induced comparison from the initial object cannot be invertible.
  CHECK(w.comparison == fs->from_initial(w.witness_diagram.entries.at("a")));
  CHECK_FALSE(fs->is_iso(w.comparison));
}

TEST_CASE("marked subset must inherit a valid degree structure") {
  Budget b = Budget::quick();
  AmbientPtr fs = finset_wfs();
  // Inside the simplex-op truncation, {[0],[2]} keeps composites whose
  // two-step factorization passes through the dropped middle level, so
  // unique factorization fails in the restriction.
  ReedyStructure r = simplex_op_reedy(2);
  CHECK_THROWS_AS(check_acceptable(r, {"[0]", "[2]"}, fs, b), ValidationError);
}

TEST_CASE("constant assignment is compatible on every side") {
  Budget b = Budget::quick();
  ModelAssignment a{finset_wfs()};
  ReedyStructure r = grid_reedy(1, 1);
  for (Side s : {Side::Left, Side::Right, Side::Projective}) {
    CheckReport rep = check_compat(r, {"00", "01", "10"}, a, s, b);
    CHECK(rep.ok());
  }
}

TEST_CASE("arrow with cofibration-trivial source is left compatible") {
  Budget b = Budget::quick();
  ReedyStructure r = chain_reedy(1);
  ModelAssignment a{chain_complexes(2, Budget::desk())};
  a.set_variant("0", Variant::CofTrivial);
  CheckReport rep = check_compat(r, {"0"}, a, Side::Left, b);
  CHECK(rep.ok());
}

TEST_CASE("reversed lopsided assignment fails left compatibility with a witness") {
  Budget b = Budget::quick();
  ReedyStructure r = chain_reedy(1);
  AmbientPtr ch = chain_complexes(2, Budget::desk());
  ModelAssignment a{ch};
  a.set_variant("1", Variant::CofTrivial);
  CheckReport rep = check_compat(r, {"0"}, a, Side::Left, b);
  CHECK_FALSE(rep.ok());
  // Among the failing clauses, the one about cofibration inclusion carries a
  // cofibration of the carrier that is not invertible.
  std::string witness;
  for (const auto& it : rep.items)
    if (!it.pass && it.witness.find("cofibration") != std::string::npos) {
      witness = it.witness;
      break;
    }
  REQUIRE(!witness.empty());
  auto from = witness.find("morphism ") + 9;
  auto upto = witness.find(" is a ");
  std::string f = witness.substr(from, upto - from);
  CHECK(ch->is_cof(f));
  CHECK_FALSE(ch->is_iso(f));
}

TEST_CASE("projective compatibility follows marked morphisms") {
  Budget b = Budget::quick();
  ReedyStructure r = chain_reedy(1);
  ModelAssignment a{chain_complexes(2, Budget::desk())};
  // Fibrations at the target of a marked morphism must also be fibrations at
  // its source.
  a.set_variant("0", Variant::Full);
  a.set_variant("1", Variant::Full);
  CHECK(check_compat(r, {"0", "1"}, a, Side::Projective, b).ok());
  // Everything counts as a fibration at "1" but not at "0": fails.
  a.set_variant("1", Variant::CofTrivial);
  CHECK_FALSE(check_compat(r, {"0", "1"}, a, Side::Projective, b).ok());
  // The other way around the inclusion is into the everything-class: fine.
  a.set_variant("0", Variant::CofTrivial);
  a.set_variant("1", Variant::Full);
  CHECK(check_compat(r, {"0", "1"}, a, Side::Projective, b).ok());
}

TEST_CASE("right compatibility dualizes the failing direction") {
  Budget b = Budget::quick();
  ReedyStructure r = lowering_arrow();  // a -> b lowers degree
  AmbientPtr ch = chain_complexes(2, Budget::desk());
  ModelAssignment a{ch};
  a.set_variant("a", Variant::Full);
  a.set_variant("b", Variant::CofTrivial);
  // Clause at x = a, lowering target b: fibrations at b (everything) must
  // be fibrations at a (the carrier's class) — fails with a non-surjection.
  CheckReport rep = check_compat(r, {}, a, Side::Right, b);
  CHECK_FALSE(rep.ok());
  a.set_variant("a", Variant::CofTrivial);
  a.set_variant("b", Variant::Full);
  // Cofibrations at a are now just the invertibles: both clauses hold.
  CHECK(check_compat(r, {}, a, Side::Right, b).ok());
}

TEST_CASE("forgetful functors validate and land strictly lower") {
  ReedyStructure r = simplex_op_reedy(2);
  for (const auto& x : r.base->objects()) {
    for (bool latch : {true, false}) {
      CompiledCat cc = latch ? latching_category(r, x) : matching_category(r, x);
      cc.forget.validate();
      for (const auto& o : cc.cat->objects())
        CHECK(r.degree_of(cc.forget.obj_map.at(o)) < r.degree_of(x));
    }
  }
}
