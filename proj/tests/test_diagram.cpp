#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "modred/ambient.hpp"
#include "modred/chain.hpp"
#include "modred/diagram.hpp"
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

// Two objects joined by one arrow whose direction lowers degree.
ReedyStructure lowering_arrow() {
  ReedyStructure r;
  r.base = FinCategory::build("lowarrow", {"a", "b"}, {{"g", "a", "b"}}, {});
  r.degree = {{"a", 1}, {"b", 0}};
  r.lowering = {"g", "id_a", "id_b"};
  r.raising = {"id_a", "id_b"};
  return r;
}

// A diagram over the single-arrow chain 0 -> 1 with the given entries/edge.
Diagram arrow_diagram(const AmbientPtr& amb, const std::string& e0, const std::string& e1,
                      const std::string& edge) {
  Diagram d;
  d.shape = chain_category(1);
  d.ambient = amb;
  d.data.entries = {{"0", e0}, {"1", e1}};
  d.data.edges = {{"g_0_1", edge}};
  return d;
}

long count_maps(const Diagram& x, const Diagram& y, const Budget& b) {
  long n = 0;
  EnumStats st;
  for_each_map(
      x, y, b,
      [&](const std::map<std::string, std::string>&) {
        ++n;
        return true;
      },
      st);
  CHECK_FALSE(st.capped);
  return n;
}

}  // namespace

TEST_CASE("constant diagrams, identities and composition behave") {
  AmbientPtr fs = finset_wfs();
  FinCatPtr grid = grid_category(1, 1);
  Diagram c = constant_diagram(grid, fs, "2");
  CHECK_NOTHROW(c.validate());
  CHECK(c.at("00") == "2");
  CHECK(c.edge("g_00_11") == fs->identity("2"));
  CHECK(c.edge("id_01") == fs->identity("2"));

  DiagramMap idm = identity_map(c);
  CHECK_NOTHROW(idm.validate());
  DiagramMap sq = compose_maps(idm, idm);
  CHECK(sq.components == idm.components);

  DiagramMap fromi = map_from_initial(c);
  CHECK_NOTHROW(fromi.validate());
  CHECK(fromi.src.at("11") == fs->initial_object());
  DiagramMap tof = map_to_final(c);
  CHECK_NOTHROW(tof.validate());
  CHECK(tof.dst.at("00") == fs->final_object());
}

TEST_CASE("non-functorial data and broken naturality are rejected") {
  AmbientPtr fs = finset_wfs();
  FinCatPtr grid = grid_category(1, 1);

  // Two routes around the square disagree: via 01 the composite is the
  // identity, via 10 it is the swap, so no value of the diagonal edge works.
  Diagram bad;
  bad.shape = grid;
  bad.ambient = fs;
  bad.data.entries = {{"00", "2"}, {"01", "2"}, {"10", "2"}, {"11", "2"}};
  bad.data.edges = {{"g_00_01", "2>2:0,1"},
                    {"g_00_10", "2>2:0,1"},
                    {"g_00_11", "2>2:0,1"},
                    {"g_01_11", "2>2:0,1"},
                    {"g_10_11", "2>2:1,0"}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  // A componentwise-valid transformation that breaks one naturality square.
  Diagram x = arrow_diagram(fs, "2", "2", "2>2:0,1");
  Diagram y = arrow_diagram(fs, "2", "2", "2>2:1,0");
  DiagramMap t{x, y, {{"0", "2>2:0,1"}, {"1", "2>2:0,1"}}};
  CHECK_THROWS_AS(t.validate(), ValidationError);
  DiagramMap good{x, y, {{"0", "2>2:0,1"}, {"1", "2>2:1,0"}}};
  CHECK_NOTHROW(good.validate());
}

TEST_CASE("diagram enumeration matches the by-hand count") {
  AmbientPtr fs = finset_wfs();
  FinCatPtr shape = chain_category(1);
  Budget q = Budget::quick();

  // Functors 0->1 into sets of size <= 2: sum of |hom(a,b)| over all pairs
  // a,b in {0,1,2} = 11.
  long n = 0;
  EnumStats st;
  for_each_diagram(
      *fs, shape, q,
      [&](const ShapeDiagramData& d) {
        Diagram dd{shape, fs, d};
        CHECK_NOTHROW(dd.validate());
        ++n;
        return true;
      },
      st);
  CHECK(n == 11);
  CHECK(st.checked == 11);
  CHECK_FALSE(st.capped);

  // Early stop is respected.
  long m = 0;
  EnumStats st2;
  for_each_diagram(
      *fs, shape, q,
      [&](const ShapeDiagramData&) { return ++m < 3; }, st2);
  CHECK(m == 3);
}

TEST_CASE("map enumeration matches the by-hand count") {
  AmbientPtr fs = finset_wfs();
  Diagram x = arrow_diagram(fs, "1", "1", "1>1:0");
  Diagram y = arrow_diagram(fs, "2", "2", "2>2:0,1");
  // Naturality forces the two components equal, so exactly |hom(1,2)| = 2.
  CHECK(count_maps(x, y, Budget::desk()) == 2);
}

TEST_CASE("latching and matching data at a grid corner") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = grid_reedy(1, 1);
  Diagram x;
  x.shape = r.base;
  x.ambient = fs;
  x.data.entries = {{"00", "0"}, {"01", "1"}, {"10", "1"}, {"11", "2"}};
  x.data.edges = {{"g_00_01", "0>1:"},
                  {"g_00_10", "0>1:"},
                  {"g_00_11", "0>2:"},
                  {"g_01_11", "1>2:0"},
                  {"g_10_11", "1>2:1"}};
  CHECK_NOTHROW(x.validate());

  ObjectColimitData lat = latching_data(r, x, "11");
  // Index category: the three non-identity raising maps into the corner.
  CHECK(lat.cat.cat->objects().size() == 3);
  // Colimit of 1 <- 0 -> 1 is the two-point set, and the canonical map into
  // the corner entry hits both points, one through each edge.
  CHECK(lat.colim.apex == "2");
  CHECK(fs->is_iso(lat.absolute));

  // No non-identity lowering maps: the matching limit is the final object.
  ObjectLimitData mat = matching_data(r, x, "00");
  CHECK(mat.cat.cat->objects().empty());
  CHECK(mat.lim.apex == fs->final_object());
  CHECK(mat.absolute == fs->to_final("0"));
}

TEST_CASE("simplex-level latching and matching of the two-point prolongation") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = simplex_op_reedy(1);
  Diagram rx = r_zero(fs, "2", 1);
  CHECK(rx.at("[0]") == "2");
  CHECK(rx.at("[1]") == "4");

  // The canonical map into the level-1 matching limit is (face0, face1),
  // which for this construction is a bijection onto the square.
  ObjectLimitData mat = matching_data(r, rx, "[1]");
  CHECK(fs->is_iso(mat.absolute));

  // One degeneracy map provides the only latching index; the canonical map
  // out of the latching colimit is the diagonal: injective, not surjective.
  ObjectColimitData lat = latching_data(r, rx, "[1]");
  CHECK(lat.cat.cat->objects().size() == 1);
  CHECK(lat.colim.apex == "2");
  CHECK(fs->is_cof(lat.absolute));
  CHECK_FALSE(fs->is_iso(lat.absolute));
}

TEST_CASE("relative colimit-side map detects a fold") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Diagram s = arrow_diagram(fs, "0", "1", "0>1:");
  Diagram d = arrow_diagram(fs, "1", "1", "1>1:0");
  DiagramMap f{s, d, {{"0", "0>1:"}, {"1", "1>1:0"}}};
  CHECK_NOTHROW(f.validate());

  MapColimitData mc = latching_of_map(r, f, "1");
  // Pushout of 1 <- 0 -> 1: two points mapping onto the single target point.
  CHECK(mc.object == "2");
  CHECK_FALSE(fs->is_cof(mc.relative));
  CHECK(fs->compose(mc.relative, mc.from_entry) == f.at("1"));
  CHECK(fs->compose(mc.relative, mc.from_latch) == mc.dst.absolute);

  MapLimitData ml = matching_of_map(r, f, "0");
  // Empty matching index: the relative limit-side map is the component.
  CHECK(fs->compose(ml.to_entry, ml.relative) == f.at("0"));
  CHECK(ml.object == d.at("0"));
}

TEST_CASE("classification over the set ambient matches the by-hand vectors") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  ModelAssignment assign(fs);
  Budget b = Budget::desk();
  std::vector<std::string> marked = {"0", "1"};

  // f folds the two freshly-added points onto one: its relative colimit-side
  // map at 1 is the non-injective fold, so it is no cofibration.
  Diagram s = arrow_diagram(fs, "0", "1", "0>1:");
  Diagram d = arrow_diagram(fs, "1", "1", "1>1:0");
  DiagramMap f{s, d, {{"0", "0>1:"}, {"1", "1>1:0"}}};
  Classification cf = classify(r, marked, assign, f, Side::Left, b);
  CHECK(cf.classes == ClassVector{true, false, false, false, false});
  CHECK(cf.evidence.ok() == false);

  // g includes the empty diagram into a point at each stage: a cofibration
  // and a weak equivalence, but not a fibration (entries are not surjective).
  Diagram e = constant_diagram(r.base, fs, "0");
  DiagramMap g{e, d, {{"0", "0>1:"}, {"1", "0>1:"}}};
  Classification cg = classify(r, marked, assign, g, Side::Left, b);
  CHECK(cg.classes == ClassVector{true, true, false, true, false});

  // The limit-favoring side agrees on this example: matching categories are
  // empty, so the relative limit-side maps are the components on both sides.
  Classification cgr = classify(r, marked, assign, g, Side::Right, b);
  CHECK(cgr.classes == ClassVector{true, true, false, true, false});
}

TEST_CASE("classification in the chain ambient separates the two markings") {
  Budget b = Budget::desk();
  AmbientPtr ch = chain_complexes(2, b);
  ReedyStructure r = chain_reedy(1);
  ModelAssignment assign(ch);

  std::string zero = chain_zero(2).encode();
  std::string sphere = chain_sphere(2, 0).encode();
  Diagram s = constant_diagram(r.base, ch, zero);
  Diagram d = arrow_diagram(ch, zero, sphere, chain_zero_map(chain_zero(2), chain_sphere(2, 0)).encode());
  DiagramMap f{s, d,
               {{"0", ch->identity(zero)},
                {"1", chain_zero_map(chain_zero(2), chain_sphere(2, 0)).encode()}}};
  CHECK_NOTHROW(f.validate());

  // Marked at 0 only: the entry at 1 must be an acyclic cofibration, and the
  // inclusion of zero into a sphere is not acyclic.
  Classification c0 = classify(r, {"0"}, assign, f, Side::Left, b);
  CHECK(c0.classes == ClassVector{true, false, true, false, true});

  // Marked everywhere: a plain cofibration suffices at 1, but the weak
  // equivalence now fails there.
  Classification c01 = classify(r, {"0", "1"}, assign, f, Side::Left, b);
  CHECK(c01.classes == ClassVector{false, true, true, false, false});
}

TEST_CASE("a cofibration-trivial variant changes the classification") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Budget b = Budget::desk();
  std::vector<std::string> marked = {"0", "1"};

  Diagram s = arrow_diagram(fs, "0", "1", "0>1:");
  Diagram d = arrow_diagram(fs, "0", "2", "0>2:");
  DiagramMap k{s, d, {{"0", "0>0:"}, {"1", "1>2:0"}}};
  CHECK_NOTHROW(k.validate());

  ModelAssignment full(fs);
  Classification cfull = classify(r, marked, full, k, Side::Left, b);
  CHECK(cfull.classes == ClassVector{true, true, false, true, false});

  // With the cofibration-trivial structure at 1, only isomorphisms are
  // cofibrations there, while every map is a fibration there: the vector
  // flips from cofibration-side to fibration-side.
  ModelAssignment mixed(fs);
  mixed.set_variant("1", Variant::CofTrivial);
  Classification cmix = classify(r, marked, mixed, k, Side::Left, b);
  CHECK(cmix.classes == ClassVector{true, false, true, false, true});
}

TEST_CASE("projective classification: exact route on monotone shapes, probe otherwise") {
  AmbientPtr fs = finset_wfs();
  Budget b = Budget::desk();

  // Monotone shape: the projective classes come from the equivalent
  // colimit-side structure, exactly.
  ReedyStructure r = chain_reedy(1);
  ModelAssignment assign(fs);
  Diagram s = arrow_diagram(fs, "0", "1", "0>1:");
  Diagram d = arrow_diagram(fs, "1", "1", "1>1:0");
  DiagramMap f{s, d, {{"0", "0>1:"}, {"1", "1>1:0"}}};
  Classification cp = classify(r, {"0"}, assign, f, Side::Projective, b);
  CHECK(cp.classes == ClassVector{true, false, false, false, false});
  bool exact_route = false;
  for (const auto& it : cp.evidence.items)
    if (it.label.find("equivalent colimit-side") != std::string::npos) exact_route = true;
  CHECK(exact_route);

  // Non-monotone shape: the lifting probe finds a definitive counterexample.
  // The fold lifts against no square of itself (it has no section), and it is
  // itself an entrywise acyclic fibration, so it cannot be a cofibration.
  ReedyStructure low = lowering_arrow();
  Diagram two = constant_diagram(low.base, fs, "2");
  Diagram one = constant_diagram(low.base, fs, "1");
  DiagramMap fold{two, one, {{"a", "2>1:0,0"}, {"b", "2>1:0,0"}}};
  CHECK_NOTHROW(fold.validate());
  Classification cq =
      classify(low, {"a", "b"}, ModelAssignment(fs), fold, Side::Projective, Budget::quick());
  CHECK(cq.classes.we);
  CHECK(cq.classes.fib);
  CHECK(cq.classes.acy_fib);
  CHECK_FALSE(cq.classes.cof);
  CHECK_FALSE(cq.classes.acy_cof);
  bool probe_route = false;
  for (const auto& it : cq.evidence.items)
    if (it.label.find("lifting against entrywise") != std::string::npos) probe_route = true;
  CHECK(probe_route);
}

TEST_CASE("free diagrams are left adjoint to evaluation") {
  AmbientPtr fs = finset_wfs();
  FinCatPtr shape = chain_category(1);

  Diagram fr = free_diagram(shape, fs, "0", "1");
  CHECK_NOTHROW(fr.validate());
  // One copy of the point at each stage: hom(0,0) and hom(0,1) both have one
  // element in the single-arrow shape.
  CHECK(fr.at("0") == "1");
  CHECK(fr.at("1") == "1");
  CHECK(fs->is_iso(fr.edge("g_0_1")));

  // Maps out of the free diagram correspond to points of the entry at the
  // generating object.
  Diagram x = arrow_diagram(fs, "2", "2", "2>2:0,1");
  CHECK(count_maps(fr, x, Budget::desk()) == 2);

  DiagramMap fm = free_map(shape, fs, "0", "1>2:0");
  CHECK_NOTHROW(fm.validate());
  CHECK(fm.src.at("0") == "1");
  CHECK(fm.dst.at("0") == "2");
  CHECK(fs->is_cof(fm.at("0")));
  CHECK(fs->is_cof(fm.at("1")));
}

TEST_CASE("generating sets follow the marked objects") {
  Budget b = Budget::desk();
  ReedyStructure r1 = chain_reedy(1);
  AmbientPtr fs = finset_wfs();

  // Sets: one cofibration generator and one acyclic generator, and the two
  // coincide, so the report says the acyclic ones sit among the others.
  GeneratingSets gs = generating_sets(r1, {"0"}, fs, Side::Left, b);
  CHECK(gs.cofs.size() == 2);
  CHECK(gs.acyclic_cofs.size() == 2);
  CHECK(gs.notes.ok());
  bool says_yes = false;
  for (const auto& it : gs.notes.items)
    if (it.label.find("literally among") != std::string::npos &&
        it.label.find("yes") != std::string::npos)
      says_yes = true;
  CHECK(says_yes);
  for (const auto& m : gs.cofs) CHECK_NOTHROW(m.validate());
  for (const auto& m : gs.acyclic_cofs) CHECK_NOTHROW(m.validate());

  GeneratingSets gp = generating_sets(r1, {"0"}, fs, Side::Projective, b);
  CHECK(gp.cofs.size() == 1);
  CHECK(gp.acyclic_cofs.size() == 1);

  // Chains over the square: three cofibration generators at each of the
  // three marked objects plus the two acyclic ones at the fourth, and the
  // acyclic generators are not literally among the plain ones.
  AmbientPtr ch = chain_complexes(2, b);
  ReedyStructure rg = grid_reedy(1, 1);
  GeneratingSets gc = generating_sets(rg, {"00", "01", "10"}, ch, Side::Left, b);
  CHECK(gc.cofs.size() == 11);
  CHECK(gc.acyclic_cofs.size() == 8);
  bool says_no = false;
  for (const auto& it : gc.notes.items)
    if (it.label.find("literally among") != std::string::npos &&
        it.label.find("no") != std::string::npos)
      says_no = true;
  CHECK(says_no);

  CHECK_THROWS_AS(generating_sets(r1, {"0"}, fs, Side::Right, b), ValidationError);
  CHECK_THROWS_AS(generating_sets(lowering_arrow(), {"a"}, fs, Side::Left, b), ValidationError);
}

TEST_CASE("square lifting succeeds, fails honestly, and validates its input") {
  AmbientPtr fs = finset_wfs();
  FinCatPtr shape = chain_category(1);
  Budget b = Budget::desk();

  // Positive: lift the point against the fold; the two componentwise choices
  // collapse to the first in canonical order.
  Diagram pt = arrow_diagram(fs, "1", "1", "1>1:0");
  Diagram two = arrow_diagram(fs, "2", "2", "2>2:0,1");
  DiagramMap i = map_from_initial(pt);
  DiagramMap p{two, pt, {{"0", "2>1:0,0"}, {"1", "2>1:0,0"}}};
  DiagramMap f = map_from_initial(two);
  DiagramMap g = identity_map(pt);
  auto lift = find_diagram_lift(i, p, f, g, b);
  REQUIRE(lift.has_value());
  for (const auto& o : shape->objects()) {
    CHECK(fs->compose(lift->at(o), i.at(o)) == f.at(o));
    CHECK(fs->compose(p.at(o), lift->at(o)) == g.at(o));
  }

  // No candidates at all: nothing maps a point into the empty set.
  Diagram empty = constant_diagram(shape, fs, "0");
  DiagramMap i2{empty, pt, {{"0", "0>1:"}, {"1", "0>1:"}}};
  DiagramMap p2{empty, pt, {{"0", "0>1:"}, {"1", "0>1:"}}};
  DiagramMap f2 = identity_map(empty);
  DiagramMap g2 = identity_map(pt);
  CHECK_FALSE(find_diagram_lift(i2, p2, f2, g2, b).has_value());

  // A square that does not commute is rejected.
  Diagram one = arrow_diagram(fs, "1", "1", "1>1:0");
  DiagramMap i3 = identity_map(one);
  DiagramMap p3 = identity_map(two);
  DiagramMap f3{one, two, {{"0", "1>2:0"}, {"1", "1>2:0"}}};
  DiagramMap g3{one, two, {{"0", "1>2:1"}, {"1", "1>2:1"}}};
  CHECK_THROWS_AS(find_diagram_lift(i3, p3, f3, g3, b), ValidationError);
}

TEST_CASE("naturality can block a lift that exists at every object") {
  AmbientPtr fs = finset_wfs();
  FinCatPtr grid = grid_category(1, 1);
  Budget b = Budget::desk();

  auto square_diagram = [&](const std::string& e11, const std::string& d0111,
                            const std::string& d1011) {
    Diagram d;
    d.shape = grid;
    d.ambient = fs;
    d.data.entries = {{"00", "0"}, {"01", "2"}, {"10", "2"}, {"11", e11}};
    d.data.edges = {{"g_00_01", "0>2:"},
                    {"g_00_10", "0>2:"},
                    {"g_00_11", "0>" + e11 + ":"},
                    {"g_01_11", d0111},
                    {"g_10_11", d1011}};
    return d;
  };

  Diagram bdiag;
  bdiag.shape = grid;
  bdiag.ambient = fs;
  bdiag.data.entries = {{"00", "0"}, {"01", "1"}, {"10", "1"}, {"11", "1"}};
  bdiag.data.edges = {{"g_00_01", "0>1:"},
                      {"g_00_10", "0>1:"},
                      {"g_00_11", "0>1:"},
                      {"g_01_11", "1>1:0"},
                      {"g_10_11", "1>1:0"}};
  Diagram x = square_diagram("2", "2>2:0,1", "2>2:1,0");
  Diagram y = square_diagram("1", "2>1:0,0", "2>1:0,0");
  Diagram a = constant_diagram(grid, fs, "0");

  DiagramMap i{a, bdiag, {{"00", "0>0:"}, {"01", "0>1:"}, {"10", "0>1:"}, {"11", "0>1:"}}};
  DiagramMap p{x, y, {{"00", "0>0:"}, {"01", "2>2:0,1"}, {"10", "2>2:0,1"}, {"11", "2>1:0,0"}}};
  DiagramMap f{a, x, {{"00", "0>0:"}, {"01", "0>2:"}, {"10", "0>2:"}, {"11", "0>2:"}}};
  DiagramMap g{bdiag, y, {{"00", "0>0:"}, {"01", "1>2:0"}, {"10", "1>2:0"}, {"11", "1>1:0"}}};
  CHECK_NOTHROW(i.validate());
  CHECK_NOTHROW(p.validate());
  CHECK_NOTHROW(f.validate());
  CHECK_NOTHROW(g.validate());

  // Componentwise candidates exist everywhere, but the identity edge pins the
  // corner to one choice while the swapped edge pins it to the other.
  CHECK_FALSE(find_diagram_lift(i, p, f, g, b).has_value());

  // Straightening the swapped edge makes the same square solvable.
  Diagram x2 = square_diagram("2", "2>2:0,1", "2>2:0,1");
  DiagramMap p2{x2, y, {{"00", "0>0:"}, {"01", "2>2:0,1"}, {"10", "2>2:0,1"}, {"11", "2>1:0,0"}}};
  DiagramMap f2{a, x2, {{"00", "0>0:"}, {"01", "0>2:"}, {"10", "0>2:"}, {"11", "0>2:"}}};
  CHECK(find_diagram_lift(i, p2, f2, g, b).has_value());
}

TEST_CASE("right lifting against the generating set detects fibrations") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Budget b = Budget::desk();
  GeneratingSets gs = generating_sets(r, {"0"}, fs, Side::Left, b);

  // A levelwise surjection lifts against every generator.
  Diagram two = arrow_diagram(fs, "2", "2", "2>2:0,1");
  Diagram one = arrow_diagram(fs, "1", "1", "1>1:0");
  DiagramMap fold{two, one, {{"0", "2>1:0,0"}, {"1", "2>1:0,0"}}};
  for (const auto& j : gs.cofs) CHECK(diagram_llp(j, fold, b));
  for (const auto& j : gs.acyclic_cofs) CHECK(diagram_llp(j, fold, b));

  // A non-surjective map fails against the generator that adds a point at
  // the stage where the target has one and the source does not.
  Diagram empty = constant_diagram(r.base, fs, "0");
  DiagramMap miss{empty, one, {{"0", "0>1:"}, {"1", "0>1:"}}};
  bool all_lift = true;
  for (const auto& j : gs.cofs) all_lift = all_lift && diagram_llp(j, miss, b);
  CHECK_FALSE(all_lift);
}

TEST_CASE("restriction and pointwise extension along a full inclusion") {
  AmbientPtr fs = finset_wfs();
  FinCatPtr grid = grid_category(1, 1);
  FinCatPtr sub = full_subcategory(grid, {"00", "01"});

  Diagram small;
  small.shape = sub;
  small.ambient = fs;
  small.data.entries = {{"00", "1"}, {"01", "2"}};
  small.data.edges = {{"g_00_01", "1>2:0"}};
  CHECK_NOTHROW(small.validate());

  Extension ext = extend_along_inclusion(small, grid);
  CHECK_NOTHROW(ext.extended.validate());
  CHECK(ext.extended.at("00") == "1");
  CHECK(ext.extended.at("01") == "2");
  // The new entries are computed as colimits over what maps in: a single
  // object for 10, the original arrow for 11.
  CHECK(ext.extended.at("10") == "1");
  CHECK(ext.extended.at("11") == "2");
  for (const auto& [o, u] : ext.unit) {
    CHECK(fs->is_iso(u));
    CHECK(fs->cod(u) == ext.extended.at(o));
  }
  CHECK(check_extension_unit(small, grid).ok());

  Diagram back = restrict_diagram(ext.extended, {"00", "01"});
  CHECK(back.data.entries == small.data.entries);
  CHECK(back.edge("g_00_01") == small.edge("g_00_01"));

  // The unit is an isomorphism for every diagram on the subcategory.
  Budget q = Budget::quick();
  EnumStats st;
  long n = 0;
  for_each_diagram(
      *fs, sub, q,
      [&](const ShapeDiagramData& d) {
        Diagram dd{sub, fs, d};
        CHECK(check_extension_unit(dd, grid).ok());
        ++n;
        return true;
      },
      st);
  CHECK(n == 11);
}

TEST_CASE("level-zero prolongation: entries, counit, and adjunction count") {
  AmbientPtr fs = finset_wfs();
  Diagram rx = r_zero(fs, "2", 2);
  CHECK_NOTHROW(rx.validate());
  CHECK(rx.at("[0]") == "2");
  CHECK(rx.at("[1]") == "4");
  CHECK(rx.at("[2]") == "8");

  std::string counit = r_zero_counit(fs, "2");
  CHECK(fs->is_iso(counit));
  CHECK(fs->cod(counit) == "2");
  CHECK(fs->dom(counit) == r_zero(fs, "2", 0).at("[0]"));

  // Maps into the prolongation correspond to maps into its value: 2 of them.
  Diagram ya = r_zero(fs, "1", 1);
  Diagram yb = r_zero(fs, "2", 1);
  CHECK(count_maps(ya, yb, Budget::desk()) == 2);
}
