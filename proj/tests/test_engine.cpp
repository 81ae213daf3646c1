#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "modred/ambient.hpp"
#include "modred/chain.hpp"
#include "modred/diagram.hpp"
#include "modred/engine.hpp"
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

Diagram arrow_diagram(const AmbientPtr& amb, const std::string& e0, const std::string& e1,
                      const std::string& edge) {
  Diagram d;
  d.shape = chain_category(1);
  d.ambient = amb;
  d.data.entries = {{"0", e0}, {"1", e1}};
  d.data.edges = {{"g_0_1", edge}};
  return d;
}

DiagramMap constant_map(const Diagram& x, const Diagram& y, const std::string& comp) {
  std::map<std::string, std::string> c;
  for (const auto& o : x.shape->objects()) c[o] = comp;
  return DiagramMap{x, y, c};
}

// The square over grid(1,1) with degree = taxicab distance from the corner.
Diagram grid_square(const AmbientPtr& amb) {
  Diagram x;
  x.shape = grid_category(1, 1);
  x.ambient = amb;
  x.data.entries = {{"00", "1"}, {"01", "2"}, {"10", "2"}, {"11", "4"}};
  x.data.edges = {{"g_00_01", "1>2:0"},
                  {"g_00_10", "1>2:0"},
                  {"g_01_11", "2>4:0,1"},
                  {"g_10_11", "2>4:0,2"},
                  {"g_00_11", "1>4:0"}};
  return x;
}

}  // namespace

TEST_CASE("stages, restriction and the degreewise canonical map") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Diagram d = arrow_diagram(fs, "1", "2", "1>2:0");

  SkeletalDiagram empty = empty_skeleton(r, fs);
  CHECK(empty.level == -1);
  CHECK(empty.part.data.entries.empty());
  empty.validate(r);

  SkeletalDiagram sk0 = skeleton(r, d, 0);
  CHECK(sk0.part.data.entries == std::map<std::string, std::string>{{"0", "1"}});
  CHECK(sk0.part.data.edges.empty());
  sk0.validate(r);

  SkeletalDiagram sk1 = skeleton(r, d, 1);
  CHECK(sk1.part.data.entries == d.data.entries);
  CHECK(sk1.part.data.edges == d.data.edges);
  sk1.validate(r);

  // Mislabeled level is caught.
  sk1.level = 0;
  CHECK_THROWS_AS(sk1.validate(r), ValidationError);

  // At the top object of the chain: one raising map in, no lowering maps
  // out, so the canonical map is entry-of-0 -> terminal.
  DegreeData dd = degree_data(r, sk0, "1");
  CHECK(dd.lat.colim.apex == "1");
  CHECK(dd.mat.lim.apex == "1");
  CHECK(dd.canonical == "1>1:0");

  // Degree 0 from the empty stage: initial -> terminal.
  DegreeData d0 = degree_data(r, empty, "0");
  CHECK(d0.lat.colim.apex == "0");
  CHECK(d0.canonical == "0>1:");
}

TEST_CASE("rebuilding a diagram degree by degree from its own canonical factorizations") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = grid_reedy(1, 1);
  Diagram x = grid_square(fs);
  x.validate();

  SkeletalDiagram cur = empty_skeleton(r, fs);
  for (int n = 0; n <= r.max_degree(); ++n) {
    std::map<std::string, Factorization> choices;
    for (const auto& alpha : r.objects_of_degree(n)) {
      ObjectColimitData lat = latching_data(r, x, alpha);
      ObjectLimitData mat = matching_data(r, x, alpha);
      choices[alpha] = {lat.absolute, x.at(alpha), mat.absolute};
    }
    cur = extend_object(r, cur, choices);
    CHECK(cur.level == n);
  }
  CHECK(cur.part.data.entries == x.data.entries);
  CHECK(cur.part.data.edges == x.data.edges);
}

TEST_CASE("degree-zero entries are free; missing and ill-formed choices are rejected") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  SkeletalDiagram empty = empty_skeleton(r, fs);

  // Any object works at degree 0.
  std::map<std::string, Factorization> c0 = {{"0", {"0>3:", "3", "3>1:0,0,0"}}};
  SkeletalDiagram sk0 = extend_object(r, empty, c0);
  CHECK(sk0.part.at("0") == "3");

  CHECK_THROWS_AS(extend_object(r, empty, {}), ValidationError);
  std::map<std::string, Factorization> bad_ends = {{"0", {"0>3:", "2", "3>1:0,0,0"}}};
  CHECK_THROWS_AS(extend_object(r, empty, bad_ends), ValidationError);
}

TEST_CASE("a choice that misses the canonical composite is rejected") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = simplex_op_reedy(1);

  SkeletalDiagram sk0 = extend_object(r, empty_skeleton(r, fs), {{"[0]", {"0>2:", "2", "2>1:0,0"}}});
  DegreeData dd = degree_data(r, sk0, "[1]");
  CHECK(dd.lat.colim.apex == "2");
  CHECK(dd.mat.lim.apex == "4");
  // Both composites to the level below are forced to be the identity, so the
  // canonical map is the diagonal into the two-fold product.
  CHECK(dd.canonical == "2>4:0,3");

  SkeletalDiagram sk1 =
      extend_object(r, sk0, {{"[1]", {"2>2:0,1", "2", "2>4:0,3"}}});
  CHECK(sk1.part.at("[1]") == "2");

  std::map<std::string, Factorization> bad = {{"[1]", {"2>2:0,1", "2", "2>4:0,1"}}};
  CHECK_THROWS_AS(extend_object(r, sk0, bad), ValidationError);
}

TEST_CASE("relative pushout and pullback of a partial map") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Diagram x = arrow_diagram(fs, "1", "2", "1>2:0");
  Diagram y = arrow_diagram(fs, "2", "2", "2>2:0,1");

  // Gluing the top entry of x to y's level-0 entry along f_0: all of x's top
  // entry survives, one point lands on f_0's image, total 3.
  PushData pd = relative_push(r, x, skeleton(r, y, 0).part, {{"0", "1>2:1"}}, "1");
  CHECK(pd.apex == "3");
  CHECK(fs->compose(pd.from_entry, x.edge("g_0_1")) ==
        fs->compose(pd.from_latch, "1>2:1"));

  // No lowering maps out of the top object: the pullback collapses to y's
  // entry there.
  PullData ld = relative_pull(r, skeleton(r, x, 0).part, y, {{"0", "1>2:1"}}, "1");
  CHECK(ld.pull.apex == "2");
  CHECK(fs->is_iso(ld.to_entry));

  // The source entry at the object is required on the pushout side.
  CHECK_THROWS_AS(relative_push(r, skeleton(r, x, 0).part, y, {{"0", "1>2:1"}}, "1"),
                  ValidationError);
}

TEST_CASE("extending a map degree by degree reproduces it from its relative data") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Diagram x = arrow_diagram(fs, "1", "2", "1>2:0");
  Diagram y = arrow_diagram(fs, "2", "2", "2>2:0,1");
  DiagramMap f{x, y, {{"0", "1>2:1"}, {"1", "2>2:1,1"}}};
  f.validate();

  std::map<std::string, MapSquare> choices = {
      {"1", {matching_of_map(r, f, "1").relative, latching_of_map(r, f, "1").relative}}};
  DiagramMap built = extend_map(r, skeleton(r, x, 1), skeleton(r, y, 1), {{"0", "1>2:1"}}, choices);
  CHECK(built.components == f.components);

  // Identity maps extend the same way.
  DiagramMap idm = identity_map(x);
  std::map<std::string, MapSquare> idc = {
      {"1", {matching_of_map(r, idm, "1").relative, latching_of_map(r, idm, "1").relative}}};
  DiagramMap idb =
      extend_map(r, skeleton(r, x, 1), skeleton(r, x, 1), {{"0", fs->identity("1")}}, idc);
  CHECK(idb.components == idm.components);

  // A twisted corner choice breaks the square and is rejected.
  std::map<std::string, MapSquare> bad = choices;
  bad.at("1").latch_part = fs->compose("2>2:1,0", bad.at("1").latch_part);
  CHECK_THROWS_AS(extend_map(r, skeleton(r, x, 1), skeleton(r, y, 1), {{"0", "1>2:1"}}, bad),
                  ValidationError);

  CHECK_THROWS_AS(extend_map(r, skeleton(r, x, 1), skeleton(r, y, 0), {{"0", "1>2:1"}}, choices),
                  ValidationError);
}

TEST_CASE("degreewise factorization over sets lands in the advertised classes") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  ModelAssignment assign(fs);
  Budget b;
  std::vector<std::string> marked = {"0"};

  Diagram x = arrow_diagram(fs, "2", "2", "2>2:0,1");
  Diagram y = arrow_diagram(fs, "1", "1", "1>1:0");
  DiagramMap g = constant_map(x, y, "2>1:0,0");
  g.validate();

  FactorResult fr = factorize(r, marked, assign, g, Side::Left, FactorMode::CofThenAcyFib, b);
  CHECK(compose_maps(fr.p, fr.f).components == g.components);
  CHECK(fr.z.at("0") == "3");
  CHECK(fr.z.at("1") == "4");
  CHECK(classify(r, marked, assign, fr.f, Side::Left, b).classes.cof);
  CHECK(classify(r, marked, assign, fr.p, Side::Left, b).classes.acy_fib);

  // Deterministic: a second run reproduces every encoding.
  FactorResult fr2 = factorize(r, marked, assign, g, Side::Left, FactorMode::CofThenAcyFib, b);
  CHECK(fr2.z.data.entries == fr.z.data.entries);
  CHECK(fr2.z.data.edges == fr.z.data.edges);
  CHECK(fr2.f.components == fr.f.components);
  CHECK(fr2.p.components == fr.p.components);

  // The other ordering gives the other pair of classes.
  FactorResult fo = factorize(r, marked, assign, g, Side::Left, FactorMode::AcyCofThenFib, b);
  CHECK(compose_maps(fo.p, fo.f).components == g.components);
  CHECK(classify(r, marked, assign, fo.f, Side::Left, b).classes.acy_cof);
  CHECK(classify(r, marked, assign, fo.p, Side::Left, b).classes.fib);

  // The entrywise side has no degreewise recipe; shape mismatches are caught.
  CHECK_THROWS_AS(factorize(r, marked, assign, g, Side::Projective, FactorMode::CofThenAcyFib, b),
                  ValidationError);
  CHECK_THROWS_AS(factorize(grid_reedy(1, 1), marked, assign, g, Side::Left,
                            FactorMode::CofThenAcyFib, b),
                  ValidationError);
}

TEST_CASE("degreewise factorization over chain complexes on the square shape") {
  Budget b;
  AmbientPtr ch = chain_complexes(2, b);
  ReedyStructure r = grid_reedy(1, 1);
  ModelAssignment assign(ch);
  std::vector<std::string> marked = {"00", "01", "10"};

  Diagram y;
  y.shape = r.base;
  y.ambient = ch;
  std::string s0 = chain_sphere(2, 0).encode();
  for (const auto& o : r.base->objects()) y.data.entries[o] = s0;
  for (const auto& mid : r.base->nonidentity_morphisms())
    y.data.edges[mid] = ch->identity(s0);
  y.validate();

  DiagramMap g = map_from_initial(y);
  FactorResult fr = factorize(r, marked, assign, g, Side::Left, FactorMode::CofThenAcyFib, b);
  CHECK(compose_maps(fr.p, fr.f).components == g.components);
  CHECK(classify(r, marked, assign, fr.f, Side::Left, b).classes.cof);
  CHECK(classify(r, marked, assign, fr.p, Side::Left, b).classes.acy_fib);
}

TEST_CASE("degreewise lifting finds the first diagonal and matches the direct search") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Budget b;

  Diagram a = constant_diagram(r.base, fs, "1");
  Diagram bb = constant_diagram(r.base, fs, "2");
  Diagram x = constant_diagram(r.base, fs, "2");
  Diagram y = constant_diagram(r.base, fs, "1");
  DiagramMap f = constant_map(a, bb, "1>2:0");
  DiagramMap p = constant_map(x, y, "2>1:0,0");
  DiagramMap top = constant_map(a, x, "1>2:0");
  DiagramMap bot = constant_map(bb, y, "2>1:0,0");

  auto k = reedy_lift(r, f, p, top, bot, b);
  REQUIRE(k.has_value());
  CHECK(k->at("0") == "2>2:0,0");
  CHECK(k->at("1") == "2>2:0,0");

  auto direct = find_diagram_lift(f, p, top, bot, b);
  REQUIRE(direct.has_value());
  CHECK(*direct == k->components);
}

TEST_CASE("lifting agreement, refutation, and the budget cut are kept apart") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Budget b;

  // A square with no diagonal: the candidate through the point misses the
  // requested bottom component.
  Diagram a = constant_diagram(r.base, fs, "0");
  Diagram bb = constant_diagram(r.base, fs, "1");
  Diagram x = constant_diagram(r.base, fs, "1");
  Diagram y = constant_diagram(r.base, fs, "2");
  DiagramMap f = constant_map(a, bb, "0>1:");
  DiagramMap p = constant_map(x, y, "1>2:0");
  DiagramMap top = constant_map(a, x, "0>1:");
  DiagramMap bot = constant_map(bb, y, "1>2:1");
  CHECK(!reedy_lift(r, f, p, top, bot, b).has_value());
  CHECK(!find_diagram_lift(f, p, top, bot, b).has_value());

  // The same question under a zero search budget is refused, not denied.
  Budget tight = b;
  tight.max_search = 0;
  CHECK_THROWS_AS(reedy_lift(r, f, p, top, bot, tight), BudgetExceeded);

  // A non-commuting square is rejected up front.
  Diagram pt = constant_diagram(r.base, fs, "1");
  Diagram x2 = constant_diagram(r.base, fs, "2");
  DiagramMap p2 = constant_map(x2, y, "2>2:0,1");
  CHECK_THROWS_AS(reedy_lift(r, constant_map(pt, pt, "1>1:0"), p2,
                             constant_map(pt, x2, "1>2:0"), constant_map(pt, y, "1>2:1"), b),
                  ValidationError);
}

TEST_CASE("degreewise and direct lifting agree over a small sweep of squares") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Budget b;

  Diagram a = arrow_diagram(fs, "1", "1", "1>1:0");
  Diagram bb = arrow_diagram(fs, "2", "1", "2>1:0,0");
  Diagram x = arrow_diagram(fs, "2", "2", "2>2:0,1");
  Diagram y = constant_diagram(r.base, fs, "1");
  DiagramMap p{x, y, {{"0", "2>1:0,0"}, {"1", "2>1:0,0"}}};
  DiagramMap bot{bb, y, {{"0", "2>1:0,0"}, {"1", "1>1:0"}}};

  int squares = 0;
  for (const char* f0c : {"1>2:0", "1>2:1"}) {
    DiagramMap f{a, bb, {{"0", std::string(f0c)}, {"1", "1>1:0"}}};
    f.validate();
    for (const char* tc : {"1>2:0", "1>2:1"}) {
      DiagramMap top{a, x, {{"0", std::string(tc)}, {"1", std::string(tc)}}};
      top.validate();
      auto fast = reedy_lift(r, f, p, top, bot, b);
      auto slow = find_diagram_lift(f, p, top, bot, b);
      CHECK(fast.has_value() == slow.has_value());
      if (fast && slow) CHECK(fast->components == *slow);
      ++squares;
    }
  }
  CHECK(squares == 4);
}

TEST_CASE("replacements: invertible when everything is acyclic, identity on the initial object") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Budget b;
  std::vector<std::string> marked = {"0", "1"};

  // When only isomorphisms are acyclic, the fibrant replacement map is one.
  AmbientPtr strict = trivial_structure(fs, Variant::WeIso);
  ModelAssignment sa(strict);
  for (const auto& o : r.base->objects()) sa.set_variant(o, Variant::WeIso);
  Diagram x = arrow_diagram(strict, "2", "3", "2>3:0,1");
  ReplacementResult rep =
      replacement(r, marked, sa, x, ReplacementKind::Fibrant, Side::Left, b);
  for (const auto& [o, comp] : rep.map.components) CHECK(strict->is_iso(comp));
  CHECK(compose_maps(rep.via.p, rep.via.f).components == map_to_final(x).components);

  // The initial diagram is already as cofibrant as it gets.
  ModelAssignment fa(fs);
  Diagram zero = constant_diagram(r.base, fs, "0");
  ReplacementResult cz =
      replacement(r, marked, fa, zero, ReplacementKind::Cofibrant, Side::Left, b);
  CHECK(cz.object.data.entries == zero.data.entries);
  for (const auto& [o, comp] : cz.map.components) CHECK(comp == "0>0:");
}

TEST_CASE("a mixed assignment changes which factorizations count as acyclic") {
  AmbientPtr fs = finset_wfs();
  ReedyStructure r = chain_reedy(1);
  Budget b;
  std::vector<std::string> marked = {"0", "1"};

  ModelAssignment mixed(fs);
  mixed.set_variant("0", Variant::CofTrivial);
  ModelAssignment full(fs);

  Diagram x = arrow_diagram(fs, "2", "2", "2>2:0,1");
  ReplacementResult rep =
      replacement(r, marked, mixed, x, ReplacementKind::Cofibrant, Side::Left, b);
  CHECK(compose_maps(rep.via.p, rep.via.f).components == map_from_initial(x).components);

  // Where only isomorphisms count as the colimit-side class, the replacement
  // entry stays initial, and the comparison map is acyclic only under the
  // assignment that produced it.
  CHECK(rep.object.at("0") == "0");
  CHECK(classify(r, marked, mixed, rep.map, Side::Left, b).classes.acy_fib);
  CHECK(!classify(r, marked, full, rep.map, Side::Left, b).classes.acy_fib);
}

TEST_CASE("factorization mode names round-trip") {
  CHECK(factor_mode_from_string("cof_acyfib") == FactorMode::CofThenAcyFib);
  CHECK(factor_mode_from_string("acycof_fib") == FactorMode::AcyCofThenFib);
  CHECK(factor_mode_to_string(FactorMode::CofThenAcyFib) == "cof_acyfib");
  CHECK(factor_mode_to_string(FactorMode::AcyCofThenFib) == "acycof_fib");
  CHECK_THROWS_AS(factor_mode_from_string("both"), ValidationError);
}
