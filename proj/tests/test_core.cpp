#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "modred/common.hpp"
#include "modred/fincat.hpp"
#include "modred/fpmat.hpp"

using namespace modred;

TEST_CASE("budget profiles") {
  CHECK(Budget::quick().max_set_card == 2);
  CHECK(Budget::desk().max_set_card == 3);
  CHECK(Budget::thorough().max_set_card == 4);
  CHECK(Budget::desk().max_chain_dim == 2);
}

TEST_CASE("fpmat arithmetic mod 2 and mod 3") {
  FpMat a(2, 2, 2, {1, 1, 0, 1});
  FpMat b(2, 2, 2, {1, 0, 1, 1});
  FpMat ab = a.mul(b);
  CHECK(ab.at(0, 0) == 0);  // 1*1 + 1*1 = 0 mod 2
  CHECK(ab.at(0, 1) == 1);
  CHECK(a.add(a).is_zero());

  FpMat c(3, 2, 2, {2, 1, 1, 2});
  CHECK(c.sub(c).is_zero());
  CHECK(c.mul(FpMat::identity(3, 2)) == c);
}

TEST_CASE("fpmat rank and rref") {
  // Rank oracle: hand-reduced values.
  FpMat m(2, 3, 3, {1, 0, 1, 0, 1, 1, 1, 1, 0});  // row3 = row1 + row2 mod 2
  CHECK(m.rank() == 2);
  CHECK(FpMat::identity(5, 4).rank() == 4);
  CHECK(FpMat::zero(3, 2, 5).rank() == 0);

  FpMat r(3, 2, 3, {1, 2, 0, 2, 1, 1});
  std::vector<int> piv;
  FpMat rr = r.rref(&piv);
  CHECK(piv.size() == 2);
  CHECK(rr.at(0, 0) == 1);
  CHECK(rr.at(1, 0) == 0);
}

TEST_CASE("fpmat kernel basis") {
  FpMat m(2, 1, 2, {1, 1});  // kernel spanned by (1,1)
  FpMat k = m.kernel_basis();
  CHECK(k.cols() == 1);
  CHECK(m.mul(k).is_zero());
  CHECK(k.at(0, 0) == 1);
  CHECK(k.at(1, 0) == 1);

  // Kernel columns are independent: the stacked matrix has full column rank.
  FpMat wide(3, 2, 4, {1, 0, 2, 1, 0, 1, 1, 2});
  FpMat kw = wide.kernel_basis();
  CHECK(kw.cols() == 2);
  CHECK(wide.mul(kw).is_zero());
  CHECK(kw.rank() == kw.cols());

  CHECK(FpMat::identity(2, 3).kernel_basis().cols() == 0);
}

TEST_CASE("fpmat solve and inverse") {
  FpMat a(5, 2, 2, {1, 2, 3, 4});
  auto inv = a.inverse();
  REQUIRE(inv.has_value());
  CHECK(a.mul(*inv).is_identity());
  CHECK(inv->mul(a).is_identity());

  FpMat singular(2, 2, 2, {1, 1, 1, 1});
  CHECK(!singular.inverse().has_value());

  FpMat rhs(5, 2, 1, {4, 1});
  auto x = a.solve(rhs);
  REQUIRE(x.has_value());
  CHECK(a.mul(*x) == rhs);

  // Inconsistent system.
  FpMat flat(2, 2, 1, {1, 1});
  FpMat bad(2, 2, 1, {1, 0});
  CHECK(!flat.solve(bad).has_value());
}

TEST_CASE("fpmat injectivity and surjectivity") {
  FpMat inj(2, 3, 2, {1, 0, 0, 1, 0, 0});
  CHECK(inj.injective());
  CHECK(!inj.surjective());
  FpMat surj = inj.transpose();
  CHECK(surj.surjective());
  CHECK(!surj.injective());
  CHECK(FpMat::identity(3, 3).injective());
  CHECK(FpMat::identity(3, 3).surjective());
}

TEST_CASE("fpmat quotient by a column space") {
  // Quotient of F_2^3 by span{(1,1,0)}: Q has rank 2, kills B, and the
  // section splits it.
  FpMat b(2, 3, 1, {1, 1, 0});
  FpQuotient q = column_space_quotient(b);
  CHECK(q.Q.rows() == 2);
  CHECK(q.Q.cols() == 3);
  CHECK(q.Q.mul(b).is_zero());
  CHECK(q.Q.mul(q.S).is_identity());
  CHECK(q.Q.rank() == 2);

  // Quotient by the whole space is the zero space.
  FpQuotient full = column_space_quotient(FpMat::identity(3, 2));
  CHECK(full.Q.rows() == 0);

  // Quotient by nothing is (isomorphic to) the identity.
  FpQuotient none = column_space_quotient(FpMat::zero(2, 2, 0));
  CHECK(none.Q.rows() == 2);
  CHECK(none.Q.mul(none.S).is_identity());
}

TEST_CASE("fpmat encode round trip") {
  FpMat a(3, 2, 3, {0, 1, 2, 2, 1, 0});
  CHECK(fpmat_decode(3, 2, 3, a.encode()) == a);
  CHECK(FpMat::zero(2, 0, 3).encode() == "");
}

TEST_CASE("grid category counts") {
  // Frozen: the square poset has 4 objects and 9 morphisms (4 identities,
  // 4 edges, 1 diagonal); the 2x1 grid has 6 objects and 18 morphisms.
  auto g11 = grid_category(1, 1);
  CHECK(g11->objects().size() == 4);
  CHECK(g11->morphisms().size() == 9);
  auto g21 = grid_category(2, 1);
  CHECK(g21->objects().size() == 6);
  CHECK(g21->morphisms().size() == 18);
}

TEST_CASE("grid category composition and indecomposables") {
  auto g = grid_category(1, 1);
  CHECK(g->compose("g_01_11", "g_00_01") == "g_00_11");
  CHECK(g->compose("g_10_11", "g_00_10") == "g_00_11");
  CHECK(g->compose("id_11", "g_00_11") == "g_00_11");
  CHECK_THROWS_AS(g->compose("g_00_01", "g_00_10"), ValidationError);

  auto ind = g->indecomposables();
  CHECK(ind == std::vector<std::string>{"g_00_01", "g_00_10", "g_01_11", "g_10_11"});
}

TEST_CASE("chain category") {
  auto c = chain_category(2);
  CHECK(c->objects().size() == 3);
  CHECK(c->morphisms().size() == 6);
  CHECK(c->compose("g_1_2", "g_0_1") == "g_0_2");
  CHECK(c->hom("0", "2") == std::vector<std::string>{"g_0_2"});
  CHECK(c->hom("2", "0").empty());
}

TEST_CASE("full subcategory") {
  // Frozen: the square poset without its terminal corner has 3 objects and
  // 5 morphisms.
  auto sub = full_subcategory(grid_category(1, 1), {"00", "01", "10"});
  CHECK(sub->objects().size() == 3);
  CHECK(sub->morphisms().size() == 5);
  CHECK(sub->has_morphism("g_00_01"));
  CHECK(!sub->has_morphism("g_00_11"));
}

TEST_CASE("opposite category") {
  auto c = chain_category(2);
  auto op = opposite_category(c);
  CHECK(op->src("g_0_1") == "1");
  CHECK(op->dst("g_0_1") == "0");
  CHECK(op->compose("g_0_1", "g_1_2") == "g_0_2");
  auto opop = opposite_category(op);
  CHECK(opop->same_structure(*c));
}

TEST_CASE("category validation rejects broken data") {
  // Missing composite.
  CHECK_THROWS_AS(FinCategory::build("bad", {"a", "b", "c"},
                                     {{"f", "a", "b"}, {"g", "b", "c"}}, {}),
                  ValidationError);
  // Wrong endpoints for a composite.
  CHECK_THROWS_AS(FinCategory::build("bad", {"a", "b", "c"},
                                     {{"f", "a", "b"}, {"g", "b", "c"}, {"h", "a", "a"}},
                                     {{"g", "f", "h"}}),
                  ValidationError);
  // Duplicate morphism id.
  CHECK_THROWS_AS(
      FinCategory::build("bad", {"a", "b"}, {{"f", "a", "b"}, {"f", "a", "b"}}, {}),
      ValidationError);
  // Unknown endpoint.
  CHECK_THROWS_AS(FinCategory::build("bad", {"a"}, {{"f", "a", "z"}}, {}), ValidationError);
  // The empty category is fine.
  auto empty = FinCategory::build("empty", {}, {}, {});
  CHECK(empty->objects().empty());
  CHECK(empty->morphisms().empty());
}

TEST_CASE("functor validation") {
  auto c2 = chain_category(2);
  auto c1 = chain_category(1);
  CatFunctor collapse;
  collapse.source = c2;
  collapse.target = c1;
  collapse.obj_map = {{"0", "0"}, {"1", "0"}, {"2", "1"}};
  collapse.mor_map = {{"id_0", "id_0"}, {"id_1", "id_0"}, {"id_2", "id_1"},
                      {"g_0_1", "id_0"}, {"g_0_2", "g_0_1"}, {"g_1_2", "g_0_1"}};
  CHECK_NOTHROW(collapse.validate());

  collapse.mor_map["g_0_2"] = "id_0";  // breaks endpoints
  CHECK_THROWS_AS(collapse.validate(), ValidationError);
}

TEST_CASE("truncated simplex op counts") {
  // Frozen: levels 0..1 give 2 objects and 7 morphisms.
  auto d1 = truncated_simplex_op(1);
  CHECK(d1->objects().size() == 2);
  CHECK(d1->morphisms().size() == 7);

  // Hom sizes against the binomial oracle: morphisms "[m]" -> "[n]" are
  // monotone maps [n] -> [m].
  auto d2 = truncated_simplex_op(2);
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      CHECK(long(d2->hom("[" + std::to_string(m) + "]", "[" + std::to_string(n) + "]").size()) ==
            monotone_map_count(n, m));
  CHECK(monotone_map_count(1, 2) == 6);
  CHECK(monotone_map_count(2, 1) == 4);

  CHECK_THROWS_AS(truncated_simplex_op(7), ValidationError);
}

TEST_CASE("simplex op morphism decode") {
  auto d2 = truncated_simplex_op(2);
  int monos = 0, epis = 0;
  for (const auto& id : d2->morphisms()) {
    SimplexOpMor m = simplex_op_decode(id);
    CHECK(m.src_level == std::stoi(d2->src(id).substr(1, 1)));
    CHECK(m.dst_level == std::stoi(d2->dst(id).substr(1, 1)));
    CHECK(int(m.values.size()) == m.dst_level + 1);
    if (m.mono()) ++monos;
    if (m.epi()) ++epis;
    // Identities are both; decode must agree.
    if (d2->is_identity(id)) {
      CHECK(m.mono());
      CHECK(m.epi());
    }
  }
  // Strictly increasing [n] -> [m] maps: C(m+1, n+1); surjections [n] -> [m]:
  // C(n, m). Sums over the 0..2 window, identities included.
  // monos: (0,0):1 (0,1):0 (0,2):0 (1,0):2 (1,1):1 (1,2):0 (2,0):3 (2,1):3 (2,2):1 = 11
  // epis:  (0,0):1 (0,1):1 (0,2):1 (1,0):0 (1,1):1 (1,2):2 (2,0):0 (2,1):0 (2,2):1 = 7
  CHECK(monos == 11);
  CHECK(epis == 7);
}

TEST_CASE("simplex op composition agrees with map composition") {
  auto d2 = truncated_simplex_op(2);
  for (const auto& f : d2->morphisms())
    for (const auto& g : d2->morphisms()) {
      if (d2->dst(f) != d2->src(g)) continue;
      SimplexOpMor mf = simplex_op_decode(f);
      SimplexOpMor mg = simplex_op_decode(g);
      SimplexOpMor mc = simplex_op_decode(d2->compose(g, f));
      REQUIRE(mc.values.size() == mg.values.size());
      for (size_t i = 0; i < mg.values.size(); ++i)
        CHECK(mc.values[i] == mf.values[size_t(mg.values[i])]);
    }
}

TEST_CASE("generating morphisms generate and are minimal") {
  for (const auto& cat : {grid_category(2, 2), truncated_simplex_op(2), chain_category(3)}) {
    auto gens = cat->generating_morphisms();
    // Witness map covers every morphism, and each witness recombines.
    auto wit = cat->generation_witnesses(gens);
    CHECK(wit.size() == cat->morphisms().size());
    for (const auto& [id, w] : wit)
      if (w) CHECK(cat->compose(w->outer, w->inner) == id);
    // Indecomposables can never be generated by other morphisms.
    auto ind = cat->indecomposables();
    for (const auto& id : ind)
      CHECK(std::find(gens.begin(), gens.end(), id) != gens.end());
    // Minimality: dropping any generator loses generation.
    for (size_t i = 0; i < gens.size(); ++i) {
      std::vector<std::string> fewer = gens;
      fewer.erase(fewer.begin() + long(i));
      CHECK_THROWS_AS(cat->generation_witnesses(fewer), ValidationError);
    }
  }
}

TEST_CASE("in a poset the indecomposables are exactly the generators") {
  auto g = grid_category(2, 2);
  CHECK(g->generating_morphisms() == g->indecomposables());
  // In the truncated simplex category nothing is indecomposable: every arrow
  // detours through a section/retraction pair one level up.
  CHECK(truncated_simplex_op(1)->indecomposables().empty());
  CHECK(!truncated_simplex_op(1)->generating_morphisms().empty());
}
