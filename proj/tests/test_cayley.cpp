#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodgejac/cayley.hpp"

using namespace hodgejac;

TEST_CASE("complete-intersection Hodge combinatorics") {
  // hypersurface sanity: quintic threefold via r = 1
  CHECK(ci_middle_hodge(4, {5}, 3) == 1);
  CHECK(ci_middle_hodge(4, {5}, 2) == 101);
  CHECK(ci_middle_hodge(4, {5}, 1) == 101);
  CHECK(ci_middle_hodge(4, {5}, 0) == 1);
  // K3 quartic: h^{1,1} = 20, variable 19
  CHECK(ci_middle_hodge(3, {4}, 1) == 20);
  CHECK(ci_variable_hodge(3, {4}, 1) == 19);
  // elliptic curve two ways
  CHECK(ci_middle_hodge(2, {3}, 1) == 1);
  CHECK(ci_variable_hodge(3, {2, 2}, 0) == 1);
  CHECK(ci_variable_hodge(3, {2, 2}, 1) == 1);
  // (2,4) in P^5, the Pluecker-quadric model of the G(2,4) hypersurface
  CHECK(ci_middle_hodge(5, {2, 4}, 2) == 89);
  CHECK(ci_middle_hodge(5, {2, 4}, 3) == 1);
  // (2,2,2) in P^5: the degree-8 K3 surface
  CHECK(ci_middle_hodge(5, {2, 2, 2}, 1) == 20);
  CHECK(ci_variable_hodge(5, {2, 2, 2}, 1) == 19);
  // even middle dimension of a curve-free case: quadric surface in P^3
  CHECK(ci_middle_hodge(3, {2}, 1) == 2);      // h^{1,1}(P^1 x P^1)
  CHECK(ci_variable_hodge(3, {2}, 1) == 1);
}

TEST_CASE("cayley model validation") {
  CHECK_THROWS_AS(CayleyModel(3, {2}), precondition_error);       // r >= 2
  CHECK_THROWS_AS(CayleyModel(3, {2, 0}), precondition_error);    // ample
  CHECK_THROWS_AS(CayleyModel(0, {2, 2}), precondition_error);
}

TEST_CASE("cayley m-basis") {
  CayleyModel m(3, {2, 2});
  SUBCASE("k = 1: single element") {
    auto b = cayley_m_monomials(m, 1);
    REQUIRE(b.size() == 1);  // beta = 0, x-degree 0
    CHECK(b[0] == ExpVec{0, 0, 0, 0, 0, 0});
  }
  SUBCASE("k = 2: two beta choices times 10 quadrics") {
    CHECK(cayley_m_monomials(m, 2).size() == 20);
  }
  SUBCASE("k < r-1 rejected") {
    CHECK_THROWS_AS(cayley_m_monomials(m, 0), precondition_error);
  }
  SUBCASE("(1,1) on P^3 at k = 1 is empty") {
    CayleyModel thin(3, {1, 1});
    CHECK(cayley_m_monomials(thin, 1).empty());  // x-degree -2
  }
}

TEST_CASE("cayley N-pairing") {
  CayleyModel m(3, {2, 2});
  auto fl = cayley_random_sections(m, 1, 9);
  SUBCASE("k = r-1 = 1: N is empty by degree reasons") {
    CHECK(cayley_n_pairing(m, fl, 1).empty());  // x-degree 4-2-4 < 0
  }
  SUBCASE("k = 2: the images span rank 4 generically") {
    auto imgs = cayley_n_pairing(m, fl, 2);
    CHECK(imgs.size() == 4);  // e_j^v (x) y_i for i,j in {1,2}
    MonomialTable target(cayley_m_monomials(m, 2));
    std::vector<ProductFamily> fams;
    ExpVec unit(m.arity(), 0);
    fams.push_back({imgs, {unit}});
    CHECK(product_span_rank_exact(fams, target) == 4);
  }
  SUBCASE("zero sections give a zero image") {
    // f_list must be nonzero by validation; check the image of scaled sections
    CHECK_THROWS_AS(cayley_n_pairing(m, {MultiPoly(4), MultiPoly(4)}, 2), precondition_error);
  }
}

TEST_CASE("elliptic curve as a (2,2) intersection in P^3") {
  CayleyModel m(3, {2, 2});
  auto fl = cayley_random_sections(m, 1, 9);
  auto rep = variable_hodge_report(m, fl);
  REQUIRE(rep.per_k.size() == 2);
  CHECK(rep.per_k[0].dim == 1);   // h^{1,0}
  CHECK(rep.per_k[1].dim == 1);   // h^{0,1}
  CHECK(rep.per_k[0].cert == RankCert::ExactElimination);
  CHECK(!rep.degenerate_detected);
  CHECK(rep.hypotheses_all_vanish);
}

TEST_CASE("(2,2) quotients are palindromic over five seeds") {
  CayleyModel m(3, {2, 2});
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto fl = cayley_random_sections(m, seed, 9);
    auto e0 = variable_hodge_dims(m, fl, 0);
    auto e1 = variable_hodge_dims(m, fl, 1);
    CHECK(e0.dim == e1.dim);
  }
}

TEST_CASE("(2,2,2) K3 surface in P^5 within budget") {
  CayleyModel m(5, {2, 2, 2});
  auto fl = cayley_random_sections(m, 1, 9);
  auto e0 = variable_hodge_dims(m, fl, 0);
  CHECK(e0.dim == 1);
  auto e1 = variable_hodge_dims(m, fl, 1);
  CHECK(e1.dim == 19);
  auto e2 = variable_hodge_dims(m, fl, 2);
  CHECK(e2.dim == 1);  // palindromic CY middle (1, 19, 1)
}

TEST_CASE("J and J' span the same quotient (the f row is redundant)") {
  CayleyModel m(3, {2, 2});
  for (uint64_t seed : {1, 4}) {
    auto fl = cayley_random_sections(m, seed, 9);
    int kk = 2;  // display k = 1
    MonomialTable target(cayley_m_monomials(m, kk));
    ExpVec unit(m.arity(), 0);
    auto nimg = cayley_n_pairing(m, fl, kk);
    auto gens = cayley_jac_generators(m, fl);
    std::vector<MultiPoly> gens_nof(gens.begin() + 1, gens.end());
    auto mults = cayley_m_monomials(m, kk - 1);
    std::vector<ProductFamily> with_f, without_f;
    with_f.push_back({nimg, {unit}});
    with_f.push_back({gens, mults});
    without_f.push_back({nimg, {unit}});
    without_f.push_back({gens_nof, mults});
    CHECK(product_span_rank_exact(with_f, target) ==
          product_span_rank_exact(without_f, target));
  }
}

TEST_CASE("re-adding N-image rows never changes the span") {
  CayleyModel m(3, {2, 2});
  auto fl = cayley_random_sections(m, 2, 9);
  int kk = 2;
  MonomialTable target(cayley_m_monomials(m, kk));
  ExpVec unit(m.arity(), 0);
  auto nimg = cayley_n_pairing(m, fl, kk);
  auto gens = cayley_jac_generators(m, fl);
  auto mults = cayley_m_monomials(m, kk - 1);
  std::vector<ProductFamily> base;
  base.push_back({nimg, {unit}});
  base.push_back({gens, mults});
  int64_t r0 = product_span_rank_exact(base, target);
  std::vector<MultiPoly> doubled = nimg;
  doubled.insert(doubled.end(), nimg.begin(), nimg.end());
  std::vector<ProductFamily> twice;
  twice.push_back({doubled, {unit}});
  twice.push_back({gens, mults});
  CHECK(product_span_rank_exact(twice, target) == r0);
}

TEST_CASE("degenerate section pairs are flagged") {
  CayleyModel m(3, {2, 2});
  MultiPoly f1 = MultiPoly::parse("1 2,0,0,0", 4);
  std::vector<MultiPoly> fl{f1, f1};  // (x0^2, x0^2): rank collapses everywhere
  std::string note;
  CHECK(cayley_smoothness(m, fl, &note) == Smoothness::Failed);
  auto e = variable_hodge_dims(m, fl, 1);
  CHECK(e.below_generic);
  CHECK(e.dim > e.generic_dim);
}

TEST_CASE("smoothness probe accepts generic sections") {
  CayleyModel m(3, {2, 2});
  auto fl = cayley_random_sections(m, 3, 9);
  std::string note;
  CHECK(cayley_smoothness(m, fl, &note) == Smoothness::AssumedGeneric);
}

TEST_CASE("hypothesis verdicts for the (2,2) model all vanish") {
  CayleyModel m(3, {2, 2});
  auto fl = cayley_random_sections(m, 1, 9);
  auto rep = variable_hodge_report(m, fl);
  CHECK(rep.hypotheses_all_vanish);
  CHECK(!rep.hypothesis_verdicts.empty());
}
