#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hodgejac/linalg.hpp"
#include "hodgejac/poly.hpp"

using namespace hodgejac;

TEST_CASE("polynomial parsing") {
  SUBCASE("Fermat cubic") {
    MultiPoly f = MultiPoly::parse("1 3,0,0\n1 0,3,0\n1 0,0,3", 3);
    CHECK(f.num_terms() == 3);
    CHECK(f.coeff({3, 0, 0}) == 1);
    int64_t deg;
    CHECK(f.is_homogeneous(&deg));
    CHECK(deg == 3);
  }
  SUBCASE("rational coefficients") {
    MultiPoly f = MultiPoly::parse("1/2 1,1,1", 3);
    CHECK(f.coeff({1, 1, 1}) == mpq_class(1, 2));
  }
  SUBCASE("comments and blank lines") {
    MultiPoly f = MultiPoly::parse("# header\n\n2 1,0 # trailing\n-1/3 0,2\n", 2);
    CHECK(f.num_terms() == 2);
    CHECK(f.coeff({0, 2}) == mpq_class(-1, 3));
  }
  SUBCASE("arity errors carry line numbers") {
    CHECK_THROWS_WITH_AS(MultiPoly::parse("1 1,1", 3), doctest::Contains("line 1"), parse_error);
    CHECK_THROWS_AS(MultiPoly::parse("1 1,1,0\nx 0,0,1", 3), parse_error);
    CHECK_THROWS_AS(MultiPoly::parse("1/0 1,1,1", 3), parse_error);
    CHECK_THROWS_AS(MultiPoly::parse("1", 1), parse_error);
  }
  SUBCASE("terms accumulate and cancel") {
    MultiPoly f = MultiPoly::parse("1 1,0\n-1 1,0\n2 0,1", 2);
    CHECK(f.num_terms() == 1);
  }
}

TEST_CASE("serialization round-trips byte-identically") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly f(3);
    for (int t = 0; t < 12; ++t) {
      ExpVec e{static_cast<int32_t>(rng() % 5), static_cast<int32_t>(rng() % 5),
               static_cast<int32_t>(rng() % 5)};
      f.add_term(e, mpq_class(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4)));
    }
    std::string s = f.str();
    MultiPoly g = MultiPoly::parse(s, 3);
    CHECK(g == f);
    CHECK(g.str() == s);
  }
}

TEST_CASE("laurent exponents are handled") {
  MultiPoly f = MultiPoly::parse("1 -1,2\n3/7 0,-4", 2);
  CHECK(f.coeff({-1, 2}) == 1);
  MultiPoly t = f.theta(1);
  CHECK(t.coeff({-1, 2}) == 2);
  CHECK(t.coeff({0, -4}) == mpq_class(-12, 7));
}

TEST_CASE("calculus") {
  // f = x^2 y + 3 x
  MultiPoly f(2);
  f.add_term({2, 1}, 1);
  f.add_term({1, 0}, 3);
  MultiPoly fx = f.partial(0);
  CHECK(fx.coeff({1, 1}) == 2);
  CHECK(fx.coeff({0, 0}) == 3);
  MultiPoly fy = f.partial(1);
  CHECK(fy.coeff({2, 0}) == 1);
  CHECK(fy.num_terms() == 1);
  MultiPoly p = f * fy;
  CHECK(p.coeff({4, 1}) == 1);
  CHECK(p.coeff({3, 0}) == 3);
}

TEST_CASE("exact echelon matches a hand-computed rank") {
  ExactEchelon ech(4);
  auto row = [](std::vector<std::pair<int32_t, long>> v) {
    SparseRowZ r;
    for (auto [c, x] : v) r.push_back({c, mpz_class(x)});
    return r;
  };
  CHECK(ech.insert(row({{0, 1}, {1, 2}, {2, 3}})));
  CHECK(ech.insert(row({{1, 1}, {3, 1}})));
  CHECK(ech.insert(row({{0, 2}, {1, 5}, {2, 6}, {3, 2}})));
  CHECK(ech.rank() == 3);
  CHECK(!ech.insert(row({{0, 1}, {1, 3}, {2, 3}, {3, 1}})));  // r1 + r2, dependent
  CHECK(ech.rank() == 3);
  CHECK(!ech.insert(row({{0, 2}, {1, 5}, {2, 6}, {3, 1}})));  // 2 r1 + r2, dependent
  CHECK(ech.rank() == 3);
}

TEST_CASE("exact echelon transforms reconstruct the inserted rows") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int ncols = 8, nrows = 10;
    std::vector<SparseRowZ> original;
    ExactEchelon ech(ncols, /*track_transform=*/true);
    for (int i = 0; i < nrows; ++i) {
      SparseRowZ r;
      for (int c = 0; c < ncols; ++c) {
        long v = static_cast<long>(rng() % 7) - 3;
        if (v) r.push_back({c, mpz_class(v)});
      }
      original.push_back(r);
      ech.insert(r, i);
    }
    for (int j = 0; j < ech.rank(); ++j) {
      std::vector<mpz_class> acc(ncols, 0);
      for (const auto& [orig_id, coef] : ech.transforms()[j])
        for (const auto& [c, v] : original[orig_id]) acc[c] += coef * v;
      std::vector<mpz_class> expect(ncols, 0);
      for (const auto& [c, v] : ech.rows()[j]) expect[c] = v;
      CHECK(acc == expect);
    }
  }
}

TEST_CASE("exact reduction yields a verified identity") {
  std::mt19937_64 rng(13);
  int ncols = 10;
  ExactEchelon ech(ncols);
  for (int i = 0; i < 6; ++i) {
    SparseRowZ r;
    for (int c = 0; c < ncols; ++c) {
      long v = static_cast<long>(rng() % 9) - 4;
      if (v) r.push_back({c, mpz_class(v)});
    }
    ech.insert(r);
  }
  SparseRowZ probe;
  for (int c = 0; c < ncols; ++c) {
    long v = static_cast<long>(rng() % 5);
    if (v) probe.push_back({c, mpz_class(v)});
  }
  auto red = ech.reduce(probe);
  CHECK(red.scale > 0);
  std::vector<mpz_class> acc(ncols, 0);
  for (const auto& [c, v] : probe) acc[c] += red.scale * v;
  for (const auto& [j, coef] : red.combo)
    for (const auto& [c, v] : ech.rows()[j]) acc[c] -= coef * v;
  std::vector<mpz_class> expect(ncols, 0);
  for (const auto& [c, v] : red.residual) expect[c] = v;
  CHECK(acc == expect);
}

TEST_CASE("modular echelon agrees with exact ranks on random matrices") {
  std::mt19937_64 rng(17);
  const auto& primes = modp_primes();
  for (int trial = 0; trial < 40; ++trial) {
    int ncols = 12, nrows = 14;
    ExactEchelon exact(ncols);
    ModEchelon modp(ncols, primes[trial % primes.size()]);
    for (int i = 0; i < nrows; ++i) {
      SparseRowZ zr;
      SparseRowP pr;
      for (int c = 0; c < ncols; ++c) {
        long v = static_cast<long>(rng() % 11) - 5;
        if (v) {
          zr.push_back({c, mpz_class(v)});
          uint64_t p = modp.modulus();
          pr.push_back({c, static_cast<uint32_t>((v % static_cast<long>(p) + p) % p)});
        }
      }
      exact.insert(zr);
      modp.insert(pr);
    }
    CHECK(exact.rank() == modp.rank());
  }
}

TEST_CASE("fresh-lead insertion preserves the rank") {
  std::mt19937_64 rng(19);
  const uint64_t p = modp_primes()[0];
  for (int trial = 0; trial < 30; ++trial) {
    int ncols = 15;
    std::vector<SparseRowP> rows;
    for (int i = 0; i < 20; ++i) {
      SparseRowP r;
      for (int c = 0; c < ncols; ++c) {
        uint32_t v = static_cast<uint32_t>(rng() % 7);
        if (v) r.push_back({c, v});
      }
      if (!r.empty()) rows.push_back(r);
    }
    ModEchelon plain(ncols, p);
    for (const auto& r : rows) plain.insert(r);
    ModEchelon hybrid(ncols, p);
    std::vector<SparseRowP> deferred;
    for (const auto& r : rows) {
      if (!hybrid.has_pivot(r.front().first))
        hybrid.insert_fresh(r);
      else
        deferred.push_back(r);
    }
    for (const auto& r : deferred) hybrid.insert(r);
    CHECK(plain.rank() == hybrid.rank());
  }
}

TEST_CASE("the fixed prime list is prime and below 2^26") {
  const auto& ps = modp_primes();
  REQUIRE(ps.size() >= 8);
  for (uint64_t p : ps) {
    CHECK(p < (1ull << 26));
    CHECK(detail::is_prime_u64(p));
  }
  CHECK(std::set<uint64_t>(ps.begin(), ps.end()).size() == ps.size());
}

TEST_CASE("product span ranks: modular equals exact on a small Jacobian slice") {
  // classical Jacobian of the Fermat cubic in P^2 at degree 3
  MultiPoly f(3);
  f.add_term({3, 0, 0}, 1);
  f.add_term({0, 3, 0}, 1);
  f.add_term({0, 0, 3}, 1);
  std::vector<MultiPoly> partials;
  for (int i = 0; i < 3; ++i) partials.push_back(f.partial(i));
  MonomialTable target(degree_monomials(3, 3));
  std::vector<ProductFamily> fams;
  fams.push_back({partials, degree_monomials(3, 1)});
  int64_t rexact = product_span_rank_exact(fams, target);
  CHECK(rexact == 9);  // 10 cubics minus the 1-dimensional quotient slice
  for (uint64_t p : {modp_primes()[0], modp_primes()[1]}) {
    CHECK(product_span_rank_modp(fams, target, p, -1) == rexact);
    CHECK(product_span_rank_modp(fams, target, p, rexact) == rexact);  // early stop
  }
}

TEST_CASE("monomial tables index graded-lex descending") {
  MonomialTable t(degree_monomials(3, 2));
  REQUIRE(t.size() == 6);
  CHECK(t.mono(0) == ExpVec{2, 0, 0});
  CHECK(t.mono(5) == ExpVec{0, 0, 2});
  CHECK(t.index_of({1, 1, 0}) == 1);
  CHECK_THROWS_AS(t.index_of({3, 0, 0}), precondition_error);
}
