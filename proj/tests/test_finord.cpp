#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ptyx/finord.hpp"

using namespace ptyx;

TEST_CASE("composition is pointwise") {
  FinEmbedding f(1, 2, {1});
  FinEmbedding g(2, 3, {0, 2});
  FinEmbedding gf = compose(g, f);
  CHECK(gf == FinEmbedding(1, 3, {2}));
}

TEST_CASE("identities are neutral for composition") {
  FinEmbedding f(2, 3, {0, 2});
  CHECK(compose(fin_identity(3), f) == f);
  CHECK(compose(f, fin_identity(2)) == f);
}

TEST_CASE("composition requires matching arities") {
  FinEmbedding f(1, 2, {0});
  FinEmbedding g(3, 4, {0, 1, 2});
  CHECK_THROWS_AS(compose(g, f), DomainError);
}

TEST_CASE("embedding validation") {
  CHECK_THROWS_AS(FinEmbedding(2, 3, {2, 1}), DomainError);
  CHECK_THROWS_AS(FinEmbedding(2, 2, {0, 2}), DomainError);
  CHECK_THROWS_AS(FinEmbedding(2, 3, {1}), DomainError);
}

TEST_CASE("enum_map lists a finite subset in carrier order") {
  Order three = fin_order(3);
  FinSubset a(three, {0, 2});
  CHECK(enum_map(a) == std::vector<Code>{0, 2});
  FinSubset empty(three, {});
  CHECK(enum_map(empty).empty());
  FinSubset singleton(fin_order(5), {3});
  CHECK(enum_map(singleton) == std::vector<Code>{3});
}

TEST_CASE("induced map solves en_b . |f| = f . en_a") {
  Order three = fin_order(3);
  FinSubset a(three, {0, 2});
  FinSubset b(three, {0, 1, 2});
  FinEmbedding rel = induced_inclusion(a, b);
  CHECK(rel == FinEmbedding(2, 3, {0, 2}));
  // the defining equation
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b.elements[rel(i)] == a.elements[i]);

  FinSubset just5(fin_order(6), {5});
  FinSubset onefive(fin_order(6), {1, 5});
  CHECK(induced_inclusion(just5, onefive) == FinEmbedding(1, 2, {1}));

  CHECK(induced_inclusion(a, a) == fin_identity(2));
}

TEST_CASE("induced map rejects non-order-preserving data") {
  Order four = fin_order(4);
  FinSubset a(four, {0, 1});
  FinSubset b(four, {2, 3});
  CHECK_THROWS_AS(induced(a, b, {3, 2}), DomainError);
  CHECK_THROWS_AS(induced(a, b, {0, 2}), DomainError);
}

TEST_CASE("all_embeddings enumerates exactly the increasing maps") {
  auto e12 = all_embeddings(1, 2);
  REQUIRE(e12.size() == 2);
  CHECK(e12[0].values == std::vector<std::size_t>{0});
  CHECK(e12[1].values == std::vector<std::size_t>{1});

  auto e0k = all_embeddings(0, 5);
  REQUIRE(e0k.size() == 1);
  CHECK(e0k[0].domain == 0);

  auto e22 = all_embeddings(2, 2);
  REQUIRE(e22.size() == 1);
  CHECK(e22[0] == fin_identity(2));

  CHECK(all_embeddings(3, 2).empty());
}

TEST_CASE("all_embeddings counts binomials and lists lexicographically") {
  auto binom = [](std::size_t n, std::size_t k) {
    if (k > n) return std::size_t{0};
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  for (std::size_t m = 0; m <= 8; ++m)
    for (std::size_t k = 0; k <= 8; ++k) {
      auto all = all_embeddings(m, k);
      CHECK(all.size() == (m > k ? 0 : binom(k, m)));
      for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].values < all[i].values);
    }
}

TEST_CASE("induced respects composition on nested subsets") {
  std::mt19937 rng(7);
  Order big = fin_order(9);
  for (int round = 0; round < 40; ++round) {
    std::vector<Code> cs;
    for (int x = 0; x < 9; ++x)
      if (rng() % 2) cs.push_back(x);
    std::vector<Code> bs;
    for (const Code& x : cs)
      if (rng() % 2) bs.push_back(x);
    std::vector<Code> as;
    for (const Code& x : bs)
      if (rng() % 2) as.push_back(x);
    FinSubset a(big, as), b(big, bs), c(big, cs);
    FinEmbedding lhs = induced_inclusion(a, c);
    FinEmbedding rhs = compose(induced_inclusion(b, c), induced_inclusion(a, b));
    CHECK(lhs == rhs);
  }
}
