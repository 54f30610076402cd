#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "ptyx/codec.hpp"

using namespace ptyx;

TEST_CASE("Cantor pairing is the standard bijection") {
  CHECK(pair_code(0, 0) == 0);
  CHECK(pair_code(1, 0) == 1);
  CHECK(pair_code(0, 1) == 2);
  CHECK(pair_code(2, 0) == 3);
  CHECK(pair_code(1, 1) == 4);
  CHECK(pair_code(0, 2) == 5);
  for (int x = 0; x < 20; ++x)
    for (int y = 0; y < 20; ++y) {
      auto [a, b] = unpair_code(pair_code(x, y));
      CHECK(a == x);
      CHECK(b == y);
    }
}

TEST_CASE("pairing is injective on a window") {
  std::set<Code> seen;
  for (int x = 0; x < 30; ++x)
    for (int y = 0; y < 30; ++y) CHECK(seen.insert(pair_code(x, y)).second);
}

TEST_CASE("sequence codec round-trips") {
  CHECK(seq_code({}) == 0);
  CHECK(seq_decode(0)->empty());
  std::vector<std::vector<Code>> samples = {
      {}, {0}, {1}, {0, 0}, {5, 3, 3, 0}, {100}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
  for (const auto& s : samples) {
    auto back = seq_decode(seq_code(s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
}

TEST_CASE("sequence codec is injective over small codes and rejects junk") {
  std::map<std::vector<Code>, Code> seen;
  int valid = 0;
  for (int c = 0; c < 4000; ++c) {
    auto s = seq_decode(c);
    if (!s) continue;
    ++valid;
    auto [it, fresh] = seen.emplace(*s, c);
    CHECK(fresh);
    CHECK(seq_code(*s) == c);
  }
  CHECK(valid > 100);         // plenty of sequences in range
  CHECK(valid < 4000);        // and plenty of non-codes
}

TEST_CASE("sequence codes grow linearly with content size") {
  // Thirty entries of moderate size stay comfortably small; this is what
  // makes long descending-chain witnesses affordable.
  std::vector<Code> s;
  for (int i = 0; i < 30; ++i) s.push_back(500 + i);
  CHECK(bit_length(seq_code(s)) < 1000);
}

TEST_CASE("prefix and append helpers agree with decode") {
  std::vector<Code> s = {4, 0, 7, 7, 2};
  for (std::size_t k = 0; k <= s.size(); ++k) {
    auto p = seq_decode(seq_prefix(s, k));
    REQUIRE(p.has_value());
    CHECK(p->size() == k);
  }
  Code grown = seq_empty();
  for (const Code& e : s) grown = seq_append(grown, e);
  CHECK(grown == seq_code(s));
}
