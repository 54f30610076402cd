#include <catch2/catch_amalgamated.hpp>

#include "ptyx/order.hpp"

using namespace ptyx;

namespace {

std::vector<Code> members(const Order& x, std::size_t n) { return first_members(x, n); }

}  // namespace

TEST_CASE("finite orders and omega pass the linearity audit") {
  CHECK(audit_linear_order(fin_order(0)).empty());
  CHECK(audit_linear_order(fin_order(5)).empty());
  CHECK(audit_linear_order(omega_order()).empty());
}

TEST_CASE("successor order adds a strict top") {
  Order one = succ_order(fin_order(0));
  CHECK(members(one, 5).size() == 1);

  Order three = succ_order(fin_order(2));
  auto m = members(three, 5);
  REQUIRE(m.size() == 3);
  CHECK(three.compare(succ_old(0), succ_old(1)) == Ord::lt);
  CHECK(three.compare(succ_old(1), succ_top()) == Ord::lt);
  CHECK(three.compare(succ_top(), succ_top()) == Ord::eq);
  CHECK(audit_linear_order(three).empty());
}

TEST_CASE("iterated successor keeps the newest top greatest") {
  Order twice = succ_order(succ_order(fin_order(0)));
  auto m = members(twice, 5);
  REQUIRE(m.size() == 2);
  Code inner_top = succ_old(succ_top());
  CHECK(twice.contains(inner_top));
  CHECK(twice.compare(inner_top, succ_top()) == Ord::lt);
  CHECK(audit_linear_order(twice).empty());
}

TEST_CASE("sum orders compare index first") {
  Order idx = fin_order(2);
  Order s = sum_order(idx, [](const Code&) { return fin_order(1); });
  auto m = members(s, 10);
  REQUIRE(m.size() == 2);
  CHECK(s.compare(pair_code(0, 0), pair_code(1, 0)) == Ord::lt);
  CHECK(audit_linear_order(s).empty());

  Order copy_of_omega = sum_order(fin_order(1), [](const Code&) { return omega_order(); });
  auto w = members(copy_of_omega, 10);
  CHECK(w.size() == 10);
  CHECK(audit_linear_order(copy_of_omega).empty());

  Order omega_of_ones = sum_order(omega_order(), [](const Code&) { return fin_order(1); });
  auto v = members(omega_of_ones, 10);
  CHECK(v.size() == 10);
  for (int i = 0; i + 1 < 10; ++i)
    CHECK(omega_of_ones.compare(pair_code(i, 0), pair_code(i + 1, 0)) == Ord::lt);
  CHECK(audit_linear_order(omega_of_ones).empty());
}

TEST_CASE("sum order fiber errors surface") {
  Order s = sum_order(fin_order(2), [](const Code& z) -> Order {
    if (z == 0) return fin_order(1);
    throw DomainError("fiber undefined");
  });
  CHECK(s.contains(pair_code(0, 0)));
  CHECK_THROWS_AS(s.contains(pair_code(1, 0)), DomainError);
}

TEST_CASE("lexicographic pairs") {
  Order p = lex_pair(fin_order(2), fin_order(2));
  CHECK(p.compare(pair_code(0, 1), pair_code(1, 0)) == Ord::lt);
  CHECK(audit_linear_order(p).empty());

  Order q = lex_pair(fin_order(1), omega_order());
  CHECK(q.compare(pair_code(0, 5), pair_code(0, 3)) == Ord::gt);
  auto iso = members(q, 8);
  CHECK(iso.size() == 8);

  // (fin 1 x X) is isomorphic to X on sampled codes
  Order x = succ_order(fin_order(3));
  Order lx = lex_pair(fin_order(1), x);
  auto xs = members(x, 10);
  for (const Code& a : xs)
    for (const Code& b : xs)
      CHECK(lx.compare(pair_code(0, a), pair_code(0, b)) == x.compare(a, b));
}

TEST_CASE("Kleene-Brouwer comparison follows extension and first difference") {
  Order w = omega_order();
  CHECK(kb_compare(w, {0, 1}, {0}) == Ord::lt);  // proper extension is smaller
  CHECK(kb_compare(w, {0}, {1}) == Ord::lt);     // first entry decides
  CHECK(kb_compare(w, {}, {}) == Ord::eq);
  CHECK(kb_compare(w, {2, 9}, {2, 9}) == Ord::eq);
  CHECK(kb_compare(w, {1}, {0, 5}) == Ord::gt);
  CHECK_THROWS_AS(kb_compare(fin_order(2), {5}, {}), DomainError);
}

TEST_CASE("KB order on a full finite tree is DFS post-order") {
  // Independent oracle: list all sequences over {0,1} of length <= 3 in
  // post-order (children ascending, node after its subtree), then check that
  // kb_compare agrees with the listed ranks.
  std::vector<std::vector<Code>> listing;
  std::function<void(std::vector<Code>&)> visit = [&](std::vector<Code>& node) {
    if (node.size() < 3) {
      for (Code b = 0; b < 2; ++b) {
        node.push_back(b);
        visit(node);
        node.pop_back();
      }
    }
    listing.push_back(node);
  };
  std::vector<Code> root;
  visit(root);
  REQUIRE(listing.size() == 15);
  Order two = fin_order(2);
  for (std::size_t i = 0; i < listing.size(); ++i)
    for (std::size_t j = 0; j < listing.size(); ++j) {
      Ord expected = i < j ? Ord::lt : (i == j ? Ord::eq : Ord::gt);
      CHECK(kb_compare(two, listing[i], listing[j]) == expected);
    }
}

TEST_CASE("kb_tree_order enumerates members and sorts by KB") {
  Order tree = kb_tree_order(fin_order(2), [](const std::vector<Code>& s) { return s.size() <= 2; },
                             "bintree");
  auto m = members(tree, 7);
  REQUIRE(m.size() == 7);  // <>, <0>, <1>, <0,0>, <0,1>, <1,0>, <1,1>
  CHECK(audit_linear_order(tree).empty());
  CHECK(tree.compare(seq_code({0, 1}), seq_code({0})) == Ord::lt);
  CHECK(tree.compare(seq_code({}), seq_code({1})) == Ord::gt);
}

TEST_CASE("probe finds no descent within budget on well orders") {
  DescentReport r = probe_descent(omega_order(), 2, 10000);
  CHECK_FALSE(r.found);
  CHECK(r.budget_spent > 0);

  DescentReport f = probe_descent(fin_order(3), 4, 10000);
  CHECK_FALSE(f.found);
  CHECK(f.budget_spent < 10000);  // exhausted the order, not the budget
}

TEST_CASE("probe finds a verified chain when the enumeration descends") {
  // an order enumerated in strictly descending sweeps
  Order rev;
  rev.contains = [](const Code& c) { return c >= 0; };
  rev.compare = [](const Code& a, const Code& b) {
    return a > b ? Ord::lt : (a == b ? Ord::eq : Ord::gt);  // reversed naturals
  };
  rev.enumerate = codes_from_zero();
  rev.label = "reverse-omega";
  DescentReport r = probe_descent(rev, 5, 10000);
  REQUIRE(r.found);
  CHECK(r.chain.size() == 5);
  for (std::size_t i = 0; i + 1 < r.chain.size(); ++i)
    CHECK(rev.compare(r.chain[i + 1], r.chain[i]) == Ord::lt);
}

TEST_CASE("probe with target 0 succeeds vacuously") {
  CHECK(probe_descent(omega_order(), 0, 10).found);
}

TEST_CASE("prefix dump lists ascending with index, code, pretty") {
  Order three = succ_order(fin_order(2));
  std::string d = dump_prefix(three, 3);
  CHECK(d.find("0\t") == 0);
  CHECK(d.find("T") != std::string::npos);
  auto lines = std::count(d.begin(), d.end(), '\n');
  CHECK(lines == 3);
}

TEST_CASE("subset codes: bitmask on finite carriers, packed list otherwise") {
  Order five = fin_order(5);
  Code mask = subset_code(five, {0, 2});
  CHECK(mask == 5);
  CHECK(subset_decode(five, mask) == std::vector<Code>{0, 2});

  Order w = omega_order();
  std::vector<Code> elems = {3, 10, 400};
  Code packed = subset_code(w, elems);
  CHECK(subset_decode(w, packed) == elems);
}
