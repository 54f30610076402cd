#include <catch2/catch_amalgamated.hpp>

#include "ptyx/predil.hpp"

using namespace ptyx;

namespace {

Code s(std::initializer_list<int> xs) {
  std::vector<Code> v;
  for (int x : xs) v.push_back(x);
  return seq_code(v);
}

}  // namespace

TEST_CASE("omega values start with the lexicographically least stack") {
  Predilator d = omega_dilator();
  Order d2 = d.value(2);
  auto m = take(*d2.enumerate, 5, 100000);
  REQUIRE(m.size() == 5);
  CHECK(m[0] == s({}));
  CHECK(m[1] == s({0}));
  CHECK(m[2] == s({0, 0}));
  CHECK(m[3] == s({0, 0, 0}));
  CHECK(m[4] == s({0, 0, 0, 0}));
  CHECK(d2.compare(m[0], m[1]) == Ord::lt);
  CHECK(d2.compare(m[1], m[2]) == Ord::lt);
}

TEST_CASE("omega membership requires weakly decreasing entries") {
  Predilator d = omega_dilator();
  Order d2 = d.value(2);
  CHECK(d2.contains(s({1, 0})));
  CHECK(d2.contains(s({1, 1})));
  CHECK_FALSE(d2.contains(s({0, 1})));
  CHECK_FALSE(d2.contains(s({2})));
}

TEST_CASE("omega action relabels entries") {
  Predilator d = omega_dilator();
  FinEmbedding f(2, 3, {0, 2});
  CHECK(d.act(f, s({1, 0})) == s({2, 0}));
  CHECK(d.act(fin_identity(2), s({1, 0})) == s({1, 0}));
}

TEST_CASE("omega supports collect entries") {
  Predilator d = omega_dilator();
  CHECK(d.supp(2, s({1, 0})) == FinSet{0, 1});
  CHECK(d.supp(3, s({2, 2})) == FinSet{2});
  CHECK(d.supp(0, s({})) == FinSet{});
}

TEST_CASE("omega kernels relabel onto the support") {
  Predilator d = omega_dilator();
  auto [a, k] = kernel(d, 3, s({2, 0}));
  CHECK(a == FinSet{0, 2});
  CHECK(k == s({1, 0}));
}

TEST_CASE("trace membership is the full-support condition") {
  Predilator d = omega_dilator();
  CHECK(in_trace(d, 1, s({0})));
  CHECK_FALSE(in_trace(d, 2, s({0})));
  CHECK(in_trace(d, 2, s({1, 0})));
  CHECK(in_trace(d, 0, s({})));
  CHECK_THROWS_AS(in_trace(d, 1, s({1})), DomainError);

  Predilator c = constant_predilator(omega_order());
  CHECK(in_trace(c, 0, 7));
  CHECK_FALSE(in_trace(c, 1, 7));
  CHECK_FALSE(in_trace(c, 3, 7));
}

TEST_CASE("trace stream of a constant predilator lists the value at arity 0") {
  Predilator c = constant_predilator(fin_order(3));
  auto tr = take(trace_stream(c), 10, 3000);
  REQUIRE(tr.size() == 3);
  for (const TraceElem& t : tr) CHECK(t.arity == 0);
}

TEST_CASE("trace stream of omega is fair across arities") {
  Predilator d = omega_dilator();
  auto tr = take(trace_stream(d), 40, 100000);
  REQUIRE(tr.size() == 40);
  CHECK(tr[0] == TraceElem{0, s({})});
  CHECK(std::find(tr.begin(), tr.end(), TraceElem{1, s({0})}) != tr.end());
  CHECK(std::find(tr.begin(), tr.end(), TraceElem{2, s({1, 0})}) != tr.end());
  for (const TraceElem& t : tr) CHECK(in_trace(d, t.arity, t.elem));
}

TEST_CASE("trace stream of the empty predilator yields nothing") {
  Predilator e = constant_predilator(fin_order(0));
  auto tr = take(trace_stream(e), 5, 2000);
  CHECK(tr.empty());
}

TEST_CASE("trace stream misses no small trace element") {
  Predilator d = omega_dilator();
  auto window = take(trace_stream(d), 60, 200000);
  // every trace element among the first 6 codes of D(n), n <= 2, must appear
  for (std::size_t n = 0; n <= 2; ++n) {
    auto elems = take(*d.value(n).enumerate, 6, 100000);
    for (const Code& e : elems) {
      if (d.supp(n, e).size() != n) continue;
      CHECK(std::find(window.begin(), window.end(), TraceElem{n, e}) != window.end());
    }
  }
}

TEST_CASE("omega passes the predilator law audit") {
  AuditReport r = check_predilator_laws(omega_dilator(), {3, 40});
  INFO(r.to_string());
  CHECK(r.ok());
}

TEST_CASE("constant predilators pass the law audit") {
  AuditReport r = check_predilator_laws(constant_predilator(fin_order(2)), {4, 40});
  INFO(r.to_string());
  CHECK(r.ok());
  AuditReport r2 = check_predilator_laws(constant_predilator(omega_order()), {3, 20});
  CHECK(r2.ok());
  AuditReport r0 = check_predilator_laws(constant_predilator(fin_order(0)), {3, 20});
  CHECK(r0.ok());
}

TEST_CASE("a corrupted action is caught with a functoriality witness") {
  Predilator d = omega_dilator();
  Predilator bad = d;
  FinEmbedding f0(2, 3, {0, 1});
  Code a = seq_code({0}), b = seq_code({});
  bad.act = [d, f0, a, b](const FinEmbedding& f, const Code& sigma) {
    if (f == f0 && sigma == a) return d.act(f, b);
    if (f == f0 && sigma == b) return d.act(f, a);
    return d.act(f, sigma);
  };
  bad.nf = nullptr;  // the hint would immediately flag the corruption instead
  bad.label = "omega-corrupted";
  AuditReport r = check_predilator_laws(bad, {3, 12});
  CHECK_FALSE(r.ok());
  bool has_functoriality = false;
  for (const auto& v : r.violations)
    if (v.clause == "functoriality") has_functoriality = true;
  CHECK(has_functoriality);
}

TEST_CASE("constant predilator over the empty order is the empty predilator") {
  Predilator e = constant_predilator(fin_order(0));
  auto m = take(*e.value(4).enumerate, 3, 100);
  CHECK(m.empty());
}
