#pragma once

// Countable linear orders as decidable structures on numeric codes, plus the
// order constructions everything else is assembled from: successor, indexed
// sums, lexicographic pairs and Kleene-Brouwer tree orders. Well-foundedness
// is never decided, only refuted: probe_descent searches the enumeration for
// a strictly descending chain and reports a verified witness or gives up
// within its budget.

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ptyx/codec.hpp"
#include "ptyx/error.hpp"
#include "ptyx/memo.hpp"
#include "ptyx/stream.hpp"

namespace ptyx {

enum class Ord { lt, eq, gt };

inline Ord flip(Ord o) {
  if (o == Ord::lt) return Ord::gt;
  if (o == Ord::gt) return Ord::lt;
  return Ord::eq;
}

struct Order {
  std::function<bool(const Code&)> contains;
  std::function<Ord(const Code&, const Code&)> compare;  // defined on members
  std::optional<Stream<Code>> enumerate;                 // fair, no repeats
  std::string label;
  std::function<std::string(const Code&)> pretty;  // presentation only
  std::optional<std::size_t> finite_size;          // set for {0,...,k-1} carriers

  std::string show(const Code& c) const { return pretty ? pretty(c) : show_code(c); }
};

inline void require_member(const Order& x, const Code& c, const char* who) {
  if (!x.contains(c)) throw DomainError(std::string(who) + ": " + show_code(c) + " is not a member of " + x.label);
}

inline bool order_lt(const Order& x, const Code& a, const Code& b) {
  return x.compare(a, b) == Ord::lt;
}

// First `count` members, by the order's own enumeration.
inline std::vector<Code> first_members(const Order& x, std::size_t count,
                                       std::size_t step_budget = 200000) {
  if (!x.enumerate) throw DomainError("first_members: order " + x.label + " has no enumeration");
  return take(*x.enumerate, count, step_budget);
}

inline Stream<Code> codes_from_zero() {
  return {[]() -> Cursor<Code> {
    auto n = std::make_shared<Code>(0);
    return [n]() -> Step<Code> {
      Code v = (*n)++;
      return Step<Code>::yielded(v);
    };
  }};
}

inline Order fin_order(std::size_t k) {
  Order o;
  o.contains = [k](const Code& c) { return c >= 0 && c < k; };
  o.compare = [](const Code& a, const Code& b) {
    return a < b ? Ord::lt : (a == b ? Ord::eq : Ord::gt);
  };
  std::vector<Code> all;
  for (std::size_t i = 0; i < k; ++i) all.push_back(Code(i));
  o.enumerate = stream_of(all);
  o.label = "fin:" + std::to_string(k);
  o.finite_size = k;
  return o;
}

inline Order omega_order() {
  Order o;
  o.contains = [](const Code& c) { return c >= 0; };
  o.compare = [](const Code& a, const Code& b) {
    return a < b ? Ord::lt : (a == b ? Ord::eq : Ord::gt);
  };
  o.enumerate = codes_from_zero();
  o.label = "omega";
  return o;
}

// X + 1: X tagged pair(0,x), plus a greatest element pair(1,0).
inline Code succ_top() { return pair_code(1, 0); }
inline Code succ_old(const Code& x) { return pair_code(0, x); }
inline bool succ_is_top(const Code& c) { return c == succ_top(); }
inline std::optional<Code> succ_untag(const Code& c) {
  auto [t, p] = unpair_code(c);
  if (t == 0) return p;
  return std::nullopt;
}

inline Order succ_order(const Order& x) {
  Order o;
  o.contains = [x](const Code& c) {
    if (succ_is_top(c)) return true;
    auto p = succ_untag(c);
    return p && x.contains(*p);
  };
  o.compare = [x](const Code& a, const Code& b) {
    bool ta = succ_is_top(a), tb = succ_is_top(b);
    if (ta && tb) return Ord::eq;
    if (ta) return Ord::gt;
    if (tb) return Ord::lt;
    return x.compare(*succ_untag(a), *succ_untag(b));
  };
  if (x.enumerate) {
    Stream<Code> olds = map(*x.enumerate, [](const Code& c) { return succ_old(c); });
    o.enumerate = concat2(stream_of(std::vector<Code>{succ_top()}), olds);
  }
  o.label = x.label + "+1";
  o.pretty = [x](const Code& c) -> std::string {
    if (succ_is_top(c)) return "T";
    return x.show(*succ_untag(c));
  };
  return o;
}

// Sum over an index order: members are pair(z, s) with s in fiber(z),
// compared by index first, fiber second.
inline Order sum_order(const Order& index, std::function<Order(const Code&)> fiber,
                       const std::string& label = "") {
  auto fibers = std::make_shared<Memo<Code, Order>>();
  auto fib = [fibers, fiber](const Code& z) {
    return fibers->get(z, [&] { return fiber(z); });
  };
  Order o;
  o.contains = [index, fib](const Code& c) {
    auto [z, s] = unpair_code(c);
    return index.contains(z) && fib(z).contains(s);
  };
  o.compare = [index, fib](const Code& a, const Code& b) {
    auto [za, sa] = unpair_code(a);
    auto [zb, sb] = unpair_code(b);
    Ord oz = index.compare(za, zb);
    if (oz != Ord::eq) return oz;
    return fib(za).compare(sa, sb);
  };
  if (index.enumerate) {
    Stream<Code> idx = *index.enumerate;
    Stream<Stream<Code>> rows = map(idx, [fib](const Code& z) -> Stream<Code> {
      Order f = fib(z);
      if (!f.enumerate) return stream_of(std::vector<Code>{});
      return map(*f.enumerate, [z](const Code& s) { return pair_code(z, s); });
    });
    o.enumerate = diagonal(rows);
  }
  o.label = label.empty() ? ("sum(" + index.label + ")") : label;
  o.pretty = [index, fib](const Code& c) {
    auto [z, s] = unpair_code(c);
    return "(" + index.show(z) + "," + fib(z).show(s) + ")";
  };
  return o;
}

inline Order lex_pair(const Order& x, const Order& y) {
  Order o;
  o.contains = [x, y](const Code& c) {
    auto [a, b] = unpair_code(c);
    return x.contains(a) && y.contains(b);
  };
  o.compare = [x, y](const Code& c, const Code& d) {
    auto [a, b] = unpair_code(c);
    auto [a2, b2] = unpair_code(d);
    Ord first = x.compare(a, a2);
    if (first != Ord::eq) return first;
    return y.compare(b, b2);
  };
  if (x.enumerate && y.enumerate) {
    Stream<Code> ys = *y.enumerate;
    Stream<Stream<Code>> rows = map(*x.enumerate, [ys](const Code& a) {
      return map(ys, [a](const Code& b) { return pair_code(a, b); });
    });
    o.enumerate = diagonal(rows);
  }
  o.label = "(" + x.label + "x" + y.label + ")";
  o.pretty = [x, y](const Code& c) {
    auto [a, b] = unpair_code(c);
    return "(" + x.show(a) + "," + y.show(b) + ")";
  };
  if (x.finite_size && y.finite_size) {
    // not a {0..k-1} carrier; sizes only guide subset coding, leave unset
  }
  return o;
}

// Kleene-Brouwer comparison of label sequences over Y: a proper extension is
// smaller; otherwise the first differing entry decides.
inline Ord kb_compare(const Order& y, const std::vector<Code>& s, const std::vector<Code>& t) {
  for (const Code& e : s) require_member(y, e, "kb_compare");
  for (const Code& e : t) require_member(y, e, "kb_compare");
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t k = 0; k < n; ++k) {
    Ord o = y.compare(s[k], t[k]);
    if (o != Ord::eq) return o;
  }
  if (s.size() > t.size()) return Ord::lt;
  if (s.size() < t.size()) return Ord::gt;
  return Ord::eq;
}

// The order on a tree of sequences over `labels`, with KB comparison.
// `member` decides which sequence codes belong; enumeration goes by code and
// is fair whenever membership is decidable (non-codes are skipped).
inline Order kb_tree_order(const Order& labels, std::function<bool(const std::vector<Code>&)> member,
                           const std::string& label) {
  auto decode_member = [labels, member](const Code& c) -> std::optional<std::vector<Code>> {
    auto s = seq_decode(c);
    if (!s) return std::nullopt;
    for (const Code& e : *s)
      if (!labels.contains(e)) return std::nullopt;
    if (!member(*s)) return std::nullopt;
    return s;
  };
  Order o;
  o.contains = [decode_member](const Code& c) { return decode_member(c).has_value(); };
  o.compare = [labels, decode_member](const Code& a, const Code& b) {
    auto sa = decode_member(a), sb = decode_member(b);
    if (!sa || !sb) throw DomainError("kb_tree_order: non-member sequence");
    return kb_compare(labels, *sa, *sb);
  };
  o.enumerate = filter<Code>(codes_from_zero(),
                             [decode_member](const Code& c) { return decode_member(c).has_value(); });
  o.label = label;
  o.pretty = [labels](const Code& c) {
    auto s = seq_decode(c);
    if (!s) return show_code(c);
    std::string out = "<";
    for (std::size_t i = 0; i < s->size(); ++i) {
      if (i) out += ",";
      out += labels.show((*s)[i]);
    }
    return out + ">";
  };
  return o;
}

struct DescentReport {
  bool found = false;
  std::vector<Code> chain;  // strictly descending when found
  std::size_t budget_spent = 0;
};

// Search the fair enumeration for a strictly descending chain: a subsequence
// of the enumeration whose members strictly descend in the order. This is
// the usual refutation heuristic; an infinite descending sequence shows up
// as ever longer such subsequences, whereas a well order enumerated fairly
// only produces shallow ones. found=false only means the budget ran out (or
// the order was exhausted): never a proof of well foundedness. A found chain
// is re-verified before it is returned.
inline DescentReport probe_descent(const Order& x, std::size_t target_length, std::size_t budget) {
  if (!x.enumerate) throw DomainError("probe_descent: order " + x.label + " has no enumeration");
  DescentReport report;
  if (target_length == 0) {
    report.found = true;
    return report;
  }
  std::vector<Code> pool;
  std::vector<std::size_t> best;  // longest descending subsequence ending here
  std::vector<std::size_t> prev;
  auto cur = x.enumerate->start();
  std::size_t spent = 0;
  while (spent < budget) {
    ++spent;
    Step<Code> st = cur();
    if (st.kind == StepKind::end) break;
    if (st.kind != StepKind::yield) continue;
    std::size_t i = pool.size();
    pool.push_back(st.value);
    best.push_back(1);
    prev.push_back(i);
    for (std::size_t j = 0; j < i && spent < budget; ++j) {
      ++spent;
      if (best[j] + 1 > best[i] && order_lt(x, pool[i], pool[j])) {
        best[i] = best[j] + 1;
        prev[i] = j;
      }
    }
    if (best[i] >= target_length) {
      std::vector<Code> chain;
      for (std::size_t k = i; ; k = prev[k]) {
        chain.push_back(pool[k]);
        if (prev[k] == k) break;
      }
      std::reverse(chain.begin(), chain.end());
      for (std::size_t k = 0; k < chain.size(); ++k) {
        require_member(x, chain[k], "probe_descent");
        if (k + 1 < chain.size() && !order_lt(x, chain[k + 1], chain[k]))
          throw Error("probe_descent: produced chain fails verification");
      }
      report.found = true;
      report.chain = std::move(chain);
      report.budget_spent = spent;
      return report;
    }
  }
  report.budget_spent = spent;
  return report;
}

// Linearity audit on an enumerated prefix: totality/antisymmetry on pairs,
// transitivity on triples, membership consistency of the enumeration.
inline std::vector<std::string> audit_linear_order(const Order& x, std::size_t window = 30,
                                                   std::size_t step_budget = 200000) {
  std::vector<std::string> bad;
  if (!x.enumerate) return bad;
  std::vector<Code> w = take(*x.enumerate, window, step_budget);
  for (const Code& a : w)
    if (!x.contains(a)) bad.push_back(x.label + ": enumerated non-member " + show_code(a));
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) {
      Ord o = x.compare(w[i], w[j]);
      if ((o == Ord::eq) != (w[i] == w[j]))
        bad.push_back(x.label + ": compare EQ disagrees with code equality on (" + show_code(w[i]) +
                      "," + show_code(w[j]) + ")");
      if (o != flip(x.compare(w[j], w[i])))
        bad.push_back(x.label + ": compare not antisymmetric on (" + show_code(w[i]) + "," +
                      show_code(w[j]) + ")");
    }
  for (std::size_t i = 0; i < w.size() && bad.empty(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (x.compare(w[i], w[j]) == Ord::lt && x.compare(w[j], w[k]) == Ord::lt &&
            x.compare(w[i], w[k]) != Ord::lt) {
          bad.push_back(x.label + ": transitivity fails on (" + show_code(w[i]) + "," +
                        show_code(w[j]) + "," + show_code(w[k]) + ")");
        }
      }
  return bad;
}

// Prefix dump: the first `count` enumerated members, listed ascending.
inline std::string dump_prefix(const Order& x, std::size_t count, std::size_t step_budget = 400000) {
  std::vector<Code> w = first_members(x, count, step_budget);
  std::sort(w.begin(), w.end(), [&](const Code& a, const Code& b) { return order_lt(x, a, b); });
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i)
    out << i << "\t" << show_code(w[i]) << "\t" << x.show(w[i]) << "\n";
  return out.str();
}

// Numeric code of a finite subset, sorted ascending in the carrier: a bitmask
// for {0,...,k-1} carriers, the packed code of the element list otherwise.
inline Code subset_code(const Order& carrier, const std::vector<Code>& elems) {
  if (carrier.finite_size) {
    Code mask = 0;
    for (const Code& e : elems) mask |= Code(1) << to_size(e);
    return mask;
  }
  return seq_code(elems);
}

inline std::vector<Code> subset_decode(const Order& carrier, const Code& code) {
  if (carrier.finite_size) {
    std::vector<Code> out;
    for (std::size_t i = 0; i < *carrier.finite_size; ++i)
      if (boost::multiprecision::bit_test(code, i)) out.push_back(Code(i));
    return out;
  }
  auto s = seq_decode(code);
  if (!s) throw DecodeError("subset_decode: not a subset code");
  return *s;
}

}  // namespace ptyx
