#pragma once

// Coded predilators: a family n -> D(n) of orders, an action on finite
// embeddings, and finite supports satisfying the support condition. The law
// checker audits every finitary clause on a bounded window; well-foundedness
// is out of reach and handled by probes elsewhere.

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ptyx/finord.hpp"
#include "ptyx/memo.hpp"
#include "ptyx/order.hpp"
#include "ptyx/stream.hpp"

namespace ptyx {

struct TraceElem {
  std::size_t arity = 0;
  Code elem;

  auto operator<=>(const TraceElem&) const = default;

  Code code() const { return pair_code(Code(arity), elem); }
  static TraceElem decode(const Code& c) {
    auto [n, e] = unpair_code(c);
    return {to_size(n), e};
  }
  std::string show() const { return "(" + std::to_string(arity) + "," + show_code(elem) + ")"; }
};

struct Predilator {
  std::function<Order(std::size_t)> value;
  std::function<Code(const FinEmbedding&, const Code&)> act;
  std::function<FinSet(std::size_t, const Code&)> supp;
  // Optional: decides membership in rng(act(f, .)).
  std::function<bool(const FinEmbedding&, const Code&)> act_range;
  // Optional accelerator: the normal form (support set, trace kernel) of an
  // element. Results are verified against act, so a hint can speed up kernel
  // computation but never change it.
  std::function<std::pair<FinSet, Code>(std::size_t, const Code&)> nf;
  std::string label;
};

// Wraps a predilator so that value/act/supp are memoized; semantically
// invisible, shared across copies.
inline Predilator memoize(Predilator d) {
  auto values = std::make_shared<Memo<std::size_t, Order>>();
  auto acts = std::make_shared<Memo<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>, Code>, Code>>();
  auto supps = std::make_shared<Memo<std::pair<std::size_t, Code>, FinSet>>();
  Predilator out = d;
  out.value = [values, d](std::size_t n) { return values->get(n, [&] { return d.value(n); }); };
  out.act = [acts, d](const FinEmbedding& f, const Code& s) {
    return acts->get({f.domain, f.codomain, f.values, s}, [&] { return d.act(f, s); });
  };
  out.supp = [supps, d](std::size_t n, const Code& s) {
    return supps->get({n, s}, [&] { return d.supp(n, s); });
  };
  return out;
}

inline bool in_trace(const Predilator& d, std::size_t n, const Code& sigma) {
  require_member(d.value(n), sigma, "in_trace");
  return d.supp(n, sigma).size() == n;
}

// Normal form at a finite arity: the unique (a, s0) with s0 a trace element
// of arity |a| and act(emb_a, s0) = sigma. Uses the construction's hint when
// present, bounded search otherwise; either way the result is verified.
inline std::pair<FinSet, Code> kernel(const Predilator& d, std::size_t n, const Code& sigma,
                                      std::size_t step_budget = 2000000) {
  FinSet a = d.supp(n, sigma);
  if (a.size() == n) return {a, sigma};
  FinEmbedding emb = fin_subset_embedding(a, n);
  if (d.nf) {
    auto [a2, k] = d.nf(n, sigma);
    if (a2 == a && d.act(emb, k) == sigma) return {a2, k};
    throw Error(d.label + ": normal-form hint disagrees with act on " + show_code(sigma));
  }
  Order small = d.value(a.size());
  if (!small.enumerate) throw DomainError(d.label + ": kernel search needs an enumeration");
  auto cur = small.enumerate->start();
  for (std::size_t steps = 0; steps < step_budget; ++steps) {
    Step<Code> st = cur();
    if (st.kind == StepKind::end) break;
    if (st.kind != StepKind::yield) continue;
    if (d.act(emb, st.value) == sigma) return {a, st.value};
  }
  throw BudgetExceeded(d.label + ": kernel of " + show_code(sigma) + " not found within budget");
}

inline TraceElem kernel_trace(const Predilator& d, std::size_t n, const Code& sigma) {
  auto [a, k] = kernel(d, n, sigma);
  return {a.size(), k};
}

// Fair enumeration of the trace: diagonal over arities and element streams.
inline Stream<TraceElem> trace_stream(const Predilator& d) {
  Stream<Code> arities = codes_from_zero();
  Stream<Stream<TraceElem>> rows = map(arities, [d](const Code& nc) -> Stream<TraceElem> {
    std::size_t n = to_size(nc);
    Order dn = d.value(n);
    if (!dn.enumerate) return stream_of(std::vector<TraceElem>{});
    Stream<Code> elems = *dn.enumerate;
    Stream<Code> traced = filter<Code>(elems, [d, n](const Code& s) { return d.supp(n, s).size() == n; });
    return map(traced, [n](const Code& s) { return TraceElem{n, s}; });
  });
  return diagonal(rows);
}

inline Stream<TraceElem> trace_stream_at(const Predilator& d, std::size_t n) {
  Order dn = d.value(n);
  if (!dn.enumerate) return stream_of(std::vector<TraceElem>{});
  Stream<Code> traced =
      filter<Code>(*dn.enumerate, [d, n](const Code& s) { return d.supp(n, s).size() == n; });
  return map(traced, [n](const Code& s) { return TraceElem{n, s}; });
}

struct AuditViolation {
  std::string clause;
  std::string witness;
};

struct AuditReport {
  std::vector<AuditViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const {
    std::ostringstream out;
    for (const auto& v : violations) out << v.clause << ": " << v.witness << "\n";
    return out.str();
  }
};

struct AuditOptions {
  std::size_t arity_bound = 3;
  std::size_t elem_budget = 40;
  std::size_t step_budget = 400000;
};

namespace detail {
inline std::vector<Code> audit_window(const Predilator& d, std::size_t n, const AuditOptions& opt) {
  Order dn = d.value(n);
  if (!dn.enumerate) return {};
  return take(*dn.enumerate, opt.elem_budget, opt.step_budget);
}
}  // namespace detail

inline AuditReport check_predilator_laws(const Predilator& d, const AuditOptions& opt = {}) {
  AuditReport report;
  auto bad = [&](std::string clause, std::string witness) {
    report.violations.push_back({std::move(clause), std::move(witness)});
  };
  std::vector<std::vector<Code>> win(opt.arity_bound + 1);
  for (std::size_t n = 0; n <= opt.arity_bound; ++n) {
    win[n] = detail::audit_window(d, n, opt);
    for (const std::string& v : audit_linear_order(d.value(n), std::min<std::size_t>(opt.elem_budget, 30), opt.step_budget))
      bad("linear-order", v);
  }
  for (std::size_t n = 0; n <= opt.arity_bound; ++n) {
    FinEmbedding id = fin_identity(n);
    for (const Code& s : win[n]) {
      if (d.act(id, s) != s) bad("identity", d.label + " at n=" + std::to_string(n) + ", sigma=" + show_code(s));
      FinSet a = d.supp(n, s);
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] >= n || (i > 0 && a[i - 1] >= a[i])) {
          bad("support-shape", d.label + " supp not a sorted subset of n at sigma=" + show_code(s));
          break;
        }
    }
  }
  for (std::size_t m = 0; m <= opt.arity_bound; ++m) {
    for (std::size_t k = 0; k <= opt.arity_bound; ++k) {
      for (const FinEmbedding& f : all_embeddings(m, k)) {
        Order dk = d.value(k);
        for (const Code& s : win[m]) {
          Code fs = d.act(f, s);
          if (!dk.contains(fs)) {
            bad("action-membership", d.label + ": act(" + f.show() + ", " + show_code(s) + ") lands outside D(k)");
            continue;
          }
          // naturality of supports
          FinSet expected = apply_finset(f, d.supp(m, s));
          if (d.supp(k, fs) != expected)
            bad("support-naturality",
                d.label + ": supp(act(" + f.show() + ", " + show_code(s) + ")) = " + show_finset(d.supp(k, fs)) +
                    " expected " + show_finset(expected));
          if (d.act_range && !d.act_range(f, fs))
            bad("range-decider", d.label + ": decider rejects act(" + f.show() + ", " + show_code(s) + ")");
        }
        // order embedding
        for (const Code& s : win[m])
          for (const Code& t : win[m]) {
            Ord o = d.value(m).compare(s, t);
            Ord o2 = dk.compare(d.act(f, s), d.act(f, t));
            if (o != o2) {
              bad("embedding", d.label + ": act(" + f.show() + ") does not preserve order on (" +
                                   show_code(s) + "," + show_code(t) + ")");
            }
          }
        // functoriality through every composable g
        for (std::size_t l = 0; l <= opt.arity_bound; ++l)
          for (const FinEmbedding& g : all_embeddings(k, l)) {
            FinEmbedding gf = compose(g, f);
            for (const Code& s : win[m])
              if (d.act(gf, s) != d.act(g, d.act(f, s)))
                bad("functoriality", d.label + ": act(g.f) != act(g).act(f) at g=" + g.show() +
                                         ", f=" + f.show() + ", sigma=" + show_code(s));
          }
        // monotonicity against pointwise-larger embeddings
        for (const FinEmbedding& g : all_embeddings(m, k)) {
          if (!pointwise_leq(f, g)) continue;
          for (const Code& s : win[m]) {
            Ord o = dk.compare(d.act(f, s), d.act(g, s));
            if (o == Ord::gt)
              bad("monotonicity", d.label + ": f<=g but act(f,sigma) > act(g,sigma) at f=" + f.show() +
                                      ", g=" + g.show() + ", sigma=" + show_code(s));
          }
        }
        // support condition, checked constructively through the normal form
        for (const Code& t : win[k]) {
          FinSet st = d.supp(k, t);
          FinSet rng(f.values.begin(), f.values.end());
          if (!finset_subset(st, rng)) {
            if (d.act_range && d.act_range(f, t))
              bad("range-decider", d.label + ": decider accepts element with support outside rng(f): " + show_code(t));
            continue;
          }
          // pull t back along f: positions of supp(t) inside rng(f), composed
          // with the kernel of t.
          try {
            auto [a, t0] = kernel(d, k, t);
            std::vector<std::size_t> pre;
            for (std::size_t c : a) {
              auto it = std::lower_bound(f.values.begin(), f.values.end(), c);
              pre.push_back(static_cast<std::size_t>(it - f.values.begin()));
            }
            FinEmbedding g(a.size(), m, std::move(pre));
            Code s0 = d.act(g, t0);
            if (d.act(f, s0) != t)
              bad("support-condition", d.label + ": no preimage under " + f.show() + " for " + show_code(t));
          } catch (const Error& e) {
            bad("support-condition", d.label + ": kernel failed for " + show_code(t) + ": " + e.what());
          }
        }
      }
    }
  }
  return report;
}

inline Predilator constant_predilator(const Order& z) {
  Predilator d;
  d.value = [z](std::size_t) { return z; };
  d.act = [z](const FinEmbedding&, const Code& s) { return s; };
  d.supp = [](std::size_t, const Code&) { return FinSet{}; };
  d.act_range = [z](const FinEmbedding&, const Code& t) { return z.contains(t); };
  d.nf = [](std::size_t, const Code& s) { return std::pair<FinSet, Code>({}, s); };
  d.label = "const(" + z.label + ")";
  return memoize(d);
}

// ---------------------------------------------------------------------------
// The omega predilator: D(X) = weakly decreasing sequences over X, ordered so
// that a proper prefix is smaller and otherwise the first difference decides.
// Class-sized in X; the coded predilator is its restriction to finite orders.

namespace detail {

inline std::optional<std::vector<Code>> omega_decode(const Order& x, const Code& c) {
  auto s = seq_decode(c);
  if (!s) return std::nullopt;
  for (std::size_t i = 0; i < s->size(); ++i) {
    if (!x.contains((*s)[i])) return std::nullopt;
    if (i > 0 && x.compare((*s)[i - 1], (*s)[i]) == Ord::lt) return std::nullopt;
  }
  return s;
}

inline Ord omega_compare(const Order& x, const std::vector<Code>& s, const std::vector<Code>& t) {
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i) {
    Ord o = x.compare(s[i], t[i]);
    if (o != Ord::eq) return o;
  }
  if (s.size() < t.size()) return Ord::lt;
  if (s.size() > t.size()) return Ord::gt;
  return Ord::eq;
}

// Graded fair enumeration: a sequence whose entries have enumeration ranks
// r_i costs sum(4^{r_i}); stage s lists all sequences of cost s, ascending.
inline Stream<Code> omega_enumerate(const Order& x) {
  if (!x.enumerate) return stream_of(std::vector<Code>{seq_empty()});
  Stream<Code> carrier = *x.enumerate;
  return {[x, carrier]() -> Cursor<Code> {
    struct State {
      Cursor<Code> rank_cursor;
      std::vector<Code> ranks;  // enumerated carrier prefix
      bool carrier_done = false;
      unsigned long stage = 0;
      std::vector<Code> pending;  // codes for the current stage, ascending
      std::size_t next = 0;
    };
    auto st = std::make_shared<State>();
    st->rank_cursor = carrier.start();
    auto ensure_rank = [st](std::size_t r) -> bool {
      while (!st->carrier_done && st->ranks.size() <= r) {
        Step<Code> c = st->rank_cursor();
        if (c.kind == StepKind::end) st->carrier_done = true;
        else if (c.kind == StepKind::yield) st->ranks.push_back(c.value);
      }
      return st->ranks.size() > r;
    };
    auto build_stage = [st, ensure_rank, x]() {
      st->pending.clear();
      st->next = 0;
      unsigned long s = st->stage;
      // multisets of ranks with sum(4^r) == s, collected as rank vectors
      std::vector<std::vector<std::size_t>> sets;
      std::vector<std::size_t> acc;
      std::function<void(unsigned long, std::size_t)> go = [&](unsigned long rem, std::size_t max_rank) {
        if (rem == 0) {
          sets.push_back(acc);
          return;
        }
        std::size_t r = max_rank;
        while (true) {
          unsigned long cost = 1;
          bool fits = true;
          for (std::size_t i = 0; i < r; ++i) {
            cost *= 4;
            if (cost > rem) { fits = false; break; }
          }
          if (fits && cost <= rem && ensure_rank(r)) {
            acc.push_back(r);
            go(rem - cost, r);
            acc.pop_back();
          }
          if (r == 0) break;
          --r;
        }
      };
      std::size_t max_rank = 0;
      unsigned long cost = 1;
      while (cost * 4 <= s) { cost *= 4; ++max_rank; }
      go(s, max_rank);
      std::vector<std::vector<Code>> seqs;
      for (const auto& rs : sets) {
        std::vector<Code> entries;
        for (std::size_t r : rs) entries.push_back(st->ranks[r]);
        std::sort(entries.begin(), entries.end(),
                  [&](const Code& a, const Code& b) { return x.compare(a, b) == Ord::gt; });
        seqs.push_back(std::move(entries));
      }
      std::sort(seqs.begin(), seqs.end(), [&](const auto& a, const auto& b) {
        return omega_compare(x, a, b) == Ord::lt;
      });
      for (const auto& q : seqs) st->pending.push_back(seq_code(q));
    };
    auto built = std::make_shared<bool>(false);
    return [st, build_stage, ensure_rank, built]() -> Step<Code> {
      if (st->next < st->pending.size()) return Step<Code>::yielded(st->pending[st->next++]);
      if (*built) {
        ++st->stage;
        if (!ensure_rank(0)) return Step<Code>::ended();  // empty carrier: only <> exists
      } else {
        *built = true;  // stage 0 first
      }
      build_stage();
      return Step<Code>::skipped();
    };
  }};
}

}  // namespace detail

inline Order omega_value_order(const Order& x) {
  Order o;
  o.contains = [x](const Code& c) { return detail::omega_decode(x, c).has_value(); };
  o.compare = [x](const Code& a, const Code& b) {
    auto sa = detail::omega_decode(x, a), sb = detail::omega_decode(x, b);
    if (!sa || !sb) throw DomainError("omega order: non-member");
    return detail::omega_compare(x, *sa, *sb);
  };
  if (x.enumerate) o.enumerate = detail::omega_enumerate(x);
  o.label = "omega^" + x.label;
  o.pretty = [x](const Code& c) {
    auto s = seq_decode(c);
    if (!s) return show_code(c);
    std::string out = "<";
    for (std::size_t i = 0; i < s->size(); ++i) {
      if (i) out += ",";
      out += x.show((*s)[i]);
    }
    return out + ">";
  };
  return o;
}

// Class-sized predilators: an order-to-order rule with action and supports,
// given directly on arbitrary (countable) carriers.
struct ClassDilator {
  std::function<Order(const Order&)> value;
  // act(X, Y, f, sigma): f is an embedding X -> Y, queried on finitely many codes.
  std::function<Code(const Order&, const Order&, const std::function<Code(const Code&)>&, const Code&)> act;
  std::function<std::vector<Code>(const Order&, const Code&)> supp;  // sorted in X
  // Optional accelerator as for Predilator: support set plus kernel in value(fin(|a|)).
  std::function<std::pair<std::vector<Code>, Code>(const Order&, const Code&)> nf;
  std::string label;
};

inline ClassDilator omega_evaluator() {
  ClassDilator d;
  d.value = [](const Order& x) { return omega_value_order(x); };
  d.act = [](const Order& x, const Order&, const std::function<Code(const Code&)>& f, const Code& c) {
    auto s = detail::omega_decode(x, c);
    if (!s) throw DomainError("omega act: non-member");
    std::vector<Code> out;
    out.reserve(s->size());
    for (const Code& e : *s) out.push_back(f(e));
    return seq_code(out);
  };
  d.supp = [](const Order& x, const Code& c) {
    auto s = detail::omega_decode(x, c);
    if (!s) throw DomainError("omega supp: non-member");
    return sorted_elements(x, *s);
  };
  d.nf = [](const Order& x, const Code& c) {
    auto s = detail::omega_decode(x, c);
    if (!s) throw DomainError("omega nf: non-member");
    std::vector<Code> a = sorted_elements(x, *s);
    std::vector<Code> rel;
    rel.reserve(s->size());
    for (const Code& e : *s) {
      auto it = std::find(a.begin(), a.end(), e);
      rel.push_back(Code(it - a.begin()));
    }
    return std::pair<std::vector<Code>, Code>(a, seq_code(rel));
  };
  d.label = "omega";
  return d;
}

inline Predilator omega_dilator() {
  ClassDilator ev = omega_evaluator();
  Predilator d;
  d.value = [ev](std::size_t n) { return ev.value(fin_order(n)); };
  d.act = [ev](const FinEmbedding& f, const Code& s) {
    return ev.act(fin_order(f.domain), fin_order(f.codomain),
                  [&f](const Code& i) { return Code(f(to_size(i))); }, s);
  };
  d.supp = [](std::size_t, const Code& s) {
    auto entries = seq_decode(s);
    FinSet out;
    for (const Code& e : *entries) out.push_back(to_size(e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  d.act_range = [](const FinEmbedding& f, const Code& t) {
    auto entries = seq_decode(t);
    if (!entries) return false;
    for (const Code& e : *entries)
      if (!std::binary_search(f.values.begin(), f.values.end(), to_size(e))) return false;
    return true;
  };
  d.nf = [ev](std::size_t n, const Code& s) {
    auto [a, k] = ev.nf(fin_order(n), s);
    FinSet pos;
    for (const Code& e : a) pos.push_back(to_size(e));
    return std::pair<FinSet, Code>(pos, k);
  };
  d.label = "omega";
  return memoize(d);
}

}  // namespace ptyx
