#pragma once

// Morphisms of coded predilators: natural families of order embeddings with
// support preservation. Range membership is decided by a supplied decider or
// by bounded search with certificate semantics: a search that runs out of
// budget throws instead of answering "no".
//
// On top of the basic notion: trace maps, restrictions D[A] with their
// inclusions, the factorization through range inclusion, pullbacks, and
// directed systems with their limit checks and mediating morphisms.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptyx/memo.hpp"
#include "ptyx/predil.hpp"

namespace ptyx {

struct Morphism {
  Predilator source;
  Predilator target;
  std::function<Code(std::size_t, const Code&)> component;
  // Optional: decides tau in rng(component_n) for arbitrary members tau.
  std::function<bool(std::size_t, const Code&)> range;
  // Optional accelerator: a preimage under component_n, verified on use.
  std::function<std::optional<Code>(std::size_t, const Code&)> preim;
  std::string label;
};

inline Morphism memoize(Morphism m) {
  auto comps = std::make_shared<Memo<std::pair<std::size_t, Code>, Code>>();
  Morphism out = m;
  out.component = [comps, m](std::size_t n, const Code& s) {
    return comps->get({n, s}, [&] { return m.component(n, s); });
  };
  return out;
}

inline Morphism identity_morphism(const Predilator& d) {
  Morphism m;
  m.source = d;
  m.target = d;
  m.component = [](std::size_t, const Code& s) { return s; };
  m.range = [d](std::size_t n, const Code& t) { return d.value(n).contains(t); };
  m.preim = [](std::size_t, const Code& t) { return std::optional<Code>(t); };
  m.label = "id(" + d.label + ")";
  return m;
}

// Tr(mu): (n, sigma) -> (n, mu_n(sigma)); lands in the target trace.
inline TraceElem trace_map(const Morphism& m, const TraceElem& t) {
  if (!in_trace(m.source, t.arity, t.elem))
    throw DomainError(m.label + ": trace_map argument " + t.show() + " is not a trace element");
  return {t.arity, m.component(t.arity, t.elem)};
}

// Preimage of a *trace* element of the target at its own arity. Searches the
// source trace when no decider/hint applies; running out of budget without a
// verdict is an error, never "absent".
inline std::optional<Code> preimage_trace(const Morphism& m, std::size_t n, const Code& tau,
                                          std::size_t step_budget = 400000) {
  if (m.preim) {
    auto s = m.preim(n, tau);
    if (s) {
      if (m.component(n, *s) != tau) throw Error(m.label + ": preimage hint fails verification");
      return s;
    }
    if (m.range && m.range(n, tau)) throw Error(m.label + ": range/preimage hints disagree");
    return std::nullopt;
  }
  if (m.range && !m.range(n, tau)) return std::nullopt;
  auto cur = trace_stream_at(m.source, n).start();
  for (std::size_t steps = 0; steps < step_budget; ++steps) {
    Step<TraceElem> st = cur();
    if (st.kind == StepKind::end) return std::nullopt;
    if (st.kind != StepKind::yield) continue;
    if (m.component(n, st.value.elem) == tau) return st.value.elem;
  }
  if (m.range)  // decider promised a preimage we could not reach
    throw BudgetExceeded(m.label + ": preimage of " + show_code(tau) + " not found within budget");
  throw BudgetExceeded(m.label + ": range of " + show_code(tau) + " undecided within budget");
}

inline bool rng_trace(const Morphism& m, const TraceElem& t, std::size_t step_budget = 400000) {
  if (m.range) return m.range(t.arity, t.elem);
  return preimage_trace(m, t.arity, t.elem, step_budget).has_value();
}

// Membership of an arbitrary element in rng(component_n), reduced to the
// trace level through the normal form.
inline bool rng_elem(const Morphism& m, std::size_t n, const Code& tau,
                     std::size_t step_budget = 400000) {
  if (m.range) return m.range(n, tau);
  auto [a, t0] = kernel(m.target, n, tau);
  return rng_trace(m, {a.size(), t0}, step_budget);
}

// Preimage of an arbitrary element, reduced to the trace level.
inline std::optional<Code> preimage_elem(const Morphism& m, std::size_t n, const Code& tau,
                                         std::size_t step_budget = 400000) {
  if (m.preim) {
    auto s = m.preim(n, tau);
    if (s && m.component(n, *s) != tau) throw Error(m.label + ": preimage hint fails verification");
    return s;
  }
  auto [a, t0] = kernel(m.target, n, tau);
  auto s0 = preimage_trace(m, a.size(), t0, step_budget);
  if (!s0) return std::nullopt;
  Code s = m.source.act(fin_subset_embedding(a, n), *s0);
  if (m.component(n, s) != tau) throw Error(m.label + ": reconstructed preimage fails verification");
  return s;
}

inline Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism m;
  m.source = f.source;
  m.target = g.target;
  m.component = [g, f](std::size_t n, const Code& s) { return g.component(n, f.component(n, s)); };
  if (g.range && f.range) {
    m.range = [g, f](std::size_t n, const Code& t) {
      if (!g.range(n, t)) return false;
      auto mid = preimage_elem(g, n, t);
      return mid && f.range(n, *mid);
    };
  }
  if (g.preim && f.preim) {
    m.preim = [g, f](std::size_t n, const Code& t) -> std::optional<Code> {
      auto mid = g.preim(n, t);
      if (!mid) return std::nullopt;
      return f.preim(n, *mid);
    };
  }
  m.label = g.label + "." + f.label;
  return m;
}

inline AuditReport check_morphism(const Morphism& m, const AuditOptions& opt = {}) {
  AuditReport report;
  auto bad = [&](std::string clause, std::string witness) {
    report.violations.push_back({std::move(clause), std::move(witness)});
  };
  std::vector<std::vector<Code>> win(opt.arity_bound + 1);
  for (std::size_t n = 0; n <= opt.arity_bound; ++n) win[n] = detail::audit_window(m.source, n, opt);
  for (std::size_t n = 0; n <= opt.arity_bound; ++n) {
    Order src = m.source.value(n);
    Order tgt = m.target.value(n);
    for (const Code& s : win[n]) {
      Code t = m.component(n, s);
      if (!tgt.contains(t)) {
        bad("component-membership", m.label + " at n=" + std::to_string(n) + ", sigma=" + show_code(s));
        continue;
      }
      if (m.source.supp(n, s) != m.target.supp(n, t))
        bad("support-preservation", m.label + " at n=" + std::to_string(n) + ", sigma=" + show_code(s) +
                                        ": " + show_finset(m.source.supp(n, s)) + " vs " +
                                        show_finset(m.target.supp(n, t)));
      if (m.range && !m.range(n, t))
        bad("range-decider", m.label + ": decider rejects its own image at sigma=" + show_code(s));
      if (m.preim) {
        auto back = m.preim(n, t);
        if (!back || m.component(n, *back) != t)
          bad("preimage-hint", m.label + ": hint fails on image of sigma=" + show_code(s));
      }
    }
    for (const Code& s : win[n])
      for (const Code& t : win[n]) {
        Ord o = src.compare(s, t);
        if (o != tgt.compare(m.component(n, s), m.component(n, t)))
          bad("embedding", m.label + " at n=" + std::to_string(n) + " on (" + show_code(s) + "," +
                               show_code(t) + ")");
      }
  }
  for (std::size_t a = 0; a <= opt.arity_bound; ++a)
    for (std::size_t b = 0; b <= opt.arity_bound; ++b)
      for (const FinEmbedding& f : all_embeddings(a, b))
        for (const Code& s : win[a]) {
          Code lhs = m.component(b, m.source.act(f, s));
          Code rhs = m.target.act(f, m.component(a, s));
          if (lhs != rhs)
            bad("naturality", m.label + " at f=" + f.show() + ", sigma=" + show_code(s));
        }
  return report;
}

// ---------------------------------------------------------------------------
// Restriction to a decidable set of trace elements.

using TracePredicate = std::function<bool(const TraceElem&)>;

inline Predilator restrict_to(const Predilator& d, TracePredicate in_set, const std::string& name = "") {
  auto memo = std::make_shared<Memo<std::pair<std::size_t, Code>, bool>>();
  auto member = [d, in_set, memo](std::size_t n, const Code& s) {
    return memo->get({n, s}, [&] {
      TraceElem k = kernel_trace(d, n, s);
      return in_set(k);
    });
  };
  std::string label = name.empty() ? d.label + "[...]" : name;
  Predilator r;
  r.value = [d, member, label](std::size_t n) {
    Order base = d.value(n);
    Order o = base;
    o.contains = [base, member, n](const Code& s) { return base.contains(s) && member(n, s); };
    if (base.enumerate)
      o.enumerate = filter<Code>(*base.enumerate, [member, n](const Code& s) { return member(n, s); });
    o.label = label + "(" + std::to_string(n) + ")";
    return o;
  };
  r.act = d.act;
  r.supp = d.supp;
  // act(f) restricts: tau is in range iff it is a member here and in range there.
  if (d.act_range) {
    r.act_range = [d, member](const FinEmbedding& f, const Code& t) {
      return member(f.codomain, t) && d.act_range(f, t);
    };
  }
  r.nf = d.nf ? d.nf : nullptr;
  if (!r.nf) {
    // fall back to the base predilator's kernel: same action, same supports
    r.nf = [d](std::size_t n, const Code& s) { return kernel(d, n, s); };
  }
  r.label = label;
  return memoize(r);
}

inline Morphism inclusion(const Predilator& d, TracePredicate in_set, const std::string& name = "") {
  Predilator sub = restrict_to(d, in_set, name);
  Morphism m;
  m.source = sub;
  m.target = d;
  m.component = [](std::size_t, const Code& s) { return s; };
  m.range = [sub](std::size_t n, const Code& t) { return sub.value(n).contains(t); };
  m.preim = [sub](std::size_t n, const Code& t) -> std::optional<Code> {
    if (sub.value(n).contains(t)) return t;
    return std::nullopt;
  };
  m.label = "incl(" + sub.label + ")";
  return m;
}

inline TracePredicate finite_trace_set(std::vector<TraceElem> elems) {
  return [elems = std::move(elems)](const TraceElem& t) {
    return std::find(elems.begin(), elems.end(), t) != elems.end();
  };
}

// ---------------------------------------------------------------------------
// Factorization: when rng(mu) <= rng(mu'), the unique nu with mu' . nu = mu.
// The inclusion is checked lazily, per needed trace element; a missing
// preimage raises RangeError with the witness.

inline Morphism factor(const Morphism& mu, const Morphism& mu_prime, std::size_t step_budget = 400000) {
  Morphism nu;
  nu.source = mu.source;
  nu.target = mu_prime.source;
  auto mu_p = std::make_shared<Morphism>(mu_prime);
  auto mu_ = std::make_shared<Morphism>(mu);
  nu.component = [mu_, mu_p, step_budget](std::size_t n, const Code& s) {
    auto [a, s0] = kernel(mu_->source, n, s);
    Code image = mu_->component(a.size(), s0);
    auto t0 = preimage_trace(*mu_p, a.size(), image, step_budget);
    if (!t0)
      throw RangeError("factor: range inclusion fails",
                       TraceElem{a.size(), s0}.show() + " maps outside rng(" + mu_p->label + ")");
    return mu_p->source.act(fin_subset_embedding(a, n), *t0);
  };
  nu.range = [mu_, mu_p, step_budget](std::size_t n, const Code& t) {
    auto [a, t0] = kernel(mu_p->source, n, t);
    Code image = mu_p->component(a.size(), t0);
    return rng_trace(*mu_, {a.size(), image}, step_budget);
  };
  nu.preim = [mu_, mu_p, step_budget](std::size_t n, const Code& t) -> std::optional<Code> {
    auto [a, t0] = kernel(mu_p->source, n, t);
    Code image = mu_p->component(a.size(), t0);
    auto s0 = preimage_trace(*mu_, a.size(), image, step_budget);
    if (!s0) return std::nullopt;
    return mu_->source.act(fin_subset_embedding(a, n), *s0);
  };
  nu.label = "factor(" + mu.label + " through " + mu_prime.label + ")";
  return memoize(nu);
}

struct Pullback {
  Predilator apex;
  Morphism into_first;   // xi0 with mu0 . xi0 = iota[A]
  Morphism into_second;  // xi1 with mu1 . xi1 = iota[A]
  Morphism into_base;    // iota[A] itself
};

inline Pullback pullback(const Morphism& mu0, const Morphism& mu1, std::size_t step_budget = 400000) {
  TracePredicate in_both = [mu0, mu1, step_budget](const TraceElem& t) {
    return rng_trace(mu0, t, step_budget) && rng_trace(mu1, t, step_budget);
  };
  Morphism incl = inclusion(mu0.target, in_both, mu0.target.label + "[rng^2]");
  Pullback out{incl.source, factor(incl, mu0, step_budget), factor(incl, mu1, step_budget), incl};
  return out;
}

// ---------------------------------------------------------------------------
// Directed systems (indices coded as naturals: positions in a chain, or
// packed finite trace sets) and their direct limits.

struct DirectedSystem {
  std::function<Predilator(const Code&)> object;
  std::function<Morphism(const Code&, const Code&)> arrow;  // i <= j
  std::function<bool(const Code&, const Code&)> leq;
  Stream<Code> indices;  // fair
  std::string label;
};

struct Cocone {
  Predilator apex;
  std::function<Morphism(const Code&)> leg;
};

struct LimitCheck {
  bool ok = true;
  std::vector<std::string> witnesses;
};

// Verifies the limit characterization on a window: cocone compatibility on
// comparable index pairs, plus coverage of the apex trace by leg ranges. The
// coverage search walks the fair index stream up to `index_budget` pulls per
// trace element (subset-coded systems place the covering index for the i-th
// trace element around position 2^i).
inline LimitCheck check_direct_limit(const DirectedSystem& sys, const Cocone& cone,
                                     std::size_t window, const AuditOptions& opt = {},
                                     std::size_t index_budget = 8192) {
  LimitCheck out;
  std::vector<Code> idx = take(sys.indices, std::max<std::size_t>(window, 2), opt.step_budget);
  auto legs = std::make_shared<Memo<Code, Morphism>>();
  auto leg = [&](const Code& i) { return legs->get(i, [&] { return memoize(cone.leg(i)); }); };
  for (const Code& i : idx)
    for (const Code& j : idx) {
      if (!(sys.leq(i, j)) || i == j) continue;
      Morphism li = leg(i), lj = leg(j), step = sys.arrow(i, j);
      for (std::size_t n = 0; n <= std::min<std::size_t>(opt.arity_bound, 2); ++n) {
        auto w = take(trace_stream_at(sys.object(i), n), 3, opt.step_budget);
        for (const TraceElem& t : w) {
          if (lj.component(n, step.component(n, t.elem)) != li.component(n, t.elem)) {
            out.ok = false;
            out.witnesses.push_back("cocone incompatibility at indices " + show_code(i) + "<=" +
                                    show_code(j) + ", " + t.show());
          }
        }
      }
    }
  auto apex_trace = take(trace_stream(cone.apex), window, opt.step_budget);
  for (const TraceElem& t : apex_trace) {
    bool covered = false;
    auto cur = sys.indices.start();
    for (std::size_t steps = 0; steps < index_budget && !covered; ++steps) {
      Step<Code> st = cur();
      if (st.kind == StepKind::end) break;
      if (st.kind != StepKind::yield) continue;
      if (rng_trace(leg(st.value), t, opt.step_budget)) covered = true;
    }
    if (!covered) {
      out.ok = false;
      out.witnesses.push_back("apex trace element " + t.show() + " not in any sampled leg range");
    }
  }
  return out;
}

// The mediating morphism out of a direct limit: factor each element through
// the first index whose leg range contains its trace kernel.
inline Morphism mediate(const DirectedSystem& sys, const Cocone& limit, const Cocone& target,
                        std::size_t index_window = 8192, std::size_t step_budget = 400000) {
  auto limit_legs = std::make_shared<Memo<Code, Morphism>>();
  auto target_legs = std::make_shared<Memo<Code, Morphism>>();
  auto sysp = std::make_shared<DirectedSystem>(sys);
  auto lcone = std::make_shared<Cocone>(limit);
  auto tcone = std::make_shared<Cocone>(target);
  auto lleg = [limit_legs, lcone](const Code& i) {
    return limit_legs->get(i, [&] { return memoize(lcone->leg(i)); });
  };
  auto tleg = [target_legs, tcone](const Code& i) {
    return target_legs->get(i, [&] { return memoize(tcone->leg(i)); });
  };
  Morphism z;
  z.source = limit.apex;
  z.target = target.apex;
  z.component = [sysp, lcone, tcone, lleg, tleg, index_window, step_budget](std::size_t n, const Code& s) {
    auto [a, s0] = kernel(lcone->apex, n, s);
    auto cur = sysp->indices.start();
    for (std::size_t steps = 0; steps < index_window; ++steps) {
      Step<Code> st = cur();
      if (st.kind == StepKind::end) break;
      if (st.kind != StepKind::yield) continue;
      Morphism li = lleg(st.value);
      auto tau = preimage_trace(li, a.size(), s0, step_budget);
      if (!tau) continue;
      Code mapped = tleg(st.value).component(a.size(), *tau);
      return tcone->apex.act(fin_subset_embedding(a, n), mapped);
    }
    throw BudgetExceeded("mediate: no index covers " + TraceElem{a.size(), s0}.show() +
                         " within the fairness window");
  };
  z.label = "mediate(" + sys.label + ")";
  return memoize(z);
}

// The canonical directed system of restrictions to finite trace sets, with
// the inclusions as cocone legs. Indices pack sorted lists of trace codes.
inline Code trace_set_code(std::vector<TraceElem> elems) {
  std::vector<Code> codes;
  std::sort(elems.begin(), elems.end());
  for (const TraceElem& t : elems) codes.push_back(t.code());
  return seq_code(codes);
}

inline std::vector<TraceElem> trace_set_decode(const Code& c) {
  std::vector<TraceElem> out;
  for (const Code& e : *seq_decode(c)) out.push_back(TraceElem::decode(e));
  return out;
}

inline DirectedSystem finite_subtrace_system(const Predilator& d, std::size_t trace_window = 12,
                                             std::size_t step_budget = 400000) {
  auto objects = std::make_shared<Memo<Code, Predilator>>();
  auto object = [d, objects](const Code& a) {
    return objects->get(a, [&] {
      auto elems = trace_set_decode(a);
      return restrict_to(d, finite_trace_set(elems), d.label + "[" + show_code(a) + "]");
    });
  };
  DirectedSystem sys;
  sys.object = object;
  sys.leq = [](const Code& a, const Code& b) {
    auto ea = trace_set_decode(a);
    auto eb = trace_set_decode(b);
    for (const TraceElem& t : ea)
      if (std::find(eb.begin(), eb.end(), t) == eb.end()) return false;
    return true;
  };
  sys.arrow = [object](const Code& a, const Code& b) {
    // inclusion of suborders: identity components
    Predilator pa = object(a), pb = object(b);
    Morphism m;
    m.source = pa;
    m.target = pb;
    m.component = [](std::size_t, const Code& s) { return s; };
    m.range = [pa](std::size_t n, const Code& t) { return pa.value(n).contains(t); };
    m.preim = [pa](std::size_t n, const Code& t) -> std::optional<Code> {
      if (pa.value(n).contains(t)) return t;
      return std::nullopt;
    };
    m.label = "incl";
    return m;
  };
  // subsets of a growing trace prefix, driven by bitmask codes
  Stream<TraceElem> tr = trace_stream(d);
  sys.indices = {[tr, step_budget]() -> Cursor<Code> {
    auto mask = std::make_shared<unsigned long>(0);
    auto prefix = std::make_shared<std::vector<TraceElem>>();
    auto cur = std::make_shared<Cursor<TraceElem>>(tr.start());
    auto done = std::make_shared<bool>(false);
    return [mask, prefix, cur, done]() -> Step<Code> {
      unsigned long m = (*mask)++;
      std::vector<TraceElem> elems;
      for (std::size_t bit = 0; (1ul << bit) <= m; ++bit) {
        if (!(m & (1ul << bit))) continue;
        while (!*done && prefix->size() <= bit) {
          Step<TraceElem> st = (*cur)();
          if (st.kind == StepKind::end) *done = true;
          else if (st.kind == StepKind::yield) prefix->push_back(st.value);
        }
        if (prefix->size() <= bit) return Step<Code>::ended();  // trace exhausted
        elems.push_back((*prefix)[bit]);
      }
      return Step<Code>::yielded(trace_set_code(std::move(elems)));
    };
  }};
  sys.label = d.label + "[finite traces]";
  return sys;
}

inline Cocone subtrace_cocone(const Predilator& d, const DirectedSystem& sys) {
  return {d, [d, sys](const Code& a) {
            auto elems = trace_set_decode(a);
            return inclusion(d, finite_trace_set(elems), d.label + "[" + show_code(a) + "]");
          }};
}

}  // namespace ptyx
