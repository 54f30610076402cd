#pragma once

// Segments and the strict trace relation <<: (m,sigma) << (n,tau) holds when
// every pair of co-embeddings into m+n sends sigma strictly below tau. Its
// linearization compares through the inclusions into max(m,n). These drive
// the restriction D[rho] and the fiber morphisms nu^rho that the
// normalization of preptykes is built from.

#include <optional>
#include <string>
#include <utility>

#include "ptyx/morph.hpp"

namespace ptyx {

enum class LLRel { ll, gg, incomparable };

struct LLVerdict {
  LLRel relation = LLRel::incomparable;
  // Refuting pairs, present exactly when the corresponding strict relation
  // fails: embeddings (f,g) with act(f,sigma) >= act(g,tau) refute <<, and
  // (f,g) with act(f,sigma) <= act(g,tau) refute >>.
  std::optional<std::pair<FinEmbedding, FinEmbedding>> ll_refuted_by;
  std::optional<std::pair<FinEmbedding, FinEmbedding>> gg_refuted_by;
};

// Brute force over all embeddings into m+n; sufficient by the finite
// reduction of the defining condition.
inline LLVerdict ll_compare(const Predilator& d, const TraceElem& s, const TraceElem& t) {
  if (!in_trace(d, s.arity, s.elem) || !in_trace(d, t.arity, t.elem))
    throw DomainError("ll_compare: arguments must be trace elements");
  std::size_t x = s.arity + t.arity;
  Order dx = d.value(x);
  LLVerdict v;
  for (const FinEmbedding& f : all_embeddings(s.arity, x)) {
    for (const FinEmbedding& g : all_embeddings(t.arity, x)) {
      Ord o = dx.compare(d.act(f, s.elem), d.act(g, t.elem));
      if (o != Ord::lt && !v.ll_refuted_by) v.ll_refuted_by = std::make_pair(f, g);
      if (o != Ord::gt && !v.gg_refuted_by) v.gg_refuted_by = std::make_pair(f, g);
      if (v.ll_refuted_by && v.gg_refuted_by) break;
    }
    if (v.ll_refuted_by && v.gg_refuted_by) break;
  }
  if (!v.ll_refuted_by) v.relation = LLRel::ll;
  else if (!v.gg_refuted_by) v.relation = LLRel::gg;
  else v.relation = LLRel::incomparable;
  return v;
}

// The linearization: compare through the inclusions into max(m,n).
inline Ord trace_order_compare(const Predilator& d, const TraceElem& s, const TraceElem& t) {
  if (!in_trace(d, s.arity, s.elem) || !in_trace(d, t.arity, t.elem))
    throw DomainError("trace_order_compare: arguments must be trace elements");
  std::size_t k = std::max(s.arity, t.arity);
  Code a = d.act(fin_inclusion(s.arity, k), s.elem);
  Code b = d.act(fin_inclusion(t.arity, k), t.elem);
  return d.value(k).compare(a, b);
}

// The trace of a predilator as an order (used as a sum index).
inline Order trace_order(const Predilator& d) {
  Order o;
  o.contains = [d](const Code& c) {
    TraceElem t = TraceElem::decode(c);
    Order dn = d.value(t.arity);
    return dn.contains(t.elem) && in_trace(d, t.arity, t.elem);
  };
  o.compare = [d](const Code& a, const Code& b) {
    return trace_order_compare(d, TraceElem::decode(a), TraceElem::decode(b));
  };
  o.enumerate = map(trace_stream(d), [](const TraceElem& t) { return t.code(); });
  o.label = "Tr(" + d.label + ")";
  o.pretty = [](const Code& c) { return TraceElem::decode(c).show(); };
  return o;
}

struct SegmentCheck {
  bool ok = true;
  std::string witness;  // first counterexample found
};

// Window check of both characterizations of "segment": components have
// downward closed ranges, and range trace elements pull everything not
// strictly above them into the range.
inline SegmentCheck is_segment(const Morphism& nu, const AuditOptions& opt = {}) {
  SegmentCheck out;
  for (std::size_t n = 0; n <= opt.arity_bound; ++n) {
    Order tgt = nu.target.value(n);
    std::vector<Code> tw = detail::audit_window(nu.target, n, opt);
    std::vector<Code> sw = detail::audit_window(nu.source, n, opt);
    for (const Code& t : tw) {
      for (const Code& s : sw) {
        Code img = nu.component(n, s);
        if (tgt.compare(t, img) == Ord::lt && !rng_elem(nu, n, t, opt.step_budget)) {
          out.ok = false;
          out.witness = nu.target.label + "(" + std::to_string(n) + "): " + tgt.show(t) + " < " +
                        tgt.show(img) + " but " + tgt.show(t) + " is outside the range";
          return out;
        }
      }
    }
  }
  // trace characterization on a sampled window
  auto src_trace = take(trace_stream(nu.source), opt.elem_budget / 4 + 3, opt.step_budget);
  auto tgt_trace = take(trace_stream(nu.target), opt.elem_budget / 4 + 3, opt.step_budget);
  for (const TraceElem& s : src_trace) {
    TraceElem img = trace_map(nu, s);
    for (const TraceElem& t : tgt_trace) {
      LLVerdict v = ll_compare(nu.target, img, t);
      if (v.relation != LLRel::ll && !rng_trace(nu, t, opt.step_budget)) {
        out.ok = false;
        out.witness = "trace condition: " + img.show() + " is in the range, not << " + t.show() +
                      ", yet " + t.show() + " is outside";
        return out;
      }
    }
  }
  return out;
}

// D[rho]: restriction to the trace elements strictly << rho.
inline Predilator d_rho(const Predilator& d, const TraceElem& rho) {
  if (!in_trace(d, rho.arity, rho.elem)) throw DomainError("d_rho: rho must be a trace element");
  auto cache = std::make_shared<Memo<TraceElem, bool>>();
  TracePredicate below = [d, rho, cache](const TraceElem& t) {
    return cache->get(t, [&] { return ll_compare(d, t, rho).relation == LLRel::ll; });
  };
  return restrict_to(d, below, d.label + "[<<" + rho.show() + "]");
}

// nu^rho: the corestriction of nu to D[rho] => E[Tr(nu)(rho)]; components
// agree with nu's.
inline Morphism nu_rho(const Morphism& nu, const TraceElem& rho) {
  TraceElem image = trace_map(nu, rho);
  Morphism m;
  m.source = d_rho(nu.source, rho);
  m.target = d_rho(nu.target, image);
  m.component = nu.component;
  Predilator target_sub = m.target;
  if (nu.range) {
    m.range = [nu, target_sub](std::size_t n, const Code& t) {
      return target_sub.value(n).contains(t) && nu.range(n, t);
    };
  }
  if (nu.preim) m.preim = nu.preim;
  m.label = nu.label + "^" + rho.show();
  return m;
}

}  // namespace ptyx
