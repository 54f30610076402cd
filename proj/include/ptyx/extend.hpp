#pragma once

// The class-sized extension of a coded predilator: elements are pairs of a
// finite support inside the argument order and a trace kernel of matching
// arity, compared by pushing both kernels into the union of the supports.
// eta mediates between a directly-given class-sized rule and the extension
// of its coded restriction; it is an order isomorphism with the normal-form
// decomposition as its inverse.

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ptyx/morph.hpp"

namespace ptyx {

struct ExtElem {
  std::vector<Code> support;  // ascending in the argument order
  Code kernel;
};

inline Code ext_code(const Order& x, const ExtElem& e) {
  return pair_code(subset_code(x, e.support), e.kernel);
}

inline ExtElem ext_decode(const Order& x, const Code& c) {
  auto [a, k] = unpair_code(c);
  return {subset_decode(x, a), k};
}

inline ClassDilator extend(const Predilator& d) {
  auto decode_checked = [d](const Order& x, const Code& c) -> std::optional<ExtElem> {
    Code sub, ker;
    try {
      auto [a, k] = unpair_code(c);
      sub = a;
      ker = k;
    } catch (...) {
      return std::nullopt;
    }
    ExtElem e;
    try {
      e = {subset_decode(x, sub), ker};
    } catch (const DecodeError&) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < e.support.size(); ++i) {
      if (!x.contains(e.support[i])) return std::nullopt;
      if (i > 0 && x.compare(e.support[i - 1], e.support[i]) != Ord::lt) return std::nullopt;
    }
    Order dn = d.value(e.support.size());
    if (!dn.contains(e.kernel) || !in_trace(d, e.support.size(), e.kernel)) return std::nullopt;
    return e;
  };

  ClassDilator ext;
  ext.value = [d, decode_checked](const Order& x) {
    Order o;
    o.contains = [x, decode_checked](const Code& c) { return decode_checked(x, c).has_value(); };
    o.compare = [d, x, decode_checked](const Code& ca, const Code& cb) {
      auto ea = decode_checked(x, ca), eb = decode_checked(x, cb);
      if (!ea || !eb) throw DomainError("extension compare: non-member");
      std::vector<Code> u;
      std::merge(ea->support.begin(), ea->support.end(), eb->support.begin(), eb->support.end(),
                 std::back_inserter(u),
                 [&x](const Code& p, const Code& q) { return order_lt(x, p, q); });
      u.erase(std::unique(u.begin(), u.end()), u.end());
      auto positions = [&u, &x](const std::vector<Code>& a) {
        std::vector<std::size_t> v;
        for (const Code& e : a) {
          auto it = std::find(u.begin(), u.end(), e);
          v.push_back(static_cast<std::size_t>(it - u.begin()));
        }
        return FinEmbedding(a.size(), u.size(), std::move(v));
      };
      Code left = d.act(positions(ea->support), ea->kernel);
      Code right = d.act(positions(eb->support), eb->kernel);
      return d.value(u.size()).compare(left, right);
    };
    if (x.enumerate) {
      // subsets of the enumerated prefix, bitmask-driven, paired with the
      // trace elements of matching arity
      Stream<Code> carrier = *x.enumerate;
      Stream<std::vector<Code>> subsets = {[carrier, x]() -> Cursor<std::vector<Code>> {
        auto mask = std::make_shared<unsigned long>(0);
        auto prefix = std::make_shared<std::vector<Code>>();
        auto cur = std::make_shared<Cursor<Code>>(carrier.start());
        auto done = std::make_shared<bool>(false);
        return [mask, prefix, cur, done, x]() -> Step<std::vector<Code>> {
          unsigned long m = (*mask)++;
          std::vector<Code> elems;
          for (std::size_t bit = 0; (1ul << bit) <= m; ++bit) {
            if (!(m & (1ul << bit))) continue;
            while (!*done && prefix->size() <= bit) {
              Step<Code> st = (*cur)();
              if (st.kind == StepKind::end) *done = true;
              else if (st.kind == StepKind::yield) prefix->push_back(st.value);
            }
            if (prefix->size() <= bit) return Step<std::vector<Code>>::ended();
            elems.push_back((*prefix)[bit]);
          }
          std::sort(elems.begin(), elems.end(),
                    [&x](const Code& p, const Code& q) { return order_lt(x, p, q); });
          return Step<std::vector<Code>>::yielded(std::move(elems));
        };
      }};
      Stream<Stream<Code>> rows = map(subsets, [d, x](const std::vector<Code>& a) -> Stream<Code> {
        return map(trace_stream_at(d, a.size()), [x, a](const TraceElem& t) {
          return ext_code(x, {a, t.elem});
        });
      });
      o.enumerate = diagonal(rows);
    }
    o.label = "ext:" + d.label + "(" + x.label + ")";
    o.pretty = [d, x](const Code& c) {
      ExtElem e = ext_decode(x, c);
      std::string out = "({";
      for (std::size_t i = 0; i < e.support.size(); ++i) {
        if (i) out += ",";
        out += x.show(e.support[i]);
      }
      return out + "}," + d.value(e.support.size()).show(e.kernel) + ")";
    };
    return o;
  };
  ext.act = [d](const Order& x, const Order& y, const std::function<Code(const Code&)>& f,
                const Code& c) {
    ExtElem e = ext_decode(x, c);
    std::vector<Code> image;
    image.reserve(e.support.size());
    for (const Code& p : e.support) image.push_back(f(p));
    return ext_code(y, {std::move(image), e.kernel});
  };
  ext.supp = [](const Order& x, const Code& c) { return ext_decode(x, c).support; };
  ext.nf = [d](const Order& x, const Code& c) {
    ExtElem e = ext_decode(x, c);
    Order small = fin_order(e.support.size());
    std::vector<Code> full;
    for (std::size_t i = 0; i < e.support.size(); ++i) full.push_back(Code(i));
    Code kernel_code = ext_code(small, {full, e.kernel});
    return std::pair<std::vector<Code>, Code>(e.support, kernel_code);
  };
  ext.label = "ext:" + d.label;
  return ext;
}

// The coded restriction of a class-sized rule.
inline Predilator to_coded(const ClassDilator& ev) {
  Predilator d;
  d.value = [ev](std::size_t n) { return ev.value(fin_order(n)); };
  d.act = [ev](const FinEmbedding& f, const Code& s) {
    return ev.act(fin_order(f.domain), fin_order(f.codomain),
                  [&f](const Code& i) { return Code(f(to_size(i))); }, s);
  };
  d.supp = [ev](std::size_t n, const Code& s) {
    FinSet out;
    for (const Code& e : ev.supp(fin_order(n), s)) out.push_back(to_size(e));
    return out;
  };
  if (ev.nf) {
    d.nf = [ev](std::size_t n, const Code& s) {
      auto [a, k] = ev.nf(fin_order(n), s);
      FinSet pos;
      for (const Code& e : a) pos.push_back(to_size(e));
      return std::pair<FinSet, Code>(pos, k);
    };
  }
  d.label = ev.label;
  return memoize(d);
}

// Normal form of a member of a class-sized value: the unique support plus
// trace kernel decomposition. For extension elements this is the identity
// decomposition; for directly-given rules the kernel is recovered via the
// rule's hint or a bounded search through the coded restriction.
inline std::pair<std::vector<Code>, Code> normal_form(const ClassDilator& ev, const Order& x,
                                                      const Code& sigma,
                                                      std::size_t step_budget = 400000) {
  require_member(ev.value(x), sigma, "normal_form");
  if (ev.nf) return ev.nf(x, sigma);
  std::vector<Code> a = ev.supp(x, sigma);
  auto embed = [&a](const Code& i) { return a[to_size(i)]; };
  Order small = ev.value(fin_order(a.size()));
  if (!small.enumerate) throw DomainError("normal_form: no enumeration to search");
  auto cur = small.enumerate->start();
  for (std::size_t steps = 0; steps < step_budget; ++steps) {
    Step<Code> st = cur();
    if (st.kind == StepKind::end) break;
    if (st.kind != StepKind::yield) continue;
    if (ev.act(fin_order(a.size()), x, embed, st.value) == sigma)
      return {a, st.value};
  }
  throw BudgetExceeded("normal_form: kernel not found within budget");
}

// eta and its inverse between the extension of the coded restriction and a
// directly-given class-sized rule.
struct EtaIso {
  Order ext_order;
  Order full_order;
  std::function<Code(const Code&)> fwd;  // extension element -> direct element
  std::function<Code(const Code&)> bwd;  // normal-form decomposition
};

inline EtaIso eta(const ClassDilator& full, const Order& x) {
  Predilator coded = to_coded(full);
  ClassDilator ext = extend(coded);
  EtaIso iso;
  iso.ext_order = ext.value(x);
  iso.full_order = full.value(x);
  iso.fwd = [full, x](const Code& c) {
    ExtElem e = ext_decode(x, c);
    auto embed = [&e](const Code& i) { return e.support[to_size(i)]; };
    return full.act(fin_order(e.support.size()), x, embed, e.kernel);
  };
  iso.bwd = [full, x](const Code& c) {
    auto [a, k] = normal_form(full, x, c);
    return ext_code(x, {a, k});
  };
  return iso;
}

// Class-sized pictures of coded morphisms: (a, sigma) -> (a, mu_{|a|}(sigma)).
struct ClassMorphism {
  ClassDilator source;
  ClassDilator target;
  std::function<Code(const Order&, const Code&)> component;
  std::function<bool(const Order&, const Code&)> range;
  std::string label;
};

inline ClassMorphism extend_morphism(const Morphism& mu) {
  ClassMorphism m;
  m.source = extend(mu.source);
  m.target = extend(mu.target);
  m.component = [mu](const Order& x, const Code& c) {
    ExtElem e = ext_decode(x, c);
    if (!in_trace(mu.source, e.support.size(), e.kernel))
      throw DomainError(mu.label + ": extension argument kernel is not a trace element");
    Code image = mu.component(e.support.size(), e.kernel);
    return ext_code(x, {e.support, image});
  };
  m.range = [mu](const Order& x, const Code& c) {
    ExtElem e = ext_decode(x, c);
    return rng_trace(mu, {e.support.size(), e.kernel});
  };
  m.label = "ext:" + mu.label;
  return m;
}

// Descent probe against the extension at an intended well order.
inline DescentReport dilator_probe(const Predilator& d, const Order& x, std::size_t chain_length,
                                   std::size_t budget) {
  return probe_descent(extend(d).value(x), chain_length, budget);
}

}  // namespace ptyx
