#pragma once

// The category of finite orders n = {0,...,n-1} with strictly increasing
// maps, finite subsets of carriers, and the enumeration / induced-map
// utilities built on them.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ptyx/error.hpp"
#include "ptyx/order.hpp"

namespace ptyx {

// A subset of {0,...,n-1}, kept sorted.
using FinSet = std::vector<std::size_t>;

struct FinEmbedding {
  std::size_t domain = 0;    // m
  std::size_t codomain = 0;  // k
  std::vector<std::size_t> values;

  FinEmbedding() = default;
  FinEmbedding(std::size_t m, std::size_t k, std::vector<std::size_t> vals)
      : domain(m), codomain(k), values(std::move(vals)) {
    if (values.size() != domain) throw DomainError("FinEmbedding: value count != domain size");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] >= codomain) throw DomainError("FinEmbedding: value out of codomain");
      if (i > 0 && values[i - 1] >= values[i])
        throw DomainError("FinEmbedding: values not strictly increasing");
    }
  }

  std::size_t operator()(std::size_t i) const { return values.at(i); }

  bool operator==(const FinEmbedding& other) const = default;

  std::string show() const {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(values[i]);
    }
    return out + "]:" + std::to_string(domain) + "->" + std::to_string(codomain);
  }
};

inline FinEmbedding fin_identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return FinEmbedding(n, n, std::move(v));
}

// The inclusion of {0,...,m-1} into {0,...,k-1}.
inline FinEmbedding fin_inclusion(std::size_t m, std::size_t k) {
  if (m > k) throw DomainError("fin_inclusion: domain exceeds codomain");
  std::vector<std::size_t> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = i;
  return FinEmbedding(m, k, std::move(v));
}

// The embedding |a| -> k enumerating a subset a of {0,...,k-1}.
inline FinEmbedding fin_subset_embedding(const FinSet& a, std::size_t k) {
  return FinEmbedding(a.size(), k, std::vector<std::size_t>(a.begin(), a.end()));
}

inline FinEmbedding compose(const FinEmbedding& g, const FinEmbedding& f) {
  if (f.codomain != g.domain) throw DomainError("compose: codomain of f != domain of g");
  std::vector<std::size_t> v(f.domain);
  for (std::size_t i = 0; i < f.domain; ++i) v[i] = g(f(i));
  return FinEmbedding(f.domain, g.codomain, std::move(v));
}

// f <= g pointwise (same domain and codomain).
inline bool pointwise_leq(const FinEmbedding& f, const FinEmbedding& g) {
  if (f.domain != g.domain || f.codomain != g.codomain) return false;
  for (std::size_t i = 0; i < f.domain; ++i)
    if (f(i) > g(i)) return false;
  return true;
}

// Image of a subset of the domain.
inline FinSet apply_finset(const FinEmbedding& f, const FinSet& a) {
  FinSet out;
  out.reserve(a.size());
  for (std::size_t i : a) out.push_back(f(i));
  return out;
}

inline FinSet full_finset(std::size_t n) {
  FinSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline bool finset_subset(const FinSet& a, const FinSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline FinSet finset_union(const FinSet& a, const FinSet& b) {
  FinSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::string show_finset(const FinSet& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a[i]);
  }
  return out + "}";
}

// Positions of the elements of a within b; a must be a subset of b.
inline FinEmbedding positions_in(const FinSet& a, const FinSet& b) {
  std::vector<std::size_t> v;
  v.reserve(a.size());
  for (std::size_t x : a) {
    auto it = std::lower_bound(b.begin(), b.end(), x);
    if (it == b.end() || *it != x) throw DomainError("positions_in: not a subset");
    v.push_back(static_cast<std::size_t>(it - b.begin()));
  }
  return FinEmbedding(a.size(), b.size(), std::move(v));
}

// All strictly increasing maps m -> k, in lexicographic order of value lists.
inline std::vector<FinEmbedding> all_embeddings(std::size_t m, std::size_t k) {
  std::vector<FinEmbedding> out;
  if (m > k) return out;
  std::vector<std::size_t> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = i;
  while (true) {
    out.emplace_back(m, k, v);
    // next combination
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (v[i] < k - (m - i)) {
        ++v[i];
        for (std::size_t j = i + 1; j < m; ++j) v[j] = v[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
    if (m == 0) return out;
  }
}

// A finite subset of an arbitrary carrier, sorted ascending in the carrier's
// order, no duplicates.
struct FinSubset {
  Order carrier;
  std::vector<Code> elements;

  FinSubset(Order carrier_, std::vector<Code> elems) : carrier(std::move(carrier_)), elements(std::move(elems)) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      require_member(carrier, elements[i], "FinSubset");
      if (i > 0 && carrier.compare(elements[i - 1], elements[i]) != Ord::lt)
        throw DomainError("FinSubset: elements not strictly ascending in the carrier");
    }
  }

  std::size_t size() const { return elements.size(); }
};

// The increasing enumeration of a: the map i -> a.elements[i] from |a| into
// the carrier.
inline std::vector<Code> enum_map(const FinSubset& a) { return a.elements; }

// Given f : a -> b (order preserving, images listed against a.elements), the
// unique embedding |a| -> |b| with en_b . |f| = f . en_a.
inline FinEmbedding induced(const FinSubset& a, const FinSubset& b, const std::vector<Code>& images) {
  if (images.size() != a.size()) throw DomainError("induced: image count mismatch");
  std::vector<std::size_t> v;
  v.reserve(images.size());
  for (const Code& y : images) {
    auto it = std::find(b.elements.begin(), b.elements.end(), y);
    if (it == b.elements.end()) throw DomainError("induced: image not in target subset");
    v.push_back(static_cast<std::size_t>(it - b.elements.begin()));
  }
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i]) throw DomainError("induced: map not order preserving");
  return FinEmbedding(a.size(), b.size(), std::move(v));
}

// Induced map of the inclusion a <= b.
inline FinEmbedding induced_inclusion(const FinSubset& a, const FinSubset& b) {
  return induced(a, b, a.elements);
}

inline std::vector<Code> sorted_elements(const Order& carrier, std::vector<Code> elems) {
  std::sort(elems.begin(), elems.end(),
            [&](const Code& x, const Code& y) { return order_lt(carrier, x, y); });
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

}  // namespace ptyx
