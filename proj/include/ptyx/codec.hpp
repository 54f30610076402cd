#pragma once

// Canonical numeric codes for the structured elements the library works with.
//
// Every element of every order is a natural number ("code"). Structure is
// layered on top of two primitives:
//
//   * pairs:      pair(x,y) = (x+y)(x+y+1)/2 + y   (Cantor pairing, bijective)
//   * sequences:  a prefix-free bit packing. Each entry a >= 0 is written as
//     gamma(a) = (b-1 zeros) ++ binary(a+1), where b = bit_length(a+1). The
//     code of <a_0,...,a_{m-1}> is the number whose binary expansion is
//     1 gamma(a_0) ... gamma(a_{m-1}), minus one. So c(<>) = 0 and the code
//     of a sequence grows linearly with the total bit size of its entries.
//     Not every natural is a sequence code; seq_decode reports failure.
//
// Tagged sums reuse the pairing: tag t with payload p is pair(t,p).
//
// Codes are arbitrary-precision: nested constructions (extensions over
// Kleene-Brouwer carriers, sums over traces) routinely escape 64 bits.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ptyx {

using Code = boost::multiprecision::cpp_int;

inline Code pair_code(const Code& x, const Code& y) {
  Code s = x + y;
  return s * (s + 1) / 2 + y;
}

inline std::pair<Code, Code> unpair_code(const Code& z) {
  // Invert w(w+1)/2 + y = z: w = floor((sqrt(8z+1)-1)/2).
  Code arg = 8 * z + 1;
  Code w = (boost::multiprecision::sqrt(arg) - 1) / 2;
  Code t = w * (w + 1) / 2;
  Code y = z - t;
  return {w - y, y};
}

inline std::size_t bit_length(const Code& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(x) + 1;
}

inline Code seq_empty() { return 0; }

inline Code seq_code(const std::vector<Code>& entries) {
  Code acc = 1;
  for (const Code& a : entries) {
    Code v = a + 1;
    std::size_t b = bit_length(v);
    acc <<= (2 * b - 1);
    acc |= v;  // b-1 leading zeros, then the b bits of v (msb set)
  }
  return acc - 1;
}

inline std::optional<std::vector<Code>> seq_decode(const Code& code) {
  if (code < 0) return std::nullopt;
  Code n = code + 1;
  std::size_t total = bit_length(n);  // >= 1; top bit is the sentinel
  std::vector<Code> out;
  std::size_t pos = total - 1;  // bits below the sentinel, msb-first
  while (pos > 0) {
    std::size_t zeros = 0;
    while (pos > 0 && !boost::multiprecision::bit_test(n, pos - 1)) {
      ++zeros;
      --pos;
    }
    std::size_t width = zeros + 1;
    if (pos < width) return std::nullopt;  // truncated entry
    Code v = 0;
    for (std::size_t i = 0; i < width; ++i) {
      v <<= 1;
      if (boost::multiprecision::bit_test(n, pos - 1)) v |= 1;
      --pos;
    }
    out.push_back(v - 1);
  }
  return out;
}

inline bool is_seq_code(const Code& code) { return seq_decode(code).has_value(); }

inline std::size_t seq_length(const Code& code) {
  auto s = seq_decode(code);
  return s ? s->size() : 0;
}

// Code of the length-k prefix <s(0),...,s(k-1)>.
inline Code seq_prefix(const std::vector<Code>& entries, std::size_t k) {
  return seq_code(std::vector<Code>(entries.begin(), entries.begin() + k));
}

inline Code seq_append(const Code& seq, const Code& entry) {
  auto s = seq_decode(seq);
  s->push_back(entry);
  return seq_code(*s);
}

inline std::string show_code(const Code& c) { return c.str(); }

inline std::string show_seq(const std::vector<Code>& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i].str();
  }
  return out + ">";
}

// size_t view of a small code; callers guarantee the bound.
inline std::size_t to_size(const Code& c) { return c.convert_to<std::size_t>(); }

}  // namespace ptyx
