#pragma once

// Exponent vectors and the degree-lexicographic order: higher total degree
// wins; on ties the first differing position decides, larger exponent first
// (so x1 beats x2).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "spbw/error.hpp"

namespace spbw {

using Exponent = std::vector<std::uint32_t>;

enum class Ordering { Less, Equal, Greater };

inline std::uint32_t total_degree(const Exponent& a) {
  return std::accumulate(a.begin(), a.end(), std::uint32_t{0});
}

inline Ordering deglex_compare(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) fail(Errc::MismatchedArity, "exponent vectors of different length");
  std::uint32_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? Ordering::Less : Ordering::Greater;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? Ordering::Less : Ordering::Greater;
  return Ordering::Equal;
}

// Comparator for descending-deglex containers: leading term first.
struct DeglexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    return deglex_compare(a, b) == Ordering::Greater;
  }
};

inline Exponent exponent_add(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) fail(Errc::MismatchedArity, "exponent vectors of different length");
  Exponent c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline Exponent unit_exponent(std::size_t n, std::size_t i) {
  Exponent e(n, 0);
  e[i] = 1;
  return e;
}

// All exponent vectors of total degree <= bound, in ascending deglex order.
inline std::vector<Exponent> bounded_exponents(std::size_t n, std::uint32_t bound) {
  std::vector<Exponent> out;
  Exponent cur(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur[pos] = e;
      self(self, pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, bound);
  std::sort(out.begin(), out.end(),
            [](const Exponent& a, const Exponent& b) {
              return deglex_compare(a, b) == Ordering::Less;
            });
  return out;
}

}  // namespace spbw
