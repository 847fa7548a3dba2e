#pragma once

// Independent oracles used by the tests. Everything here is computed by
// direct enumeration or elementary recurrences, never through the engine's
// own series or enumeration machinery.

#include "qpbasis/common.hpp"

#include <functional>
#include <vector>

namespace oracle {

// p(n, r): partitions of n into at most r parts, by the classic two-way
// recurrence p(n, r) = p(n, r-1) + p(n-r, r).
inline qpbasis::BigInt partitions_at_most(int n, int r) {
  if (n < 0) return 0;
  std::vector<std::vector<qpbasis::BigInt>> tab(
      static_cast<std::size_t>(n) + 1, std::vector<qpbasis::BigInt>(static_cast<std::size_t>(r) + 1));
  for (int j = 0; j <= r; ++j) tab[0][static_cast<std::size_t>(j)] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= r; ++j)
      tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) - 1] +
          (i >= j ? tab[static_cast<std::size_t>(i - j)][static_cast<std::size_t>(j)] : qpbasis::BigInt(0));
  return tab[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
}

inline qpbasis::BigInt partitions(int n) { return partitions_at_most(n, n); }

// Number of partitions of n whose successive parts differ by at least 2
// (the Rogers-Ramanujan sum side), counted by brute-force descent.
inline long long difference_two_partitions(int n) {
  std::function<long long(int, int)> go = [&](int rest, int maxpart) -> long long {
    if (rest == 0) return 1;
    long long total = 0;
    for (int part = std::min(rest, maxpart); part >= 1; --part) total += go(rest - part, part - 2);
    return total;
  };
  return go(n, n);
}

// Partitions of n into exactly c parts, each >= lo, listed with
// non-decreasing parts.
inline qpbasis::BigInt partitions_exact_parts(int n, int c, int lo) {
  std::function<qpbasis::BigInt(int, int, int)> rec = [&](int rest, int parts, int minpart) -> qpbasis::BigInt {
    if (parts == 0) return rest == 0 ? 1 : 0;
    qpbasis::BigInt total = 0;
    for (int part = minpart; part <= rest; ++part) total += rec(rest - part, parts - 1, part);
    return total;
  };
  return rec(n, c, std::max(lo, 1));
}

}  // namespace oracle
