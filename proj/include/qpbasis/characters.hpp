#pragma once

#include "qpbasis/census.hpp"
#include "qpbasis/sum_core.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

namespace qpbasis {

namespace detail {

// Character sum side over dual-charge configurations: each configuration
// contributes q^{e_min} * prod_i prod_t 1/(q;q)_{r^{(t)}-r^{(t+1)}} * y^{n}.
inline TruncatedSeries char_sum_side(const RootSystem& rs, const WeightSpec& w, int M,
                                     int threads_requested) {
  w.validate(rs);
  const ModeStructure ms = mode_structure(rs, w);
  const SumCoreResult core = sum_core(rs, ms, M, false, true, threads_requested);
  return keyed_to_series(core.sum_coeffs, rs.rank, M);
}

}  // namespace detail

// Theorem-style sum side for the standard module L(k Lambda_0).
inline TruncatedSeries char_L_sum(const RootSystem& rs, int k, int M, int threads = 0) {
  return detail::char_sum_side(rs, WeightSpec::standard(k), M, threads);
}

// Sum side for the generalized Verma module N(k Lambda_0), in the
// finite-support form: descending sequences of nonnegative integers.
inline TruncatedSeries char_N_sum(const RootSystem& rs, int M, int threads = 0) {
  return detail::char_sum_side(rs, WeightSpec::generic_verma(), M, threads);
}

// Sum side for a rectangular weight k0 Lambda_0 + kj Lambda_j (types D, E6,
// E7), with the extra exponent sum_{t>k0} r_j^{(t)}.
inline TruncatedSeries char_rect_sum(const RootSystem& rs, int k0, int j, int kj, int M,
                                     int threads = 0) {
  return detail::char_sum_side(rs, WeightSpec::rectangular(k0, j, kj), M, threads);
}

// Product side: 1 / prod_{alpha in R+} (q y^alpha; q)_infinity, factors
// multiplied pairwise in a balanced tree over the canonical root order.
inline TruncatedSeries char_product(const RootSystem& rs, int M) {
  std::vector<TruncatedSeries> factors;
  factors.reserve(rs.positive_roots.size());
  for (const auto& alpha : rs.positive_roots)
    factors.push_back(geometric_inverse_factor(alpha, 1, M));
  while (factors.size() > 1) {
    std::vector<TruncatedSeries> next;
    next.reserve(factors.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < factors.size(); i += 2)
      next.push_back(ts_mul(factors[i], factors[i + 1]));
    if (factors.size() % 2 == 1) next.push_back(std::move(factors.back()));
    factors = std::move(next);
  }
  return std::move(factors.front());
}

namespace detail {

// Streaming enumeration of PBW multisets {(alpha, n)} with sum of n <= M.
// Roots are taken in ascending index order and each root's n-values in
// non-increasing order, so every multiset is visited exactly once. The sink
// observes (q, y) with q the energy total and y the root-coefficient total.
template <class Key, class Ops>
class PbwWalker {
 public:
  PbwWalker(const RootSystem& rs, int M, const Ops& ops) : rs_(rs), M_(M), ops_(ops) {}

  template <class Bump>
  void run(int shard, int nshards, Bump&& bump) {
    const int R = static_cast<int>(rs_.positive_roots.size());
    long long branch = 0;
    if (shard == 0) bump(ops_.zero());  // empty multiset
    for (int b = 0; b < R; ++b)
      for (int n = 1; n <= M_; ++n) {
        const long long idx = branch++;
        if (nshards > 1 && idx % nshards != shard) continue;
        Key k = ops_.add(ops_.zero(), b, n);
        walk(b, n, M_ - n, k, bump);
      }
  }

 private:
  // State: root b holds a final part of size n; either close b or append
  // another part <= n, then continue with roots > b.
  template <class Bump>
  void walk(int b, int maxpart, int budget, const Key& key, Bump& bump) {
    bump(key);
    for (int n = std::min(maxpart, budget); n >= 1; --n)
      walk(b, n, budget - n, ops_.add(key, b, n), bump);
    const int R = static_cast<int>(rs_.positive_roots.size());
    for (int r = b + 1; r < R; ++r)
      for (int n = std::min(M_, budget); n >= 1; --n) walk(r, n, budget - n, ops_.add(key, r, n), bump);
  }

  const RootSystem& rs_;
  int M_;
  const Ops& ops_;
};

struct PackedPbwOps {
  std::uint64_t qunit;
  std::vector<std::uint64_t> root_delta;
  std::uint64_t zero() const { return 0; }
  std::uint64_t add(std::uint64_t key, int root, int n) const {
    return key + static_cast<std::uint64_t>(n) * qunit + root_delta[static_cast<std::size_t>(root)];
  }
};

struct GenericPbwKey {
  int q = 0;
  std::vector<int> y;
  friend auto operator<=>(const GenericPbwKey&, const GenericPbwKey&) = default;
};

struct GenericPbwOps {
  const RootSystem* rs;
  GenericPbwKey zero() const {
    return {0, std::vector<int>(static_cast<std::size_t>(rs->rank), 0)};
  }
  GenericPbwKey add(GenericPbwKey key, int root, int n) const {
    key.q += n;
    const auto& alpha = rs->positive_roots[static_cast<std::size_t>(root)];
    for (int i = 0; i < rs->rank; ++i) key.y[static_cast<std::size_t>(i)] += alpha[static_cast<std::size_t>(i)];
    return key;
  }
};

}  // namespace detail

// Independent counting oracle for the product character: multisets of pairs
// (positive root, n >= 1) with total n <= M, enumerated one by one. No
// series multiplication is involved.
inline TruncatedSeries pbw_census(const RootSystem& rs, int M, int threads_requested = 0) {
  const int l = rs.rank;
  std::vector<int> max_y(static_cast<std::size_t>(l), 0);
  for (const auto& alpha : rs.positive_roots)
    for (int i = 0; i < l; ++i)
      max_y[static_cast<std::size_t>(i)] =
          std::max(max_y[static_cast<std::size_t>(i)], M * alpha[static_cast<std::size_t>(i)]);
  const int threads = resolve_threads(threads_requested);
  const int nshards = std::max(1, 4 * threads);

  // Packed fast path: (q, y) fits one 64-bit word for every desk-scale run.
  int bits = detail::bit_length(static_cast<std::uint64_t>(std::max(1, M)));
  std::vector<int> shift(static_cast<std::size_t>(l));
  int total_bits = bits;
  for (int i = 0; i < l; ++i) {
    shift[static_cast<std::size_t>(i)] = total_bits;
    total_bits += std::max(1, detail::bit_length(static_cast<std::uint64_t>(max_y[static_cast<std::size_t>(i)])));
  }

  SeriesBuilder builder(l, M, max_y);
  if (total_bits <= 64) {
    detail::PackedPbwOps ops;
    ops.qunit = 1;
    ops.root_delta.resize(rs.positive_roots.size());
    for (std::size_t r = 0; r < rs.positive_roots.size(); ++r) {
      std::uint64_t d = 0;
      for (int i = 0; i < l; ++i)
        d |= static_cast<std::uint64_t>(rs.positive_roots[r][static_cast<std::size_t>(i)])
             << shift[static_cast<std::size_t>(i)];
      ops.root_delta[r] = d;
    }
    std::vector<std::unordered_map<std::uint64_t, long long>> shards(
        static_cast<std::size_t>(nshards));
    parallel_for(static_cast<std::size_t>(nshards), threads, [&](std::size_t si) {
      detail::PbwWalker<std::uint64_t, detail::PackedPbwOps> walker(rs, M, ops);
      auto& mp = shards[si];
      walker.run(static_cast<int>(si), nshards, [&](std::uint64_t key) { mp[key] += 1; });
    });
    const std::uint64_t qmask = (bits == 64) ? ~0ull : ((1ull << bits) - 1);
    std::vector<int> ybuf(static_cast<std::size_t>(l));
    for (const auto& mp : shards)
      for (const auto& [key, cnt] : mp) {
        for (int i = 0; i < l; ++i) {
          const int w = (i + 1 < l ? shift[static_cast<std::size_t>(i) + 1] : total_bits) -
                        shift[static_cast<std::size_t>(i)];
          ybuf[static_cast<std::size_t>(i)] =
              static_cast<int>((key >> shift[static_cast<std::size_t>(i)]) & ((1ull << w) - 1));
        }
        builder.add(static_cast<int>(key & qmask), ybuf, BigInt(cnt));
      }
  } else {
    detail::GenericPbwOps ops{&rs};
    std::vector<std::map<detail::GenericPbwKey, long long>> shards(
        static_cast<std::size_t>(nshards));
    parallel_for(static_cast<std::size_t>(nshards), threads, [&](std::size_t si) {
      detail::PbwWalker<detail::GenericPbwKey, detail::GenericPbwOps> walker(rs, M, ops);
      auto& mp = shards[si];
      walker.run(static_cast<int>(si), nshards, [&](const detail::GenericPbwKey& key) { mp[key] += 1; });
    });
    for (const auto& mp : shards)
      for (const auto& [key, cnt] : mp) builder.add(key.q, key.y, BigInt(cnt));
  }
  return std::move(builder).freeze();
}

}  // namespace qpbasis
