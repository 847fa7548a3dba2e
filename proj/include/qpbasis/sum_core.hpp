#pragma once

#include "qpbasis/config_enum.hpp"
#include "qpbasis/parallel.hpp"
#include "qpbasis/series.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qpbasis {
namespace detail {

// Truncated product of univariate coefficient vectors.
inline void poly_mul_inplace(std::vector<BigInt>& a, const std::vector<BigInt>& b, int M) {
  std::vector<BigInt> out(static_cast<std::size_t>(M) + 1);
  for (int i = 0; i <= M && i < static_cast<int>(a.size()); ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; i + j <= M && j < static_cast<int>(b.size()); ++j) {
      if (b[static_cast<std::size_t>(j)] == 0) continue;
      out[static_cast<std::size_t>(i + j)] +=
          a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  a = std::move(out);
}

// p_r(j) table: partitions of j into at most r parts, j <= M.
inline std::vector<BigInt> inv_poch_vector(int r, int M) {
  std::vector<BigInt> acc(static_cast<std::size_t>(M) + 1);
  acc[0] = 1;
  for (int part = 1; part <= r && part <= M; ++part)
    for (int j = part; j <= M; ++j)
      acc[static_cast<std::size_t>(j)] += acc[static_cast<std::size_t>(j - part)];
  return acc;
}

// Counts every slack-delta assignment with weighted sum <= budget, bucketed
// by the sum. Weights ascend, so the scan can stop at the first overflow.
// Each iteration of the inner loop yields at least one assignment, keeping
// the walk linear in the number of monomials counted.
inline void count_assignments(const int* w, int n, int idx, int used, int budget,
                              long long* counts) {
  counts[used] += 1;
  for (int j = idx; j < n; ++j) {
    const int rem = budget - used;
    if (w[j] > rem) break;
    for (int t = 1; t * w[j] <= rem; ++t)
      count_assignments(w, n, j + 1, used + t * w[j], budget, counts);
  }
}

// Everything a configuration contributes is a function of the multiset of
// its conjugate differences d = r^{(t)} - r^{(t+1)} (the run lengths of
// equal charges):
//   - the explicit slack-count column, one entry per extra energy, obtained
//     by walking every delta assignment of the weight multiset
//     {L, L-1, ..., 1 per run of length L};
//   - the expanded denominator prod 1/(q;q)_d.
// Both are cached per difference multiset.
class DiffCache {
 public:
  explicit DiffCache(int M, bool want_counts, bool want_sums)
      : M_(M), want_counts_(want_counts), want_sums_(want_sums) {}

  struct Entry {
    std::vector<long long> counts;  // by extra energy, valid through counts_budget
    int counts_budget = -1;
    std::vector<BigInt> u;  // denominator expansion, length M+1
  };

  // diffs must be sorted ascending. The slack-count column is (re)walked
  // lazily up to the largest budget this multiset has been queried with;
  // counts below any cap are independent of it.
  const Entry& get(const std::vector<int>& diffs, int budget) {
    Entry* e = nullptr;
    const std::uint64_t packed = pack(diffs);
    if (packed != kUnpackable) {
      auto [it, fresh] = fast_.emplace(packed, entries_.size());
      if (fresh) entries_.push_back(build(diffs));
      e = &entries_[it->second];
    } else {
      auto [it, fresh] = slow_.emplace(diffs, entries_.size());
      if (fresh) entries_.push_back(build(diffs));
      e = &entries_[it->second];
    }
    if (want_counts_ && e->counts_budget < budget) {
      std::vector<int> weights;
      for (int d : diffs)
        for (int w = 1; w <= d; ++w) weights.push_back(w);
      std::sort(weights.begin(), weights.end());
      e->counts.assign(static_cast<std::size_t>(budget) + 1, 0);
      count_assignments(weights.data(), static_cast<int>(weights.size()), 0, 0, budget,
                        e->counts.data());
      e->counts_budget = budget;
    }
    return *e;
  }

 private:
  static constexpr std::uint64_t kUnpackable = ~0ull;

  static std::uint64_t pack(const std::vector<int>& diffs) {
    if (diffs.size() > 10) return kUnpackable;
    std::uint64_t key = 1;  // distinguishes sizes
    for (int d : diffs) {
      if (d >= 63) return kUnpackable;
      key = (key << 6) | static_cast<std::uint64_t>(d);
    }
    return key;
  }

  Entry build(const std::vector<int>& diffs) const {
    Entry e;
    if (want_sums_) {
      e.u.assign(static_cast<std::size_t>(M_) + 1, BigInt(0));
      e.u[0] = 1;
      for (int d : diffs) poly_mul_inplace(e.u, inv_poch_vector(d, M_), M_);
    }
    return e;
  }

  int M_;
  bool want_counts_;
  bool want_sums_;
  std::unordered_map<std::uint64_t, std::size_t> fast_;
  std::map<std::vector<int>, std::size_t> slow_;
  std::deque<Entry> entries_;  // reference-stable
};

// One pass over all dual-charge configurations, producing the census counts
// (explicit monomial enumeration) and/or the character sum side (pochhammer
// denominators), accumulated per (q, color-type).
struct SumCoreResult {
  std::map<std::pair<int, std::vector<int>>, BigInt> census_counts;
  std::map<std::pair<int, std::vector<int>>, BigInt> sum_coeffs;
  std::uint64_t config_count = 0;
};

inline SumCoreResult sum_core(const RootSystem& rs, const ModeStructure& ms, int M,
                              bool want_census, bool want_sum, int threads_requested) {
  ConfigEnumerator ce(rs, ms, M);
  const int threads = resolve_threads(threads_requested);
  const int nshards = std::max(1, 4 * threads);

  struct Cols {
    std::vector<long long> cnt;
    std::vector<BigInt> sum;
  };
  struct Shard {
    std::map<std::vector<int>, Cols> by_type;
    std::uint64_t configs = 0;
  };
  std::vector<Shard> shards(static_cast<std::size_t>(nshards));

  parallel_for(static_cast<std::size_t>(nshards), threads, [&](std::size_t si) {
    Shard& sh = shards[si];
    DiffCache cache(M, want_census, want_sum);
    std::vector<int> diffs;
    std::vector<int> ctype(static_cast<std::size_t>(rs.rank));
    ce.enumerate(static_cast<int>(si), nshards, [&](const DualChargeConfig& cfg) {
      sh.configs += 1;
      const int budget = static_cast<int>(M - cfg.e_min);
      diffs.clear();
      for (int i = 0; i < rs.rank; ++i) {
        const auto& d = cfg.dual()[static_cast<std::size_t>(i)];
        int n = 0;
        for (std::size_t t = 0; t < d.size(); ++t) {
          const int diff = d[t] - (t + 1 < d.size() ? d[t + 1] : 0);
          n += d[t];
          if (diff != 0) diffs.push_back(diff);
        }
        ctype[static_cast<std::size_t>(i)] = n;
      }
      std::sort(diffs.begin(), diffs.end());
      const DiffCache::Entry& entry = cache.get(diffs, budget);
      auto it = sh.by_type.find(ctype);
      if (it == sh.by_type.end()) it = sh.by_type.emplace(ctype, Cols{}).first;
      Cols& cols = it->second;
      if (want_census) {
        if (cols.cnt.empty()) cols.cnt.assign(static_cast<std::size_t>(M) + 1, 0);
        for (int s = 0; s <= budget; ++s)
          cols.cnt[static_cast<std::size_t>(cfg.e_min + s)] +=
              entry.counts[static_cast<std::size_t>(s)];
      }
      if (want_sum) {
        if (cols.sum.empty()) cols.sum.assign(static_cast<std::size_t>(M) + 1, BigInt(0));
        for (int j = 0; j <= budget; ++j)
          if (entry.u[static_cast<std::size_t>(j)] != 0)
            cols.sum[static_cast<std::size_t>(cfg.e_min + j)] +=
                entry.u[static_cast<std::size_t>(j)];
      }
    });
  });

  SumCoreResult out;
  for (auto& sh : shards) {
    out.config_count += sh.configs;
    for (auto& [ctype, cols] : sh.by_type) {
      for (int q = 0; q <= M; ++q) {
        if (!cols.cnt.empty() && cols.cnt[static_cast<std::size_t>(q)] != 0)
          out.census_counts[{q, ctype}] += cols.cnt[static_cast<std::size_t>(q)];
        if (!cols.sum.empty() && cols.sum[static_cast<std::size_t>(q)] != 0)
          out.sum_coeffs[{q, ctype}] += cols.sum[static_cast<std::size_t>(q)];
      }
    }
  }
  return out;
}

inline TruncatedSeries keyed_to_series(
    const std::map<std::pair<int, std::vector<int>>, BigInt>& coeffs, int rank, int M) {
  std::vector<int> max_y(static_cast<std::size_t>(rank), 0);
  for (const auto& [key, c] : coeffs)
    for (int i = 0; i < rank; ++i)
      max_y[static_cast<std::size_t>(i)] =
          std::max(max_y[static_cast<std::size_t>(i)], key.second[static_cast<std::size_t>(i)]);
  SeriesBuilder builder(rank, M, max_y);
  for (const auto& [key, c] : coeffs) builder.add(key.first, key.second, c);
  return std::move(builder).freeze();
}

}  // namespace detail
}  // namespace qpbasis
