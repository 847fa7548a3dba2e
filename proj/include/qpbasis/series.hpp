#pragma once

#include "qpbasis/common.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qpbasis {

// One monomial key q^m * y_1^{e_1} ... y_l^{e_l}.
struct SeriesKey {
  int q = 0;
  std::vector<int> y;  // length = rank of the owning series

  friend bool operator==(const SeriesKey&, const SeriesKey&) = default;
};

// Exact multivariate formal power series in q, y_1..y_l, truncated at a
// q-degree bound M. Terms are kept in canonical order: ascending q-degree,
// then lexicographic y-exponents. Only the q-degree is truncated; finiteness
// of the y-support at each degree is the caller's responsibility.
//
// Storage is struct-of-arrays: per-term q-degree, a flat rank-strided
// exponent array, and the coefficient. This keeps term iteration cheap for
// the large series produced by the higher-rank identity checks.
class TruncatedSeries {
 public:
  TruncatedSeries(int rank, int truncation) : rank_(rank), trunc_(truncation) {
    if (rank < 0) throw ValidationError("series rank must be nonnegative");
    if (truncation < 0) throw ValidationError("series truncation must be nonnegative");
  }

  static TruncatedSeries one(int rank, int truncation) {
    TruncatedSeries s(rank, truncation);
    s.q_.push_back(0);
    s.y_.resize(static_cast<std::size_t>(rank), 0);
    s.c_.emplace_back(1);
    return s;
  }

  int rank() const { return rank_; }
  int truncation() const { return trunc_; }
  std::size_t term_count() const { return q_.size(); }

  int term_q(std::size_t i) const { return q_[i]; }
  std::span<const std::uint16_t> term_y(std::size_t i) const {
    return {y_.data() + i * static_cast<std::size_t>(rank_), static_cast<std::size_t>(rank_)};
  }
  const BigInt& term_coeff(std::size_t i) const { return c_[i]; }

  SeriesKey term_key(std::size_t i) const {
    SeriesKey k;
    k.q = q_[i];
    auto ys = term_y(i);
    k.y.assign(ys.begin(), ys.end());
    return k;
  }

  // Coefficient lookup by exact key; absent terms are zero.
  BigInt coeff(int q, std::span<const int> y) const {
    for (std::size_t i = lower_bound_q(q); i < q_.size() && q_[i] == q; ++i) {
      auto ys = term_y(i);
      bool eq = ys.size() == y.size();
      for (std::size_t j = 0; eq && j < ys.size(); ++j) eq = (static_cast<int>(ys[j]) == y[j]);
      if (eq) return c_[i];
    }
    return BigInt(0);
  }

  BigInt coeff_q(int q) const {  // univariate convenience (rank 0)
    detail::check(rank_ == 0, "coeff_q on multivariate series");
    return coeff(q, {});
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.rank_ == b.rank_ && a.trunc_ == b.trunc_ && a.q_ == b.q_ && a.y_ == b.y_ &&
           a.c_ == b.c_;
  }

  // First key, in canonical order, whose coefficients differ. Truncations may
  // differ; comparison runs up to the smaller bound.
  struct Mismatch {
    SeriesKey key;
    BigInt lhs;
    BigInt rhs;
  };
  static std::optional<Mismatch> first_mismatch(const TruncatedSeries& a,
                                                const TruncatedSeries& b) {
    if (a.rank_ != b.rank_) throw ValidationError("series rank mismatch in comparison");
    const int m = std::min(a.trunc_, b.trunc_);
    std::size_t i = 0, j = 0;
    const auto key_less = [](const TruncatedSeries& s, std::size_t u, const TruncatedSeries& t,
                             std::size_t v) {
      if (s.q_[u] != t.q_[v]) return s.q_[u] < t.q_[v];
      auto yu = s.term_y(u), yv = t.term_y(v);
      return std::lexicographical_compare(yu.begin(), yu.end(), yv.begin(), yv.end());
    };
    while (i < a.q_.size() || j < b.q_.size()) {
      const bool ae = i >= a.q_.size() || a.q_[i] > m;
      const bool be = j >= b.q_.size() || b.q_[j] > m;
      if (ae && be) break;
      if (!ae && (be || key_less(a, i, b, j))) {
        return Mismatch{a.term_key(i), a.c_[i], BigInt(0)};
      }
      if (!be && (ae || key_less(b, j, a, i))) {
        return Mismatch{b.term_key(j), BigInt(0), b.c_[j]};
      }
      if (a.c_[i] != b.c_[j]) return Mismatch{a.term_key(i), a.c_[i], b.c_[j]};
      ++i;
      ++j;
    }
    return std::nullopt;
  }

  // Coefficientwise a <= b up to min truncation (used for the census
  // inclusion chain). Requires equal rank.
  static bool coefficientwise_leq(const TruncatedSeries& a, const TruncatedSeries& b);

  friend TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries ts_specialize_y(const TruncatedSeries& a);
  friend class SeriesBuilder;

 private:
  std::size_t lower_bound_q(int q) const {
    auto it = std::lower_bound(q_.begin(), q_.end(), q);
    return static_cast<std::size_t>(it - q_.begin());
  }

  int rank_;
  int trunc_;
  std::vector<std::int32_t> q_;
  std::vector<std::uint16_t> y_;
  std::vector<BigInt> c_;
};

// Accumulates terms in arbitrary order, then freezes into canonical form.
// Uses a packed 64-bit key when the exponent ranges allow it; otherwise an
// ordered map on the full key. The packed layout puts q in the most
// significant bits followed by y_0, y_1, ..., so raw integer order on keys
// coincides with the canonical (q, lex y) term order.
class SeriesBuilder {
 public:
  // max_y[i] must bound every accumulated exponent of y_i; exceeding it is a
  // logic error. Terms with q > truncation are dropped silently.
  SeriesBuilder(int rank, int truncation, std::span<const int> max_y)
      : rank_(rank), trunc_(truncation) {
    detail::check(static_cast<int>(max_y.size()) == rank, "builder max_y size");
    const int qbits = std::max(1, detail::bit_length(static_cast<std::uint64_t>(trunc_)));
    int total = qbits;
    std::vector<int> width(static_cast<std::size_t>(rank_));
    for (int i = 0; i < rank_; ++i) {
      if (max_y[i] > 0xffff) throw ValidationError("y-exponent exceeds 16-bit term storage");
      width[static_cast<std::size_t>(i)] =
          std::max(1, detail::bit_length(static_cast<std::uint64_t>(max_y[i])));
      total += width[static_cast<std::size_t>(i)];
    }
    packed_ = total <= 64;
    if (packed_) {
      shift_.resize(static_cast<std::size_t>(rank_));
      mask_.resize(static_cast<std::size_t>(rank_));
      int pos = total - qbits;
      qshift_ = pos;
      for (int i = 0; i < rank_; ++i) {
        pos -= width[static_cast<std::size_t>(i)];
        shift_[static_cast<std::size_t>(i)] = pos;
        mask_[static_cast<std::size_t>(i)] = (1ull << width[static_cast<std::size_t>(i)]) - 1;
      }
    }
  }

  void add(int q, std::span<const int> y, const BigInt& c) {
    if (q > trunc_ || c == 0) return;
    detail::check(q >= 0, "negative q-degree");
    if (packed_) {
      fast_[pack(q, y)] += c;
    } else {
      SeriesKey k;
      k.q = q;
      k.y.assign(y.begin(), y.end());
      slow_[std::move(k)] += c;
    }
  }

  TruncatedSeries freeze() && {
    TruncatedSeries out(rank_, trunc_);
    if (packed_) {
      std::vector<std::pair<std::uint64_t, BigInt*>> items;
      items.reserve(fast_.size());
      for (auto& kv : fast_)
        if (kv.second != 0) items.emplace_back(kv.first, &kv.second);
      std::sort(items.begin(), items.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      out.q_.reserve(items.size());
      out.c_.reserve(items.size());
      out.y_.reserve(items.size() * static_cast<std::size_t>(rank_));
      for (auto& [key, cp] : items) {
        out.q_.push_back(static_cast<std::int32_t>(key >> qshift_));
        for (int i = 0; i < rank_; ++i)
          out.y_.push_back(static_cast<std::uint16_t>(
              (key >> shift_[static_cast<std::size_t>(i)]) & mask_[static_cast<std::size_t>(i)]));
        out.c_.push_back(std::move(*cp));
      }
    } else {
      for (auto& [k, c] : slow_) {
        if (c == 0) continue;
        out.q_.push_back(k.q);
        for (int v : k.y) out.y_.push_back(static_cast<std::uint16_t>(v));
        out.c_.push_back(std::move(c));
      }
      // std::map on (q, y) pairs: already sorted q-then-lex.
    }
    return out;
  }

 private:
  std::uint64_t pack(int q, std::span<const int> y) const {
    std::uint64_t key = static_cast<std::uint64_t>(q) << qshift_;
    for (int i = 0; i < rank_; ++i)
      key |= static_cast<std::uint64_t>(y[static_cast<std::size_t>(i)])
             << shift_[static_cast<std::size_t>(i)];
    return key;
  }

  struct KeyLess {
    bool operator()(const SeriesKey& a, const SeriesKey& b) const {
      if (a.q != b.q) return a.q < b.q;
      return a.y < b.y;
    }
  };

  int rank_;
  int trunc_;
  bool packed_ = false;
  int qshift_ = 0;
  std::vector<int> shift_;
  std::vector<std::uint64_t> mask_;
  std::unordered_map<std::uint64_t, BigInt> fast_;
  std::map<SeriesKey, BigInt, KeyLess> slow_;
};

inline bool TruncatedSeries::coefficientwise_leq(const TruncatedSeries& a,
                                                 const TruncatedSeries& b) {
  if (a.rank_ != b.rank_) throw ValidationError("series rank mismatch in comparison");
  const int m = std::min(a.trunc_, b.trunc_);
  std::size_t i = 0, j = 0;
  while (i < a.q_.size() || j < b.q_.size()) {
    const bool ae = i >= a.q_.size() || a.q_[i] > m;
    const bool be = j >= b.q_.size() || b.q_[j] > m;
    if (ae && be) return true;
    if (!ae && be) {
      if (a.c_[i] > 0) return false;
      ++i;
      continue;
    }
    if (ae && !be) {
      if (b.c_[j] < 0) return false;
      ++j;
      continue;
    }
    auto yu = a.term_y(i), yv = b.term_y(j);
    const auto cmpq = a.q_[i] <=> b.q_[j];
    const auto cmpy = cmpq == 0 ? std::lexicographical_compare_three_way(yu.begin(), yu.end(),
                                                                         yv.begin(), yv.end())
                                : cmpq;
    if (cmpy < 0) {
      if (a.c_[i] > 0) return false;
      ++i;
    } else if (cmpy > 0) {
      if (b.c_[j] < 0) return false;
      ++j;
    } else {
      if (a.c_[i] > b.c_[j]) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

inline TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.rank_ != b.rank_) throw ValidationError("ts_add: rank mismatch");
  TruncatedSeries out(a.rank_, std::min(a.trunc_, b.trunc_));
  const int m = out.trunc_;
  std::size_t i = 0, j = 0;
  auto push = [&](const TruncatedSeries& s, std::size_t t, const BigInt& c) {
    if (c == 0) return;
    out.q_.push_back(s.q_[t]);
    auto ys = s.term_y(t);
    out.y_.insert(out.y_.end(), ys.begin(), ys.end());
    out.c_.push_back(c);
  };
  while (i < a.q_.size() || j < b.q_.size()) {
    const bool ae = i >= a.q_.size() || a.q_[i] > m;
    const bool be = j >= b.q_.size() || b.q_[j] > m;
    if (ae && be) break;
    if (!ae && be) {
      push(a, i, a.c_[i]);
      ++i;
      continue;
    }
    if (ae && !be) {
      push(b, j, b.c_[j]);
      ++j;
      continue;
    }
    auto yu = a.term_y(i), yv = b.term_y(j);
    const auto cmpq = a.q_[i] <=> b.q_[j];
    const auto cmp = cmpq == 0 ? std::lexicographical_compare_three_way(yu.begin(), yu.end(),
                                                                        yv.begin(), yv.end())
                               : cmpq;
    if (cmp < 0) {
      push(a, i, a.c_[i]);
      ++i;
    } else if (cmp > 0) {
      push(b, j, b.c_[j]);
      ++j;
    } else {
      push(a, i, a.c_[i] + b.c_[j]);
      ++i;
      ++j;
    }
  }
  return out;
}

inline TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.rank_ != b.rank_) throw ValidationError("ts_mul: rank mismatch");
  const int m = std::min(a.trunc_, b.trunc_);
  const int rank = a.rank_;
  std::vector<int> max_y(static_cast<std::size_t>(rank), 0);
  auto scan = [&](const TruncatedSeries& s, std::vector<int>& mx) {
    mx.assign(static_cast<std::size_t>(rank), 0);
    for (std::size_t i = 0; i < s.q_.size(); ++i) {
      if (s.q_[i] > m) break;
      auto ys = s.term_y(i);
      for (int k = 0; k < rank; ++k)
        mx[static_cast<std::size_t>(k)] =
            std::max(mx[static_cast<std::size_t>(k)], static_cast<int>(ys[static_cast<std::size_t>(k)]));
    }
  };
  std::vector<int> ma, mb;
  scan(a, ma);
  scan(b, mb);
  for (int k = 0; k < rank; ++k)
    max_y[static_cast<std::size_t>(k)] =
        ma[static_cast<std::size_t>(k)] + mb[static_cast<std::size_t>(k)];
  SeriesBuilder builder(rank, m, max_y);

  std::vector<int> ybuf(static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < a.q_.size(); ++i) {
    if (a.q_[i] > m) break;
    const int qa = a.q_[i];
    auto ya = a.term_y(i);
    for (std::size_t j = 0; j < b.q_.size(); ++j) {
      if (b.q_[j] + qa > m) break;
      auto yb = b.term_y(j);
      for (int k = 0; k < rank; ++k)
        ybuf[static_cast<std::size_t>(k)] = static_cast<int>(ya[static_cast<std::size_t>(k)]) +
                                            static_cast<int>(yb[static_cast<std::size_t>(k)]);
      builder.add(qa + b.q_[j], ybuf, a.c_[i] * b.c_[j]);
    }
  }
  return std::move(builder).freeze();
}

// Sets every y_i = 1, collapsing to a univariate (rank 0) series in q.
inline TruncatedSeries ts_specialize_y(const TruncatedSeries& a) {
  TruncatedSeries out(0, a.trunc_);
  std::vector<BigInt> acc(static_cast<std::size_t>(a.trunc_) + 1);
  for (std::size_t i = 0; i < a.q_.size(); ++i) acc[static_cast<std::size_t>(a.q_[i])] += a.c_[i];
  for (int q = 0; q <= a.trunc_; ++q) {
    if (acc[static_cast<std::size_t>(q)] == 0) continue;
    out.q_.push_back(q);
    out.c_.push_back(std::move(acc[static_cast<std::size_t>(q)]));
  }
  return out;
}

// 1 / prod_{n >= 0} (1 - q^{a+n} y^{mon}) truncated at M. The expansion
// collects, for each multiplicity c of the factor monomial, the number of
// partitions of the q-degree into exactly c parts, each part >= a.
inline TruncatedSeries geometric_inverse_factor(std::span<const int> y_mon, int a, int M) {
  if (a < 1) throw ValidationError("geometric_inverse_factor: q-shift must be >= 1");
  const int rank = static_cast<int>(y_mon.size());
  // parts_exact[c][j] = #partitions of j into exactly c parts, each >= a.
  // Shifting each part down by a-1 reduces to parts >= 1.
  const int cmax = M / a;
  std::vector<std::vector<BigInt>> exact(static_cast<std::size_t>(cmax) + 1,
                                         std::vector<BigInt>(static_cast<std::size_t>(M) + 1));
  exact[0][0] = 1;
  // #partitions of j into exactly c parts >= 1 equals #partitions of j-c
  // into at most c parts; build the "at most c parts" table first.
  std::vector<std::vector<BigInt>> atmost(static_cast<std::size_t>(cmax) + 1,
                                          std::vector<BigInt>(static_cast<std::size_t>(M) + 1));
  for (int j = 0; j <= M; ++j) atmost[0][static_cast<std::size_t>(j)] = (j == 0) ? 1 : 0;
  for (int c = 1; c <= cmax; ++c)
    for (int j = 0; j <= M; ++j)
      atmost[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] =
          atmost[static_cast<std::size_t>(c) - 1][static_cast<std::size_t>(j)] +
          (j >= c ? atmost[static_cast<std::size_t>(c)][static_cast<std::size_t>(j - c)] : BigInt(0));
  for (int c = 1; c <= cmax; ++c)
    for (int j = 0; j <= M; ++j) {
      const int shifted = j - c * (a - 1) - c;
      if (shifted >= 0)
        exact[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] =
            atmost[static_cast<std::size_t>(c)][static_cast<std::size_t>(shifted)];
    }

  std::vector<int> max_y(static_cast<std::size_t>(rank), 0);
  for (int k = 0; k < rank; ++k) max_y[static_cast<std::size_t>(k)] = cmax * y_mon[static_cast<std::size_t>(k)];
  SeriesBuilder builder(rank, M, max_y);
  std::vector<int> ybuf(static_cast<std::size_t>(rank));
  for (int c = 0; c <= cmax; ++c) {
    for (int k = 0; k < rank; ++k) ybuf[static_cast<std::size_t>(k)] = c * y_mon[static_cast<std::size_t>(k)];
    for (int j = 0; j <= M; ++j) {
      const BigInt& v = exact[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
      if (v != 0) builder.add(j, ybuf, v);
    }
  }
  return std::move(builder).freeze();
}

// 1/(q;q)_r as a univariate series: sum_j p_r(j) q^j with p_r(j) the number
// of partitions of j into at most r parts.
inline TruncatedSeries inv_q_pochhammer(int r, int M) {
  if (r < 0) throw ValidationError("inv_q_pochhammer: subscript must be >= 0");
  std::vector<BigInt> acc(static_cast<std::size_t>(M) + 1);
  acc[0] = 1;
  for (int part = 1; part <= r && part <= M; ++part)
    for (int j = part; j <= M; ++j)
      acc[static_cast<std::size_t>(j)] += acc[static_cast<std::size_t>(j - part)];
  SeriesBuilder builder(0, M, {});
  for (int j = 0; j <= M; ++j)
    if (acc[static_cast<std::size_t>(j)] != 0) builder.add(j, {}, acc[static_cast<std::size_t>(j)]);
  return std::move(builder).freeze();
}

}  // namespace qpbasis
