#pragma once

#include "qpbasis/monomial.hpp"
#include "qpbasis/quad_form.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace qpbasis {

// One summand of the character sum sides: per color, the dual charge counts
// r_i^{(1)} >= ... >= r_i^{(s)} > 0 together with the minimal total energy
// the configuration admits. The view borrows the enumerator's scratch state
// and is only valid inside the enumeration callback.
struct DualChargeConfig {
  const std::vector<std::vector<int>>* dual_ptr = nullptr;
  long long e_quad = 0;  // diagonal - cross terms
  long long e_min = 0;   // e_quad + rectangular correction

  const std::vector<std::vector<int>>& dual() const { return *dual_ptr; }
  std::vector<std::vector<int>> charges() const {
    std::vector<std::vector<int>> out(dual().size());
    for (std::size_t i = 0; i < dual().size(); ++i) out[i] = dual_to_charge(dual()[i]);
    return out;
  }
};

// The exponent diag - cross evaluated from the printed dual-coordinate
// formula; the enumerator derives it from the slice decomposition instead,
// and the two are cross-checked in the invariant suite.
inline long long exponent_from_dual(const RootSystem& rs, const ModeStructure& ms,
                                    const std::vector<std::vector<int>>& dual) {
  auto get = [](const std::vector<int>& v, int t) {  // 1-based
    return t >= 1 && t <= static_cast<int>(v.size()) ? v[static_cast<std::size_t>(t - 1)] : 0;
  };
  long long diag = 0, cross = 0;
  for (int i = 0; i < rs.rank; ++i) {
    for (int v : dual[static_cast<std::size_t>(i)]) diag += 1ll * v * v;
    for (const auto& ct : ms.cross[static_cast<std::size_t>(i)]) {
      const auto& ds = dual[static_cast<std::size_t>(ct.partner)];
      const auto& di = dual[static_cast<std::size_t>(i)];
      for (int tt = 1; tt <= static_cast<int>(ds.size()); ++tt) {
        long long block = 0;
        for (int p = 0; p < ct.scale; ++p) block += get(di, ct.scale * tt - p);
        cross += static_cast<long long>(ds[static_cast<std::size_t>(tt - 1)]) * block;
      }
    }
  }
  return diag - cross;
}

// Exhaustive generator of all dual-charge configurations whose minimal
// energy is <= M, for one root system and weight spec.
//
// Grouping index t of color i into blocks of nu_i, the exponent diag - cross
// splits into a sum over blocks ("slices") of one fixed quadratic form Q0 in
// sum(nu_i) variables. Q0 is assembled exactly and checked positive definite
// by rational LDL^T (abort otherwise, never risk silent incompleteness).
// Positive definiteness and integrality give:
//   - every nonzero slice contributes an integer >= 1, so at most M slices
//     are active and the active ones form a prefix;
//   - per-coordinate bounds from the inverse diagonal of Q0.
// A configuration is then exactly a chain u_1, u_2, ... of vectors from the
// finite ball {u >= 0 integer, non-increasing inside each color's offsets,
// Q0(u) <= M} such that consecutive slices are compatible (each color's
// first offset in u_{tau+1} is at most its last offset in u_tau) and the Q0
// values sum to at most M. Every chain node is itself an admissible
// configuration, so the walk touches no dead branches beyond the budget
// boundary. The ball is enumerated coordinate by coordinate with
// Schur-complement prefix bounds of Q0; those are exact real-relaxation
// minima and never exclude an admissible vector.
class ConfigEnumerator {
 public:
  ConfigEnumerator(const RootSystem& rs, const ModeStructure& ms, int M)
      : rs_(rs), ms_(ms), M_(M) {
    const int l = rs.rank;
    slices_ = ms.level > 0 ? std::min(ms.level, M) : M;
    base_.assign(static_cast<std::size_t>(l), 0);
    dim_ = 0;
    for (int oi = 0; oi < l; ++oi) {
      const int c = ms.order[static_cast<std::size_t>(oi)];
      base_[static_cast<std::size_t>(c)] = dim_;
      dim_ += rs.nu[static_cast<std::size_t>(c)];
    }

    RationalMatrix q0(dim_);
    for (int i = 0; i < dim_; ++i) q0.at(i, i) = 1;
    for (int color = 0; color < l; ++color) {
      for (const auto& ct : ms.cross[static_cast<std::size_t>(color)]) {
        const int nu_s = rs.nu[static_cast<std::size_t>(ct.partner)];
        for (int cp = 0; cp < nu_s; ++cp) {
          const int a = base_[static_cast<std::size_t>(ct.partner)] + cp;
          for (int off = ct.scale * cp; off < ct.scale * (cp + 1); ++off) {
            const int b = base_[static_cast<std::size_t>(color)] + off;
            q0.at(a, b) -= Rational(1, 2);
            q0.at(b, a) -= Rational(1, 2);
          }
        }
      }
    }
    if (!q0.positive_definite())
      throw EnumerationAbort("minimal-energy quadratic form of " + rs.spec.name() +
                             " failed the positive-definiteness check; enumeration aborted");

    auto inv = q0.inverse();
    detail::check(inv.has_value(), "positive definite form must be invertible");
    rmax_.assign(static_cast<std::size_t>(dim_), 0);
    for (int j = 0; j < dim_; ++j) {
      const Rational d = inv->at(j, j);
      rmax_[static_cast<std::size_t>(j)] = floor_sqrt_ratio(
          BigInt(M) * boost::multiprecision::numerator(d), boost::multiprecision::denominator(d));
    }

    // Schur prefix matrices S_d of Q0 over a common denominator; S_dim = Q0.
    std::vector<RationalMatrix> schur(static_cast<std::size_t>(dim_) + 1);
    BigInt den = 1;
    for (int d = 0; d <= dim_; ++d) {
      schur[static_cast<std::size_t>(d)] = q0.schur_leading(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          den = boost::multiprecision::lcm(
              den, boost::multiprecision::denominator(schur[static_cast<std::size_t>(d)].at(i, j)));
    }
    num_.assign(static_cast<std::size_t>(dim_) + 1, {});
    BigInt max_abs = 0;
    for (int d = 0; d <= dim_; ++d) {
      auto& nd = num_[static_cast<std::size_t>(d)];
      nd.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const Rational v = schur[static_cast<std::size_t>(d)].at(i, j) * Rational(den);
          detail::check(boost::multiprecision::denominator(v) == 1, "Schur scaling by lcm");
          const BigInt n = boost::multiprecision::numerator(v);
          max_abs = std::max(max_abs, BigInt(boost::multiprecision::abs(n)));
          nd[static_cast<std::size_t>(i) * d + j] = n.convert_to<long long>();
        }
    }
    long long rbig = 1;
    for (long long r : rmax_) rbig = std::max(rbig, r);
    if (max_abs > BigInt(1) << 40 || BigInt(rbig) * rbig > BigInt(1) << 40 ||
        den > BigInt(1) << 30)
      throw EnumerationAbort("quadratic-form bound magnitudes exceed the evaluation budget");
    den_ll_ = den.convert_to<long long>();

    if (slices_ > 0) build_ball();
  }

  int slice_count() const { return slices_; }
  std::size_t ball_size() const { return ball_q0_.size(); }
  long long coordinate_bound(int color, int offset) const {
    return rmax_[static_cast<std::size_t>(base_[static_cast<std::size_t>(color)] + offset)];
  }

  // Enumerates the shard-th of nshards deterministic partitions of the
  // config set; sharding splits on the first slice vector.
  template <class F>
  void enumerate(int shard, int nshards, F&& cb) const {
    Chain chain;
    chain.dual.assign(static_cast<std::size_t>(rs_.rank), {});
    for (int i = 0; i < rs_.rank; ++i)
      chain.dual[static_cast<std::size_t>(i)].reserve(
          static_cast<std::size_t>(rs_.nu[static_cast<std::size_t>(i)] * slices_ + 1));
    chain.shard = shard;
    chain.nshards = nshards;
    if (shard == 0 || nshards <= 1) {
      DualChargeConfig empty;
      empty.dual_ptr = &chain.dual;
      if (M_ >= 0) cb(empty);  // the empty configuration
    }
    if (slices_ > 0) walk(chain, 0, 0, M_, 0, 0, cb);
  }

 private:
  struct Chain {
    std::vector<std::vector<int>> dual;
    int shard = 0;
    int nshards = 1;
  };

  const long long* entry(std::size_t idx) const {
    return ball_coords_.data() + idx * static_cast<std::size_t>(dim_);
  }

  // Appends ball entry `idx` as the next slice; returns the rectangular
  // correction gained. A zero offset ends the color's support for good.
  long long push_slice(Chain& chain, std::size_t idx) const {
    const long long* u = entry(idx);
    long long rect_gain = 0;
    for (int color = 0; color < rs_.rank; ++color) {
      auto& d = chain.dual[static_cast<std::size_t>(color)];
      const int nu = rs_.nu[static_cast<std::size_t>(color)];
      for (int c = 0; c < nu; ++c) {
        const long long v = u[base_[static_cast<std::size_t>(color)] + c];
        if (v == 0) break;
        d.push_back(static_cast<int>(v));
        if (color == ms_.rect_color && static_cast<int>(d.size()) > ms_.rect_k0) rect_gain += v;
      }
    }
    return rect_gain;
  }

  void pop_slice(Chain& chain, std::size_t idx) const {
    const long long* u = entry(idx);
    for (int color = 0; color < rs_.rank; ++color) {
      auto& d = chain.dual[static_cast<std::size_t>(color)];
      const int nu = rs_.nu[static_cast<std::size_t>(color)];
      for (int c = 0; c < nu; ++c) {
        if (u[base_[static_cast<std::size_t>(color)] + c] == 0) break;
        d.pop_back();
      }
    }
  }

  // Consecutive slices are compatible iff each color's dual stays
  // non-increasing across the boundary.
  bool boundary_ok(const long long* prev, const long long* next) const {
    for (int color = 0; color < rs_.rank; ++color) {
      const int b = base_[static_cast<std::size_t>(color)];
      const int nu = rs_.nu[static_cast<std::size_t>(color)];
      if (next[b] > prev[b + nu - 1]) return false;
    }
    return true;
  }

  template <class F>
  void walk(Chain& chain, int tau, std::size_t prev_idx, long long rem, long long e_quad,
            long long rect, F& cb) const {
    if (tau >= slices_ || rem < 1) return;
    const std::size_t n = ball_q0_.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
      const long long q0 = ball_q0_[idx];
      if (q0 > rem) break;  // ball sorted by Q0 value
      if (tau == 0) {
        if (chain.nshards > 1 &&
            static_cast<long long>(idx) % chain.nshards != chain.shard)
          continue;
      } else if (!boundary_ok(entry(prev_idx), entry(idx))) {
        continue;
      }
      const long long gain = push_slice(chain, idx);
      DualChargeConfig cfg;
      cfg.dual_ptr = &chain.dual;
      cfg.e_quad = e_quad + q0;
      cfg.e_min = cfg.e_quad + rect + gain;
      if (cfg.e_min <= M_) {
        cb(cfg);
        walk(chain, tau + 1, idx, rem - q0, cfg.e_quad, rect + gain, cb);
      }
      pop_slice(chain, idx);
    }
  }

  // --- single-slice ball enumeration -------------------------------------

  __int128 eval_prefix(const std::vector<long long>& vals, int d) const {
    const auto& nd = num_[static_cast<std::size_t>(d)];
    __int128 s = 0;
    for (int i = 0; i < d; ++i) {
      if (vals[static_cast<std::size_t>(i)] == 0) continue;
      __int128 row = 0;
      for (int j = 0; j < d; ++j)
        row += static_cast<__int128>(nd[static_cast<std::size_t>(i) * d + j]) *
               vals[static_cast<std::size_t>(j)];
      s += static_cast<__int128>(vals[static_cast<std::size_t>(i)]) * row;
    }
    return s;
  }

  void build_ball() {
    std::vector<long long> vals(static_cast<std::size_t>(dim_), 0);
    ball_dfs(vals, 0, static_cast<__int128>(M_) * den_ll_);
    // Order by exact Q0 value, then coordinates: deterministic, and sorted
    // for the budget break in walk().
    const std::size_t n = ball_q0_.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      if (ball_q0_[a] != ball_q0_[b]) return ball_q0_[a] < ball_q0_[b];
      for (int j = 0; j < dim_; ++j) {
        const long long va = ball_coords_[a * dim_ + static_cast<std::size_t>(j)];
        const long long vb = ball_coords_[b * dim_ + static_cast<std::size_t>(j)];
        if (va != vb) return va < vb;
      }
      return false;
    });
    std::vector<long long> q0s(n);
    std::vector<long long> coords(n * static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < n; ++i) {
      q0s[i] = ball_q0_[perm[i]];
      for (int j = 0; j < dim_; ++j)
        coords[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j)] =
            ball_coords_[perm[i] * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j)];
    }
    ball_q0_ = std::move(q0s);
    ball_coords_ = std::move(coords);
  }

  void ball_dfs(std::vector<long long>& vals, int coord, __int128 limit) {
    if (coord == dim_) {
      const __int128 q0 = eval_prefix(vals, dim_);
      detail::check(q0 % den_ll_ == 0, "slice value must be divisible by the common denominator");
      const long long v = static_cast<long long>(q0 / den_ll_);
      detail::check(v >= 0, "slice form must be nonnegative");
      if (v >= 1) {  // the zero vector is no slice; stopping covers it
        ball_q0_.push_back(v);
        ball_coords_.insert(ball_coords_.end(), vals.begin(), vals.end());
      }
      return;
    }
    int color = -1;
    for (int i = 0; i < rs_.rank; ++i)
      if (base_[static_cast<std::size_t>(i)] <= coord &&
          coord < base_[static_cast<std::size_t>(i)] + rs_.nu[static_cast<std::size_t>(i)])
        color = i;
    // Non-increasing inside a color's offsets.
    const bool first_offset = coord == base_[static_cast<std::size_t>(color)];
    const long long cap =
        first_offset ? rmax_[static_cast<std::size_t>(coord)]
                     : std::min(rmax_[static_cast<std::size_t>(coord)],
                                vals[static_cast<std::size_t>(coord) - 1]);

    // den * Q0 over the prefix is quadratic in the new coordinate.
    const auto& nsub = num_[static_cast<std::size_t>(coord) + 1];
    const long long* rowq = nsub.data() + static_cast<std::size_t>(coord) * (coord + 1);
    const __int128 cq = eval_prefix(vals, coord + 1);  // value with this coord zero
    const long long aq = rowq[coord];
    __int128 bq = 0;
    for (int j = 0; j < coord; ++j)
      bq += static_cast<__int128>(rowq[j]) * vals[static_cast<std::size_t>(j)];
    bq *= 2;

    for (long long v = cap; v >= 0; --v) {
      // Schur prefix bound: nothing admissible lies beyond it.
      if (cq + static_cast<__int128>(aq) * v * v + bq * v > limit) continue;
      vals[static_cast<std::size_t>(coord)] = v;
      ball_dfs(vals, coord + 1, limit);
      vals[static_cast<std::size_t>(coord)] = 0;
    }
  }

  const RootSystem& rs_;
  const ModeStructure& ms_;
  int M_;
  int slices_ = 0;
  int dim_ = 0;
  std::vector<int> base_;
  std::vector<long long> rmax_;
  std::vector<std::vector<long long>> num_;  // Schur prefix matrices * den
  long long den_ll_ = 1;
  std::vector<long long> ball_q0_;     // sorted ascending
  std::vector<long long> ball_coords_; // dim_ entries per ball vector
};

}  // namespace qpbasis
