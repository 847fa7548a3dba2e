#pragma once

#include "qpbasis/weight_spec.hpp"

#include <algorithm>
#include <span>
#include <vector>

namespace qpbasis {

// The coefficient x_{n alpha_i}(m) of x_{alpha_i}(z)^n: color i, charge n,
// energy -m. The stored mode m contributes q^{-m} to the character grading.
struct QuasiParticle {
  int color = 0;   // 0-based
  int charge = 1;  // n >= 1
  int mode = 0;    // m; energy is -m

  friend bool operator==(const QuasiParticle&, const QuasiParticle&) = default;
};

// A quasi-particle monomial: for each color, the positions p = 0..r-1 with
// charges non-increasing in p. Energies within a run of equal charges are
// strictly decreasing once the monomial passes (c1); the stored form only
// requires the charge ordering.
struct QPMonomial {
  std::vector<std::vector<QuasiParticle>> blocks;  // indexed by color

  explicit QPMonomial(int rank) : blocks(static_cast<std::size_t>(rank)) {}
  QPMonomial() = default;

  int rank() const { return static_cast<int>(blocks.size()); }

  bool charge_ordered() const {
    for (int i = 0; i < rank(); ++i) {
      const auto& b = blocks[static_cast<std::size_t>(i)];
      for (std::size_t p = 0; p < b.size(); ++p) {
        if (b[p].color != i || b[p].charge < 1) return false;
        if (p + 1 < b.size() && b[p + 1].charge > b[p].charge) return false;
      }
    }
    return true;
  }

  std::vector<int> color_type() const {
    std::vector<int> n(static_cast<std::size_t>(rank()), 0);
    for (int i = 0; i < rank(); ++i)
      for (const auto& qp : blocks[static_cast<std::size_t>(i)])
        n[static_cast<std::size_t>(i)] += qp.charge;
    return n;
  }

  // Total energy sum(-m); the q-degree of the monomial.
  long long total_energy() const {
    long long e = 0;
    for (const auto& b : blocks)
      for (const auto& qp : b) e -= qp.mode;
    return e;
  }

  bool empty() const {
    for (const auto& b : blocks)
      if (!b.empty()) return false;
    return true;
  }
};

// Conjugate-partition duality between a non-increasing charge list and the
// counts r^{(t)} = #{p : charge_p >= t}.
inline std::vector<int> charge_to_dual(std::span<const int> charges) {
  for (std::size_t p = 0; p < charges.size(); ++p) {
    if (charges[p] < 1) throw ValidationError("charges must be positive");
    if (p + 1 < charges.size() && charges[p + 1] > charges[p])
      throw ValidationError("charges must be non-increasing");
  }
  if (charges.empty()) return {};
  std::vector<int> dual(static_cast<std::size_t>(charges[0]), 0);
  for (int c : charges)
    for (int t = 0; t < c; ++t) dual[static_cast<std::size_t>(t)] += 1;
  return dual;
}

inline std::vector<int> dual_to_charge(std::span<const int> dual) {
  for (std::size_t t = 0; t < dual.size(); ++t) {
    if (dual[t] < 1) throw ValidationError("dual counts must be positive");
    if (t + 1 < dual.size() && dual[t + 1] > dual[t])
      throw ValidationError("dual counts must be non-increasing");
  }
  if (dual.empty()) return {};
  std::vector<int> charges(static_cast<std::size_t>(dual[0]), 0);
  for (int r : dual)
    for (int p = 0; p < r; ++p) charges[static_cast<std::size_t>(p)] += 1;
  return charges;
}

// (c1): adjacent equal charges force an energy gap of at least 2n.
inline bool c1_satisfied(std::span<const QuasiParticle> block) {
  for (std::size_t p = 0; p + 1 < block.size(); ++p) {
    if (block[p + 1].charge > block[p].charge)
      throw ValidationError("c1: charges must be non-increasing");
    if (block[p + 1].charge == block[p].charge &&
        block[p + 1].mode > block[p].mode - 2 * block[p].charge)
      return false;
  }
  return true;
}

// The maximal admissible mode m_{p,i} under (c2) / (c2') / the alternative
// type-E conditions, for the quasi-particle at 0-based position p of color i:
//
//   -n_{p,i} + sum over partner colors s, sum_q min(mu * n_{q,s}, n_{p,i})
//   - 2p * n_{p,i} - [rectangular, i = j] * max(0, n_{p,i} - k0).
inline long long c2_bound(const ModeStructure& ms, std::span<const std::vector<int>> charges,
                          int color, int p) {
  const auto& block = charges[static_cast<std::size_t>(color)];
  const long long n = block[static_cast<std::size_t>(p)];
  long long bound = -n - 2ll * p * n;
  for (const auto& ct : ms.cross[static_cast<std::size_t>(color)])
    for (int nq : charges[static_cast<std::size_t>(ct.partner)])
      bound += std::min<long long>(static_cast<long long>(ct.scale) * nq, n);
  if (color == ms.rect_color && n > ms.rect_k0) bound -= n - ms.rect_k0;
  return bound;
}

inline long long c2_bound(const RootSystem& rs, const WeightSpec& w, const QPMonomial& mono,
                          int color, int p) {
  const ModeStructure ms = mode_structure(rs, w);
  std::vector<std::vector<int>> charges(static_cast<std::size_t>(rs.rank));
  for (int i = 0; i < rs.rank; ++i)
    for (const auto& qp : mono.blocks[static_cast<std::size_t>(i)])
      charges[static_cast<std::size_t>(i)].push_back(qp.charge);
  return c2_bound(ms, charges, color, p);
}

// (c3): every charge obeys its color's cap k*nu_i.
inline bool c3_satisfied(const RootSystem& rs, int k, const QPMonomial& mono) {
  for (int i = 0; i < rs.rank; ++i)
    for (const auto& qp : mono.blocks[static_cast<std::size_t>(i)])
      if (qp.charge > k * rs.nu[static_cast<std::size_t>(i)]) return false;
  return true;
}

// All difference conditions of the given weight spec. The monomial must be
// charge-ordered; (c3) applies exactly when the spec carries a level cap.
inline bool satisfies_all(const RootSystem& rs, const WeightSpec& w, const QPMonomial& mono) {
  if (mono.rank() != rs.rank) throw ValidationError("monomial rank mismatch");
  if (!mono.charge_ordered()) throw ValidationError("monomial is not charge-ordered");
  const ModeStructure ms = mode_structure(rs, w);

  std::vector<std::vector<int>> charges(static_cast<std::size_t>(rs.rank));
  for (int i = 0; i < rs.rank; ++i) {
    const auto& b = mono.blocks[static_cast<std::size_t>(i)];
    if (!c1_satisfied(b)) return false;
    for (const auto& qp : b) {
      if (ms.charge_cap[static_cast<std::size_t>(i)] < qp.charge) return false;  // (c3)
      charges[static_cast<std::size_t>(i)].push_back(qp.charge);
    }
  }
  for (int i = 0; i < rs.rank; ++i) {
    const auto& b = mono.blocks[static_cast<std::size_t>(i)];
    for (std::size_t p = 0; p < b.size(); ++p)
      if (b[p].mode > c2_bound(ms, charges, i, static_cast<int>(p))) return false;
  }
  return true;
}

// The strict linear order on monomials of equal color-type: charge-types
// first, then energy-types, both compared as sequences read from the color-1
// position-1 entry outward. A sequence that runs out while matching is the
// smaller one.
inline int sequence_cmp(std::span<const long long> x, std::span<const long long> y) {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t s = 0; s < n; ++s) {
    if (x[s] != y[s]) return x[s] < y[s] ? -1 : 1;
  }
  if (x.size() == y.size()) return 0;
  return x.size() < y.size() ? -1 : 1;
}

inline int compare_monomials(const QPMonomial& a, const QPMonomial& b) {
  if (a.color_type() != b.color_type())
    throw ValidationError("compare_monomials: color types differ");
  auto charge_seq = [](const QPMonomial& m) {
    std::vector<long long> s;
    for (const auto& block : m.blocks)
      for (const auto& qp : block) s.push_back(qp.charge);
    return s;
  };
  auto energy_seq = [](const QPMonomial& m) {
    std::vector<long long> s;
    for (const auto& block : m.blocks)
      for (const auto& qp : block) s.push_back(qp.mode);
    return s;
  };
  const auto ca = charge_seq(a), cb = charge_seq(b);
  if (int c = sequence_cmp(ca, cb); c != 0) return c;
  const auto ea = energy_seq(a), eb = energy_seq(b);
  return sequence_cmp(ea, eb);
}

// The five F_4 dual-charge identities used by the character proof, over the
// full support of the monomial's dual charge-types:
//   sum_p (2(p-1)+1) n_{p,i}            = sum_t r_i^{(t)}^2           (i = 1..4)
//   sum_{p,q} min(n_{p,2}, n_{q,1})     = sum_t r_1^{(t)} r_2^{(t)}
//   sum_{p,q} min(n_{p,4}, n_{q,3})     = sum_t r_3^{(t)} r_4^{(t)}
//   sum_{p,q} min(n_{p,3}, 2 n_{q,2})   = sum_t r_2^{(t)} (r_3^{(2t-1)} + r_3^{(2t)})
inline bool check_uvjet(const RootSystem& rs, const QPMonomial& mono) {
  if (rs.spec.family != Family::F || rs.rank != 4)
    throw ValidationError("check_uvjet is specific to F_4");
  if (!mono.charge_ordered()) throw ValidationError("monomial is not charge-ordered");

  std::vector<std::vector<int>> charges(4), dual(4);
  for (int i = 0; i < 4; ++i) {
    for (const auto& qp : mono.blocks[static_cast<std::size_t>(i)])
      charges[static_cast<std::size_t>(i)].push_back(qp.charge);
    dual[static_cast<std::size_t>(i)] = charge_to_dual(charges[static_cast<std::size_t>(i)]);
  }
  auto r = [&](int i, int t) {  // 1-based t
    const auto& d = dual[static_cast<std::size_t>(i)];
    return t >= 1 && t <= static_cast<int>(d.size()) ? d[static_cast<std::size_t>(t - 1)] : 0;
  };

  for (int i = 0; i < 4; ++i) {
    long long lhs = 0, rhs = 0;
    const auto& c = charges[static_cast<std::size_t>(i)];
    for (std::size_t p = 0; p < c.size(); ++p) lhs += (2ll * static_cast<long long>(p) + 1) * c[p];
    for (int v : dual[static_cast<std::size_t>(i)]) rhs += 1ll * v * v;
    if (lhs != rhs) return false;
  }
  auto min_cross = [&](int ci, int cj, int scale_j) {
    long long s = 0;
    for (int np : charges[static_cast<std::size_t>(ci)])
      for (int nq : charges[static_cast<std::size_t>(cj)])
        s += std::min<long long>(np, static_cast<long long>(scale_j) * nq);
    return s;
  };
  {
    long long rhs = 0;
    for (int t = 1; t <= std::max<int>(static_cast<int>(dual[0].size()), static_cast<int>(dual[1].size())); ++t)
      rhs += 1ll * r(0, t) * r(1, t);
    if (min_cross(1, 0, 1) != rhs) return false;
  }
  {
    long long rhs = 0;
    for (int t = 1; t <= std::max<int>(static_cast<int>(dual[2].size()), static_cast<int>(dual[3].size())); ++t)
      rhs += 1ll * r(2, t) * r(3, t);
    if (min_cross(3, 2, 1) != rhs) return false;
  }
  {
    long long rhs = 0;
    for (int t = 1; t <= static_cast<int>(dual[1].size()); ++t)
      rhs += 1ll * r(1, t) * (r(2, 2 * t - 1) + r(2, 2 * t));
    if (min_cross(2, 1, 2) != rhs) return false;
  }
  return true;
}

}  // namespace qpbasis
