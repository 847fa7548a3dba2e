#pragma once

#include "qpbasis/root_system.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace qpbasis {

// Highest-weight selector for the principal subspace under study.
//   GenericVerma   W of N(k Lambda_0); conditions (c1), (c2), no charge cap
//   Standard       W of L(k Lambda_0); adds the integrability cap (c3)
//   Rectangular    W of L(k0 Lambda_0 + kj Lambda_j), types D, E6, E7
//   AltE           the alternative bases of W of L(k Lambda_0), types E6/E7/E8
struct WeightSpec {
  enum class Mode { GenericVerma, Standard, Rectangular, AltE };

  Mode mode = Mode::GenericVerma;
  int k = 0;                  // Standard / AltE level
  int k0 = 0, j = 0, kj = 0;  // Rectangular: Lambda = k0*L_0 + kj*L_j (j is 1-based)

  static WeightSpec generic_verma() { return {Mode::GenericVerma, 0, 0, 0, 0}; }
  static WeightSpec standard(int k) { return {Mode::Standard, k, 0, 0, 0}; }
  static WeightSpec rectangular(int k0, int j, int kj) { return {Mode::Rectangular, 0, k0, j, kj}; }
  static WeightSpec alt_e(int k) { return {Mode::AltE, k, 0, 0, 0}; }

  // Total level; 0 means uncapped (generalized Verma).
  int level() const {
    switch (mode) {
      case Mode::GenericVerma: return 0;
      case Mode::Standard:
      case Mode::AltE: return k;
      case Mode::Rectangular: return k0 + kj;
    }
    return 0;
  }

  void validate(const RootSystem& rs) const {
    switch (mode) {
      case Mode::GenericVerma:
        return;
      case Mode::Standard:
        if (k < 1) throw ValidationError("standard module level must be >= 1");
        return;
      case Mode::AltE:
        if (k < 1) throw ValidationError("alt-E level must be >= 1");
        if (rs.spec.family != Family::E)
          throw ValidationError("alternative bases exist only in type E");
        return;
      case Mode::Rectangular: {
        if (k0 < 1 || kj < 1) throw ValidationError("rectangular weight needs k0 >= 1 and kj >= 1");
        const auto& nodes = rs.level_one_nodes;
        if (nodes.empty())
          throw ValidationError("rectangular weights are supported only in types D, E6, E7");
        if (std::find(nodes.begin(), nodes.end(), j) == nodes.end())
          throw ValidationError("j = " + std::to_string(j) + " is not a level-one node of " +
                                rs.spec.name());
        return;
      }
    }
  }

  std::string name() const {
    switch (mode) {
      case Mode::GenericVerma: return "verma";
      case Mode::Standard: return "standard(k=" + std::to_string(k) + ")";
      case Mode::Rectangular:
        return "rect(k0=" + std::to_string(k0) + ",j=" + std::to_string(j) +
               ",kj=" + std::to_string(kj) + ")";
      case Mode::AltE: return "alt-e(k=" + std::to_string(k) + ")";
    }
    return "?";
  }
};

// One (c2)-style cross term: sum_q min(scale * n_{q,partner}, n_{p,i}).
struct CrossTerm {
  int partner;  // 0-based color
  int scale;    // nu_i / nu_{partner}
};

// The difference-condition structure a weight spec induces: which colors
// bound which, in what order the enumeration can proceed so that every
// partner color is decided first, and the per-color charge caps.
struct ModeStructure {
  std::vector<std::vector<CrossTerm>> cross;  // per 0-based color
  std::vector<int> order;                     // 0-based processing order
  std::vector<int> charge_cap;                // per color; INT_MAX when uncapped
  int level = 0;                              // total level; 0 = uncapped
  int rect_color = -1;                        // 0-based color carrying the delta term
  int rect_k0 = 0;
};

inline ModeStructure mode_structure(const RootSystem& rs, const WeightSpec& w) {
  w.validate(rs);
  const int l = rs.rank;
  ModeStructure ms;
  ms.cross.assign(static_cast<std::size_t>(l), {});
  ms.order.resize(static_cast<std::size_t>(l));

  if (w.mode == WeightSpec::Mode::AltE) {
    // Prop. 6.1 color orderings and partner sets, 1-based as printed:
    //   E8: (1,7,2,3,4,5,6,8), partners 2-1, 3-2, 4-3, 5-4, 8-5, 6-{5,7}
    //   E7: (1,6,5,4,3,2,7), partners 5-6, 4-5, 3-4, 7-3, 2-{3,1}
    //   E6: (6,5,4,3,2,1), partners 4-5, 3-{4,6}, 2-3, 1-2
    struct AltTable {
      std::vector<int> order;
      std::vector<std::pair<int, std::vector<int>>> partners;
    };
    AltTable t;
    if (l == 8)
      t = {{1, 7, 2, 3, 4, 5, 6, 8},
           {{2, {1}}, {3, {2}}, {4, {3}}, {5, {4}}, {8, {5}}, {6, {5, 7}}}};
    else if (l == 7)
      t = {{1, 6, 5, 4, 3, 2, 7}, {{5, {6}}, {4, {5}}, {3, {4}}, {7, {3}}, {2, {3, 1}}}};
    else
      t = {{6, 5, 4, 3, 2, 1}, {{4, {5}}, {3, {4, 6}}, {2, {3}}, {1, {2}}}};
    for (int i = 0; i < l; ++i) ms.order[static_cast<std::size_t>(i)] = t.order[static_cast<std::size_t>(i)] - 1;
    for (auto& [color, ps] : t.partners)
      for (int p : ps) ms.cross[static_cast<std::size_t>(color - 1)].push_back({p - 1, 1});
  } else {
    for (int i = 0; i < l; ++i) ms.order[static_cast<std::size_t>(i)] = i;
    for (int i = 1; i < l; ++i)
      ms.cross[static_cast<std::size_t>(i)].push_back(
          {rs.i_prime[static_cast<std::size_t>(i)], rs.mu[static_cast<std::size_t>(i)]});
  }

  // Every partner must be processed before the color it bounds.
  std::vector<int> pos(static_cast<std::size_t>(l));
  for (int idx = 0; idx < l; ++idx) pos[static_cast<std::size_t>(ms.order[static_cast<std::size_t>(idx)])] = idx;
  for (int i = 0; i < l; ++i)
    for (const auto& ct : ms.cross[static_cast<std::size_t>(i)])
      detail::check(pos[static_cast<std::size_t>(ct.partner)] < pos[static_cast<std::size_t>(i)],
                    "cross partner must precede its color in processing order");

  ms.charge_cap.assign(static_cast<std::size_t>(l), std::numeric_limits<int>::max());
  const int level = w.level();
  ms.level = level;
  if (level > 0)
    for (int i = 0; i < l; ++i)
      ms.charge_cap[static_cast<std::size_t>(i)] = level * rs.nu[static_cast<std::size_t>(i)];

  if (w.mode == WeightSpec::Mode::Rectangular) {
    ms.rect_color = w.j - 1;
    ms.rect_k0 = w.k0;
  }
  return ms;
}

}  // namespace qpbasis
