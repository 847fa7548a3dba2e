#pragma once

#include "qpbasis/sum_core.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace qpbasis {

// Exact count of basis monomials, keyed by (q-degree, color-type). The
// color-type lists the total charge per color 1..l.
struct Census {
  AlgebraSpec spec{};
  WeightSpec wspec{};
  int M = 0;
  std::map<std::pair<int, std::vector<int>>, BigInt> counts;
  BigInt total = 0;
  std::uint64_t config_count = 0;

  bool has_listing = false;
  std::vector<QPMonomial> monomials;  // canonical order when present
};

struct CensusOptions {
  bool want_listing = false;
  std::size_t listing_guard = 10000;  // suppress listings larger than this
  bool force_list = false;
  int threads = 0;  // 0 = default budget
};

namespace detail {

// Per-configuration energy data: one entry per quasi-particle position in
// (color, p) order, grouped into runs of equal charge.
struct EnergyLayout {
  struct Position {
    int color;
    int charge;
    long long bound;  // maximal admissible mode m under (c2)/(c2')
    bool run_start;
  };
  std::vector<Position> positions;
  long long e_min = 0;  // sum of (-bound); must equal cfg.e_min
};

inline EnergyLayout energy_layout(const RootSystem& rs, const ModeStructure& ms,
                                  const std::vector<std::vector<int>>& dual) {
  EnergyLayout out;
  std::vector<std::vector<int>> charges(dual.size());
  for (std::size_t i = 0; i < dual.size(); ++i) charges[i] = dual_to_charge(dual[i]);
  for (int i = 0; i < rs.rank; ++i) {
    const auto& c = charges[static_cast<std::size_t>(i)];
    for (std::size_t p = 0; p < c.size(); ++p) {
      const long long b = c2_bound(ms, charges, i, static_cast<int>(p));
      out.positions.push_back({i, c[p], b, p == 0 || c[p] != c[p - 1]});
      out.e_min -= b;
    }
  }
  return out;
}

// Enumerates monomials of one configuration explicitly, position by
// position: slack s >= previous slack within a run, mode m = bound - s.
template <class Sink>
void list_monomials(const RootSystem& rs, const EnergyLayout& lay, int budget, QPMonomial& mono,
                    std::size_t pos, int prev_slack, int used, Sink&& sink) {
  if (pos == lay.positions.size()) {
    sink(mono);
    return;
  }
  const auto& P = lay.positions[pos];
  const int lo = P.run_start ? 0 : prev_slack;
  for (int s = lo; used + s <= budget; ++s) {
    mono.blocks[static_cast<std::size_t>(P.color)].push_back(
        {P.color, P.charge, static_cast<int>(P.bound - s)});
    list_monomials(rs, lay, budget, mono, pos + 1, s, used + s, sink);
    mono.blocks[static_cast<std::size_t>(P.color)].pop_back();
  }
}

}  // namespace detail

// Verifies, for every admissible dual-charge configuration, that the
// minimal-energy filling m_p = bound_p is admissible and that its total
// energy equals the exponent-form value diag - cross (+ rectangular delta),
// evaluated independently from the printed dual-coordinate formula.
inline std::uint64_t check_minimal_energy_invariants(const RootSystem& rs, const WeightSpec& w,
                                                     int M) {
  const ModeStructure ms = mode_structure(rs, w);
  ConfigEnumerator ce(rs, ms, M);
  std::uint64_t checked = 0;
  ce.enumerate(0, 1, [&](const DualChargeConfig& cfg) {
    ++checked;
    long long expect = exponent_from_dual(rs, ms, cfg.dual());
    if (ms.rect_color >= 0) {
      const auto& dj = cfg.dual()[static_cast<std::size_t>(ms.rect_color)];
      for (int t = ms.rect_k0 + 1; t <= static_cast<int>(dj.size()); ++t)
        expect += dj[static_cast<std::size_t>(t - 1)];
    }
    detail::check(cfg.e_quad == exponent_from_dual(rs, ms, cfg.dual()),
                  "slice exponent disagrees with the dual-coordinate formula");
    detail::check(cfg.e_min == expect, "e_min disagrees with the dual-coordinate formula");
    const detail::EnergyLayout lay = detail::energy_layout(rs, ms, cfg.dual());
    detail::check(lay.e_min == cfg.e_min, "minimal energy disagrees with exponent form");
    QPMonomial mono(rs.rank);
    for (const auto& p : lay.positions)
      mono.blocks[static_cast<std::size_t>(p.color)].push_back(
          {p.color, p.charge, static_cast<int>(p.bound)});
    detail::check(satisfies_all(rs, w, mono), "minimal filling must satisfy all conditions");
    detail::check(mono.total_energy() == cfg.e_min, "minimal filling energy mismatch");
  });
  return checked;
}

// Exhaustively counts the basis monomials with total energy <= M satisfying
// the difference conditions of the weight spec. Counts come from explicit
// walks over slack assignments (configurations with equal run-length
// multisets share one walk); nothing is derived from the closed character
// formulas.
inline Census enumerate_census(const RootSystem& rs, const WeightSpec& w, int M,
                               const CensusOptions& opts = {}) {
  if (M < 0) throw ValidationError("census truncation must be >= 0");
  w.validate(rs);
  const ModeStructure ms = mode_structure(rs, w);

  Census out;
  out.spec = rs.spec;
  out.wspec = w;
  out.M = M;
  detail::SumCoreResult core = detail::sum_core(rs, ms, M, true, false, opts.threads);
  out.counts = std::move(core.census_counts);
  out.config_count = core.config_count;
  for (const auto& [key, c] : out.counts) out.total += c;

  if (opts.want_listing && (opts.force_list || out.total <= opts.listing_guard)) {
    out.has_listing = true;
    ConfigEnumerator ce(rs, ms, M);
    ce.enumerate(0, 1, [&](const DualChargeConfig& cfg) {
      const detail::EnergyLayout lay = detail::energy_layout(rs, ms, cfg.dual());
      detail::check(lay.e_min == cfg.e_min, "minimal energy disagrees with exponent form");
      QPMonomial mono(rs.rank);
      detail::list_monomials(rs, lay, static_cast<int>(M - cfg.e_min), mono, 0, 0, 0,
                             [&](const QPMonomial& m) { out.monomials.push_back(m); });
    });
    std::sort(out.monomials.begin(), out.monomials.end(),
              [](const QPMonomial& a, const QPMonomial& b) {
                const auto ea = a.total_energy(), eb = b.total_energy();
                if (ea != eb) return ea < eb;
                const auto ca = a.color_type(), cb = b.color_type();
                if (ca != cb) return ca < cb;
                return compare_monomials(a, b) < 0;
              });
  }
  return out;
}

// Streams every basis monomial (total energy <= M) to the callback without
// materializing the census. Order is deterministic but not the canonical
// listing order.
template <class F>
void for_each_basis_monomial(const RootSystem& rs, const WeightSpec& w, int M, F&& cb) {
  w.validate(rs);
  const ModeStructure ms = mode_structure(rs, w);
  ConfigEnumerator ce(rs, ms, M);
  ce.enumerate(0, 1, [&](const DualChargeConfig& cfg) {
    const detail::EnergyLayout lay = detail::energy_layout(rs, ms, cfg.dual());
    detail::check(lay.e_min == cfg.e_min, "minimal energy disagrees with exponent form");
    QPMonomial mono(rs.rank);
    detail::list_monomials(rs, lay, static_cast<int>(M - cfg.e_min), mono, 0, 0, 0, cb);
  });
}

inline TruncatedSeries census_to_series(const Census& census, int rank, int M) {
  std::vector<int> max_y(static_cast<std::size_t>(rank), 0);
  for (const auto& [key, c] : census.counts)
    for (int i = 0; i < rank; ++i)
      max_y[static_cast<std::size_t>(i)] =
          std::max(max_y[static_cast<std::size_t>(i)], key.second[static_cast<std::size_t>(i)]);
  SeriesBuilder builder(rank, M, max_y);
  for (const auto& [key, c] : census.counts) builder.add(key.first, key.second, c);
  return std::move(builder).freeze();
}

}  // namespace qpbasis
