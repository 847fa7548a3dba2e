#pragma once

#include "qpbasis/json_io.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qpbasis {

// Structured outcome of one identity or basis-vs-formula check. Timing is
// kept for logging only and never serialized: report JSON must be
// byte-identical across runs.
struct VerificationReport {
  std::string id;
  AlgebraSpec spec{};
  std::string mode;     // "identity" or a weight-spec mode
  Json params;          // weight parameters
  int M = 0;
  std::string status;   // "verified" | "mismatch" | "aborted"
  std::optional<TruncatedSeries::Mismatch> first_mismatch;
  std::string mismatch_sides;  // which pair disagreed
  std::string abort_reason;
  std::vector<std::pair<std::string, std::uint64_t>> term_counts;
  double elapsed_seconds = 0.0;

  bool verified() const { return status == "verified"; }
};

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["id"] = r.id;
  j["spec"] = to_json(r.spec);
  j["mode"] = r.mode;
  j["params"] = r.params;
  j["M"] = r.M;
  j["status"] = r.status;
  if (r.first_mismatch) {
    Json m;
    m["sides"] = r.mismatch_sides;
    m["q"] = r.first_mismatch->key.q;
    m["y"] = r.first_mismatch->key.y;
    m["lhs"] = r.first_mismatch->lhs.str();
    m["rhs"] = r.first_mismatch->rhs.str();
    j["first_mismatch"] = std::move(m);
  } else {
    j["first_mismatch"] = nullptr;
  }
  if (!r.abort_reason.empty()) j["abort_reason"] = r.abort_reason;
  Json tc = Json::object();
  for (const auto& [name, n] : r.term_counts) tc[name] = n;
  j["term_counts"] = std::move(tc);
  return j;
}

namespace detail {

struct NamedSeries {
  std::string name;
  TruncatedSeries series;
};

// Pairwise exact comparison in the given order; the first disagreeing pair
// decides the report.
inline void compare_all(VerificationReport& rep, const std::vector<NamedSeries>& sides) {
  for (const auto& s : sides) rep.term_counts.emplace_back(s.name, s.series.term_count());
  for (std::size_t i = 0; i < sides.size(); ++i)
    for (std::size_t j = i + 1; j < sides.size(); ++j) {
      auto mm = TruncatedSeries::first_mismatch(sides[i].series, sides[j].series);
      if (mm) {
        rep.status = "mismatch";
        rep.first_mismatch = std::move(mm);
        rep.mismatch_sides = sides[i].name + " vs " + sides[j].name;
        return;
      }
    }
  rep.status = "verified";
}

}  // namespace detail

// The headline cross-check: the Euler-product character, the sum side in
// finite-support form, the PBW counting oracle, and the quasi-particle
// census of the generalized Verma module must agree coefficient by
// coefficient.
inline VerificationReport verify_identity(const RootSystem& rs, int M, int threads = 0) {
  VerificationReport rep;
  rep.id = "identity:" + rs.spec.name() + ":M=" + std::to_string(M);
  rep.spec = rs.spec;
  rep.mode = "identity";
  rep.params = Json::object();
  rep.M = M;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::vector<detail::NamedSeries> sides;
    sides.push_back({"product", char_product(rs, M)});
    // The N-sum and the census share one configuration walk; the per-config
    // contributions stay independent (pochhammer algebra vs explicit
    // monomial counting).
    const ModeStructure ms = mode_structure(rs, WeightSpec::generic_verma());
    detail::SumCoreResult core = detail::sum_core(rs, ms, M, true, true, threads);
    sides.push_back({"N-sum", detail::keyed_to_series(core.sum_coeffs, rs.rank, M)});
    sides.push_back({"pbw", pbw_census(rs, M, threads)});
    sides.push_back({"census", detail::keyed_to_series(core.census_counts, rs.rank, M)});
    detail::compare_all(rep, sides);
  } catch (const EnumerationAbort& e) {
    rep.status = "aborted";
    rep.abort_reason = e.what();
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Census of one basis against its closed character formula: Standard and
// AltE against the L-sum, GenericVerma against the N-sum, Rectangular
// against the rectangular sum.
inline VerificationReport verify_basis(const RootSystem& rs, const WeightSpec& w, int M,
                                       int threads = 0) {
  VerificationReport rep;
  rep.id = mode_string(w) + ":" + rs.spec.name() + ":M=" + std::to_string(M);
  rep.spec = rs.spec;
  rep.mode = mode_string(w);
  rep.params = weight_params_json(w);
  rep.M = M;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    w.validate(rs);
    std::vector<detail::NamedSeries> sides;
    const char* formula_name = w.mode == WeightSpec::Mode::Rectangular ? "rect-sum"
                               : w.mode == WeightSpec::Mode::GenericVerma ? "N-sum"
                                                                          : "L-sum";
    if (w.mode == WeightSpec::Mode::AltE) {
      // The alternative basis is checked against the ordinary L-sum, which
      // is evaluated over the standard difference conditions.
      const ModeStructure alt = mode_structure(rs, w);
      detail::SumCoreResult census = detail::sum_core(rs, alt, M, true, false, threads);
      sides.push_back({"census", detail::keyed_to_series(census.census_counts, rs.rank, M)});
      sides.push_back({formula_name, char_L_sum(rs, w.k, M, threads)});
    } else {
      const ModeStructure ms = mode_structure(rs, w);
      detail::SumCoreResult core = detail::sum_core(rs, ms, M, true, true, threads);
      sides.push_back({"census", detail::keyed_to_series(core.census_counts, rs.rank, M)});
      sides.push_back({formula_name, detail::keyed_to_series(core.sum_coeffs, rs.rank, M)});
    }
    detail::compare_all(rep, sides);
  } catch (const EnumerationAbort& e) {
    rep.status = "aborted";
    rep.abort_reason = e.what();
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// One manifest row: {"family","rank","mode","M"} plus mode parameters
// ("k" for standard/alt-e/verma, "k0"/"j"/"kj" for rect).
struct SuiteRow {
  AlgebraSpec spec{};
  std::string mode;  // identity | verma | standard | rect | alt-e
  WeightSpec wspec{};
  int M = 0;
};

inline SuiteRow parse_suite_row(const Json& j) {
  try {
    SuiteRow row;
    if (!j.is_object()) throw ValidationError("manifest row must be an object");
    const std::string fam = j.at("family").get<std::string>();
    if (fam.size() != 1) throw ValidationError("family must be a single letter");
    row.spec.family = family_from_letter(fam[0]);
    row.spec.rank = j.at("rank").get<int>();
    row.spec.validate();
    row.M = j.at("M").get<int>();
    if (row.M < 0) throw ValidationError("M must be >= 0");
    row.mode = j.at("mode").get<std::string>();
    if (row.mode == "identity" || row.mode == "verma") {
      row.wspec = WeightSpec::generic_verma();
    } else if (row.mode == "standard") {
      row.wspec = WeightSpec::standard(j.at("k").get<int>());
    } else if (row.mode == "alt-e") {
      row.wspec = WeightSpec::alt_e(j.at("k").get<int>());
    } else if (row.mode == "rect") {
      row.wspec = WeightSpec::rectangular(j.at("k0").get<int>(), j.at("j").get<int>(),
                                          j.at("kj").get<int>());
    } else {
      throw ValidationError("unknown manifest mode '" + row.mode + "'");
    }
    return row;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed manifest row: ") + e.what());
  }
}

inline std::vector<SuiteRow> parse_manifest(const Json& j) {
  if (!j.is_array()) throw ValidationError("manifest must be a JSON array of rows");
  std::vector<SuiteRow> rows;
  for (const auto& rj : j) rows.push_back(parse_suite_row(rj));
  return rows;
}

// Executes every row; aborts are recorded per row and do not halt the suite.
// The optional logger sees one line per finished row.
inline std::vector<VerificationReport> run_suite(
    const std::vector<SuiteRow>& rows, int threads = 0,
    const std::function<void(const VerificationReport&)>& log = {}) {
  std::vector<VerificationReport> reports;
  reports.reserve(rows.size());
  for (const auto& row : rows) {
    VerificationReport rep;
    try {
      const RootSystem rs = build_root_system(row.spec);
      rep = row.mode == "identity" ? verify_identity(rs, row.M, threads)
                                   : verify_basis(rs, row.wspec, row.M, threads);
    } catch (const ValidationError&) {
      throw;  // malformed rows are usage errors, not verification outcomes
    } catch (const std::exception& e) {
      rep.id = row.mode + ":" + row.spec.name() + ":M=" + std::to_string(row.M);
      rep.spec = row.spec;
      rep.mode = row.mode;
      rep.params = Json::object();
      rep.M = row.M;
      rep.status = "aborted";
      rep.abort_reason = e.what();
    }
    if (log) log(rep);
    reports.push_back(std::move(rep));
  }
  return reports;
}

inline Json reports_to_json(const std::vector<VerificationReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

inline bool all_verified(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.verified()) return false;
  return true;
}

}  // namespace qpbasis
