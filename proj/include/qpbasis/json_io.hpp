#pragma once

#include "qpbasis/census.hpp"
#include "qpbasis/characters.hpp"

#include <json.hpp>

#include <string>

namespace qpbasis {

using Json = nlohmann::ordered_json;

inline Json to_json(const AlgebraSpec& spec) {
  return Json{{"family", std::string(1, family_letter(spec.family))}, {"rank", spec.rank}};
}

inline Json to_json(const RootSystem& rs) {
  Json j;
  j["family"] = std::string(1, family_letter(rs.spec.family));
  j["rank"] = rs.rank;
  j["cartan"] = rs.cartan;
  j["nu"] = rs.nu;
  Json ip = Json::object();
  Json mu = Json::object();
  for (int i = 1; i < rs.rank; ++i) {
    ip[std::to_string(i + 1)] = rs.i_prime[static_cast<std::size_t>(i)] + 1;
    mu[std::to_string(i + 1)] = rs.mu[static_cast<std::size_t>(i)];
  }
  j["i_prime"] = ip;
  j["mu"] = mu;
  j["positive_roots"] = rs.positive_roots;
  j["highest_root"] = rs.highest_root;
  j["level_one_nodes"] = rs.level_one_nodes;
  return j;
}

inline Json to_json(const TruncatedSeries& s) {
  Json j;
  j["rank"] = s.rank();
  j["truncation"] = s.truncation();
  Json terms = Json::array();
  for (std::size_t i = 0; i < s.term_count(); ++i) {
    auto ys = s.term_y(i);
    Json t;
    t["q"] = s.term_q(i);
    t["y"] = std::vector<int>(ys.begin(), ys.end());
    t["c"] = s.term_coeff(i).str();
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline Json weight_params_json(const WeightSpec& w) {
  Json p = Json::object();
  switch (w.mode) {
    case WeightSpec::Mode::GenericVerma: break;
    case WeightSpec::Mode::Standard:
    case WeightSpec::Mode::AltE: p["k"] = w.k; break;
    case WeightSpec::Mode::Rectangular:
      p["k0"] = w.k0;
      p["j"] = w.j;
      p["kj"] = w.kj;
      break;
  }
  return p;
}

inline std::string mode_string(const WeightSpec& w) {
  switch (w.mode) {
    case WeightSpec::Mode::GenericVerma: return "verma";
    case WeightSpec::Mode::Standard: return "standard";
    case WeightSpec::Mode::Rectangular: return "rect";
    case WeightSpec::Mode::AltE: return "alt-e";
  }
  return "?";
}

inline Json to_json(const Census& c) {
  Json j;
  j["spec"] = to_json(c.spec);
  j["mode"] = mode_string(c.wspec);
  j["params"] = weight_params_json(c.wspec);
  j["M"] = c.M;
  Json entries = Json::array();
  for (const auto& [key, count] : c.counts) {
    Json e;
    e["q"] = key.first;
    e["color_type"] = key.second;
    e["count"] = count.str();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  j["total"] = c.total.str();
  j["configs"] = c.config_count;
  if (c.has_listing) {
    Json ms = Json::array();
    for (const auto& m : c.monomials) {
      Json triples = Json::array();
      for (const auto& block : m.blocks)
        for (const auto& qp : block)
          triples.push_back(Json::array({qp.color + 1, qp.charge, -qp.mode}));
      ms.push_back(std::move(triples));
    }
    j["monomials"] = std::move(ms);
  }
  return j;
}

}  // namespace qpbasis
