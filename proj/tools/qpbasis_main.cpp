// Command-line front end: root-system inspection, census enumeration,
// character evaluation, and verification suites. Exit codes: 0 success /
// all verified, 1 mismatch or aborted enumeration, 2 usage error.

#include "qpbasis/qpbasis.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace qpbasis;

struct CommonOpts {
  std::string family;
  int rank = 0;
  std::string format = "json";
  std::string output;
  int threads = 0;
};

AlgebraSpec parse_spec(const CommonOpts& o) {
  if (o.family.size() != 1) throw ValidationError("--family expects a single letter A..G");
  AlgebraSpec spec{family_from_letter(o.family[0]), o.rank};
  spec.validate();
  return spec;
}

void write_out(const CommonOpts& o, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file '" + o.output + "'");
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

std::string series_csv(const TruncatedSeries& s) {
  std::string out = "q";
  for (int i = 1; i <= s.rank(); ++i) out += ",y" + std::to_string(i);
  out += ",c\n";
  for (std::size_t t = 0; t < s.term_count(); ++t) {
    out += std::to_string(s.term_q(t));
    for (int v : s.term_y(t)) out += "," + std::to_string(v);
    out += "," + s.term_coeff(t).str() + "\n";
  }
  return out;
}

std::string series_text(const TruncatedSeries& s) {
  std::string out;
  for (std::size_t t = 0; t < s.term_count(); ++t) {
    if (!out.empty()) out += " + ";
    out += s.term_coeff(t).str();
    if (s.term_q(t) != 0) out += "*q^" + std::to_string(s.term_q(t));
    auto ys = s.term_y(t);
    for (int i = 0; i < s.rank(); ++i)
      if (ys[static_cast<std::size_t>(i)] != 0)
        out += "*y" + std::to_string(i + 1) + "^" + std::to_string(ys[static_cast<std::size_t>(i)]);
  }
  return out.empty() ? "0" : out;
}

std::string roots_csv(const RootSystem& rs) {
  std::string out;
  for (int i = 1; i <= rs.rank; ++i) out += (i > 1 ? "," : "") + ("a" + std::to_string(i));
  out += "\n";
  for (const auto& r : rs.positive_roots) {
    for (int i = 0; i < rs.rank; ++i)
      out += (i > 0 ? "," : "") + std::to_string(r[static_cast<std::size_t>(i)]);
    out += "\n";
  }
  return out;
}

std::string roots_text(const RootSystem& rs) {
  std::string out = rs.spec.name() + ": " + std::to_string(rs.positive_roots.size()) +
                    " positive roots, nu = (";
  for (int i = 0; i < rs.rank; ++i)
    out += (i ? "," : "") + std::to_string(rs.nu[static_cast<std::size_t>(i)]);
  out += "), highest root = (";
  for (int i = 0; i < rs.rank; ++i)
    out += (i ? "," : "") + std::to_string(rs.highest_root[static_cast<std::size_t>(i)]);
  out += ")";
  return out;
}

std::string census_csv(const Census& c) {
  std::string out = "q";
  const int rank =
      c.counts.empty() ? 0 : static_cast<int>(c.counts.begin()->first.second.size());
  for (int i = 1; i <= rank; ++i) out += ",n" + std::to_string(i);
  out += ",count\n";
  for (const auto& [key, count] : c.counts) {
    out += std::to_string(key.first);
    for (int v : key.second) out += "," + std::to_string(v);
    out += "," + count.str() + "\n";
  }
  return out;
}

WeightSpec weight_from_flags(const std::string& mode, int level, int k0, int j, int kj) {
  if (mode == "verma") return WeightSpec::generic_verma();
  if (mode == "standard") {
    if (level < 1) throw ValidationError("--mode standard requires --level >= 1");
    return WeightSpec::standard(level);
  }
  if (mode == "alt-e") {
    if (level < 1) throw ValidationError("--mode alt-e requires --level >= 1");
    return WeightSpec::alt_e(level);
  }
  if (mode == "rect") {
    if (k0 < 1 || j < 1 || kj < 1)
      throw ValidationError("--mode rect requires --k0, --j and --kj (all >= 1)");
    return WeightSpec::rectangular(k0, j, kj);
  }
  throw ValidationError("unknown mode '" + mode + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Quasi-particle basis enumeration and character verification engine"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOpts o;
  int max_q = 0;
  std::string formula, mode = "verma", manifest_path;
  int level = 0, k0 = 0, jnode = 0, kj = 0;
  bool do_list = false, force_list = false;
  std::size_t listing_guard = 10000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--family", o.family, "algebra family letter A..G");
    cmd->add_option("--rank", o.rank, "algebra rank");
    cmd->add_option("--format", o.format, "output format: json, csv, text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--output,-o", o.output, "output file (default: stdout)");
    cmd->add_option("--threads", o.threads,
                    "worker thread budget (default: QPBASIS_THREADS or hardware)");
  };

  CLI::App* roots = app.add_subcommand("roots", "print root-system data for one algebra");
  add_common(roots);

  CLI::App* chr = app.add_subcommand("char", "evaluate a character formula as a truncated series");
  add_common(chr);
  chr->add_option("--formula", formula, "L-sum, N-sum, rect-sum, product, pbw, census")
      ->required()
      ->check(CLI::IsMember({"L-sum", "N-sum", "rect-sum", "product", "pbw", "census"}));
  chr->add_option("--max-q", max_q, "q-degree truncation")->required();
  chr->add_option("--level", level, "level k (L-sum, census with standard/alt-e)");
  chr->add_option("--k0", k0, "rectangular weight k0");
  chr->add_option("--j", jnode, "rectangular level-one node j");
  chr->add_option("--kj", kj, "rectangular weight kj");
  chr->add_option("--mode", mode, "census mode: verma, standard, rect, alt-e");

  CLI::App* census = app.add_subcommand("census", "enumerate the quasi-particle basis census");
  add_common(census);
  census->add_option("--max-q", max_q, "q-degree truncation")->required();
  census->add_option("--mode", mode, "verma, standard, rect, alt-e");
  census->add_option("--level", level, "level k (standard, alt-e)");
  census->add_option("--k0", k0, "rectangular weight k0");
  census->add_option("--j", jnode, "rectangular level-one node j");
  census->add_option("--kj", kj, "rectangular weight kj");
  census->add_flag("--list", do_list, "include the monomial listing (subject to the guard)");
  census->add_flag("--force-list", force_list, "list monomials regardless of the guard");
  census->add_option("--listing-guard", listing_guard, "largest census size that may be listed");

  CLI::App* verify = app.add_subcommand("verify", "run identity / basis-vs-formula verifications");
  add_common(verify);
  verify->add_option("--manifest", manifest_path, "JSON manifest of verification rows");
  verify->add_option("--mode", mode, "identity, verma, standard, rect, alt-e (inline row)");
  verify->add_option("--max-q", max_q, "q-degree truncation (inline row)");
  verify->add_option("--level", level, "level k (inline row)");
  verify->add_option("--k0", k0, "rectangular weight k0");
  verify->add_option("--j", jnode, "rectangular level-one node j");
  verify->add_option("--kj", kj, "rectangular weight kj");

  CLI11_PARSE(app, argc, argv);

  if (roots->parsed()) {
    const RootSystem rs = build_root_system(parse_spec(o));
    if (o.format == "csv")
      write_out(o, roots_csv(rs));
    else if (o.format == "text")
      write_out(o, roots_text(rs));
    else
      write_out(o, to_json(rs).dump(2));
    return 0;
  }

  if (chr->parsed()) {
    const RootSystem rs = build_root_system(parse_spec(o));
    const int threads = o.threads;
    TruncatedSeries s = [&]() -> TruncatedSeries {
      if (formula == "product") return char_product(rs, max_q);
      if (formula == "pbw") return pbw_census(rs, max_q, threads);
      if (formula == "N-sum") return char_N_sum(rs, max_q, threads);
      if (formula == "L-sum") {
        if (level < 1) throw ValidationError("--formula L-sum requires --level >= 1");
        return char_L_sum(rs, level, max_q, threads);
      }
      if (formula == "rect-sum") return char_rect_sum(rs, k0, jnode, kj, max_q, threads);
      const WeightSpec w = weight_from_flags(mode, level, k0, jnode, kj);
      return census_to_series(enumerate_census(rs, w, max_q, {.threads = threads}), rs.rank,
                              max_q);
    }();
    if (o.format == "csv") {
      write_out(o, series_csv(s));
    } else if (o.format == "text") {
      write_out(o, series_text(s));
    } else {
      Json wrapper;
      wrapper["formula"] = formula;
      wrapper["spec"] = to_json(rs.spec);
      Json params = Json::object();
      if (formula == "L-sum") params["k"] = level;
      if (formula == "rect-sum") {
        params["k0"] = k0;
        params["j"] = jnode;
        params["kj"] = kj;
      }
      if (formula == "census") {
        params["mode"] = mode;
        const WeightSpec w = weight_from_flags(mode, level, k0, jnode, kj);
        params.update(weight_params_json(w));
      }
      wrapper["params"] = params;
      wrapper["series"] = to_json(s);
      write_out(o, wrapper.dump(2));
    }
    return 0;
  }

  if (census->parsed()) {
    const RootSystem rs = build_root_system(parse_spec(o));
    const WeightSpec w = weight_from_flags(mode, level, k0, jnode, kj);
    const Census c =
        enumerate_census(rs, w, max_q,
                         {.want_listing = do_list || force_list, .listing_guard = listing_guard,
                          .force_list = force_list, .threads = o.threads});
    if (o.format == "csv")
      write_out(o, census_csv(c));
    else if (o.format == "text")
      write_out(o, c.spec.name() + " " + c.wspec.name() + " M=" + std::to_string(c.M) + ": " +
                       c.total.str() + " monomials, " + std::to_string(c.counts.size()) +
                       " (q, color-type) classes");
    else
      write_out(o, to_json(c).dump(2));
    return 0;
  }

  // verify
  std::vector<SuiteRow> rows;
  if (!manifest_path.empty()) {
    std::ifstream f(manifest_path);
    if (!f) throw ValidationError("cannot open manifest '" + manifest_path + "'");
    Json mj;
    try {
      f >> mj;
    } catch (const Json::exception& e) {
      throw ValidationError(std::string("malformed manifest JSON: ") + e.what());
    }
    rows = parse_manifest(mj);
  } else {
    if (mode == "identity" || mode == "verma" || mode == "standard" || mode == "rect" ||
        mode == "alt-e") {
      SuiteRow row;
      row.spec = parse_spec(o);
      row.mode = mode;
      row.M = max_q;
      if (row.M < 0) throw ValidationError("--max-q must be >= 0");
      row.wspec = (mode == "identity" || mode == "verma")
                      ? WeightSpec::generic_verma()
                      : weight_from_flags(mode, level, k0, jnode, kj);
      rows.push_back(row);
    } else {
      throw ValidationError("verify needs --manifest or an inline row with a valid --mode");
    }
  }
  const auto reports = run_suite(rows, o.threads, [](const VerificationReport& r) {
    std::cerr << r.id << ": " << r.status << " (" << r.elapsed_seconds << "s)\n";
  });
  write_out(o, reports_to_json(reports).dump(2));
  return all_verified(reports) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qpbasis::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qpbasis::EnumerationAbort& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
