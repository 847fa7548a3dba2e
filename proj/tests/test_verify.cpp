#include "qpbasis/verify.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qpbasis;

TEST_CASE("identity verification on A1") {
  const RootSystem a1 = build_root_system({Family::A, 1});
  const VerificationReport rep = verify_identity(a1, 10);
  CHECK(rep.status == "verified");
  CHECK(!rep.first_mismatch.has_value());
  CHECK(rep.term_counts.size() == 4);
}

TEST_CASE("identity verification at M = 0") {
  for (auto spec : {AlgebraSpec{Family::B, 3}, AlgebraSpec{Family::E, 6}}) {
    const RootSystem rs = build_root_system(spec);
    CHECK(verify_identity(rs, 0).status == "verified");
  }
}

TEST_CASE("a corrupted product is pinpointed at q^1") {
  // Dropping one root from the product leaves a coefficient deficit of 1 at
  // the dropped root's monomial, detected at q-degree 1.
  const RootSystem a2 = build_root_system({Family::A, 2});
  const TruncatedSeries full = char_product(a2, 4);
  TruncatedSeries corrupted = TruncatedSeries::one(2, 4);
  for (std::size_t r = 1; r < a2.positive_roots.size(); ++r)
    corrupted = ts_mul(corrupted, geometric_inverse_factor(a2.positive_roots[r], 1, 4));
  const auto mm = TruncatedSeries::first_mismatch(full, corrupted);
  REQUIRE(mm.has_value());
  CHECK(mm->key.q == 1);
  CHECK(mm->lhs - mm->rhs == 1);
}

TEST_CASE("basis verification rows") {
  const RootSystem a1 = build_root_system({Family::A, 1});
  const VerificationReport rr = verify_basis(a1, WeightSpec::standard(1), 12);
  CHECK(rr.status == "verified");

  const RootSystem d4 = build_root_system({Family::D, 4});
  CHECK(verify_basis(d4, WeightSpec::rectangular(1, 1, 1), 4).status == "verified");
  CHECK(verify_basis(d4, WeightSpec::generic_verma(), 0).status == "verified");
}

TEST_CASE("A1 standard level 1 specializes to difference-2 partition counts") {
  const RootSystem a1 = build_root_system({Family::A, 1});
  const TruncatedSeries s =
      ts_specialize_y(census_to_series(enumerate_census(a1, WeightSpec::standard(1), 12), 1, 12));
  const long long expect[] = {1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9};
  for (int m = 0; m <= 12; ++m) {
    CHECK(s.coeff_q(m) == expect[m]);
    CHECK(s.coeff_q(m) == oracle::difference_two_partitions(m));
  }
}

TEST_CASE("manifest parsing") {
  const Json good = Json::parse(R"([
    {"family":"A","rank":2,"mode":"identity","M":4},
    {"family":"A","rank":1,"mode":"standard","k":2,"M":6},
    {"family":"D","rank":4,"mode":"rect","k0":1,"j":3,"kj":1,"M":3},
    {"family":"E","rank":6,"mode":"alt-e","k":1,"M":2},
    {"family":"B","rank":2,"mode":"verma","M":3}
  ])");
  const auto rows = parse_manifest(good);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].mode == "identity");
  CHECK(rows[1].wspec.mode == WeightSpec::Mode::Standard);
  CHECK(rows[2].wspec.j == 3);

  CHECK_THROWS_AS(parse_manifest(Json::parse(R"({"family":"A"})")), ValidationError);
  CHECK_THROWS_AS(parse_manifest(Json::parse(R"([{"family":"E","rank":9,"mode":"identity","M":1}])")),
                  ValidationError);
  CHECK_THROWS_AS(parse_manifest(Json::parse(R"([{"family":"A","rank":1,"mode":"bogus","M":1}])")),
                  ValidationError);
  CHECK_THROWS_AS(parse_manifest(Json::parse(R"([{"family":"A","rank":1,"mode":"standard","M":1}])")),
                  ValidationError);  // missing k
}

TEST_CASE("suite execution and aggregation") {
  const auto rows = parse_manifest(Json::parse(R"([
    {"family":"A","rank":1,"mode":"identity","M":6},
    {"family":"A","rank":1,"mode":"standard","k":1,"M":6},
    {"family":"B","rank":2,"mode":"verma","M":3}
  ])"));
  const auto reports = run_suite(rows);
  REQUIRE(reports.size() == 3);
  CHECK(all_verified(reports));

  CHECK(run_suite({}).empty());
  CHECK(all_verified({}));
}

TEST_CASE("invalid rows in a suite are usage errors") {
  // j = 2 is not a level-one node of D4: rejected before any computation.
  const auto rows = parse_manifest(
      Json::parse(R"([{"family":"D","rank":4,"mode":"rect","k0":1,"j":2,"kj":1,"M":2}])"));
  CHECK_THROWS_AS(run_suite(rows), ValidationError);
}

TEST_CASE("reports serialize deterministically") {
  const auto rows = parse_manifest(Json::parse(R"([
    {"family":"A","rank":2,"mode":"identity","M":5},
    {"family":"G","rank":2,"mode":"standard","k":1,"M":4}
  ])"));
  const auto r1 = run_suite(rows);
  const auto r2 = run_suite(rows);
  CHECK(reports_to_json(r1).dump(2) == reports_to_json(r2).dump(2));
  // Thread count must not change the serialized report either.
  const auto r4 = run_suite(rows, 4);
  CHECK(reports_to_json(r1).dump(2) == reports_to_json(r4).dump(2));
}

TEST_CASE("mismatching reports carry the failing key") {
  VerificationReport rep;
  std::vector<detail::NamedSeries> sides;
  SeriesBuilder b1(0, 3, {});
  b1.add(0, {}, 1);
  b1.add(2, {}, 5);
  SeriesBuilder b2(0, 3, {});
  b2.add(0, {}, 1);
  b2.add(2, {}, 7);
  sides.push_back({"lhs", std::move(b1).freeze()});
  sides.push_back({"rhs", std::move(b2).freeze()});
  detail::compare_all(rep, sides);
  CHECK(rep.status == "mismatch");
  REQUIRE(rep.first_mismatch.has_value());
  CHECK(rep.first_mismatch->key.q == 2);
  CHECK(rep.first_mismatch->lhs == 5);
  CHECK(rep.first_mismatch->rhs == 7);
  CHECK(!all_verified({rep}));
  const Json j = to_json(rep);
  CHECK(j["first_mismatch"]["lhs"] == "5");
}
