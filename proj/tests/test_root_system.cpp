#include "qpbasis/root_system.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace qpbasis;

namespace {

std::size_t expected_root_count(const AlgebraSpec& s) {
  const std::size_t l = static_cast<std::size_t>(s.rank);
  switch (s.family) {
    case Family::A: return l * (l + 1) / 2;
    case Family::B:
    case Family::C: return l * l;
    case Family::D: return l * (l - 1);
    case Family::E: return s.rank == 6 ? 36 : s.rank == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

const std::vector<AlgebraSpec> kSupported = {
    {Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 5}, {Family::B, 2},
    {Family::B, 3}, {Family::C, 2}, {Family::C, 3}, {Family::C, 4}, {Family::D, 3},
    {Family::D, 4}, {Family::D, 5}, {Family::E, 6}, {Family::E, 7}, {Family::E, 8},
    {Family::F, 4}, {Family::G, 2}};

}  // namespace

TEST_CASE("invalid algebra specs are rejected") {
  for (auto bad : {AlgebraSpec{Family::E, 9}, AlgebraSpec{Family::E, 5}, AlgebraSpec{Family::F, 5},
                   AlgebraSpec{Family::G, 3}, AlgebraSpec{Family::D, 2}, AlgebraSpec{Family::A, 0},
                   AlgebraSpec{Family::B, 1}}) {
    CHECK_THROWS_AS(build_root_system(bad), ValidationError);
  }
}

TEST_CASE("root counts match the closed forms") {
  for (const auto& spec : kSupported) {
    const RootSystem rs = build_root_system(spec);
    INFO(spec.name());
    CHECK(rs.positive_roots.size() == expected_root_count(spec));
    // duplicate-free, simple roots present
    std::set<std::vector<int>> uniq(rs.positive_roots.begin(), rs.positive_roots.end());
    CHECK(uniq.size() == rs.positive_roots.size());
    for (int i = 0; i < rs.rank; ++i) {
      std::vector<int> e(static_cast<std::size_t>(rs.rank), 0);
      e[static_cast<std::size_t>(i)] = 1;
      CHECK(uniq.count(e) == 1);
    }
  }
}

TEST_CASE("cartan matrix shape invariants") {
  for (const auto& spec : kSupported) {
    const RootSystem rs = build_root_system(spec);
    for (int i = 0; i < rs.rank; ++i) {
      CHECK(rs.cartan[i][i] == 2);
      for (int j = 0; j < rs.rank; ++j) {
        if (i == j) continue;
        CHECK(rs.cartan[i][j] <= 0);
        CHECK(rs.cartan[i][j] >= -3);
        CHECK((rs.cartan[i][j] == 0) == (rs.cartan[j][i] == 0));
      }
    }
    // nu is non-decreasing under the paper labeling, and i' is an earlier
    // adjacent node with nu_{i'} | nu_i.
    for (int i = 1; i < rs.rank; ++i) {
      CHECK(rs.nu[i] >= rs.nu[i - 1]);
      const int ip = rs.i_prime[i];
      CHECK(ip >= 0);
      CHECK(ip < i);
      CHECK(rs.cartan[i][ip] != 0);
      CHECK(rs.nu[i] % rs.nu[ip] == 0);
      CHECK(rs.mu[i] == rs.nu[i] / rs.nu[ip]);
      CHECK((rs.mu[i] == 1 || rs.mu[i] == 2 || rs.mu[i] == 3));
    }
  }
}

TEST_CASE("D4 data") {
  const RootSystem rs = build_root_system({Family::D, 4});
  CHECK(rs.nu == std::vector<int>{1, 1, 1, 1});
  CHECK(rs.i_prime == std::vector<int>{-1, 0, 1, 1});  // 2->1, 3->2, 4->2 in 1-based labels
  CHECK(rs.positive_roots.size() == 12);
  CHECK(rs.level_one_nodes == std::vector<int>{1, 3, 4});
}

TEST_CASE("F4 data") {
  const RootSystem rs = build_root_system({Family::F, 4});
  CHECK(rs.nu == std::vector<int>{1, 1, 2, 2});
  CHECK(rs.mu == std::vector<int>{0, 1, 2, 1});
  CHECK(rs.highest_root == std::vector<int>{2, 3, 4, 2});
  CHECK(rs.level_one_nodes.empty());

  // The 24 positive roots, read off the 24 Pochhammer factors of the F4
  // product character.
  const std::set<std::vector<int>> expected = {
      {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}, {1, 1, 1, 1}, {0, 1, 0, 0}, {0, 1, 1, 0},
      {0, 1, 1, 1}, {0, 1, 2, 0}, {1, 1, 2, 0}, {1, 1, 2, 1}, {1, 1, 2, 2}, {1, 2, 2, 0},
      {1, 2, 2, 1}, {1, 2, 2, 2}, {0, 0, 1, 0}, {0, 1, 2, 1}, {1, 2, 3, 1}, {1, 2, 3, 2},
      {1, 2, 4, 2}, {1, 3, 4, 2}, {2, 3, 4, 2}, {0, 0, 1, 1}, {0, 1, 2, 2}, {0, 0, 0, 1}};
  std::set<std::vector<int>> actual(rs.positive_roots.begin(), rs.positive_roots.end());
  CHECK(actual == expected);
}

TEST_CASE("A1 and A2 data") {
  const RootSystem a1 = build_root_system({Family::A, 1});
  CHECK(a1.positive_roots == std::vector<std::vector<int>>{{1}});
  CHECK(a1.highest_root == std::vector<int>{1});

  const RootSystem a2 = build_root_system({Family::A, 2});
  std::set<std::vector<int>> roots(a2.positive_roots.begin(), a2.positive_roots.end());
  CHECK(roots == std::set<std::vector<int>>{{1, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("C and G labeling: alpha_1 is long") {
  const RootSystem c3 = build_root_system({Family::C, 3});
  CHECK(c3.nu == std::vector<int>{1, 2, 2});
  CHECK(c3.mu == std::vector<int>{0, 2, 1});
  CHECK(c3.cartan == std::vector<std::vector<int>>{{2, -1, 0}, {-2, 2, -1}, {0, -1, 2}});

  const RootSystem g2 = build_root_system({Family::G, 2});
  CHECK(g2.nu == std::vector<int>{1, 3});
  CHECK(g2.cartan == std::vector<std::vector<int>>{{2, -1}, {-3, 2}});
  std::set<std::vector<int>> roots(g2.positive_roots.begin(), g2.positive_roots.end());
  CHECK(roots == std::set<std::vector<int>>{{1, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("E series attachment nodes") {
  const RootSystem e6 = build_root_system({Family::E, 6});
  CHECK(e6.i_prime[5] == 2);  // node 6 attaches to node 3
  CHECK(e6.level_one_nodes == std::vector<int>{1, 6});
  const RootSystem e7 = build_root_system({Family::E, 7});
  CHECK(e7.i_prime[6] == 2);
  CHECK(e7.level_one_nodes == std::vector<int>{1});
  const RootSystem e8 = build_root_system({Family::E, 8});
  CHECK(e8.i_prime[7] == 4);  // node 8 attaches to node 5
  CHECK(e8.level_one_nodes.empty());
  CHECK(e8.positive_roots.size() == 120);
}

TEST_CASE("highest root dominates all roots") {
  for (const auto& spec : kSupported) {
    const RootSystem rs = build_root_system(spec);
    for (const auto& r : rs.positive_roots)
      for (int i = 0; i < rs.rank; ++i) CHECK(rs.highest_root[i] >= r[i]);
  }
}

TEST_CASE("non-finite Cartan matrices are rejected") {
  // Affine A1: [[2,-2],[-2,2]] has an infinite root string closure.
  CHECK_THROWS_AS(enumerate_positive_roots({{2, -2}, {-2, 2}}), ValidationError);
  // Malformed inputs.
  CHECK_THROWS_AS(enumerate_positive_roots({{2, 1}, {1, 2}}), ValidationError);
  CHECK_THROWS_AS(enumerate_positive_roots({{2, -1}, {0, 2}}), ValidationError);
  CHECK_THROWS_AS(enumerate_positive_roots({{1}}), ValidationError);
}

TEST_CASE("level one node lists") {
  CHECK(level_one_fundamental_nodes({Family::D, 5}) == std::vector<int>{1, 4, 5});
  CHECK(level_one_fundamental_nodes({Family::E, 6}) == std::vector<int>{1, 6});
  CHECK(level_one_fundamental_nodes({Family::E, 7}) == std::vector<int>{1});
  CHECK(level_one_fundamental_nodes({Family::E, 8}).empty());
  CHECK(level_one_fundamental_nodes({Family::F, 4}).empty());
  CHECK(level_one_fundamental_nodes({Family::A, 3}).empty());
}
