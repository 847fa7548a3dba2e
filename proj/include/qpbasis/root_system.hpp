#pragma once

#include "qpbasis/common.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace qpbasis {

enum class Family { A, B, C, D, E, F, G };

inline char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

inline Family family_from_letter(char c) {
  switch (c) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    case 'E': return Family::E;
    case 'F': return Family::F;
    case 'G': return Family::G;
    default: throw ValidationError(std::string("unknown family letter '") + c + "'");
  }
}

struct AlgebraSpec {
  Family family;
  int rank;

  std::string name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }

  void validate() const {
    const int l = rank;
    bool ok = false;
    switch (family) {
      case Family::A: ok = l >= 1; break;
      case Family::B: ok = l >= 2; break;
      case Family::C: ok = l >= 2; break;
      case Family::D: ok = l >= 3; break;
      case Family::E: ok = l >= 6 && l <= 8; break;
      case Family::F: ok = l == 4; break;
      case Family::G: ok = l == 2; break;
    }
    if (!ok) throw ValidationError("invalid rank " + std::to_string(l) + " for family " +
                                   std::string(1, family_letter(family)));
  }
};

// Enumerates the positive roots of a finite-type Cartan matrix as simple-root
// coefficient vectors, by closing root strings upward in height. For a root
// beta of height h and a simple root alpha_i, the string
// beta - p*alpha_i, ..., beta + q*alpha_i satisfies p - q = <beta, alpha_i^v>,
// and every root below beta in the string is already known, so q is decided
// by membership checks alone. Non-finite-type input keeps generating roots
// and is rejected once a hard cap is exceeded.
inline std::vector<std::vector<int>> enumerate_positive_roots(
    const std::vector<std::vector<int>>& cartan) {
  const int l = static_cast<int>(cartan.size());
  if (l == 0) throw ValidationError("empty Cartan matrix");
  for (int i = 0; i < l; ++i) {
    if (static_cast<int>(cartan[static_cast<std::size_t>(i)].size()) != l)
      throw ValidationError("Cartan matrix is not square");
    if (cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 2)
      throw ValidationError("Cartan matrix diagonal entry != 2");
    for (int j = 0; j < l; ++j) {
      if (i == j) continue;
      const int a = cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (a > 0 || a < -3) throw ValidationError("Cartan off-diagonal entry outside {0,-1,-2,-3}");
      if ((a == 0) != (cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] == 0))
        throw ValidationError("Cartan zero pattern is not symmetric");
    }
  }

  const std::size_t root_cap = static_cast<std::size_t>(10 * l * l + 100);
  const int height_cap = 30 * l + 30;

  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> by_height_prev;  // roots of the current height
  std::vector<std::vector<int>> all;
  for (int i = 0; i < l; ++i) {
    std::vector<int> e(static_cast<std::size_t>(l), 0);
    e[static_cast<std::size_t>(i)] = 1;
    known.insert(e);
    by_height_prev.push_back(e);
    all.push_back(std::move(e));
  }

  auto pairing = [&](const std::vector<int>& beta, int i) {
    // <beta, alpha_i^v> = sum_j beta_j * cartan[i][j]
    int s = 0;
    for (int j = 0; j < l; ++j)
      s += beta[static_cast<std::size_t>(j)] * cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return s;
  };

  for (int h = 1; !by_height_prev.empty(); ++h) {
    if (h > height_cap)
      throw ValidationError("root enumeration exceeded height cap: Cartan matrix is not of finite type");
    std::vector<std::vector<int>> next;
    for (const auto& beta : by_height_prev) {
      for (int i = 0; i < l; ++i) {
        // Walk down the alpha_i-string through beta to find p.
        int p = 0;
        std::vector<int> down = beta;
        while (true) {
          down[static_cast<std::size_t>(i)] -= 1;
          if (down[static_cast<std::size_t>(i)] < 0) break;
          bool zero = std::all_of(down.begin(), down.end(), [](int v) { return v == 0; });
          if (zero || !known.count(down)) break;
          ++p;
        }
        const int q = p - pairing(beta, i);
        if (q <= 0) continue;
        std::vector<int> up = beta;
        up[static_cast<std::size_t>(i)] += 1;
        if (known.insert(up).second) {
          next.push_back(up);
          all.push_back(std::move(up));
          if (all.size() > root_cap)
            throw ValidationError("root enumeration exceeded cap: Cartan matrix is not of finite type");
        }
      }
    }
    by_height_prev = std::move(next);
  }

  auto height = [](const std::vector<int>& r) { return std::accumulate(r.begin(), r.end(), 0); };
  std::sort(all.begin(), all.end(), [&](const auto& x, const auto& y) {
    const int hx = height(x), hy = height(y);
    if (hx != hy) return hx < hy;
    return x < y;
  });
  return all;
}

// Root-system data for one algebra under the labeling of the paper's Dynkin
// diagrams: simple roots numbered so that alpha_1 is always long, with the
// C_l labels reversed relative to the usual convention.
struct RootSystem {
  AlgebraSpec spec;
  int rank = 0;
  std::vector<std::vector<int>> cartan;         // cartan[i][j] = 2<a_i,a_j>/<a_i,a_i>
  std::vector<int> nu;                          // 1, 2, 3 for <a,a> = 2, 1, 2/3
  std::vector<int> i_prime;                     // 0-based; i_prime[0] = -1
  std::vector<int> mu;                          // nu_i / nu_{i'}; mu[0] = 0
  std::vector<std::vector<int>> positive_roots; // ascending height, then lex
  std::vector<int> highest_root;
  std::vector<int> level_one_nodes;             // 1-based node labels

  bool adjacent(int i, int j) const {
    return i != j && cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
  }
};

inline std::vector<int> level_one_fundamental_nodes(const AlgebraSpec& spec) {
  spec.validate();
  if (spec.family == Family::D) return {1, spec.rank - 1, spec.rank};
  if (spec.family == Family::E && spec.rank == 6) return {1, 6};
  if (spec.family == Family::E && spec.rank == 7) return {1};
  return {};  // rectangular mode unsupported elsewhere
}

inline RootSystem build_root_system(const AlgebraSpec& spec) {
  spec.validate();
  const int l = spec.rank;
  RootSystem rs;
  rs.spec = spec;
  rs.rank = l;
  rs.nu.assign(static_cast<std::size_t>(l), 1);

  // Undirected diagram edges (0-based); every node i > 0 attaches to exactly
  // one earlier node.
  std::vector<std::pair<int, int>> edges;
  auto chain = [&](int upto) {
    for (int i = 1; i < upto; ++i) edges.emplace_back(i - 1, i);
  };
  switch (spec.family) {
    case Family::A:
      chain(l);
      break;
    case Family::B:
      chain(l);
      rs.nu[static_cast<std::size_t>(l) - 1] = 2;
      break;
    case Family::C:
      chain(l);
      for (int i = 1; i < l; ++i) rs.nu[static_cast<std::size_t>(i)] = 2;
      break;
    case Family::D:
      chain(l - 1);
      edges.emplace_back(l - 3, l - 1);
      break;
    case Family::E:
      chain(l - 1);
      edges.emplace_back(l == 8 ? 4 : 2, l - 1);
      break;
    case Family::F:
      chain(4);
      rs.nu[2] = 2;
      rs.nu[3] = 2;
      break;
    case Family::G:
      chain(2);
      rs.nu[1] = 3;
      break;
  }

  rs.cartan.assign(static_cast<std::size_t>(l), std::vector<int>(static_cast<std::size_t>(l), 0));
  for (int i = 0; i < l; ++i) rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  for (auto [i, j] : edges) {
    // For an edge, <a_i,a_j> = -max(<a_i,a_i>,<a_j,a_j>)/2, i.e. -1 between
    // long roots and whenever a long root meets a short one, -1/2 between
    // F/B/C short roots, -1 in G_2. Entries a_ij = 2<a_i,a_j>/<a_i,a_i>.
    const int ni = rs.nu[static_cast<std::size_t>(i)], nj = rs.nu[static_cast<std::size_t>(j)];
    int aij, aji;
    if (ni == nj) {
      aij = aji = -1;
    } else {
      // nu = 1 is long; the short side picks up the full ratio.
      aij = ni < nj ? -1 : -(std::max(ni, nj) / std::min(ni, nj));
      aji = ni < nj ? -(std::max(ni, nj) / std::min(ni, nj)) : -1;
      if (std::max(ni, nj) % std::min(ni, nj) != 0)
        throw std::logic_error("incompatible root lengths on an edge");
    }
    rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = aij;
    rs.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = aji;
  }

  rs.i_prime.assign(static_cast<std::size_t>(l), -1);
  rs.mu.assign(static_cast<std::size_t>(l), 0);
  for (int i = 1; i < l; ++i) {
    int ip = i - 1;
    if (i == l - 1) {
      if (spec.family == Family::D) ip = l - 3;
      if (spec.family == Family::E) ip = (l == 8) ? 4 : 2;
    }
    rs.i_prime[static_cast<std::size_t>(i)] = ip;
    detail::check(rs.adjacent(i, ip) && ip < i, "i' must be an earlier neighbor");
    detail::check(rs.nu[static_cast<std::size_t>(i)] % rs.nu[static_cast<std::size_t>(ip)] == 0,
                  "nu_{i'} must divide nu_i");
    rs.mu[static_cast<std::size_t>(i)] =
        rs.nu[static_cast<std::size_t>(i)] / rs.nu[static_cast<std::size_t>(ip)];
  }

  rs.positive_roots = enumerate_positive_roots(rs.cartan);
  rs.highest_root = rs.positive_roots.back();
  for (const auto& r : rs.positive_roots)
    for (int i = 0; i < l; ++i)
      detail::check(rs.highest_root[static_cast<std::size_t>(i)] >= r[static_cast<std::size_t>(i)],
                    "highest root must dominate every positive root");
  rs.level_one_nodes = level_one_fundamental_nodes(spec);
  return rs;
}

}  // namespace qpbasis
