#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obata/root_system.hpp"

using namespace obata;

namespace {

IVec iv(std::vector<int> v) {
  IVec r;
  for (int x : v) r.push_back(Integer(x));
  return r;
}

std::size_t classical_count(char letter, int n) {
  switch (letter) {
    case 'A': return std::size_t(n) * (n + 1) / 2;
    case 'B':
    case 'C': return std::size_t(n) * n;
    case 'D': return std::size_t(n) * (n - 1);
    default: return 0;
  }
}

}  // namespace

TEST_CASE("positive root counts match the classical formulas") {
  for (int n = 1; n <= 7; ++n)
    CHECK(build_root_system('A', n).positive_roots.size() ==
          classical_count('A', n));
  for (int n = 2; n <= 6; ++n) {
    CHECK(build_root_system('B', n).positive_roots.size() ==
          classical_count('B', n));
    CHECK(build_root_system('C', n).positive_roots.size() ==
          classical_count('C', n));
  }
  for (int n = 4; n <= 7; ++n)
    CHECK(build_root_system('D', n).positive_roots.size() ==
          classical_count('D', n));
  CHECK(build_root_system('G', 2).positive_roots.size() == 6);
  CHECK(build_root_system('F', 4).positive_roots.size() == 24);
  CHECK(build_root_system('E', 6).positive_roots.size() == 36);
  CHECK(build_root_system('E', 7).positive_roots.size() == 63);
  CHECK(build_root_system('E', 8).positive_roots.size() == 120);
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(build_root_system('H', 3), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('A', 0), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('D', 3), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('E', 5), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('E', 9), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('F', 5), std::invalid_argument);
  CHECK_THROWS_AS(build_root_system('G', 3), std::invalid_argument);
}

TEST_CASE("cartan matrices are valid and the pairing is symmetric") {
  for (auto [l, n] : std::vector<std::pair<char, int>>{
           {'A', 4}, {'B', 4}, {'C', 3}, {'D', 5}, {'F', 4}, {'G', 2}}) {
    RootSystem rs = build_root_system(l, n);
    for (int i = 0; i < n; ++i) {
      CHECK(rs.cartan[i][i] == 2);
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        CHECK(rs.cartan[i][j] <= 0);
        // (a_i, a_j) symmetric: A[i][j] d_j == A[j][i] d_i
        CHECK(rs.cartan[i][j] * rs.d[j] == rs.cartan[j][i] * rs.d[i]);
      }
    }
  }
}

TEST_CASE("maximal roots of small systems") {
  CHECK(maximal_root(build_root_system('A', 2)) == iv({1, 1}));
  CHECK(maximal_root(build_root_system('A', 4)) == iv({1, 1, 1, 1}));
  CHECK(maximal_root(build_root_system('C', 2)) == iv({2, 1}));
  CHECK(maximal_root(build_root_system('G', 2)) == iv({3, 2}));
  CHECK(maximal_root(build_root_system('B', 3)) == iv({1, 2, 2}));
  CHECK(maximal_root(build_root_system('D', 4)) == iv({1, 2, 1, 1}));
  CHECK(maximal_root(build_root_system('F', 4)) == iv({2, 3, 4, 2}));
}

TEST_CASE("the highest root dominates every positive root coordinatewise") {
  for (auto [l, n] : std::vector<std::pair<char, int>>{{'A', 5},
                                                       {'B', 4},
                                                       {'C', 4},
                                                       {'D', 5},
                                                       {'E', 6},
                                                       {'F', 4},
                                                       {'G', 2}}) {
    RootSystem rs = build_root_system(l, n);
    IVec theta = rs.highest_root();
    for (const auto& r : rs.positive_roots)
      for (int i = 0; i < n; ++i) CHECK(r[i] <= theta[i]);
  }
}

TEST_CASE("every non-simple positive root is simple plus positive root") {
  for (auto [l, n] : std::vector<std::pair<char, int>>{
           {'A', 4}, {'B', 3}, {'C', 3}, {'D', 4}, {'F', 4}, {'G', 2}}) {
    RootSystem rs = build_root_system(l, n);
    for (const auto& r : rs.positive_roots) {
      if (rs.height(r) == 1) continue;
      bool decomposes = false;
      for (int i = 0; i < n && !decomposes; ++i) {
        if (sgn(r[i]) == 0) continue;
        IVec down = r;
        down[i] -= 1;
        bool neg = false;
        for (const auto& c : down)
          if (sgn(c) < 0) neg = true;
        if (!neg && (rs.is_positive_root(down) || down == IVec(n, Integer(0))))
          decomposes = true;
      }
      CHECK(decomposes);
    }
  }
}

TEST_CASE("diagram decomposition of sp(2)") {
  DiagramDecomposition d = diagram_joyce_decomposition('C', 2);
  REQUIRE(d.layers.size() == 2);
  CHECK(d.layers[0].d_index == 1);
  CHECK(d.layers[0].f_hdim == 1);
  CHECK(d.layers[1].f_hdim == 0);
  CHECK(d.b_dim == 0);
  CHECK(d.m == 2);
  CHECK(d.ell == 2);
  CHECK(d.trivial_f == 1);
  CHECK(d.algebra_dim == 10);
}

TEST_CASE("diagram decomposition of su(5)") {
  DiagramDecomposition d = diagram_joyce_decomposition('A', 4);
  REQUIRE(d.layers.size() == 2);
  CHECK(d.layers[0].f_hdim == 3);
  CHECK(d.layers[1].f_hdim == 1);
  CHECK(d.b_dim == 2);
  CHECK(d.ell == 0);
  CHECK(d.trivial_f == 0);
  CHECK(d.algebra_dim == 24);
}

TEST_CASE("diagram decomposition layer bookkeeping is consistent") {
  for (auto [l, n] : std::vector<std::pair<char, int>>{{'A', 1},
                                                       {'A', 5},
                                                       {'B', 5},
                                                       {'C', 4},
                                                       {'D', 6},
                                                       {'E', 6},
                                                       {'E', 7},
                                                       {'F', 4},
                                                       {'G', 2}}) {
    DiagramDecomposition d = diagram_joyce_decomposition(l, n);
    CHECK(d.ell == 2 * d.m - d.rank);
    CHECK(d.ell >= 0);
    CHECK(d.b_dim == d.rank - d.m);
    CHECK(d.b_dim >= 0);
    int f_total = 0;
    for (const auto& layer : d.layers) f_total += layer.f_hdim;
    CHECK(d.b_dim + 3 * d.m + 4 * f_total == d.algebra_dim);
    int trivial = 0;
    for (const auto& layer : d.layers)
      if (layer.f_hdim == 0) ++trivial;
    CHECK(trivial == d.trivial_f);
  }
}

TEST_CASE("trivial layer counts across the classification") {
  auto trivial = [](char l, int n) {
    return diagram_joyce_decomposition(l, n).trivial_f;
  };
  CHECK(trivial('G', 2) == 1);
  CHECK(trivial('F', 4) == 1);
  CHECK(trivial('E', 6) == 1);
  CHECK(trivial('E', 7) == 4);
  CHECK(trivial('E', 8) == 4);
  // sp(k): always exactly one
  for (int k = 2; k <= 6; ++k) CHECK(trivial('C', k) == 1);
  // so(2k+1): ceil(k/2)
  for (int k = 2; k <= 6; ++k) CHECK(trivial('B', k) == (k + 1) / 2);
  // so(4k): k+1 and so(4k+2): k
  CHECK(trivial('D', 4) == 3);
  CHECK(trivial('D', 6) == 4);
  CHECK(trivial('D', 8) == 5);
  CHECK(trivial('D', 5) == 2);
  CHECK(trivial('D', 7) == 3);
  // su(2k): one; su(2k+1): none
  CHECK(trivial('A', 1) == 1);
  CHECK(trivial('A', 3) == 1);
  CHECK(trivial('A', 5) == 1);
  CHECK(trivial('A', 2) == 0);
  CHECK(trivial('A', 4) == 0);
  CHECK(trivial('A', 6) == 0);
}
