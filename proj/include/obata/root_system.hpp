#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "obata/rational.hpp"

namespace obata {

// Roots live in simple-root integer coordinates. The symmetric pairing is
// (a_i, a_j) = cartan[i][j] * d[j] with d[i] = (a_i, a_i)/2 in {1,2,3}.
struct RootSystem {
  char letter = 0;  // A,B,C,D,E,F,G
  int rank = 0;
  std::vector<std::vector<int>> cartan;
  std::vector<int> d;
  std::vector<IVec> positive_roots;  // sorted by height, simples first

  Integer inner(const IVec& a, const IVec& b) const;
  Integer norm2(const IVec& a) const { return inner(a, a); }
  int height(const IVec& a) const;
  bool is_positive_root(const IVec& a) const;
  std::size_t root_index(const IVec& a) const;  // throws if absent
  IVec highest_root() const;
  std::string name() const;

 private:
  friend RootSystem build_root_system(char, int);
  std::map<IVec, std::size_t> index_;
};

// Valid types: A_n n>=1, B_n n>=2, C_n n>=2, D_n n>=4, E_6..E_8, F_4, G_2.
// C_2 is accepted (needed for sp(2)) even though it coincides with B_2.
RootSystem build_root_system(char letter, int rank);

IVec maximal_root(const RootSystem& rs);

struct DiagramLayer {
  int d_index = 0;  // 1-based position
  int f_hdim = 0;   // quaternionic dimension of the f summand
  IVec theta;       // the layer's maximal root, ambient coordinates
};

struct DiagramDecomposition {
  char letter = 0;
  int rank = 0;
  std::vector<DiagramLayer> layers;
  int b_dim = 0;
  int m = 0;
  int ell = 0;  // ell = 2m - rank
  int trivial_f = 0;
  int algebra_dim = 0;  // rank + 2 |positive roots|
};

// Iterated reduction: record the layer of the current maximal root, pass to
// the orthogonal root subsystem, split into non-orthogonality components
// (ordered by smallest touched simple-root index), repeat until empty.
DiagramDecomposition diagram_joyce_decomposition(char letter, int rank);

}  // namespace obata
