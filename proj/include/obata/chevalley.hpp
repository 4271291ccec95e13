#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "obata/lie_algebra.hpp"
#include "obata/root_system.hpp"

namespace obata {

// Compact real form built from a Chevalley basis with the extraspecial-pair
// sign convention. Basis order: t_1..t_r (i times the simple coroots), then
// u_g, v_g per positive root g in enumeration order, where u_g = x_g - y_g
// and v_g = i(x_g + y_g).
struct ChevalleyRealization {
  RootSystem root_system;
  LieAlgebra algebra;
  std::vector<int> cartan_index;
  std::vector<std::pair<int, int>> root_space_index;  // (u,v) per root

  // N_{a,b} for positive roots by index; 0 when the sum is not a root.
  Integer n_pos(std::size_t a, std::size_t b) const;
  // the coroot of gamma in simple-coroot coordinates: gamma_i d_i / d_gamma
  IVec coroot(const IVec& gamma) const;

  std::map<std::pair<std::size_t, std::size_t>, Integer> n_table;
};

ChevalleyRealization chevalley_compact_form(const RootSystem& rs);

}  // namespace obata
