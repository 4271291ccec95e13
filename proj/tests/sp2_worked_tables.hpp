#pragma once
// Reference data for the flat-torus sp(2) example, shared by the unit tests
// and the acceptance harness. All tables live in the quaternionic frame
// (h1 quadruple, f1 quadruple, h2 quadruple) with the matching dual frame.
#include <tuple>
#include <vector>

namespace worked_sp2 {

// Connection table: entry (r, s) names the single dual covector (1-based,
// sign included) whose multiple is the connection form component; 0 means
// the component vanishes. Four components carry coefficient 3 instead of 1,
// flagged by theta_triple.
inline constexpr int kTheta[12][12] = {
    {-1, 2, 3, 4, 5, 6, 7, 8, 0, 0, 0, 0},
    {-2, -1, -4, 3, -6, 5, -8, 7, 0, 0, 0, 0},
    {-3, 4, -1, -2, -7, 8, 5, -6, 0, 0, 0, 0},
    {-4, -3, 2, -1, -8, -7, 6, 5, 0, 0, 0, 0},
    {-5, 6, 7, 8, -1, 10, 11, 12, 0, 0, 0, 0},
    {-6, -5, -8, 7, -10, -1, -12, 11, 0, 0, 0, 0},
    {-7, 8, -5, -6, -11, 12, -1, -10, 0, 0, 0, 0},
    {-8, -7, 6, -5, -12, -11, 10, -1, 0, 0, 0, 0},
    {0, 0, 0, 0, -5, 6, 7, 8, -9, 10, 11, 12},
    {0, 0, 0, 0, -6, -5, -8, 7, -10, -9, -12, 11},
    {0, 0, 0, 0, -7, 8, -5, -6, -11, 12, -9, -10},
    {0, 0, 0, 0, -8, -7, 6, -5, -12, -11, 10, -9},
};

inline bool theta_triple(int r, int s) {
  return (r == 8 && s == 4) || (r == 9 && s == 5) || (r == 10 && s == 6) ||
         (r == 11 && s == 7);
}

// sparse 12x12 matrix entries: (row, col, value)
using Entries = std::vector<std::tuple<int, int, int>>;

// Seven endomorphisms spanning the curvature operators; rows 8..11 are the
// h2 quadruple.
inline const std::vector<Entries>& tau_entries() {
  static const std::vector<Entries> list = {
      {{8, 1, 1}, {8, 9, -1}, {9, 8, 1}, {9, 0, -1},
       {10, 11, 1}, {10, 3, -1}, {11, 2, 1}, {11, 10, -1}},
      {{8, 2, 1}, {8, 10, -1}, {9, 3, 1}, {9, 11, -1},
       {10, 8, 1}, {10, 0, -1}, {11, 9, 1}, {11, 1, -1}},
      {{8, 3, 1}, {8, 11, -1}, {9, 10, 1}, {9, 2, -1},
       {10, 1, 1}, {10, 9, -1}, {11, 8, 1}, {11, 0, -1}},
      {{8, 4, 1}, {9, 5, 1}, {10, 6, 1}, {11, 7, 1}},
      {{8, 5, 1}, {9, 4, -1}, {10, 7, -1}, {11, 6, 1}},
      {{8, 6, 1}, {9, 7, 1}, {10, 4, -1}, {11, 5, -1}},
      {{8, 7, 1}, {9, 6, -1}, {10, 5, 1}, {11, 4, -1}},
  };
  return list;
}

// Derivatives of the first generator along the h1 quadruple.
inline const std::vector<Entries>& nu_entries() {
  static const std::vector<Entries> list = {
      {{8, 1, 1}, {9, 0, -1}, {10, 3, -1}, {11, 2, 1}},
      {{8, 0, 1}, {9, 1, 1}, {10, 2, 1}, {11, 3, 1}},
      {{8, 3, -1}, {9, 2, 1}, {10, 1, -1}, {11, 0, 1}},
      {{8, 2, 1}, {9, 3, 1}, {10, 0, -1}, {11, 1, -1}},
  };
  return list;
}

}  // namespace worked_sp2
