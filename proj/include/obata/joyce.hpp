#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "obata/chevalley.hpp"
#include "obata/lie_algebra.hpp"

namespace obata {

/// One su(2) layer of the decomposition. The triple spans d_i and obeys
///   [e2,e3] = 2 e4,  [e4,e2] = 2 e3,  [e3,e4] = 2 e2,
/// and fs holds the f-basis of f_i grouped in quadruples
/// (f, [e2,f], [e3,f], [e4,f]).
struct JoyceLayer {
  Vec e2, e3, e4;
  std::vector<std::array<Vec, 4>> fs;

  int f_hdim() const { return static_cast<int>(fs.size()); }
};

enum class BasisRole { e1, e2, e3, e4, f };

/// Decomposition of l u(1) + g into b + sum(d_i) + sum(f_i), with the abelian
/// torus sized so that the e1-pool (torus directions plus a basis of b) has
/// exactly one vector per layer. All vectors live in the coordinates of
/// `ambient`, whose first `ell` basis directions are the central torus.
struct JoyceDecomposition {
  LieAlgebra ambient;
  int ell = 0;
  std::vector<Vec> pool;  // basis of l u(1) + b; first ell span the torus
  std::vector<JoyceLayer> layers;

  int m() const { return static_cast<int>(layers.size()); }
  int b_dim() const { return m() - ell; }
  std::vector<int> f_hdims() const;
  int quaternionic_dim() const;  // ambient dim is 4 * quaternionic_dim()

  /// Change-of-basis matrix whose columns are, in order: e1^1..e1^m with
  /// e1^i = sum_j A(j,i) pool[j], then (e2,e3,e4) per layer, then the f
  /// quadruples per layer. A must be m x m.
  Matrix adapted_matrix(const Matrix& A) const;
  Matrix adapted_matrix() const;

  /// (layer, role) of an adapted-basis column; layer is 0-based.
  std::pair<int, BasisRole> column_info(int col) const;
  /// Label in the e_role^layer / f_index^layer notation, layers 1-based.
  std::string column_label(int col) const;
};

struct HypercomplexTriple {
  Matrix I, J, K;
};

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// The 4x4 action of I (which = 0), J (1), K (2) on an adapted quadruple
/// (w, Iw, Jw, Kw); the same block serves the h_i spans and the f quadruples.
Matrix quaternion_block(int which);

/// Peels su(2) layers off a compact Chevalley realization: each step takes
/// the height-maximal root theta of the current subsystem, puts
/// (u_theta, v_theta, i h_theta-coroot) into d_i, the root spaces meeting
/// theta into f_i, and recurses on the orthogonal complement. Subsystem
/// components are processed breadth-first, ordered by their smallest touched
/// simple root.
JoyceDecomposition joyce_decompose(const ChevalleyRealization& cr);

/// Layer relations: [d_i, pool] = 0, [d_i, d_j] = 0 for i != j,
/// [d_i, f_j] = 0 for i < j, [d_i, f_i] in f_i with ad(e2_i)^2 = -Id there.
CheckReport verify_joyce_relations(const JoyceDecomposition& d);

/// Bracket inclusions between layers: [pool, f_j] in f_j; [d_i, f_j] in f_j
/// for i > j; [f_i, f_j] in f_i for i < j; [f_i, f_i] in
/// pool + sum_{k>=i} (d_k + f_k).
CheckReport verify_bracket_inclusions(const JoyceDecomposition& d);

/// Endomorphisms I, J, K of the ambient space: on each h_i = <e1^i> + d_i
/// the standard quaternion action in the basis (e1^i..e4^i), on each f_i the
/// adjoint action of (e2^i, e3^i, e4^i). The columns of A pick the e1-lines
/// inside the pool span; A must be invertible.
HypercomplexTriple hypercomplex_structure(const JoyceDecomposition& d,
                                          const Matrix& A);

/// Nijenhuis tensor of each of I, J, K against the bracket of g, evaluated
/// on all basis pairs: N_L(x,y) = [Lx,Ly] - L[Lx,y] - L[x,Ly] - [x,y].
CheckReport verify_integrability(const HypercomplexTriple& h,
                                 const LieAlgebra& g);

/// ad_b commutes with I, J, K for every pool vector b.
CheckReport hyperholomorphic_check(const JoyceDecomposition& d,
                                   const HypercomplexTriple& h);

}  // namespace obata
