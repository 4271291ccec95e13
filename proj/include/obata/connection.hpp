#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "obata/joyce.hpp"
#include "obata/matrix.hpp"
#include "obata/span_basis.hpp"

namespace obata {

/// Left-invariant connection, one matrix per ambient basis direction:
/// nabla[k] is the endomorphism Y -> nabla_{e_k} Y.
struct Connection {
  std::vector<Matrix> nabla;

  std::size_t dim() const { return nabla.size(); }
  /// Connection matrix along an arbitrary vector, by linearity in the
  /// lower slot.
  Matrix along(const Vec& x) const;
};

/// The unique torsion-free connection with nabla I = nabla J = nabla K = 0:
///   nabla_X Y = 1/2 ([X,Y] + I[IX,Y] - J[X,JY] + K[IX,JY]).
/// The formula produces such a connection only for integrable triples, so a
/// failed integrability check throws std::invalid_argument. Torsion freeness
/// and parallelism of I, J, K are re-verified on the result.
Connection obata_connection(const LieAlgebra& g, const HypercomplexTriple& h);

/// Curvature R(x,y) = [nabla_x, nabla_y] - nabla_{[x,y]} on basis pairs.
/// Only i < j is stored; antisymmetry fills in the rest. The first Bianchi
/// identity (cyclic sum of R(x,y)z) is verified at construction.
struct CurvatureTensor {
  std::size_t dim = 0;
  std::vector<Matrix> entries;  // packed (i,j), i < j, lexicographic

  const Matrix& at(std::size_t i, std::size_t j) const;
  Matrix eval(const Vec& x, const Vec& y) const;
};

CurvatureTensor curvature(const Connection& c, const LieAlgebra& g);

/// Endomorphism-valued tensor: one matrix per basis r-tuple, last index
/// fastest. Rank 0 is a single endomorphism.
struct EndoTensor {
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::vector<Matrix> values;

  const Matrix& at(const std::vector<std::size_t>& idx) const;
  Matrix& at(const std::vector<std::size_t>& idx);
};

EndoTensor endo_tensor(Matrix value);
EndoTensor endo_tensor(const CurvatureTensor& r);

/// (nabla_x T)(y_1..y_r) = [nabla_x, T(y_1..y_r)]
///                          - sum_p T(y_1, .., nabla_x y_p, .., y_r),
/// with the new direction x prepended as the first index.
EndoTensor covariant_derivative(const Connection& c, const EndoTensor& t);

enum class HolonomyMethod { filtration, alekseevskii };

/// Shape of a space of endomorphisms in quaternionic block coordinates:
/// each of the n x n cells is classified by the quaternion values it takes
/// across the generators ("0", "R", "Im", "H", or "mixed").
struct BlockReport {
  std::size_t n = 0;
  std::vector<std::string> cells;  // row-major
  bool real_trace_zero = true;

  const std::string& cell(std::size_t r, std::size_t s) const {
    return cells[r * n + s];
  }
};

struct HolonomyResult {
  std::size_t dim = 0;
  std::vector<std::size_t> filtration_dims;  // dim after seeding, then per pass
  std::size_t depth_reached = 0;
  bool stabilized = false;
  std::vector<Matrix> generators;  // spanning set, ambient coordinates
  SpanBasis span{0};               // same span over row-major flattened matrices
  BlockReport blocks;

  std::string to_json() const;
};

/// Basis change from quaternionic block coordinates to ambient ones. Columns
/// are the adapted columns reordered as, per layer, the h quadruple
/// (e1, e2, e3, e4) followed by the layer's f quadruples. In these
/// coordinates I, J, K act as the standard 4x4 blocks on every quadruple,
/// so any endomorphism commuting with all three is a matrix of right
/// quaternion multiplications.
Matrix quaternion_frame(const JoyceDecomposition& d, const Matrix& A);

/// Lie algebra generated by the curvature operators inside the commutant
/// gl(n, H) of {I, J, K}, n = dim/4. `filtration` spans R, nabla R,
/// nabla^2 R, ... via commutators with the connection matrices;
/// `alekseevskii` additionally closes under Lie brackets each pass
/// (nabla commutators first). Stops when the dimension repeats, reaches
/// 4 n^2, or after max_depth passes (then stabilized = false).
/// max_depth must be >= 1.
HolonomyResult holonomy_algebra(const Connection& c,
                                const JoyceDecomposition& d, const Matrix& A,
                                HolonomyMethod method,
                                std::size_t max_depth = 6);

/// A candidate subspace, its basis, and whether every nabla_{e_k} maps it
/// into itself.
struct InvariantSubspace {
  std::string label;
  std::vector<Vec> basis;
  bool parallel = false;
};

/// Candidate catalog: each h_i with empty f_i, the tails
/// span{e1^j, d_j, f_j : j >= i} for i >= 2, and the nabla-closure of each
/// h_i (always invariant; reported with its final dimension).
std::vector<InvariantSubspace> find_parallel_subspaces(
    const Connection& c, const JoyceDecomposition& d, const Matrix& A);

/// nabla_X e1^i = -X when X lies in h_i + f_i and 0 when X lies in any
/// other summand, checked on every adapted basis column.
CheckReport verify_nabla_e1(const Connection& c, const JoyceDecomposition& d,
                            const Matrix& A);

/// Minus the sum of the e1^i. Satisfies nabla_X euler = X for every X.
Vec euler_field(const JoyceDecomposition& d, const Matrix& A);

}  // namespace obata
