#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "obata/joyce.hpp"

namespace obata {

/// Left-invariant exterior form on an algebra of dimension at most 64.
/// Terms are keyed by index bitmask; a key with popcount k carries the
/// coefficient of the increasing wedge monomial over its set bits.
class LeftInvariantForm {
 public:
  LeftInvariantForm() = default;
  LeftInvariantForm(std::size_t dim, std::size_t degree);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }

  /// popcount(mask) must equal the degree.
  void add_term(std::uint64_t mask, const Rational& c);
  /// Indices must be distinct; the permutation sign folds into c.
  void add_term(const std::vector<int>& idx, const Rational& c);

  Rational coefficient(std::uint64_t mask) const;
  /// Signed lookup: evaluates the form on the listed basis vectors.
  Rational coefficient(const std::vector<int>& idx) const;

  const std::map<std::uint64_t, Rational>& terms() const { return terms_; }

  bool operator==(const LeftInvariantForm& o) const;
  bool operator!=(const LeftInvariantForm& o) const { return !(*this == o); }

  LeftInvariantForm& operator+=(const LeftInvariantForm& o);
  LeftInvariantForm operator+(const LeftInvariantForm& o) const;
  LeftInvariantForm operator-(const LeftInvariantForm& o) const;
  LeftInvariantForm operator*(const Rational& c) const;
  LeftInvariantForm operator-() const;

  std::string to_json() const;

 private:
  std::size_t dim_ = 0;
  std::size_t degree_ = 0;
  std::map<std::uint64_t, Rational> terms_;
};

LeftInvariantForm wedge(const LeftInvariantForm& a, const LeftInvariantForm& b);

/// Chevalley-Eilenberg differential:
/// da(x_0..x_k) = sum_{i<j} (-1)^{i+j} a([x_i,x_j], x_0..^i..^j..x_k).
LeftInvariantForm ce_differential(const LieAlgebra& g,
                                  const LeftInvariantForm& a);

/// Pullback along the endomorphism M: (M*a)(x_1..x_k) = a(Mx_1,..,Mx_k).
LeftInvariantForm pullback(const Matrix& M, const LeftInvariantForm& a);

/// The 1-form g(v, .) of a bilinear form g.
LeftInvariantForm metric_dual(const Matrix& gram, const Vec& v);

/// Same algebra written in the basis given by P's columns.
LieAlgebra change_basis(const LieAlgebra& g, const Matrix& P);

/// Positive definite invariant metric on the ambient algebra. For layers
/// carried by the semisimple part the norms g(e1^j, e1^j) are forced to the
/// Killing norms of the layer triples; bi_invariant records whether the
/// gram is ad-invariant (it always is when the metric extends the Killing
/// form, and never is for the completion of a decomposition with b != 0).
struct InvariantMetric {
  Matrix gram;
  std::vector<Rational> lambdas;  // g(e1^j, e1^j) per layer
  Matrix A;                       // parameter matrix fixing the e1 basis
  bool bi_invariant = true;
};

/// Extends the Killing form of the semisimple part to a bi-invariant
/// hyperhermitian metric. Requires the e1 basis to split into pure torus
/// columns and pairwise Killing-orthogonal b columns whose norms equal the
/// layer norms B(e2^j, e2^j); throws std::invalid_argument otherwise.
/// torus_lambdas, when nonempty, must restate the forced torus norms.
InvariantMetric extend_killing_metric(
    const JoyceDecomposition& d, const Matrix& A,
    const std::vector<Rational>& torus_lambdas = {});

/// Hyperhermitian completion: Killing form on the d and f blocks, forced
/// norms lambda_j^2 on the e1 lines, blocks orthogonal. Defined for every
/// invertible A and equal to extend_killing_metric whenever that exists;
/// ad-invariance fails when b != 0, recorded in bi_invariant.
InvariantMetric hyperhermitian_metric(const JoyceDecomposition& d,
                                      const Matrix& A);

/// eta(X) = -1/2 tr(ad_X) - 1/2 tr(L ad_{LX}), the same for L = I, J, K.
LeftInvariantForm obata_one_form(const LieAlgebra& g,
                                 const HypercomplexTriple& h);

struct RicciForm {
  Matrix bilinear;

  bool is_zero() const { return bilinear.is_zero(); }
};

/// Ric(X,Y) = 1/2 tr(ad_{[X,Y]}) + 1/2 tr(L ad_{L[X,Y]}) = -eta([X,Y]).
RicciForm obata_ricci(const LieAlgebra& g, const HypercomplexTriple& h);

/// theta = 2 sum_j (1 / lambda_j^2) (1 + dim_H f_j) g(e1^j, .), equal to
/// the trace 1-form whenever the metric is an honest Killing extension.
LeftInvariantForm lee_form(const JoyceDecomposition& d,
                           const InvariantMetric& metric);

struct TwistedCyReport {
  bool hkt = false;         // d^c_I w_I = d^c_J w_J = d^c_K w_K
  bool strong = false;      // d d^c_I w_I = 0
  bool volume_twist = false;  // d Psi = theta ^ Psi for Psi = Omega^n
  bool lee_closed = false;  // d theta = 0

  bool all_passed() const {
    return hkt && strong && volume_twist && lee_closed;
  }
  std::string to_json() const;
};

/// Runs the four checks in an arbitrary frame: gram and the triple are
/// matrices on g's basis and theta is the candidate Lee form there.
TwistedCyReport verify_twisted_cy_frame(const LieAlgebra& g,
                                        const Matrix& gram, const Matrix& I,
                                        const Matrix& J, const Matrix& K,
                                        const LeftInvariantForm& theta,
                                        std::size_t max_quaternionic_dim = 4);

/// Transports the data to the adapted frame (where the volume form stays
/// sparse) and runs the checks with theta taken from lee_form. Throws when
/// the quaternionic dimension exceeds the cap or the metric fails to be
/// hyperhermitian for h.
TwistedCyReport verify_twisted_cy(const JoyceDecomposition& d,
                                  const InvariantMetric& metric,
                                  const HypercomplexTriple& h,
                                  std::size_t max_quaternionic_dim = 4);

/// g x| H^r with the fiber acted on by rho. Coordinates: the base in its
/// adapted basis first, then r quaternion blocks (1, i, j, k each). The
/// triple is the adapted one on the base and left multiplication by i, j, k
/// on the fiber; the metric is the base gram plus the standard one; theta
/// is the base Lee form pulled back along the projection.
struct SemidirectHkt {
  LieAlgebra algebra;
  Matrix I, J, K;
  Matrix gram;
  LeftInvariantForm theta;
  std::size_t fiber_offset = 0;  // base dimension; fiber starts here
};

/// rho maps each ambient basis vector of the base to a 4r x 4r matrix that
/// is skew and commutes with the fiber triple (left multiplication by i, j,
/// k), i.e. acts through right quaternion multiplications; an empty rho
/// means the zero map. Requires a bi-invariant metric and rho a Lie algebra
/// homomorphism; both are verified.
SemidirectHkt semidirect_hkt(const JoyceDecomposition& d, const Matrix& A,
                             const InvariantMetric& metric,
                             const std::vector<Matrix>& rho, int r);

TwistedCyReport verify_twisted_cy(const SemidirectHkt& s,
                                  std::size_t max_quaternionic_dim = 4);

}  // namespace obata
