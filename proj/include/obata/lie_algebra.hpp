#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "obata/matrix.hpp"

namespace obata {

/// Sparse vector: sorted (index, coefficient) pairs, no zero coefficients.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_add(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Rational& c);
Vec sparse_to_dense(const SparseVec& a, std::size_t dim);
SparseVec dense_to_sparse(const Vec& v);

struct JacobiReport {
  bool ok = true;
  // offending (i, j, k) triples, capped
  std::vector<std::array<int, 3>> failures;
};

/// Finite-dimensional real Lie algebra given by structure constants on a
/// fixed basis. Brackets are stored for i < j only; antisymmetry fills in
/// the rest.
class LieAlgebra {
 public:
  LieAlgebra() : dim_(0) {}
  explicit LieAlgebra(int dim);

  int dim() const { return dim_; }

  const std::string& label(int i) const { return labels_[i]; }
  void set_label(int i, std::string s) { labels_[i] = std::move(s); }

  /// Define [e_i, e_j] for i != j (order normalized internally).
  void set_bracket(int i, int j, const SparseVec& v);
  SparseVec bracket_basis(int i, int j) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  SparseVec bracket_sparse(const SparseVec& x, const SparseVec& y) const;

  Matrix ad(int i) const;
  Matrix ad(const Vec& x) const;

  /// B(x, y) = -tr(ad_x ad_y): negative of the Killing-Cartan form, positive
  /// definite exactly on compact semisimple algebras.
  Matrix killing_form() const;
  Rational killing(const Vec& x, const Vec& y) const;

  JacobiReport verify_jacobi(std::size_t max_failures = 8) const;

  /// New algebra with k central generators prepended (basis indices shift
  /// up by k).
  LieAlgebra with_central_torus(int k) const;

  bool is_abelian() const;

 private:
  std::int64_t key(int i, int j) const { return std::int64_t(i) * dim_ + j; }

  int dim_;
  std::vector<std::string> labels_;
  std::map<std::int64_t, SparseVec> sc_;  // i < j only
};

}  // namespace obata
