#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "obata/rational.hpp"

namespace obata {

/// Dense matrix over the rationals. Sized for Lie-theoretic work (ambient
/// dimensions in the low hundreds), not for bulk numerics.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Rational& c) const;
  Matrix operator-() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);

  Matrix transpose() const;
  Rational trace() const;
  Vec apply(const Vec& v) const;  // matrix * column vector
  Vec row_vec(std::size_t i) const;
  Vec col_vec(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  static Matrix commutator(const Matrix& a, const Matrix& b);

  /// Exact rank via fraction-free (Bareiss) elimination on the
  /// denominator-cleared integer matrix.
  std::size_t rank() const;

  Rational determinant() const;  // square only

  /// Gauss-Jordan inverse; nullopt when singular.
  std::optional<Matrix> inverse() const;

  /// Solve A x = b; nullopt when no solution (A need not be square,
  /// a solution is returned only when it is exact and unique given
  /// full column rank).
  std::optional<Vec> solve(const Vec& b) const;

  /// Sylvester test on a symmetric matrix: all elimination pivots positive.
  bool is_positive_definite() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

// Small vector helpers shared across modules.
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Vec& a, const Rational& c);
bool vec_is_zero(const Vec& a);
Rational dot(const Vec& a, const Vec& b);

}  // namespace obata
