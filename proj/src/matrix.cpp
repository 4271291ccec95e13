#include "obata/matrix.hpp"

#include <stdexcept>

#include "obata/span_basis.hpp"

namespace obata {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
  for (const auto& q : a_)
    if (sgn(q) != 0) return false;
  return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(*this);
  r += o;
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(*this);
  r -= o;
  return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch in +");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch in -");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("matrix shape mismatch in *");
  Matrix r(rows_, o.cols_);
  Rational t;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Rational& bkj = o.at(k, j);
        if (sgn(bkj) == 0) continue;
        t = aik * bkj;
        r.at(i, j) += t;
      }
    }
  }
  return r;
}

Matrix Matrix::operator*(const Rational& c) const {
  Matrix r(*this);
  for (auto& q : r.a_) q *= c;
  return r;
}

Matrix Matrix::operator-() const { return *this * Rational(-1); }

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Rational Matrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
  return t;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: size mismatch");
  Vec r(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (sgn(v[j]) == 0) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (sgn(at(i, j)) == 0) continue;
      r[i] += at(i, j) * v[j];
    }
  }
  return r;
}

Vec Matrix::row_vec(std::size_t i) const {
  Vec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

Vec Matrix::col_vec(std::size_t j) const {
  Vec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) r[i] = at(i, j);
  return r;
}

void Matrix::set_col(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_col: size mismatch");
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Matrix Matrix::commutator(const Matrix& a, const Matrix& b) {
  return a * b - b * a;
}

namespace {

// Fraction-free Bareiss elimination over the integers, in place.
// Returns the rank. Rows of m are modified.
std::size_t bareiss_rank(std::vector<IVec>& m, std::size_t cols) {
  std::size_t rank = 0;
  Integer prev = 1;
  std::size_t rows = m.size();
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && sgn(m[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const Integer p = m[rank][col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (sgn(m[i][col]) == 0) {
        // still must rescale to keep the Bareiss divisibility invariant
        for (std::size_t j = col; j < cols; ++j) {
          m[i][j] *= p;
          m[i][j] /= prev;  // exact
        }
        continue;
      }
      const Integer f = m[i][col];
      for (std::size_t j = col; j < cols; ++j) {
        m[i][j] = (p * m[i][j] - f * m[rank][j]) / prev;  // exact division
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t Matrix::rank() const {
  std::vector<IVec> m(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Vec row = row_vec(i);
    m[i] = clear_denominators(row);
  }
  return bareiss_rank(m, cols_);
}

Rational Matrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
  std::size_t n = rows_;
  if (n == 0) return 1;
  // Gaussian elimination over Q with exact pivoting.
  Matrix m(*this);
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m.at(piv, col)) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m.at(piv, j), m.at(col, j));
      det = -det;
    }
    det *= m.at(col, col);
    Rational inv = 1 / m.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(m.at(i, col)) == 0) continue;
      Rational f = m.at(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return det;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  std::size_t n = rows_;
  Matrix m(*this);
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m.at(piv, col)) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    Rational f = 1 / m.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m.at(col, j) *= f;
      inv.at(col, j) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(m.at(i, col)) == 0) continue;
      Rational g = m.at(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m.at(i, j) -= g * m.at(col, j);
        inv.at(i, j) -= g * inv.at(col, j);
      }
    }
  }
  return inv;
}

std::optional<Vec> Matrix::solve(const Vec& b) const {
  if (b.size() != rows_) return std::nullopt;
  // Gauss-Jordan on the augmented matrix.
  std::size_t n = rows_, m = cols_;
  Matrix a(*this);
  Vec rhs = b;
  std::vector<int> pivot_of_col(m, -1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < m && r < n; ++col) {
    std::size_t piv = r;
    while (piv < n && sgn(a.at(piv, col)) == 0) ++piv;
    if (piv == n) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m; ++j) std::swap(a.at(piv, j), a.at(r, j));
      std::swap(rhs[piv], rhs[r]);
    }
    Rational f = 1 / a.at(r, col);
    for (std::size_t j = 0; j < m; ++j) a.at(r, j) *= f;
    rhs[r] *= f;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || sgn(a.at(i, col)) == 0) continue;
      Rational g = a.at(i, col);
      for (std::size_t j = 0; j < m; ++j) a.at(i, j) -= g * a.at(r, j);
      rhs[i] -= g * rhs[r];
    }
    pivot_of_col[col] = int(r);
    ++r;
  }
  // consistency rows
  for (std::size_t i = r; i < n; ++i)
    if (sgn(rhs[i]) != 0) return std::nullopt;
  // unique solution requires full column rank
  Vec x(m);
  for (std::size_t col = 0; col < m; ++col) {
    if (pivot_of_col[col] < 0) return std::nullopt;
    x[col] = rhs[pivot_of_col[col]];
  }
  return x;
}

bool Matrix::is_positive_definite() const {
  if (rows_ != cols_) throw std::invalid_argument("not square");
  Matrix a(*this);
  std::size_t n = rows_;
  // symmetric Gaussian elimination; pivots are ratios of successive
  // leading principal minors, so PD iff every pivot is positive
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a.at(k, k)) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a.at(i, k)) == 0) continue;
      Rational f = a.at(i, k) / a.at(k, k);
      for (std::size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Vec& a, const Rational& c) {
  Vec r(a);
  for (auto& q : r) q *= c;
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& q : a)
    if (sgn(q) != 0) return false;
  return true;
}

Rational dot(const Vec& a, const Vec& b) {
  Rational t = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) t += a[i] * b[i];
  return t;
}

}  // namespace obata
