#include "obata/lie_algebra.hpp"

#include <stdexcept>

namespace obata {

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
  SparseVec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      Rational s = a[i].second + b[j].second;
      if (sgn(s) != 0) r.emplace_back(a[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

SparseVec sparse_scale(const SparseVec& a, const Rational& c) {
  if (sgn(c) == 0) return {};
  SparseVec r(a);
  for (auto& [k, q] : r) q *= c;
  return r;
}

Vec sparse_to_dense(const SparseVec& a, std::size_t dim) {
  Vec v(dim);
  for (const auto& [k, q] : a) v[k] = q;
  return v;
}

SparseVec dense_to_sparse(const Vec& v) {
  SparseVec r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) r.emplace_back(int(i), v[i]);
  return r;
}

LieAlgebra::LieAlgebra(int dim) : dim_(dim), labels_(dim) {
  for (int i = 0; i < dim; ++i) labels_[i] = "x" + std::to_string(i);
}

void LieAlgebra::set_bracket(int i, int j, const SparseVec& v) {
  if (i == j || i < 0 || j < 0 || i >= dim_ || j >= dim_)
    throw std::invalid_argument("set_bracket: bad indices");
  if (i < j) {
    if (v.empty())
      sc_.erase(key(i, j));
    else
      sc_[key(i, j)] = v;
  } else {
    set_bracket(j, i, sparse_scale(v, Rational(-1)));
  }
}

SparseVec LieAlgebra::bracket_basis(int i, int j) const {
  if (i == j) return {};
  if (i < j) {
    auto it = sc_.find(key(i, j));
    return it == sc_.end() ? SparseVec{} : it->second;
  }
  auto it = sc_.find(key(j, i));
  return it == sc_.end() ? SparseVec{}
                         : sparse_scale(it->second, Rational(-1));
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec r(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0 || i == j) continue;
      for (const auto& [k, c] : bracket_basis(i, j)) r[k] += x[i] * y[j] * c;
    }
  }
  return r;
}

SparseVec LieAlgebra::bracket_sparse(const SparseVec& x,
                                     const SparseVec& y) const {
  SparseVec r;
  for (const auto& [i, a] : x) {
    for (const auto& [j, b] : y) {
      if (i == j) continue;
      r = sparse_add(r, sparse_scale(bracket_basis(i, j), a * b));
    }
  }
  return r;
}

Matrix LieAlgebra::ad(int i) const {
  Matrix m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    for (const auto& [k, c] : bracket_basis(i, j)) m.at(k, j) = c;
  }
  return m;
}

Matrix LieAlgebra::ad(const Vec& x) const {
  Matrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      for (const auto& [k, c] : bracket_basis(i, j)) m.at(k, j) += x[i] * c;
    }
  }
  return m;
}

Matrix LieAlgebra::killing_form() const {
  // B(x, y) = -tr(ad_x ad_y). Work column-sparse: tr(A B) over the stored
  // bracket tables without forming dense products.
  std::vector<Matrix> ads(dim_);
  for (int i = 0; i < dim_; ++i) ads[i] = ad(i);
  Matrix b(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      Rational t = 0;
      for (int l = 0; l < dim_; ++l) {
        for (int k = 0; k < dim_; ++k) {
          const Rational& x = ads[i].at(l, k);
          if (sgn(x) == 0) continue;
          const Rational& y = ads[j].at(k, l);
          if (sgn(y) == 0) continue;
          t += x * y;
        }
      }
      b.at(i, j) = -t;
      b.at(j, i) = b.at(i, j);
    }
  }
  return b;
}

Rational LieAlgebra::killing(const Vec& x, const Vec& y) const {
  Matrix ax = ad(x), ay = ad(y);
  Rational t = 0;
  for (int l = 0; l < dim_; ++l)
    for (int k = 0; k < dim_; ++k) {
      const Rational& a = ax.at(l, k);
      if (sgn(a) == 0) continue;
      const Rational& b = ay.at(k, l);
      if (sgn(b) == 0) continue;
      t += a * b;
    }
  return -t;
}

JacobiReport LieAlgebra::verify_jacobi(std::size_t max_failures) const {
  JacobiReport rep;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      SparseVec bij = bracket_basis(i, j);
      for (int k = j + 1; k < dim_; ++k) {
        SparseVec s;
        SparseVec ei{{i, Rational(1)}}, ej{{j, Rational(1)}},
            ek{{k, Rational(1)}};
        s = sparse_add(bracket_sparse(bij, ek),
                       bracket_sparse(bracket_basis(j, k), ei));
        s = sparse_add(s, bracket_sparse(bracket_basis(k, i), ej));
        if (!s.empty()) {
          rep.ok = false;
          if (rep.failures.size() < max_failures)
            rep.failures.push_back({i, j, k});
        }
      }
    }
  }
  return rep;
}

LieAlgebra LieAlgebra::with_central_torus(int k) const {
  LieAlgebra g(dim_ + k);
  for (int i = 0; i < k; ++i) g.labels_[i] = "t" + std::to_string(i + 1);
  for (int i = 0; i < dim_; ++i) g.labels_[k + i] = labels_[i];
  for (const auto& [kk, v] : sc_) {
    int i = int(kk / dim_), j = int(kk % dim_);
    SparseVec shifted;
    shifted.reserve(v.size());
    for (const auto& [idx, c] : v) shifted.emplace_back(idx + k, c);
    g.set_bracket(i + k, j + k, shifted);
  }
  return g;
}

bool LieAlgebra::is_abelian() const { return sc_.empty(); }

}  // namespace obata
