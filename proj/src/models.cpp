#include "obata/models.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "obata/scalars.hpp"
#include "obata/span_basis.hpp"

namespace obata {
namespace {

template <typename S>
using SMat = std::vector<S>;  // n x n, row major

template <typename S>
SMat<S> smat_zero(int n) {
  return SMat<S>(std::size_t(n) * std::size_t(n));
}

template <typename S>
S& ent(SMat<S>& m, int n, int i, int j) {
  return m[std::size_t(i) * std::size_t(n) + std::size_t(j)];
}

template <typename S>
const S& ent(const SMat<S>& m, int n, int i, int j) {
  return m[std::size_t(i) * std::size_t(n) + std::size_t(j)];
}

template <typename S>
SMat<S> smat_comm(const SMat<S>& a, const SMat<S>& b, int n) {
  SMat<S> c = smat_zero<S>(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const S& aik = ent(a, n, i, k);
      const S& bik = ent(b, n, i, k);
      if (aik.is_zero() && bik.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        ent(c, n, i, j) =
            ent(c, n, i, j) + aik * ent(b, n, k, j) - bik * ent(a, n, k, j);
    }
  return c;
}

template <typename S>
bool is_anti_hermitian(const SMat<S>& m, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (ent(m, n, j, i) != -ent(m, n, i, j).conj()) return false;
  return true;
}

void append_scalar(Vec& v, const Gaussian& s) {
  v.push_back(s.re);
  v.push_back(s.im);
}

void append_scalar(Vec& v, const Quat& s) {
  v.push_back(s.a);
  v.push_back(s.b);
  v.push_back(s.c);
  v.push_back(s.d);
}

template <typename S>
Vec flatten(const SMat<S>& m) {
  Vec v;
  for (const S& s : m) append_scalar(v, s);
  return v;
}

/// Exact coordinates on the span of an independent family of flattened
/// matrices, solved once through a pivot subset of the entries.
class CoordinateSolver {
 public:
  explicit CoordinateSolver(std::vector<Vec> flats) : flats_(std::move(flats)) {
    const std::size_t D = flats_.size();
    SpanBasis span(flats_.front().size());
    for (const Vec& f : flats_)
      if (!span.insert(f))
        throw std::logic_error("model basis is linearly dependent");
    for (std::size_t s = 0; s < D; ++s) pivots_.push_back(span.pivot_col(s));
    Matrix m(D, D);
    for (std::size_t s = 0; s < D; ++s)
      for (std::size_t t = 0; t < D; ++t) m.at(s, t) = flats_[t][pivots_[s]];
    auto inv = m.inverse();
    if (!inv) throw std::logic_error("pivot system is singular");
    minv_ = *inv;
  }

  Vec coords(const Vec& flat) const {
    Vec rhs;
    rhs.reserve(pivots_.size());
    for (std::size_t p : pivots_) rhs.push_back(flat[p]);
    Vec x = minv_.apply(rhs);
    Vec rec(flat.size(), Rational(0));
    for (std::size_t t = 0; t < x.size(); ++t)
      if (x[t] != 0) rec = vec_add(rec, vec_scale(flats_[t], x[t]));
    if (rec != flat)
      throw std::logic_error("element lies outside the model span");
    return x;
  }

 private:
  std::vector<Vec> flats_;
  std::vector<std::size_t> pivots_;
  Matrix minv_;
};

template <typename S>
LieAlgebra build_algebra(const std::vector<SMat<S>>& basis, int n,
                         const std::vector<std::string>& labels) {
  const int D = int(basis.size());
  std::vector<Vec> flats;
  flats.reserve(basis.size());
  for (const auto& e : basis) flats.push_back(flatten(e));
  CoordinateSolver solver(flats);
  LieAlgebra g(D);
  for (int i = 0; i < D; ++i) g.set_label(i, labels[std::size_t(i)]);
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j) {
      Vec x = solver.coords(
          flatten(smat_comm(basis[std::size_t(i)], basis[std::size_t(j)], n)));
      SparseVec s = dense_to_sparse(x);
      if (!s.empty()) g.set_bracket(i, j, s);
    }
  return g;
}

/// Wraps a matrix-model algebra, whose basis is ordered E_1..E_b, then the
/// layer triples, then the layer quadruples, into a decomposition with ell
/// central directions prepended.
JoyceDecomposition assemble(const LieAlgebra& base, int ell, int b,
                            const std::vector<int>& fh) {
  const int m = int(fh.size());
  if (ell + b != m) throw std::logic_error("pool does not match layer count");
  JoyceDecomposition d;
  d.ell = ell;
  d.ambient = base.with_central_torus(ell);
  const int D = d.ambient.dim();
  auto unit = [D](int i) {
    Vec v(std::size_t(D), Rational(0));
    v[std::size_t(i)] = 1;
    return v;
  };
  for (int i = 0; i < ell; ++i) {
    d.ambient.set_label(i, "z" + std::to_string(i + 1));
    d.pool.push_back(unit(i));
  }
  for (int j = 0; j < b; ++j) d.pool.push_back(unit(ell + j));
  int idx = ell + b;
  for (int i = 0; i < m; ++i) {
    JoyceLayer L;
    L.e2 = unit(idx++);
    L.e3 = unit(idx++);
    L.e4 = unit(idx++);
    d.layers.push_back(std::move(L));
  }
  for (int i = 0; i < m; ++i)
    for (int q = 0; q < fh[std::size_t(i)]; ++q) {
      std::array<Vec, 4> f{unit(idx), unit(idx + 1), unit(idx + 2),
                           unit(idx + 3)};
      idx += 4;
      d.layers[std::size_t(i)].fs.push_back(std::move(f));
    }
  if (idx != D) throw std::logic_error("model basis does not fill the algebra");

  for (const auto& L : d.layers) {
    if (d.ambient.bracket(L.e2, L.e3) != vec_scale(L.e4, 2) ||
        d.ambient.bracket(L.e4, L.e2) != vec_scale(L.e3, 2) ||
        d.ambient.bracket(L.e3, L.e4) != vec_scale(L.e2, 2))
      throw std::logic_error("layer triple normalization failed");
    for (const auto& q : L.fs)
      if (d.ambient.bracket(L.e2, q[0]) != q[1] ||
          d.ambient.bracket(L.e3, q[0]) != q[2] ||
          d.ambient.bracket(L.e4, q[0]) != q[3])
        throw std::logic_error("f quadruple is not bracket-adapted");
  }
  return d;
}

}  // namespace

JoyceDecomposition su_model(int n) {
  if (n < 2) throw std::invalid_argument("su model needs matrix size >= 2");
  const int m = n / 2;
  const int b = (n % 2 == 1) ? m : m - 1;
  const int ell = (n % 2 == 0) ? 1 : 0;
  std::vector<SMat<Gaussian>> basis;
  std::vector<std::string> labels;

  for (int j = 1; j <= b; ++j) {
    SMat<Gaussian> e = smat_zero<Gaussian>(n);
    const int off = 2 * j - 2;
    const Rational head(n - 2 * j);  // trace balances the -2 tail
    ent(e, n, off, off) = Gaussian(Rational(0), head);
    ent(e, n, off + 1, off + 1) = Gaussian(Rational(0), head);
    for (int t = off + 2; t < n; ++t)
      ent(e, n, t, t) = Gaussian(Rational(0), Rational(-2));
    basis.push_back(std::move(e));
    labels.push_back("E" + std::to_string(j));
  }

  for (int i = 1; i <= m; ++i) {
    const int p = 2 * i - 2, q = 2 * i - 1;
    SMat<Gaussian> e2 = smat_zero<Gaussian>(n);
    SMat<Gaussian> e3 = smat_zero<Gaussian>(n);
    SMat<Gaussian> e4 = smat_zero<Gaussian>(n);
    ent(e2, n, p, p) = Gaussian(Rational(0), Rational(1));
    ent(e2, n, q, q) = Gaussian(Rational(0), Rational(-1));
    ent(e3, n, p, q) = Gaussian(Rational(1), Rational(0));
    ent(e3, n, q, p) = Gaussian(Rational(-1), Rational(0));
    ent(e4, n, p, q) = Gaussian(Rational(0), Rational(1));
    ent(e4, n, q, p) = Gaussian(Rational(0), Rational(1));
    basis.push_back(std::move(e2));
    basis.push_back(std::move(e3));
    basis.push_back(std::move(e4));
    for (int role = 2; role <= 4; ++role)
      labels.push_back("e" + std::to_string(role) + "^" + std::to_string(i));
  }

  std::vector<int> fh;
  for (int i = 1; i <= m; ++i) {
    const int p = 2 * i - 2, q = 2 * i - 1;
    int t = 0;
    for (int c = 2 * i; c < n; ++c, t += 4) {
      SMat<Gaussian> f1 = smat_zero<Gaussian>(n);
      SMat<Gaussian> f2 = smat_zero<Gaussian>(n);
      SMat<Gaussian> f3 = smat_zero<Gaussian>(n);
      SMat<Gaussian> f4 = smat_zero<Gaussian>(n);
      ent(f1, n, p, c) = Gaussian(Rational(1), Rational(0));
      ent(f1, n, c, p) = Gaussian(Rational(-1), Rational(0));
      ent(f2, n, p, c) = Gaussian(Rational(0), Rational(1));
      ent(f2, n, c, p) = Gaussian(Rational(0), Rational(1));
      ent(f3, n, c, q) = Gaussian(Rational(1), Rational(0));
      ent(f3, n, q, c) = Gaussian(Rational(-1), Rational(0));
      ent(f4, n, q, c) = Gaussian(Rational(0), Rational(1));
      ent(f4, n, c, q) = Gaussian(Rational(0), Rational(1));
      basis.push_back(std::move(f1));
      basis.push_back(std::move(f2));
      basis.push_back(std::move(f3));
      basis.push_back(std::move(f4));
      for (int u = 1; u <= 4; ++u)
        labels.push_back("f" + std::to_string(t + u) + "^" + std::to_string(i));
    }
    fh.push_back(n - 2 * i);
  }

  if (int(basis.size()) != n * n - 1)
    throw std::logic_error("su basis has the wrong size");
  for (const auto& e : basis) {
    if (!is_anti_hermitian(e, n))
      throw std::logic_error("su basis matrix is not anti-Hermitian");
    Gaussian tr;
    for (int t = 0; t < n; ++t) tr = tr + ent(e, n, t, t);
    if (!tr.is_zero()) throw std::logic_error("su basis matrix has a trace");
  }
  return assemble(build_algebra(basis, n, labels), ell, b, fh);
}

JoyceDecomposition sp_model(int k) {
  if (k < 1) throw std::invalid_argument("sp model needs size >= 1");
  std::vector<SMat<Quat>> basis;
  std::vector<std::string> labels;

  const Quat qi = Quat::unit_i(), qj = Quat::unit_j(), qk = Quat::unit_k();
  for (int i = 0; i < k; ++i) {
    for (const auto& [unit, role] :
         {std::pair{qi, 2}, std::pair{qj, 3}, std::pair{qk, 4}}) {
      SMat<Quat> e = smat_zero<Quat>(k);
      ent(e, k, i, i) = unit;
      basis.push_back(std::move(e));
      labels.push_back("e" + std::to_string(role) + "^" + std::to_string(i + 1));
    }
  }

  std::vector<int> fh;
  for (int i = 0; i < k; ++i) {
    int t = 0;
    for (int c = i + 1; c < k; ++c, t += 4) {
      SMat<Quat> f1 = smat_zero<Quat>(k);
      ent(f1, k, i, c) = Quat(Rational(1), Rational(0), Rational(0), Rational(0));
      ent(f1, k, c, i) = Quat(Rational(-1), Rational(0), Rational(0), Rational(0));
      basis.push_back(std::move(f1));
      labels.push_back("f" + std::to_string(t + 1) + "^" + std::to_string(i + 1));
      int u = 2;
      for (const Quat& unit : {qi, qj, qk}) {
        SMat<Quat> f = smat_zero<Quat>(k);
        ent(f, k, i, c) = unit;
        ent(f, k, c, i) = unit;
        basis.push_back(std::move(f));
        labels.push_back("f" + std::to_string(t + u) + "^" +
                         std::to_string(i + 1));
        ++u;
      }
    }
    fh.push_back(k - 1 - i);
  }

  if (int(basis.size()) != k * (2 * k + 1))
    throw std::logic_error("sp basis has the wrong size");
  for (const auto& e : basis)
    if (!is_anti_hermitian(e, k))
      throw std::logic_error("sp basis matrix is not anti-Hermitian");
  return assemble(build_algebra(basis, k, labels), k, 0, fh);
}

JoyceDecomposition hopf_model() { return su_model(2); }

}  // namespace obata
