#include "obata/connection.hpp"

#include <json.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "obata/scalars.hpp"

namespace obata {

namespace {

// An endomorphism commuting with the standard I, J, K blocks is a matrix of
// right quaternion multiplications v -> v q. On one quadruple, in the basis
// (w, Iw, Jw, Kw), right multiplication by q = a + bi + cj + dk has columns
// (a,b,c,d), (-b,a,-d,c), (-c,d,a,-b), (-d,-c,b,a). Composition reverses the
// Hamilton product: R_p R_q = R_{qp}.
using QMat = std::vector<Quat>;  // n x n cells, row-major

Quat qscale(const Quat& q, const Rational& c) {
  return {q.a * c, q.b * c, q.c * c, q.d * c};
}

bool read_cell(const Matrix& mat, std::size_t r, std::size_t s, Quat& out) {
  const std::size_t R = 4 * r, S = 4 * s;
  Quat q{mat.at(R, S), mat.at(R + 1, S), mat.at(R + 2, S), mat.at(R + 3, S)};
  const Rational &a = q.a, &b = q.b, &c = q.c, &d = q.d;
  bool ok = mat.at(R, S + 1) == -b && mat.at(R, S + 2) == -c &&
            mat.at(R, S + 3) == -d && mat.at(R + 1, S + 1) == a &&
            mat.at(R + 1, S + 2) == d && mat.at(R + 1, S + 3) == -c &&
            mat.at(R + 2, S + 1) == -d && mat.at(R + 2, S + 2) == a &&
            mat.at(R + 2, S + 3) == b && mat.at(R + 3, S + 1) == c &&
            mat.at(R + 3, S + 2) == -b && mat.at(R + 3, S + 3) == a;
  out = std::move(q);
  return ok;
}

void write_cell(Matrix& mat, std::size_t r, std::size_t s, const Quat& q) {
  const std::size_t R = 4 * r, S = 4 * s;
  const Rational &a = q.a, &b = q.b, &c = q.c, &d = q.d;
  mat.at(R, S) = a;
  mat.at(R, S + 1) = -b;
  mat.at(R, S + 2) = -c;
  mat.at(R, S + 3) = -d;
  mat.at(R + 1, S) = b;
  mat.at(R + 1, S + 1) = a;
  mat.at(R + 1, S + 2) = d;
  mat.at(R + 1, S + 3) = -c;
  mat.at(R + 2, S) = c;
  mat.at(R + 2, S + 1) = -d;
  mat.at(R + 2, S + 2) = a;
  mat.at(R + 2, S + 3) = b;
  mat.at(R + 3, S) = d;
  mat.at(R + 3, S + 1) = c;
  mat.at(R + 3, S + 2) = -b;
  mat.at(R + 3, S + 3) = a;
}

bool to_qmat(std::size_t n, const Matrix& mat, QMat& out) {
  out.assign(n * n, Quat());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      if (!read_cell(mat, r, s, out[r * n + s])) return false;
  return true;
}

Matrix from_qmat(std::size_t n, const QMat& q) {
  Matrix mat(4 * n, 4 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) write_cell(mat, r, s, q[r * n + s]);
  return mat;
}

Vec qflatten(std::size_t n, const QMat& q) {
  Vec v(4 * n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    v[4 * i] = q[i].a;
    v[4 * i + 1] = q[i].b;
    v[4 * i + 2] = q[i].c;
    v[4 * i + 3] = q[i].d;
  }
  return v;
}

// Cell (r,s) of the composition X Y is sum_t Y[t][s] * X[r][t]; the factors
// swap because the cells act by right multiplication.
QMat qmul(std::size_t n, const QMat& x, const QMat& y) {
  QMat out(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      Quat acc;
      for (std::size_t t = 0; t < n; ++t) {
        const Quat& p = x[r * n + t];
        const Quat& q = y[t * n + s];
        if (p.is_zero() || q.is_zero()) continue;
        acc = acc + q * p;
      }
      out[r * n + s] = std::move(acc);
    }
  return out;
}

QMat qcomm(std::size_t n, const QMat& x, const QMat& y) {
  QMat a = qmul(n, x, y);
  QMat b = qmul(n, y, x);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = a[i] - b[i];
  return a;
}

struct BlockClosure {
  std::size_t n;
  SpanBasis span;
  std::vector<QMat> gens;

  explicit BlockClosure(std::size_t n_) : n(n_), span(4 * n_ * n_) {}

  bool insert(QMat q) {
    if (!span.insert(qflatten(n, q))) return false;
    gens.push_back(std::move(q));
    return true;
  }
};

BlockReport block_report(std::size_t n, const std::vector<QMat>& gens) {
  BlockReport rep;
  rep.n = n;
  rep.cells.assign(n * n, "0");
  rep.real_trace_zero = true;
  for (const QMat& g : gens) {
    Rational tr(0);
    for (std::size_t r = 0; r < n; ++r) tr += g[r * n + r].a;
    if (!is_zero(tr)) rep.real_trace_zero = false;
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    SpanBasis sp(4);
    bool all_real = true, all_imag = true;
    for (const QMat& g : gens) {
      const Quat& q = g[i];
      sp.insert(Vec{q.a, q.b, q.c, q.d});
      if (!is_zero(q.b) || !is_zero(q.c) || !is_zero(q.d)) all_real = false;
      if (!is_zero(q.a)) all_imag = false;
    }
    if (sp.dim() == 0)
      rep.cells[i] = "0";
    else if (all_real)
      rep.cells[i] = "R";
    else if (all_imag)
      rep.cells[i] = "Im";
    else if (sp.dim() == 4)
      rep.cells[i] = "H";
    else
      rep.cells[i] = "mixed";
  }
  return rep;
}

}  // namespace

Matrix Connection::along(const Vec& x) const {
  const std::size_t D = nabla.size();
  Matrix out(D, D);
  for (std::size_t k = 0; k < D; ++k) {
    if (is_zero(x[k])) continue;
    out += nabla[k] * x[k];
  }
  return out;
}

Connection obata_connection(const LieAlgebra& g, const HypercomplexTriple& h) {
  const int D = g.dim();
  if (h.I.rows() != std::size_t(D) || h.J.rows() != std::size_t(D) ||
      h.K.rows() != std::size_t(D))
    throw std::invalid_argument("hypercomplex triple size does not match the algebra");
  CheckReport integ = verify_integrability(h, g);
  if (!integ.ok)
    throw std::invalid_argument(
        "hypercomplex structure fails the integrability check; the formula "
        "yields a torsion-free connection only for integrable structures");

  Connection c;
  c.nabla.reserve(D);
  const Rational half(1, 2);
  for (int k = 0; k < D; ++k) {
    Vec iek = h.I.col_vec(k);
    Matrix ad_k = g.ad(k);
    Matrix ad_ik = g.ad(iek);
    Matrix nk =
        (ad_k + h.I * ad_ik - h.J * (ad_k * h.J) + h.K * (ad_ik * h.J)) * half;
    c.nabla.push_back(std::move(nk));
  }

  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j) {
      Vec lhs = vec_sub(c.nabla[i].col_vec(j), c.nabla[j].col_vec(i));
      Vec rhs = sparse_to_dense(g.bracket_basis(i, j), D);
      if (lhs != rhs) throw std::logic_error("connection failed the torsion check");
    }
  for (int k = 0; k < D; ++k)
    for (const Matrix* L : {&h.I, &h.J, &h.K})
      if (c.nabla[k] * *L != *L * c.nabla[k])
        throw std::logic_error(
            "connection does not keep the hypercomplex structure parallel");
  return c;
}

const Matrix& CurvatureTensor::at(std::size_t i, std::size_t j) const {
  if (i >= j || j >= dim) throw std::out_of_range("curvature index");
  return entries[i * (2 * dim - i - 1) / 2 + (j - i - 1)];
}

Matrix CurvatureTensor::eval(const Vec& x, const Vec& y) const {
  Matrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      Rational coef = x[i] * y[j] - x[j] * y[i];
      if (is_zero(coef)) continue;
      out += at(i, j) * coef;
    }
  return out;
}

CurvatureTensor curvature(const Connection& c, const LieAlgebra& g) {
  const std::size_t D = c.dim();
  if (int(D) != g.dim())
    throw std::invalid_argument("connection does not match the algebra");
  CurvatureTensor R;
  R.dim = D;
  R.entries.reserve(D * (D - 1) / 2);
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = i + 1; j < D; ++j) {
      Matrix m = Matrix::commutator(c.nabla[i], c.nabla[j]);
      for (const auto& [t, coef] : g.bracket_basis(int(i), int(j)))
        m -= c.nabla[t] * coef;
      R.entries.push_back(std::move(m));
    }
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = i + 1; j < D; ++j)
      for (std::size_t k = j + 1; k < D; ++k) {
        Vec s = R.at(i, j).col_vec(k);
        s = vec_add(s, R.at(j, k).col_vec(i));
        s = vec_sub(s, R.at(i, k).col_vec(j));
        if (!vec_is_zero(s))
          throw std::logic_error("curvature failed the first Bianchi identity");
      }
  return R;
}

const Matrix& EndoTensor::at(const std::vector<std::size_t>& idx) const {
  return const_cast<EndoTensor*>(this)->at(idx);
}

Matrix& EndoTensor::at(const std::vector<std::size_t>& idx) {
  if (idx.size() != rank) throw std::invalid_argument("tensor index rank");
  std::size_t f = 0;
  for (std::size_t v : idx) {
    if (v >= dim) throw std::out_of_range("tensor index");
    f = f * dim + v;
  }
  return values[f];
}

EndoTensor endo_tensor(Matrix value) {
  EndoTensor t;
  t.dim = value.rows();
  t.rank = 0;
  t.values.push_back(std::move(value));
  return t;
}

EndoTensor endo_tensor(const CurvatureTensor& r) {
  EndoTensor t;
  t.dim = r.dim;
  t.rank = 2;
  t.values.assign(r.dim * r.dim, Matrix(r.dim, r.dim));
  for (std::size_t i = 0; i < r.dim; ++i)
    for (std::size_t j = i + 1; j < r.dim; ++j) {
      t.values[i * r.dim + j] = r.at(i, j);
      t.values[j * r.dim + i] = -r.at(i, j);
    }
  return t;
}

EndoTensor covariant_derivative(const Connection& c, const EndoTensor& t) {
  const std::size_t D = t.dim;
  if (c.dim() != D)
    throw std::invalid_argument("connection and tensor dimensions differ");
  EndoTensor out;
  out.dim = D;
  out.rank = t.rank + 1;
  std::size_t count = 1;
  for (std::size_t p = 0; p < t.rank; ++p) count *= D;
  out.values.reserve(count * D);

  std::vector<std::size_t> stride(t.rank);
  if (t.rank > 0) {
    stride[t.rank - 1] = 1;
    for (std::size_t p = t.rank - 1; p > 0; --p) stride[p - 1] = stride[p] * D;
  }
  std::vector<std::size_t> idx(t.rank);
  for (std::size_t x = 0; x < D; ++x) {
    for (std::size_t base = 0; base < count; ++base) {
      std::size_t rem = base;
      for (std::size_t p = t.rank; p > 0; --p) {
        idx[p - 1] = rem % D;
        rem /= D;
      }
      Matrix m = Matrix::commutator(c.nabla[x], t.values[base]);
      for (std::size_t p = 0; p < t.rank; ++p) {
        const std::size_t base0 = base - idx[p] * stride[p];
        for (std::size_t tt = 0; tt < D; ++tt) {
          const Rational& coef = c.nabla[x].at(tt, idx[p]);
          if (is_zero(coef)) continue;
          m -= t.values[base0 + tt * stride[p]] * coef;
        }
      }
      out.values.push_back(std::move(m));
    }
  }
  return out;
}

Matrix quaternion_frame(const JoyceDecomposition& d, const Matrix& A) {
  Matrix P = d.adapted_matrix(A);
  const int m = d.m();
  const int D = d.ambient.dim();
  std::vector<int> perm;
  perm.reserve(D);
  int qoff = 4 * m;
  for (int i = 0; i < m; ++i) {
    perm.push_back(i);
    perm.push_back(m + 3 * i);
    perm.push_back(m + 3 * i + 1);
    perm.push_back(m + 3 * i + 2);
    for (int q = 0; q < d.layers[i].f_hdim(); ++q) {
      for (int t = 0; t < 4; ++t) perm.push_back(qoff + t);
      qoff += 4;
    }
  }
  Matrix Q(D, D);
  for (int col = 0; col < D; ++col) Q.set_col(col, P.col_vec(perm[col]));
  return Q;
}

std::string HolonomyResult::to_json() const {
  nlohmann::json j;
  j["dim"] = dim;
  j["filtration"] = filtration_dims;
  j["stabilized"] = stabilized;
  j["depth"] = depth_reached;
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t r = 0; r < blocks.n; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t s = 0; s < blocks.n; ++s) row.push_back(blocks.cell(r, s));
    cells.push_back(std::move(row));
  }
  j["blocks"] = {{"n", blocks.n},
                 {"cells", std::move(cells)},
                 {"real_trace_zero", blocks.real_trace_zero}};
  return j.dump();
}

HolonomyResult holonomy_algebra(const Connection& c,
                                const JoyceDecomposition& d, const Matrix& A,
                                HolonomyMethod method, std::size_t max_depth) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  const LieAlgebra& g = d.ambient;
  const std::size_t D = std::size_t(g.dim());
  if (c.dim() != D)
    throw std::invalid_argument("connection does not match the decomposition");
  const std::size_t n = std::size_t(d.quaternionic_dim());

  Matrix Q = quaternion_frame(d, A);
  auto Qinv = Q.inverse();
  if (!Qinv) throw std::logic_error("quaternionic frame is singular");

  std::vector<QMat> Nb(D);
  for (std::size_t k = 0; k < D; ++k) {
    Matrix t = *Qinv * c.nabla[k] * Q;
    if (!to_qmat(n, t, Nb[k]))
      throw std::logic_error("connection matrix is not quaternionic in the block frame");
  }

  // Independent directions suffice: the commutator is linear in the
  // direction slot.
  SpanBasis dirspan(4 * n * n);
  std::vector<QMat> dirs;
  for (std::size_t k = 0; k < D; ++k)
    if (dirspan.insert(qflatten(n, Nb[k]))) dirs.push_back(Nb[k]);

  BlockClosure cl(n);
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = i + 1; j < D; ++j) {
      QMat seed = qcomm(n, Nb[i], Nb[j]);
      for (const auto& [t, coef] : g.bracket_basis(int(i), int(j)))
        for (std::size_t cell = 0; cell < n * n; ++cell)
          seed[cell] = seed[cell] - qscale(Nb[t][cell], coef);
      cl.insert(std::move(seed));
    }

  const std::size_t cap = 4 * n * n;
  std::vector<std::size_t> dims{cl.span.dim()};
  bool stabilized = false;
  std::size_t depth = 0;

  if (dims[0] == 0 || dims[0] == cap) {
    stabilized = true;
  } else {
    std::size_t lo = 0, hi = cl.gens.size();
    for (std::size_t pass = 1; pass <= max_depth && !stabilized; ++pass) {
      bool capped = false;
      for (std::size_t gi = lo; gi < hi && !capped; ++gi)
        for (const QMat& dir : dirs) {
          cl.insert(qcomm(n, dir, cl.gens[gi]));
          if (cl.span.dim() == cap) {
            capped = true;
            break;
          }
        }
      if (method == HolonomyMethod::alekseevskii && !capped) {
        const std::size_t cur = cl.gens.size();
        for (std::size_t gi = lo; gi < hi && !capped; ++gi)
          for (std::size_t gj = 0; gj < cur && !capped; ++gj) {
            if (gj == gi) continue;
            if (gj >= lo && gj < hi && gj < gi) continue;  // pair already done
            cl.insert(qcomm(n, cl.gens[gi], cl.gens[gj]));
            if (cl.span.dim() == cap) capped = true;
          }
      }
      lo = hi;
      hi = cl.gens.size();
      dims.push_back(cl.span.dim());
      depth = pass;
      if (capped || dims[pass] == dims[pass - 1] || dims[pass] == cap)
        stabilized = true;
    }
  }

  HolonomyResult res;
  res.dim = cl.span.dim();
  res.filtration_dims = std::move(dims);
  res.depth_reached = depth;
  res.stabilized = stabilized;
  res.blocks = block_report(n, cl.gens);
  res.span = SpanBasis(D * D);
  res.generators.reserve(cl.gens.size());
  for (const QMat& q : cl.gens) {
    Matrix amb = Q * from_qmat(n, q) * *Qinv;
    Vec flat(D * D);
    for (std::size_t r = 0; r < D; ++r)
      for (std::size_t s = 0; s < D; ++s) flat[r * D + s] = amb.at(r, s);
    res.span.insert(flat);
    res.generators.push_back(std::move(amb));
  }
  return res;
}

std::vector<InvariantSubspace> find_parallel_subspaces(
    const Connection& c, const JoyceDecomposition& d, const Matrix& A) {
  const std::size_t D = std::size_t(d.ambient.dim());
  if (c.dim() != D)
    throw std::invalid_argument("connection does not match the decomposition");
  const int m = d.m();
  Matrix P = d.adapted_matrix(A);

  std::vector<int> foff(m);
  int off = 4 * m;
  for (int i = 0; i < m; ++i) {
    foff[i] = off;
    off += 4 * d.layers[i].f_hdim();
  }

  auto h_cols = [&](int i) {
    std::vector<Vec> v;
    v.push_back(P.col_vec(i));
    for (int t = 0; t < 3; ++t) v.push_back(P.col_vec(m + 3 * i + t));
    return v;
  };
  auto layer_cols = [&](int i) {
    std::vector<Vec> v = h_cols(i);
    for (int t = 0; t < 4 * d.layers[i].f_hdim(); ++t)
      v.push_back(P.col_vec(foff[i] + t));
    return v;
  };
  auto is_parallel = [&](const std::vector<Vec>& basis) {
    SpanBasis sp(D);
    for (const Vec& v : basis) sp.insert(v);
    for (const Vec& v : basis)
      for (std::size_t k = 0; k < D; ++k)
        if (!sp.contains(c.nabla[k].apply(v))) return false;
    return true;
  };

  std::vector<InvariantSubspace> out;
  for (int i = 0; i < m; ++i) {
    if (d.layers[i].f_hdim() != 0) continue;
    InvariantSubspace s;
    s.label = "h" + std::to_string(i + 1);
    s.basis = h_cols(i);
    s.parallel = is_parallel(s.basis);
    out.push_back(std::move(s));
  }
  for (int i = 1; i < m; ++i) {
    InvariantSubspace s;
    s.label = "tail" + std::to_string(i + 1);
    for (int j = i; j < m; ++j)
      for (Vec& v : layer_cols(j)) s.basis.push_back(std::move(v));
    s.parallel = is_parallel(s.basis);
    out.push_back(std::move(s));
  }
  for (int i = 0; i < m; ++i) {
    SpanBasis sp(D);
    for (const Vec& v : h_cols(i)) sp.insert(v);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t r = 0; r < sp.dim(); ++r) {
        Vec v = sp.row(r);
        for (std::size_t k = 0; k < D; ++k)
          if (sp.insert(c.nabla[k].apply(v))) grew = true;
      }
    }
    InvariantSubspace s;
    s.label = "closure(h" + std::to_string(i + 1) + ")";
    for (std::size_t r = 0; r < sp.dim(); ++r) s.basis.push_back(sp.row(r));
    s.parallel = is_parallel(s.basis);
    out.push_back(std::move(s));
  }
  return out;
}

CheckReport verify_nabla_e1(const Connection& c, const JoyceDecomposition& d,
                            const Matrix& A) {
  CheckReport rep;
  const std::size_t D = std::size_t(d.ambient.dim());
  if (c.dim() != D) {
    rep.ok = false;
    rep.failures.push_back("connection does not match the decomposition");
    return rep;
  }
  const int m = d.m();
  Matrix P = d.adapted_matrix(A);
  for (int i = 0; i < m; ++i) {
    Vec e1 = P.col_vec(i);
    for (int col = 0; col < int(D); ++col) {
      Vec x = P.col_vec(col);
      Vec got = c.along(x).apply(e1);
      auto [layer, role] = d.column_info(col);
      (void)role;
      Vec expect =
          layer == i ? vec_scale(x, Rational(-1)) : Vec(D, Rational(0));
      if (got != expect) {
        rep.ok = false;
        if (rep.failures.size() < 8)
          rep.failures.push_back("nabla_{" + d.column_label(col) + "} e1^" +
                                 std::to_string(i + 1) +
                                 " has the wrong value");
      }
    }
  }
  return rep;
}

Vec euler_field(const JoyceDecomposition& d, const Matrix& A) {
  const std::size_t D = std::size_t(d.ambient.dim());
  Matrix P = d.adapted_matrix(A);
  Vec e(D, Rational(0));
  for (int i = 0; i < d.m(); ++i) e = vec_sub(e, P.col_vec(i));
  return e;
}

}  // namespace obata
