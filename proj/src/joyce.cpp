#include "obata/joyce.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "obata/span_basis.hpp"

namespace obata {
namespace {

Vec unit_vec(int dim, int i) {
  Vec v(std::size_t(dim), Rational(0));
  v[std::size_t(i)] = 1;
  return v;
}

std::string layer_tag(int layer) { return std::to_string(layer + 1); }

/// Basis of the kernel of a, read off the reduced row-echelon form with one
/// vector per free column. Canonical for a fixed column order.
std::vector<Vec> null_space(Matrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t rr = 0;
  for (std::size_t c = 0; c < cols && rr < rows; ++c) {
    std::size_t p = rr;
    while (p < rows && a.at(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(rr, j));
    Rational inv = 1 / a.at(rr, c);
    for (std::size_t j = c; j < cols; ++j) a.at(rr, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rr || a.at(i, c) == 0) continue;
      Rational f = a.at(i, c);
      for (std::size_t j = c; j < cols; ++j) a.at(i, j) -= f * a.at(rr, j);
    }
    pivots.push_back(c);
    ++rr;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Vec v(cols, Rational(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a.at(i, c);
    basis.push_back(v);
  }
  return basis;
}

void fail(CheckReport& rep, std::string msg) {
  rep.ok = false;
  rep.failures.push_back(std::move(msg));
}

}  // namespace

std::vector<int> JoyceDecomposition::f_hdims() const {
  std::vector<int> out;
  out.reserve(layers.size());
  for (const auto& L : layers) out.push_back(L.f_hdim());
  return out;
}

int JoyceDecomposition::quaternionic_dim() const {
  int n = m();
  for (const auto& L : layers) n += L.f_hdim();
  return n;
}

Matrix JoyceDecomposition::adapted_matrix(const Matrix& A) const {
  const int mm = m();
  const int D = ambient.dim();
  if (int(A.rows()) != mm || int(A.cols()) != mm)
    throw std::invalid_argument("parameter matrix must be m x m");
  Matrix P{std::size_t(D), std::size_t(D)};
  std::size_t col = 0;
  for (int i = 0; i < mm; ++i) {
    Vec e1(std::size_t(D), Rational(0));
    for (int j = 0; j < mm; ++j)
      e1 = vec_add(e1, vec_scale(pool[std::size_t(j)], A.at(j, i)));
    P.set_col(col++, e1);
  }
  for (const auto& L : layers) {
    P.set_col(col++, L.e2);
    P.set_col(col++, L.e3);
    P.set_col(col++, L.e4);
  }
  for (const auto& L : layers)
    for (const auto& q : L.fs)
      for (const auto& f : q) P.set_col(col++, f);
  if (int(col) != D)
    throw std::logic_error("adapted basis does not fill the ambient space");
  return P;
}

Matrix JoyceDecomposition::adapted_matrix() const {
  return adapted_matrix(Matrix::identity(std::size_t(m())));
}

std::pair<int, BasisRole> JoyceDecomposition::column_info(int col) const {
  const int mm = m();
  if (col < 0) throw std::out_of_range("column index");
  if (col < mm) return {col, BasisRole::e1};
  int c = col - mm;
  if (c < 3 * mm) {
    static constexpr BasisRole roles[3] = {BasisRole::e2, BasisRole::e3,
                                           BasisRole::e4};
    return {c / 3, roles[c % 3]};
  }
  c -= 3 * mm;
  for (int i = 0; i < mm; ++i) {
    int width = 4 * layers[std::size_t(i)].f_hdim();
    if (c < width) return {i, BasisRole::f};
    c -= width;
  }
  throw std::out_of_range("column index");
}

std::string JoyceDecomposition::column_label(int col) const {
  auto [layer, role] = column_info(col);
  switch (role) {
    case BasisRole::e1:
      return "e1^" + layer_tag(layer);
    case BasisRole::e2:
      return "e2^" + layer_tag(layer);
    case BasisRole::e3:
      return "e3^" + layer_tag(layer);
    case BasisRole::e4:
      return "e4^" + layer_tag(layer);
    case BasisRole::f:
      break;
  }
  int c = col - 4 * m();
  for (int i = 0; i < layer; ++i) c -= 4 * layers[std::size_t(i)].f_hdim();
  return "f" + std::to_string(c + 1) + "^" + layer_tag(layer);
}

Matrix quaternion_block(int which) {
  Matrix B(4, 4);
  switch (which) {
    case 0:  // I: w -> Iw, Iw -> -w, Jw -> Kw, Kw -> -Jw
      B.at(1, 0) = 1;
      B.at(0, 1) = -1;
      B.at(3, 2) = 1;
      B.at(2, 3) = -1;
      break;
    case 1:  // J: w -> Jw, Iw -> -Kw, Jw -> -w, Kw -> Iw
      B.at(2, 0) = 1;
      B.at(3, 1) = -1;
      B.at(0, 2) = -1;
      B.at(1, 3) = 1;
      break;
    case 2:  // K: w -> Kw, Iw -> Jw, Jw -> -Iw, Kw -> -w
      B.at(3, 0) = 1;
      B.at(2, 1) = 1;
      B.at(1, 2) = -1;
      B.at(0, 3) = -1;
      break;
    default:
      throw std::invalid_argument("quaternion_block expects 0, 1 or 2");
  }
  return B;
}

JoyceDecomposition joyce_decompose(const ChevalleyRealization& cr) {
  const RootSystem& rs = cr.root_system;
  const int r = rs.rank;
  const std::size_t np = rs.positive_roots.size();

  // Peel layers off the positive system exactly as the diagram walk does,
  // but keep the actual root index sets.
  struct LayerRoots {
    int theta;
    std::vector<int> f;
  };
  std::vector<LayerRoots> lroots;
  std::vector<int> all(np);
  std::iota(all.begin(), all.end(), 0);
  std::deque<std::vector<int>> queue;
  queue.push_back(std::move(all));
  while (!queue.empty()) {
    std::vector<int> s = std::move(queue.front());
    queue.pop_front();
    int theta = s[0];
    for (int b : s)
      if (rs.height(rs.positive_roots[std::size_t(b)]) >
          rs.height(rs.positive_roots[std::size_t(theta)]))
        theta = b;
    const IVec& th = rs.positive_roots[std::size_t(theta)];
    LayerRoots lr;
    lr.theta = theta;
    std::vector<int> rest;
    for (int b : s) {
      if (b == theta) continue;
      if (rs.inner(rs.positive_roots[std::size_t(b)], th) != 0)
        lr.f.push_back(b);
      else
        rest.push_back(b);
    }
    if (lr.f.size() % 2 != 0)
      throw std::logic_error("odd root count against the layer root");
    std::sort(lr.f.begin(), lr.f.end());
    lroots.push_back(std::move(lr));

    // Split the orthogonal complement into non-orthogonality components,
    // ordered by the smallest simple root each one touches.
    std::vector<bool> seen(rest.size(), false);
    std::vector<std::vector<int>> parts;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (seen[i]) continue;
      std::vector<std::size_t> stack{i};
      seen[i] = true;
      std::vector<int> part;
      while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        part.push_back(rest[cur]);
        for (std::size_t j = 0; j < rest.size(); ++j) {
          if (seen[j]) continue;
          if (rs.inner(rs.positive_roots[std::size_t(rest[cur])],
                       rs.positive_roots[std::size_t(rest[j])]) != 0) {
            seen[j] = true;
            stack.push_back(j);
          }
        }
      }
      std::sort(part.begin(), part.end());
      parts.push_back(std::move(part));
    }
    auto lowest_simple = [&rs](const std::vector<int>& part) {
      std::size_t best = SIZE_MAX;
      for (int b : part) {
        const IVec& root = rs.positive_roots[std::size_t(b)];
        for (std::size_t j = 0; j < root.size(); ++j)
          if (root[j] != 0) {
            best = std::min(best, j);
            break;
          }
      }
      return best;
    };
    std::stable_sort(parts.begin(), parts.end(),
                     [&](const std::vector<int>& x, const std::vector<int>& y) {
                       return lowest_simple(x) < lowest_simple(y);
                     });
    for (auto& p : parts) queue.push_back(std::move(p));
  }

  const int mm = int(lroots.size());
  const int ell = 2 * mm - r;
  JoyceDecomposition d;
  d.ell = ell;
  d.ambient = cr.algebra.with_central_torus(ell);
  for (int i = 0; i < ell; ++i)
    d.ambient.set_label(i, "z" + std::to_string(i + 1));
  const int D = d.ambient.dim();

  for (int i = 0; i < ell; ++i) d.pool.push_back(unit_vec(D, i));

  // b is the joint kernel of the layer-root pairings on the Cartan span.
  Matrix pairings{std::size_t(mm), std::size_t(r)};
  for (int li = 0; li < mm; ++li) {
    const IVec& th = rs.positive_roots[std::size_t(lroots[std::size_t(li)].theta)];
    for (int j = 0; j < r; ++j) {
      Integer s = 0;
      for (int k = 0; k < r; ++k)
        s += th[std::size_t(k)] * rs.cartan[std::size_t(k)][std::size_t(j)];
      pairings.at(std::size_t(li), std::size_t(j)) = Rational(s);
    }
  }
  for (const Vec& x : null_space(pairings)) {
    IVec xi = clear_denominators(x);
    Vec v(std::size_t(D), Rational(0));
    for (int j = 0; j < r; ++j)
      v[std::size_t(ell + cr.cartan_index[std::size_t(j)])] = Rational(xi[std::size_t(j)]);
    d.pool.push_back(v);
  }
  if (int(d.pool.size()) != mm)
    throw std::logic_error("pool size does not match the layer count");

  for (const auto& lr : lroots) {
    const IVec& th = rs.positive_roots[std::size_t(lr.theta)];
    JoyceLayer L;
    L.e2 = unit_vec(D, ell + cr.root_space_index[std::size_t(lr.theta)].first);
    L.e3 = unit_vec(D, ell + cr.root_space_index[std::size_t(lr.theta)].second);
    L.e4 = Vec(std::size_t(D), Rational(0));
    IVec co = cr.coroot(th);
    for (int j = 0; j < r; ++j)
      L.e4[std::size_t(ell + cr.cartan_index[std::size_t(j)])] = Rational(co[std::size_t(j)]);

    if (!(d.ambient.killing(L.e2, L.e2) > 0))
      throw std::invalid_argument(
          "realization is not compact: Killing form is not positive on a "
          "root space");
    if (d.ambient.bracket(L.e2, L.e3) != vec_scale(L.e4, 2) ||
        d.ambient.bracket(L.e4, L.e2) != vec_scale(L.e3, 2) ||
        d.ambient.bracket(L.e3, L.e4) != vec_scale(L.e2, 2))
      throw std::logic_error("layer triple normalization failed");

    std::vector<int> fpool;
    for (int b : lr.f) {
      fpool.push_back(ell + cr.root_space_index[std::size_t(b)].first);
      fpool.push_back(ell + cr.root_space_index[std::size_t(b)].second);
    }
    SpanBasis span{std::size_t(D)};
    for (int idx : fpool) {
      Vec f1 = unit_vec(D, idx);
      if (span.contains(f1)) continue;
      std::array<Vec, 4> q;
      q[0] = std::move(f1);
      q[1] = d.ambient.bracket(L.e2, q[0]);
      q[2] = d.ambient.bracket(L.e3, q[0]);
      q[3] = d.ambient.bracket(L.e4, q[0]);
      for (const Vec& f : q)
        if (!span.insert(f))
          throw std::logic_error("dependent vector in an f quadruple");
      L.fs.push_back(std::move(q));
    }
    if (span.dim() != fpool.size())
      throw std::logic_error("f quadruples do not span the layer");
    d.layers.push_back(std::move(L));
  }

  int covered = 4 * mm;
  for (const auto& L : d.layers) covered += 4 * L.f_hdim();
  if (covered != D)
    throw std::logic_error("layer dimensions do not add up to the ambient");
  return d;
}

CheckReport verify_joyce_relations(const JoyceDecomposition& d) {
  CheckReport rep;
  const LieAlgebra& g = d.ambient;
  auto triple = [](const JoyceLayer& L) {
    return std::array<const Vec*, 3>{&L.e2, &L.e3, &L.e4};
  };

  for (int i = 0; i < d.m(); ++i) {
    const auto& Li = d.layers[std::size_t(i)];
    for (std::size_t p = 0; p < d.pool.size(); ++p)
      for (const Vec* t : triple(Li))
        if (!vec_is_zero(g.bracket(*t, d.pool[p])))
          fail(rep, "J1: [d_" + layer_tag(i) + ", pool " + std::to_string(p) +
                        "] is nonzero");
    for (int j = i + 1; j < d.m(); ++j) {
      const auto& Lj = d.layers[std::size_t(j)];
      for (const Vec* a : triple(Li))
        for (const Vec* b : triple(Lj))
          if (!vec_is_zero(g.bracket(*a, *b)))
            fail(rep, "J2: [d_" + layer_tag(i) + ", d_" + layer_tag(j) +
                          "] is nonzero");
      for (const Vec* a : triple(Li))
        for (const auto& q : Lj.fs)
          for (const Vec& w : q)
            if (!vec_is_zero(g.bracket(*a, w)))
              fail(rep, "J3: [d_" + layer_tag(i) + ", f_" + layer_tag(j) +
                            "] is nonzero");
    }

    SpanBasis fspan(std::size_t(g.dim()));
    for (const auto& q : Li.fs)
      for (const Vec& w : q) fspan.insert(w);
    for (const Vec* t : triple(Li))
      for (const auto& q : Li.fs)
        for (const Vec& w : q)
          if (!fspan.contains(g.bracket(*t, w)))
            fail(rep, "J4: [d_" + layer_tag(i) + ", f_" + layer_tag(i) +
                          "] leaves f_" + layer_tag(i));
    for (const auto& q : Li.fs)
      for (const Vec& w : q)
        if (g.bracket(Li.e2, g.bracket(Li.e2, w)) != vec_scale(w, -1))
          fail(rep, "J4: ad(e2^" + layer_tag(i) + ")^2 is not -Id on f_" +
                        layer_tag(i));
  }
  return rep;
}

CheckReport verify_bracket_inclusions(const JoyceDecomposition& d) {
  CheckReport rep;
  const LieAlgebra& g = d.ambient;
  std::vector<SpanBasis> fspan;
  for (const auto& L : d.layers) {
    SpanBasis s(std::size_t(g.dim()));
    for (const auto& q : L.fs)
      for (const Vec& w : q) s.insert(w);
    fspan.push_back(std::move(s));
  }

  for (int j = 0; j < d.m(); ++j) {
    const auto& Lj = d.layers[std::size_t(j)];
    for (std::size_t p = 0; p < d.pool.size(); ++p)
      for (const auto& q : Lj.fs)
        for (const Vec& w : q)
          if (!fspan[std::size_t(j)].contains(g.bracket(d.pool[p], w)))
            fail(rep, "[pool, f_" + layer_tag(j) + "] leaves f_" + layer_tag(j));
    for (int i = j + 1; i < d.m(); ++i) {
      const auto& Li = d.layers[std::size_t(i)];
      for (const Vec* t : {&Li.e2, &Li.e3, &Li.e4})
        for (const auto& q : Lj.fs)
          for (const Vec& w : q)
            if (!fspan[std::size_t(j)].contains(g.bracket(*t, w)))
              fail(rep, "[d_" + layer_tag(i) + ", f_" + layer_tag(j) +
                            "] leaves f_" + layer_tag(j));
    }
  }

  for (int i = 0; i < d.m(); ++i)
    for (int j = i + 1; j < d.m(); ++j)
      for (const auto& qi : d.layers[std::size_t(i)].fs)
        for (const Vec& wi : qi)
          for (const auto& qj : d.layers[std::size_t(j)].fs)
            for (const Vec& wj : qj)
              if (!fspan[std::size_t(i)].contains(g.bracket(wi, wj)))
                fail(rep, "[f_" + layer_tag(i) + ", f_" + layer_tag(j) +
                              "] leaves f_" + layer_tag(i));

  for (int i = 0; i < d.m(); ++i) {
    SpanBasis tail(std::size_t(g.dim()));
    for (const Vec& p : d.pool) tail.insert(p);
    for (int k = i; k < d.m(); ++k) {
      const auto& Lk = d.layers[std::size_t(k)];
      tail.insert(Lk.e2);
      tail.insert(Lk.e3);
      tail.insert(Lk.e4);
      for (const auto& q : Lk.fs)
        for (const Vec& w : q) tail.insert(w);
    }
    const auto& Li = d.layers[std::size_t(i)];
    for (const auto& qa : Li.fs)
      for (const Vec& wa : qa)
        for (const auto& qb : Li.fs)
          for (const Vec& wb : qb)
            if (!tail.contains(g.bracket(wa, wb)))
              fail(rep, "[f_" + layer_tag(i) + ", f_" + layer_tag(i) +
                            "] leaves the tail sum");
  }
  return rep;
}

HypercomplexTriple hypercomplex_structure(const JoyceDecomposition& d,
                                          const Matrix& A) {
  const int mm = d.m();
  if (int(A.rows()) != mm || int(A.cols()) != mm)
    throw std::invalid_argument("parameter matrix must be m x m");
  Matrix P = d.adapted_matrix(A);
  auto Pinv = P.inverse();
  if (!Pinv) throw std::invalid_argument("parameter matrix is singular");

  const std::size_t D = std::size_t(d.ambient.dim());
  std::array<Matrix, 3> stds{Matrix(D, D), Matrix(D, D), Matrix(D, D)};
  std::array<Matrix, 3> blocks{quaternion_block(0), quaternion_block(1),
                               quaternion_block(2)};
  auto place = [&](const std::array<int, 4>& idx) {
    for (int w = 0; w < 3; ++w)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          stds[std::size_t(w)].at(std::size_t(idx[a]), std::size_t(idx[b])) =
              blocks[std::size_t(w)].at(a, b);
  };
  for (int i = 0; i < mm; ++i)
    place({i, mm + 3 * i, mm + 3 * i + 1, mm + 3 * i + 2});
  int base = 4 * mm;
  for (const auto& L : d.layers)
    for (int q = 0; q < L.f_hdim(); ++q) {
      place({base, base + 1, base + 2, base + 3});
      base += 4;
    }

  HypercomplexTriple h;
  h.I = P * stds[0] * (*Pinv);
  h.J = P * stds[1] * (*Pinv);
  h.K = P * stds[2] * (*Pinv);
  return h;
}

CheckReport verify_integrability(const HypercomplexTriple& h,
                                 const LieAlgebra& g) {
  CheckReport rep;
  const int D = g.dim();
  const char* names[3] = {"I", "J", "K"};
  const Matrix* Ls[3] = {&h.I, &h.J, &h.K};
  for (int w = 0; w < 3; ++w) {
    const Matrix& L = *Ls[w];
    for (int i = 0; i < D; ++i) {
      Vec Li = L.col_vec(std::size_t(i));
      Vec ei = unit_vec(D, i);
      for (int j = i + 1; j < D; ++j) {
        Vec Lj = L.col_vec(std::size_t(j));
        Vec ej = unit_vec(D, j);
        Vec n = g.bracket(Li, Lj);
        n = vec_sub(n, L.apply(g.bracket(Li, ej)));
        n = vec_sub(n, L.apply(g.bracket(ei, Lj)));
        n = vec_sub(n, g.bracket(ei, ej));
        if (!vec_is_zero(n)) {
          fail(rep, std::string("Nijenhuis tensor of ") + names[w] +
                        " is nonzero at basis pair (" + std::to_string(i) +
                        ", " + std::to_string(j) + ")");
          if (rep.failures.size() >= 8) return rep;
        }
      }
    }
  }
  return rep;
}

CheckReport hyperholomorphic_check(const JoyceDecomposition& d,
                                   const HypercomplexTriple& h) {
  CheckReport rep;
  const char* names[3] = {"I", "J", "K"};
  const Matrix* Ls[3] = {&h.I, &h.J, &h.K};
  for (std::size_t p = 0; p < d.pool.size(); ++p) {
    Matrix ad = d.ambient.ad(d.pool[p]);
    for (int w = 0; w < 3; ++w)
      if (ad * (*Ls[w]) != (*Ls[w]) * ad)
        fail(rep, "ad of pool vector " + std::to_string(p) +
                      " does not commute with " + names[w]);
  }
  return rep;
}

}  // namespace obata
