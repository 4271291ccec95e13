#include "obata/geometry.hpp"

#include "obata/scalars.hpp"

#include <json.hpp>

#include <bit>
#include <stdexcept>
#include <utility>

namespace obata {

namespace {

constexpr std::size_t kMaxFormDim = 64;

// Parity of the merge of two disjoint ascending index sets: counts the pairs
// (x in a, y in b) with x > y. Wedging a-sorted before b-sorted picks up
// (-1)^count.
int merge_sign(std::uint64_t a, std::uint64_t b) {
  int parity = 0;
  while (b != 0) {
    const int y = std::countr_zero(b);
    parity ^= static_cast<int>(std::popcount(a >> (y + 1)) & 1u);
    b &= b - 1;
  }
  return parity == 0 ? 1 : -1;
}

Matrix left_mult_block(const Quat& u) {
  Quat basis[4] = {Quat(Rational(1), Rational(0), Rational(0), Rational(0)),
                   Quat::unit_i(), Quat::unit_j(), Quat::unit_k()};
  Matrix M(4, 4);
  for (int t = 0; t < 4; ++t) {
    const Quat q = u * basis[t];
    M.at(0, t) = q.a;
    M.at(1, t) = q.b;
    M.at(2, t) = q.c;
    M.at(3, t) = q.d;
  }
  return M;
}

Matrix block_repeat(const Matrix& block, int copies, std::size_t offset,
                    std::size_t total) {
  Matrix M(total, total);
  for (int c = 0; c < copies; ++c)
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t s = 0; s < 4; ++s)
        M.at(offset + 4 * c + r, offset + 4 * c + s) = block.at(r, s);
  return M;
}

bool is_hyperhermitian(const Matrix& gram, const Matrix& L) {
  return L.transpose() * gram * L == gram;
}

bool is_ad_invariant(const LieAlgebra& g, const Matrix& gram) {
  for (int k = 0; k < g.dim(); ++k) {
    const Matrix adk = g.ad(k);
    if (!(adk.transpose() * gram + gram * adk).is_zero()) return false;
  }
  return true;
}

// omega_L(e_i, e_j) = g(L e_i, e_j) as a 2-form; requires antisymmetry,
// which is equivalent to g(L., L.) = g for an almost complex L.
LeftInvariantForm fundamental_form(const Matrix& gram, const Matrix& L) {
  const std::size_t D = gram.rows();
  const Matrix W = L.transpose() * gram;
  LeftInvariantForm w(D, 2);
  for (std::size_t i = 0; i < D; ++i) {
    if (W.at(i, i) != 0)
      throw std::invalid_argument("metric is not hermitian for the triple");
    for (std::size_t j = i + 1; j < D; ++j) {
      if (W.at(i, j) != -W.at(j, i))
        throw std::invalid_argument("metric is not hermitian for the triple");
      if (W.at(i, j) != 0)
        w.add_term((std::uint64_t(1) << i) | (std::uint64_t(1) << j),
                   W.at(i, j));
    }
  }
  return w;
}

// d^c_L = (-1)^k L^{-1} d L on k-forms, with L acting by pullback.
LeftInvariantForm dc(const LieAlgebra& g, const Matrix& L,
                     const LeftInvariantForm& a) {
  const LeftInvariantForm inner = pullback(L, a);
  const LeftInvariantForm da = ce_differential(g, inner);
  LeftInvariantForm out = pullback(-L, da);
  return (a.degree() % 2 == 1) ? -out : out;
}

std::vector<Rational> layer_norms(const JoyceDecomposition& d) {
  const Matrix B = d.ambient.killing_form();
  std::vector<Rational> lam;
  lam.reserve(std::size_t(d.m()));
  for (const JoyceLayer& layer : d.layers)
    lam.push_back(dot(layer.e2, B.apply(layer.e2)));
  return lam;
}

}  // namespace

LeftInvariantForm::LeftInvariantForm(std::size_t dim, std::size_t degree)
    : dim_(dim), degree_(degree) {
  if (dim_ > kMaxFormDim)
    throw std::invalid_argument("form calculus is limited to dimension 64");
}

void LeftInvariantForm::add_term(std::uint64_t mask, const Rational& c) {
  if (std::popcount(mask) != static_cast<int>(degree_))
    throw std::invalid_argument("term mask does not match the form degree");
  if (mask != 0 &&
      static_cast<std::size_t>(64 - std::countl_zero(mask)) > dim_)
    throw std::invalid_argument("term index exceeds the form dimension");
  if (obata::is_zero(c)) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    terms_.emplace(mask, c);
    return;
  }
  it->second += c;
  if (obata::is_zero(it->second)) terms_.erase(it);
}

void LeftInvariantForm::add_term(const std::vector<int>& idx,
                                 const Rational& c) {
  if (idx.size() != degree_)
    throw std::invalid_argument("index count does not match the form degree");
  std::uint64_t mask = 0;
  int parity = 0;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (idx[p] < 0 || static_cast<std::size_t>(idx[p]) >= dim_)
      throw std::invalid_argument("term index exceeds the form dimension");
    const std::uint64_t bit = std::uint64_t(1) << idx[p];
    if (mask & bit) throw std::invalid_argument("repeated index in a term");
    // inversions against the indices already placed
    parity ^= static_cast<int>(std::popcount(mask >> (idx[p] + 1)) & 1u);
    mask |= bit;
  }
  add_term(mask, parity == 0 ? c : -c);
}

Rational LeftInvariantForm::coefficient(std::uint64_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational LeftInvariantForm::coefficient(const std::vector<int>& idx) const {
  if (idx.size() != degree_)
    throw std::invalid_argument("index count does not match the form degree");
  std::uint64_t mask = 0;
  int parity = 0;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const std::uint64_t bit = std::uint64_t(1) << idx[p];
    if (mask & bit) return Rational(0);
    parity ^= static_cast<int>(std::popcount(mask >> (idx[p] + 1)) & 1u);
    mask |= bit;
  }
  const Rational c = coefficient(mask);
  return parity == 0 ? c : -c;
}

bool LeftInvariantForm::operator==(const LeftInvariantForm& o) const {
  return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
}

LeftInvariantForm& LeftInvariantForm::operator+=(const LeftInvariantForm& o) {
  if (dim_ != o.dim_ || degree_ != o.degree_)
    throw std::invalid_argument("form shapes do not match");
  for (const auto& [mask, c] : o.terms_) add_term(mask, c);
  return *this;
}

LeftInvariantForm LeftInvariantForm::operator+(
    const LeftInvariantForm& o) const {
  LeftInvariantForm out = *this;
  out += o;
  return out;
}

LeftInvariantForm LeftInvariantForm::operator-(
    const LeftInvariantForm& o) const {
  return *this + (-o);
}

LeftInvariantForm LeftInvariantForm::operator*(const Rational& c) const {
  LeftInvariantForm out(dim_, degree_);
  if (obata::is_zero(c)) return out;
  for (const auto& [mask, v] : terms_) out.terms_.emplace(mask, v * c);
  return out;
}

LeftInvariantForm LeftInvariantForm::operator-() const {
  return *this * Rational(-1);
}

std::string LeftInvariantForm::to_json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mask, c] : terms_) {
    nlohmann::json idx = nlohmann::json::array();
    std::uint64_t rest = mask;
    while (rest != 0) {
      idx.push_back(std::countr_zero(rest));
      rest &= rest - 1;
    }
    terms.push_back({{"idx", std::move(idx)}, {"coef", rational_to_string(c)}});
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

LeftInvariantForm wedge(const LeftInvariantForm& a, const LeftInvariantForm& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("form shapes do not match");
  LeftInvariantForm out(a.dim(), a.degree() + b.degree());
  for (const auto& [am, ac] : a.terms())
    for (const auto& [bm, bc] : b.terms()) {
      if (am & bm) continue;
      const Rational prod = ac * bc;
      out.add_term(am | bm,
                   merge_sign(am, bm) == 1 ? prod : Rational(-prod));
    }
  return out;
}

LeftInvariantForm ce_differential(const LieAlgebra& g,
                                  const LeftInvariantForm& a) {
  const std::size_t D = std::size_t(g.dim());
  if (a.dim() != D) throw std::invalid_argument("form shapes do not match");
  LeftInvariantForm out(D, a.degree() + 1);
  if (a.degree() == 0) return out;  // invariant functions are constant

  // dphi^t = -sum_{p<q} c^t_{pq} phi^p ^ phi^q
  std::vector<LeftInvariantForm> dphi(D, LeftInvariantForm(D, 2));
  for (std::size_t p = 0; p < D; ++p)
    for (std::size_t q = p + 1; q < D; ++q) {
      const std::uint64_t pq =
          (std::uint64_t(1) << p) | (std::uint64_t(1) << q);
      for (const auto& [t, c] : g.bracket_basis(int(p), int(q)))
        dphi[std::size_t(t)].add_term(pq, -c);
    }

  // antiderivation over each monomial: slot i contributes (-1)^i dphi^{s_i}
  for (const auto& [mask, c] : a.terms()) {
    std::uint64_t rest_bits = mask;
    int pos = 0;
    while (rest_bits != 0) {
      const int s = std::countr_zero(rest_bits);
      rest_bits &= rest_bits - 1;
      const std::uint64_t others = mask & ~(std::uint64_t(1) << s);
      const Rational signed_c = (pos % 2 == 0) ? c : Rational(-c);
      for (const auto& [pq, c2] : dphi[std::size_t(s)].terms()) {
        if (pq & others) continue;
        const Rational v = signed_c * c2;
        out.add_term(pq | others,
                     merge_sign(pq, others) == 1 ? v : Rational(-v));
      }
      ++pos;
    }
  }
  return out;
}

LeftInvariantForm pullback(const Matrix& M, const LeftInvariantForm& a) {
  const std::size_t D = a.dim();
  if (M.rows() != D || M.cols() != D)
    throw std::invalid_argument("form shapes do not match");
  std::vector<LeftInvariantForm> rows;
  rows.reserve(D);
  for (std::size_t s = 0; s < D; ++s) {
    LeftInvariantForm row(D, 1);
    for (std::size_t t = 0; t < D; ++t)
      if (M.at(s, t) != 0) row.add_term(std::uint64_t(1) << t, M.at(s, t));
    rows.push_back(std::move(row));
  }
  LeftInvariantForm out(D, a.degree());
  for (const auto& [mask, c] : a.terms()) {
    LeftInvariantForm acc(D, 0);
    acc.add_term(0, c);
    std::uint64_t rest = mask;
    while (rest != 0) {
      acc = wedge(acc, rows[std::size_t(std::countr_zero(rest))]);
      rest &= rest - 1;
    }
    out += acc;
  }
  return out;
}

LeftInvariantForm metric_dual(const Matrix& gram, const Vec& v) {
  const Vec w = gram.apply(v);
  LeftInvariantForm out(w.size(), 1);
  for (std::size_t t = 0; t < w.size(); ++t)
    if (!is_zero(w[t])) out.add_term(std::uint64_t(1) << t, w[t]);
  return out;
}

LieAlgebra change_basis(const LieAlgebra& g, const Matrix& P) {
  const std::size_t D = std::size_t(g.dim());
  if (P.rows() != D || P.cols() != D)
    throw std::invalid_argument("basis matrix does not match the algebra");
  const auto Pinv = P.inverse();
  if (!Pinv) throw std::invalid_argument("basis matrix must be invertible");
  LieAlgebra out{int(D)};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = i + 1; j < D; ++j) {
      const Vec w = Pinv->apply(g.bracket(P.col_vec(i), P.col_vec(j)));
      if (!vec_is_zero(w)) out.set_bracket(int(i), int(j), dense_to_sparse(w));
    }
  return out;
}

InvariantMetric extend_killing_metric(
    const JoyceDecomposition& d, const Matrix& A,
    const std::vector<Rational>& torus_lambdas) {
  const std::size_t m = std::size_t(d.m());
  const std::size_t ell = std::size_t(d.ell);
  if (A.rows() != m || A.cols() != m)
    throw std::invalid_argument("parameter matrix must be m x m");
  if (is_zero(A.determinant()))
    throw std::invalid_argument("parameter matrix must be invertible");

  const std::vector<Rational> lam = layer_norms(d);
  for (const Rational& l : lam)
    if (sgn(l) <= 0)
      throw std::invalid_argument("layer norms must be positive");

  if (!torus_lambdas.empty()) {
    if (torus_lambdas.size() != ell)
      throw std::invalid_argument("expected one torus norm per torus layer");
    for (std::size_t j = 0; j < ell; ++j)
      if (torus_lambdas[j] != lam[j])
        throw std::invalid_argument(
            "torus norm is pinned by the hyperhermitian condition to the "
            "Killing norm of the layer triple; the requested value differs");
  }

  // The torus layers and the b layers may not mix: a mixed e1 vector can
  // never be orthogonal to the semisimple part under a bi-invariant form.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (((i < ell) != (j < ell)) && A.at(i, j) != 0)
        throw std::invalid_argument(
            "parameter matrix mixes torus and b directions; no bi-invariant "
            "hyperhermitian extension exists for such an e1 basis");

  const Matrix B = d.ambient.killing_form();
  const Matrix P = d.adapted_matrix(A);
  for (std::size_t i = ell; i < m; ++i) {
    const Vec ei = P.col_vec(i);
    for (std::size_t j = i; j < m; ++j) {
      const Rational q = dot(ei, B.apply(P.col_vec(j)));
      if (i == j && q != lam[i])
        throw std::invalid_argument(
            "b column norm " + rational_to_string(q) +
            " differs from the layer norm " + rational_to_string(lam[i]) +
            "; the e1 basis is not compatible");
      if (i != j && !is_zero(q))
        throw std::invalid_argument(
            "b columns are not Killing-orthogonal; the e1 basis is not "
            "compatible");
    }
  }

  InvariantMetric out;
  out.A = A;
  out.lambdas = lam;
  out.gram = B;
  if (ell > 0) {
    Matrix T(ell, ell);
    for (std::size_t i = 0; i < ell; ++i)
      for (std::size_t j = 0; j < ell; ++j) T.at(i, j) = A.at(i, j);
    const auto Tinv = T.inverse();
    if (!Tinv)
      throw std::invalid_argument("parameter matrix must be invertible");
    Matrix Dt(ell, ell);
    for (std::size_t j = 0; j < ell; ++j) Dt.at(j, j) = lam[j];
    const Matrix Gt = Tinv->transpose() * Dt * (*Tinv);
    for (std::size_t i = 0; i < ell; ++i)
      for (std::size_t j = 0; j < ell; ++j) out.gram.at(i, j) = Gt.at(i, j);
  }
  out.bi_invariant = true;

  if (!out.gram.is_positive_definite())
    throw std::logic_error("extended metric lost positive definiteness");
  const HypercomplexTriple h = hypercomplex_structure(d, A);
  for (const Matrix* L : {&h.I, &h.J, &h.K})
    if (!is_hyperhermitian(out.gram, *L))
      throw std::logic_error("extended metric is not hyperhermitian");
  if (!is_ad_invariant(d.ambient, out.gram))
    throw std::logic_error("extended metric is not ad-invariant");

  // e1 block diagonal with the layer norms, summands pairwise orthogonal
  const Matrix Gad = P.transpose() * out.gram * P;
  const std::size_t D = std::size_t(d.ambient.dim());
  std::vector<int> summand(D);
  for (std::size_t col = 0; col < D; ++col) {
    const auto [layer, role] = d.column_info(int(col));
    if (role == BasisRole::e1)
      summand[col] = col < ell ? 0 : 1;
    else if (role == BasisRole::f)
      summand[col] = 2 + d.m() + layer;
    else
      summand[col] = 2 + layer;
  }
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) {
      if (i < m && j < m) {
        if (Gad.at(i, j) != (i == j ? lam[i] : Rational(0)))
          throw std::logic_error("e1 block of the extended metric is skewed");
      } else if (summand[i] != summand[j] && !is_zero(Gad.at(i, j))) {
        throw std::logic_error("extended metric mixes decomposition summands");
      }
    }
  return out;
}

InvariantMetric hyperhermitian_metric(const JoyceDecomposition& d,
                                      const Matrix& A) {
  const std::size_t m = std::size_t(d.m());
  if (A.rows() != m || A.cols() != m)
    throw std::invalid_argument("parameter matrix must be m x m");
  const Matrix P = d.adapted_matrix(A);
  const auto Pinv = P.inverse();
  if (!Pinv) throw std::invalid_argument("parameter matrix must be invertible");

  const std::vector<Rational> lam = layer_norms(d);
  const std::size_t D = std::size_t(d.ambient.dim());
  Matrix Gad = P.transpose() * d.ambient.killing_form() * P;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t < D; ++t) {
      Gad.at(j, t) = Rational(0);
      Gad.at(t, j) = Rational(0);
    }
    Gad.at(j, j) = lam[j];
  }

  InvariantMetric out;
  out.A = A;
  out.lambdas = lam;
  out.gram = Pinv->transpose() * Gad * (*Pinv);
  if (!out.gram.is_positive_definite())
    throw std::logic_error("completion metric lost positive definiteness");
  const HypercomplexTriple h = hypercomplex_structure(d, A);
  for (const Matrix* L : {&h.I, &h.J, &h.K})
    if (!is_hyperhermitian(out.gram, *L))
      throw std::logic_error("completion metric is not hyperhermitian");
  out.bi_invariant = is_ad_invariant(d.ambient, out.gram);
  return out;
}

LeftInvariantForm obata_one_form(const LieAlgebra& g,
                                 const HypercomplexTriple& h) {
  const std::size_t D = std::size_t(g.dim());
  Vec tr_ad(D, Rational(0));
  for (std::size_t k = 0; k < D; ++k) tr_ad[k] = g.ad(int(k)).trace();

  const Rational half(1, 2);
  std::vector<Vec> etas;
  for (const Matrix* L : {&h.I, &h.J, &h.K}) {
    Vec s(D, Rational(0));
    for (std::size_t k = 0; k < D; ++k) s[k] = (*L * g.ad(int(k))).trace();
    const Vec ls = L->transpose().apply(s);
    Vec eta(D, Rational(0));
    for (std::size_t k = 0; k < D; ++k) eta[k] = -(tr_ad[k] + ls[k]) * half;
    etas.push_back(std::move(eta));
  }
  if (etas[0] != etas[1] || etas[0] != etas[2])
    throw std::invalid_argument(
        "trace one form differs between the complex structures; the triple "
        "is not hypercomplex on this algebra");

  LeftInvariantForm out(D, 1);
  for (std::size_t k = 0; k < D; ++k)
    if (!is_zero(etas[0][k])) out.add_term(std::uint64_t(1) << k, etas[0][k]);
  return out;
}

RicciForm obata_ricci(const LieAlgebra& g, const HypercomplexTriple& h) {
  const LeftInvariantForm eta = obata_one_form(g, h);
  const std::size_t D = std::size_t(g.dim());
  Vec coeff(D, Rational(0));
  for (std::size_t t = 0; t < D; ++t)
    coeff[t] = eta.coefficient(std::uint64_t(1) << t);

  RicciForm out{Matrix(D, D)};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = i + 1; j < D; ++j) {
      Rational r(0);
      for (const auto& [t, c] : g.bracket_basis(int(i), int(j)))
        r -= c * coeff[std::size_t(t)];
      out.bilinear.at(i, j) = r;
      out.bilinear.at(j, i) = -r;
    }
  return out;
}

LeftInvariantForm lee_form(const JoyceDecomposition& d,
                           const InvariantMetric& metric) {
  const Matrix P = d.adapted_matrix(metric.A);
  LeftInvariantForm theta(std::size_t(d.ambient.dim()), 1);
  for (int j = 0; j < d.m(); ++j) {
    const Rational coef =
        Rational(2 * (1 + d.layers[std::size_t(j)].f_hdim())) /
        metric.lambdas[std::size_t(j)];
    theta += metric_dual(metric.gram, P.col_vec(std::size_t(j))) * coef;
  }
  return theta;
}

std::string TwistedCyReport::to_json() const {
  nlohmann::json j;
  j["hkt"] = hkt;
  j["strong"] = strong;
  j["dPsi_eq_theta_wedge_Psi"] = volume_twist;
  j["dtheta_zero"] = lee_closed;
  return j.dump();
}

TwistedCyReport verify_twisted_cy_frame(const LieAlgebra& g,
                                        const Matrix& gram, const Matrix& I,
                                        const Matrix& J, const Matrix& K,
                                        const LeftInvariantForm& theta,
                                        std::size_t max_quaternionic_dim) {
  const std::size_t D = std::size_t(g.dim());
  if (D % 4 != 0)
    throw std::invalid_argument("hypercomplex dimension must be divisible by 4");
  const std::size_t n = D / 4;
  if (n > max_quaternionic_dim)
    throw std::invalid_argument(
        "quaternionic dimension exceeds the volume form cap");
  if (theta.dim() != D || theta.degree() != 1)
    throw std::invalid_argument("theta must be a 1-form on the algebra");
  for (const Matrix* L : {&I, &J, &K})
    if (!is_hyperhermitian(gram, *L))
      throw std::invalid_argument("metric is not hermitian for the triple");

  const LeftInvariantForm wI = fundamental_form(gram, I);
  const LeftInvariantForm wJ = fundamental_form(gram, J);
  const LeftInvariantForm wK = fundamental_form(gram, K);

  TwistedCyReport rep;
  const LeftInvariantForm dcI = dc(g, I, wI);
  rep.hkt = dcI == dc(g, J, wJ) && dcI == dc(g, K, wK);
  rep.strong = ce_differential(g, dcI).is_zero();

  const Rational half(1, 2);
  LeftInvariantForm psi_re = wJ * half;
  LeftInvariantForm psi_im = wK * half;
  for (std::size_t p = 1; p < n; ++p) {
    const LeftInvariantForm re =
        wedge(psi_re, wJ * half) - wedge(psi_im, wK * half);
    const LeftInvariantForm im =
        wedge(psi_re, wK * half) + wedge(psi_im, wJ * half);
    psi_re = re;
    psi_im = im;
  }
  if (psi_re.is_zero() && psi_im.is_zero())
    throw std::logic_error("volume form vanished for a nondegenerate metric");
  rep.volume_twist = ce_differential(g, psi_re) == wedge(theta, psi_re) &&
                     ce_differential(g, psi_im) == wedge(theta, psi_im);

  rep.lee_closed = ce_differential(g, theta).is_zero();
  return rep;
}

TwistedCyReport verify_twisted_cy(const JoyceDecomposition& d,
                                  const InvariantMetric& metric,
                                  const HypercomplexTriple& h,
                                  std::size_t max_quaternionic_dim) {
  if (std::size_t(d.quaternionic_dim()) > max_quaternionic_dim)
    throw std::invalid_argument(
        "quaternionic dimension exceeds the volume form cap");
  const Matrix P = d.adapted_matrix(metric.A);
  const auto Pinv = P.inverse();
  if (!Pinv) throw std::invalid_argument("parameter matrix must be invertible");

  const LieAlgebra frame = change_basis(d.ambient, P);
  const Matrix gram = P.transpose() * metric.gram * P;
  const LeftInvariantForm theta = pullback(P, lee_form(d, metric));
  return verify_twisted_cy_frame(frame, gram, *Pinv * h.I * P, *Pinv * h.J * P,
                                 *Pinv * h.K * P, theta,
                                 max_quaternionic_dim);
}

SemidirectHkt semidirect_hkt(const JoyceDecomposition& d, const Matrix& A,
                             const InvariantMetric& metric,
                             const std::vector<Matrix>& rho, int r) {
  if (r < 1) throw std::invalid_argument("fiber rank must be at least 1");
  if (!metric.bi_invariant)
    throw std::invalid_argument(
        "semidirect construction needs a bi-invariant base metric");
  const std::size_t Db = std::size_t(d.ambient.dim());
  const std::size_t fiber = 4 * std::size_t(r);

  std::vector<Matrix> action = rho;
  if (action.empty()) action.assign(Db, Matrix(fiber, fiber));
  if (action.size() != Db)
    throw std::invalid_argument("rho must map every ambient basis vector");

  // sp(r) here means: skew, and commuting with the fiber triple below
  // (left multiplications), so rho acts through right quaternion
  // multiplications. Anything commuting with the structure on the wrong
  // side breaks the HKT property of the extension.
  const Matrix Li = block_repeat(left_mult_block(Quat::unit_i()), r, 0, fiber);
  const Matrix Lj = block_repeat(left_mult_block(Quat::unit_j()), r, 0, fiber);
  const Matrix Lk = block_repeat(left_mult_block(Quat::unit_k()), r, 0, fiber);
  for (const Matrix& M : action) {
    if (M.rows() != fiber || M.cols() != fiber)
      throw std::invalid_argument("rho blocks must be 4r x 4r");
    if (!(M.transpose() + M).is_zero() || M * Li != Li * M ||
        M * Lj != Lj * M || M * Lk != Lk * M)
      throw std::invalid_argument("rho does not land in sp(r)");
  }
  for (std::size_t i = 0; i < Db; ++i)
    for (std::size_t j = i + 1; j < Db; ++j) {
      Matrix expected(fiber, fiber);
      for (const auto& [t, c] : d.ambient.bracket_basis(int(i), int(j)))
        expected += action[std::size_t(t)] * c;
      if (Matrix::commutator(action[i], action[j]) != expected)
        throw std::invalid_argument("rho is not a Lie algebra homomorphism");
    }

  const Matrix P = d.adapted_matrix(A);
  const auto Pinv = P.inverse();
  if (!Pinv) throw std::invalid_argument("parameter matrix must be invertible");
  const LieAlgebra base = change_basis(d.ambient, P);

  const std::size_t D = Db + fiber;
  SemidirectHkt out;
  out.fiber_offset = Db;
  out.algebra = LieAlgebra(int(D));
  for (std::size_t i = 0; i < Db; ++i)
    for (std::size_t j = i + 1; j < Db; ++j) {
      const SparseVec v = base.bracket_basis(int(i), int(j));
      if (!v.empty()) out.algebra.set_bracket(int(i), int(j), v);
    }
  for (std::size_t i = 0; i < Db; ++i) {
    Matrix rho_hat(fiber, fiber);
    for (std::size_t k = 0; k < Db; ++k)
      if (P.at(k, i) != 0) rho_hat += action[k] * P.at(k, i);
    for (std::size_t t = 0; t < fiber; ++t) {
      SparseVec col;
      for (std::size_t s = 0; s < fiber; ++s)
        if (!is_zero(rho_hat.at(s, t)))
          col.emplace_back(int(Db + s), rho_hat.at(s, t));
      if (!col.empty()) out.algebra.set_bracket(int(i), int(Db + t), col);
    }
  }

  const HypercomplexTriple h = hypercomplex_structure(d, A);
  auto extend = [&](const Matrix& baseL, const Quat& u) {
    Matrix M = block_repeat(left_mult_block(u), r, Db, D);
    const Matrix Lb = *Pinv * baseL * P;
    for (std::size_t i = 0; i < Db; ++i)
      for (std::size_t j = 0; j < Db; ++j) M.at(i, j) = Lb.at(i, j);
    return M;
  };
  out.I = extend(h.I, Quat::unit_i());
  out.J = extend(h.J, Quat::unit_j());
  out.K = extend(h.K, Quat::unit_k());

  out.gram = Matrix(D, D);
  const Matrix Gb = P.transpose() * metric.gram * P;
  for (std::size_t i = 0; i < Db; ++i)
    for (std::size_t j = 0; j < Db; ++j) out.gram.at(i, j) = Gb.at(i, j);
  for (std::size_t t = 0; t < fiber; ++t)
    out.gram.at(Db + t, Db + t) = Rational(1);

  out.theta = LeftInvariantForm(D, 1);
  const LeftInvariantForm base_theta = pullback(P, lee_form(d, metric));
  for (const auto& [mask, c] : base_theta.terms()) out.theta.add_term(mask, c);

  if (!out.algebra.verify_jacobi().ok)
    throw std::logic_error("semidirect bracket violates the Jacobi identity");
  const Matrix id = Matrix::identity(D);
  if (out.I * out.I != -id || out.J * out.J != -id || out.I * out.J != out.K)
    throw std::logic_error("semidirect triple broke the quaternion relations");
  for (const Matrix* L : {&out.I, &out.J, &out.K})
    if (!is_hyperhermitian(out.gram, *L))
      throw std::logic_error("semidirect metric is not hyperhermitian");
  if (!verify_integrability({out.I, out.J, out.K}, out.algebra).ok)
    throw std::logic_error("semidirect structure is not integrable");
  return out;
}

TwistedCyReport verify_twisted_cy(const SemidirectHkt& s,
                                  std::size_t max_quaternionic_dim) {
  return verify_twisted_cy_frame(s.algebra, s.gram, s.I, s.J, s.K, s.theta,
                                 max_quaternionic_dim);
}

}  // namespace obata
