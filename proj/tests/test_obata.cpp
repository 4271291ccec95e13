#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <stdexcept>
#include <tuple>
#include <vector>

#include "obata/chevalley.hpp"
#include "obata/connection.hpp"
#include "obata/joyce.hpp"
#include "obata/models.hpp"
#include "obata/root_system.hpp"
#include "sp2_worked_tables.hpp"

using namespace obata;

namespace {

struct Example {
  JoyceDecomposition d;
  Matrix A;
  HypercomplexTriple h;
  Connection c;
};

Example make_example(JoyceDecomposition d, Matrix A) {
  Example e{std::move(d), std::move(A), {}, {}};
  e.h = hypercomplex_structure(e.d, e.A);
  e.c = obata_connection(e.d.ambient, e.h);
  return e;
}

const Example& sp2() {
  static const Example e = make_example(sp_model(2), Matrix::identity(2));
  return e;
}

const Example& su3() {
  static const Example e = make_example(su_model(3), Matrix::identity(1));
  return e;
}

const Example& hopf() {
  static const Example e = make_example(hopf_model(), Matrix::identity(1));
  return e;
}

Matrix swap2() {
  Matrix A(2, 2);
  A.at(0, 1) = 1;
  A.at(1, 0) = 1;
  return A;
}

Matrix lower2() {
  Matrix A(2, 2);
  A.at(0, 0) = 1;
  A.at(1, 0) = 2;
  A.at(1, 1) = -1;
  return A;
}

const Example& su5_swap() {
  static const Example e = make_example(su_model(5), swap2());
  return e;
}

const Example& su5_lower() {
  static const Example e = make_example(su_model(5), lower2());
  return e;
}

using worked_sp2::kTheta;
using worked_sp2::theta_triple;

Matrix sparse12(const worked_sp2::Entries& entries) {
  Matrix m(12, 12);
  for (const auto& [r, c, v] : entries) m.at(r, c) = v;
  return m;
}

std::vector<Matrix> tau_generators() {
  std::vector<Matrix> out;
  for (const auto& e : worked_sp2::tau_entries()) out.push_back(sparse12(e));
  return out;
}

std::vector<Matrix> nu_values() {
  std::vector<Matrix> out;
  for (const auto& e : worked_sp2::nu_entries()) out.push_back(sparse12(e));
  return out;
}

Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t s = 0; s < m.cols(); ++s) v.push_back(m.at(r, s));
  return v;
}

Vec unit(std::size_t dim, std::size_t i) {
  Vec v(dim, Rational(0));
  v[i] = 1;
  return v;
}

// Every generator must keep the span of vbasis invariant: zero lower-left
// block after the change of basis [vbasis | completion].
bool keeps_subspace(const std::vector<Matrix>& gens,
                    const std::vector<Vec>& vbasis, std::size_t dim) {
  SpanBasis sp(dim);
  Matrix S(dim, dim);
  std::size_t col = 0;
  for (const Vec& v : vbasis) {
    REQUIRE(sp.insert(v));
    S.set_col(col++, v);
  }
  const std::size_t k = col;
  for (std::size_t i = 0; i < dim && col < dim; ++i) {
    Vec e = unit(dim, i);
    if (sp.insert(e)) S.set_col(col++, e);
  }
  REQUIRE(col == dim);
  Matrix Sinv = *S.inverse();
  for (const Matrix& g : gens) {
    Matrix t = Sinv * g * S;
    for (std::size_t r = k; r < dim; ++r)
      for (std::size_t s = 0; s < k; ++s)
        if (!is_zero(t.at(r, s))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("connection of the flat-torus sp(2) example matches the worked table") {
  const Example& F = sp2();
  Matrix Q = quaternion_frame(F.d, F.A);
  Matrix Qi = *Q.inverse();
  for (int a = 0; a < 12; ++a) {
    Matrix got = Qi * F.c.along(Q.col_vec(a)) * Q;
    Matrix want(12, 12);
    for (int r = 0; r < 12; ++r)
      for (int s = 0; s < 12; ++s) {
        int t = kTheta[r][s];
        if (t == 0 || std::abs(t) - 1 != a) continue;
        int coef = (t > 0 ? 1 : -1) * (theta_triple(r, s) ? 3 : 1);
        want.at(r, s) = coef;
      }
    CAPTURE(a);
    CHECK(got == want);
  }
}

TEST_CASE("sp(2) curvature operators span the seven worked generators") {
  const Example& F = sp2();
  CurvatureTensor R = curvature(F.c, F.d.ambient);
  Matrix Q = quaternion_frame(F.d, F.A);
  Matrix Qi = *Q.inverse();

  SpanBasis sp(144);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i + 1; j < 12; ++j) sp.insert(flatten(R.at(i, j)));
  CHECK(sp.dim() == 7);

  for (const Matrix& tau : tau_generators()) {
    Matrix amb = Q * tau * Qi;
    CHECK(sp.contains(flatten(amb)));
  }
}

TEST_CASE("derivative of the first curvature generator matches the worked values") {
  const Example& F = sp2();
  Matrix Q = quaternion_frame(F.d, F.A);
  Matrix Qi = *Q.inverse();

  Matrix tau1 = Q * tau_generators()[0] * Qi;
  EndoTensor dt = covariant_derivative(F.c, endo_tensor(tau1));
  REQUIRE(dt.rank == 1);

  // Ambient indices of the h1 quadruple: the first frame columns.
  std::vector<Matrix> nu = nu_values();
  for (std::size_t t = 0; t < 4; ++t) {
    Vec dir = Q.col_vec(t);
    std::size_t amb = 0;
    while (is_zero(dir[amb])) ++amb;
    REQUIRE(dir[amb] == 1);  // model frame columns are unit vectors
    CAPTURE(t);
    CHECK(dt.at({amb}) == Q * nu[t] * Qi);
  }

  EndoTensor id_dt =
      covariant_derivative(F.c, endo_tensor(Matrix::identity(12)));
  for (const Matrix& m : id_dt.values) CHECK(m.is_zero());
}

TEST_CASE("second Bianchi identity holds for the derivative of su(3) curvature") {
  const Example& F = su3();
  const std::size_t D = 8;
  CurvatureTensor R = curvature(F.c, F.d.ambient);
  EndoTensor DR = covariant_derivative(F.c, endo_tensor(R));
  REQUIRE(DR.rank == 3);
  for (std::size_t x = 0; x < D; ++x)
    for (std::size_t y = 0; y < D; ++y) {
      for (std::size_t z = 0; z < D; ++z) {
        Matrix cyc = DR.at({x, y, z});
        cyc += DR.at({y, z, x});
        cyc += DR.at({z, x, y});
        if (!cyc.is_zero()) {
          CAPTURE(x);
          CAPTURE(y);
          CAPTURE(z);
          REQUIRE(cyc.is_zero());
        }
        CHECK(DR.at({x, y, z}) == -DR.at({x, z, y}));
      }
    }
}

TEST_CASE("holonomy of the flat-torus sp(2) example closes at dimension eleven") {
  const Example& F = sp2();
  HolonomyResult hr = holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration);
  CHECK(hr.dim == 11);
  CHECK(hr.filtration_dims == std::vector<std::size_t>{7, 11, 11});
  CHECK(hr.depth_reached == 2);
  CHECK(hr.stabilized);

  REQUIRE(hr.blocks.n == 3);
  const char* want[3][3] = {
      {"0", "0", "0"}, {"0", "0", "0"}, {"H", "H", "Im"}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t s = 0; s < 3; ++s) CHECK(hr.blocks.cell(r, s) == want[r][s]);
  CHECK(hr.blocks.real_trace_zero);

  for (const Matrix& g : hr.generators) {
    CHECK(g * F.h.I == F.h.I * g);
    CHECK(g * F.h.J == F.h.J * g);
    CHECK(g * F.h.K == F.h.K * g);
  }

  Matrix Q = quaternion_frame(F.d, F.A);
  Matrix Qi = *Q.inverse();
  for (const Matrix& tau : tau_generators())
    CHECK(hr.span.contains(flatten(Q * tau * Qi)));

  HolonomyResult ha =
      holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::alekseevskii);
  CHECK(ha.dim == 11);
  CHECK(ha.stabilized);
}

TEST_CASE("holonomy report serializes its headline numbers") {
  const Example& F = sp2();
  HolonomyResult hr = holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration);
  auto j = nlohmann::json::parse(hr.to_json());
  CHECK(j["dim"] == 11);
  CHECK(j["filtration"] == std::vector<int>({7, 11, 11}));
  CHECK(j["stabilized"] == true);
  CHECK(j["depth"] == 2);
  CHECK(j["blocks"]["n"] == 3);
  CHECK(j["blocks"]["cells"][2][2] == "Im");
  CHECK(j["blocks"]["real_trace_zero"] == true);
}

TEST_CASE("hopf surface connection is flat") {
  const Example& F = hopf();
  CurvatureTensor R = curvature(F.c, F.d.ambient);
  for (const Matrix& m : R.entries) CHECK(m.is_zero());
  for (HolonomyMethod m :
       {HolonomyMethod::filtration, HolonomyMethod::alekseevskii}) {
    HolonomyResult hr = holonomy_algebra(F.c, F.d, F.A, m);
    CHECK(hr.dim == 0);
    CHECK(hr.filtration_dims == std::vector<std::size_t>{0});
    CHECK(hr.depth_reached == 0);
    CHECK(hr.stabilized);
    CHECK(hr.generators.empty());
  }
}

TEST_CASE("su(3) holonomy fills gl(2,H) at derivative depth four") {
  const Example& F = su3();
  HolonomyResult hr = holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration);
  CHECK(hr.dim == 16);
  CHECK(hr.stabilized);
  CHECK(hr.depth_reached == 4);
  REQUIRE(hr.filtration_dims.size() == 5);
  CHECK(hr.filtration_dims.back() == 16);
  CHECK(hr.filtration_dims[3] < 16);

  REQUIRE(hr.blocks.n == 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t s = 0; s < 2; ++s) CHECK(hr.blocks.cell(r, s) == "H");
  CHECK_FALSE(hr.blocks.real_trace_zero);

  HolonomyResult ha =
      holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::alekseevskii);
  CHECK(ha.dim == 16);
  CHECK(ha.stabilized);

  HolonomyResult shallow =
      holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration, 2);
  CHECK_FALSE(shallow.stabilized);
  CHECK(shallow.depth_reached == 2);
  CHECK(shallow.filtration_dims.size() == 3);
}

TEST_CASE("su(5) with swapped torus parameters fills gl(6,H)") {
  const Example& F = su5_swap();
  HolonomyResult hr = holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration);
  CHECK(hr.dim == 144);
  CHECK(hr.filtration_dims == std::vector<std::size_t>{52, 138, 144});
  CHECK(hr.stabilized);
  CHECK(hr.depth_reached == 2);
  REQUIRE(hr.blocks.n == 6);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t s = 0; s < 6; ++s) CHECK(hr.blocks.cell(r, s) == "H");
  CHECK_FALSE(hr.blocks.real_trace_zero);

  HolonomyResult ha =
      holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::alekseevskii);
  CHECK(ha.dim == 144);
  CHECK(ha.stabilized);

  HolonomyResult shallow =
      holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration, 1);
  CHECK(shallow.filtration_dims == std::vector<std::size_t>{52, 138});
  CHECK_FALSE(shallow.stabilized);
  CHECK(shallow.depth_reached == 1);
}

TEST_CASE("su(5) with lower-triangular parameters preserves the tail su(3)") {
  const Example& F = su5_lower();
  auto subs = find_parallel_subspaces(F.c, F.d, F.A);

  bool saw_tail = false, saw_closure = false;
  for (const auto& s : subs) {
    if (s.label == "tail2") {
      saw_tail = true;
      CHECK(s.parallel);
      CHECK(s.basis.size() == 8);
    }
    if (s.label == "closure(h2)") {
      saw_closure = true;
      CHECK(s.parallel);
      CHECK(s.basis.size() == 8);
    }
  }
  CHECK(saw_tail);
  CHECK(saw_closure);

  // Preserving a quaternionic 2-column subspace caps the holonomy at the
  // 112-dimensional stabilizer inside gl(6,H).
  HolonomyResult hr = holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration);
  CHECK(hr.dim == 112);
  CHECK(hr.filtration_dims ==
        std::vector<std::size_t>{48, 72, 94, 110, 112, 112});
  CHECK(hr.stabilized);
  CHECK(hr.depth_reached == 5);

  HolonomyResult ha =
      holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::alekseevskii);
  CHECK(ha.dim == 112);
  CHECK(ha.stabilized);

  for (const auto& s : subs)
    if (s.label == "tail2")
      CHECK(keeps_subspace(hr.generators, s.basis, 24));
}

TEST_CASE("su(5) with swapped parameters leaves no proper subspace parallel") {
  const Example& F = su5_swap();
  auto subs = find_parallel_subspaces(F.c, F.d, F.A);
  for (const auto& s : subs) {
    if (s.label == "tail2") CHECK_FALSE(s.parallel);
    if (s.label == "closure(h2)") CHECK(s.basis.size() == 24);
  }
}

TEST_CASE("parallel subspace catalog of the flat-torus sp(2) example") {
  const Example& F = sp2();
  auto subs = find_parallel_subspaces(F.c, F.d, F.A);

  bool saw_h2 = false, saw_c1 = false, saw_c2 = false;
  for (const auto& s : subs) {
    if (s.label == "h2") {
      saw_h2 = true;
      CHECK(s.parallel);
      CHECK(s.basis.size() == 4);
    }
    if (s.label == "closure(h1)") {
      saw_c1 = true;
      // h1 feeds f1 and f1 feeds h2, so the closure is the whole space.
      CHECK(s.basis.size() == 12);
      CHECK(s.parallel);
    }
    if (s.label == "closure(h2)") {
      saw_c2 = true;
      CHECK(s.basis.size() == 4);
    }
    if (s.label == "h1") FAIL("h1 has a nonempty f block and is no candidate");
  }
  CHECK(saw_h2);
  CHECK(saw_c1);
  CHECK(saw_c2);

  HolonomyResult hr = holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration);
  Matrix P = F.d.adapted_matrix(F.A);
  std::vector<Vec> h2 = {P.col_vec(1), P.col_vec(5), P.col_vec(6), P.col_vec(7)};
  CHECK(keeps_subspace(hr.generators, h2, 12));
}

TEST_CASE("nabla e1 acts as minus identity on its own layer and kills the rest") {
  for (const Example* F : {&sp2(), &su3(), &hopf(), &su5_lower()}) {
    CheckReport rep = verify_nabla_e1(F->c, F->d, F->A);
    CHECK(rep.ok);
  }
  const Example& F = sp2();
  Connection bad = F.c;
  bad.nabla[0].at(0, 0) += 1;
  CHECK_FALSE(verify_nabla_e1(bad, F.d, F.A).ok);
}

TEST_CASE("euler field has identity derivative in every example") {
  for (const Example* F : {&sp2(), &su3(), &hopf(), &su5_swap(), &su5_lower()}) {
    const std::size_t D = F->c.dim();
    Vec eu = euler_field(F->d, F->A);
    Matrix m(D, D);
    for (std::size_t k = 0; k < D; ++k) m.set_col(k, F->c.nabla[k].apply(eu));
    CHECK(m == Matrix::identity(D));
  }
}

TEST_CASE("torsion-free and structure-parallel hold on a chevalley realization") {
  JoyceDecomposition d =
      joyce_decompose(chevalley_compact_form(build_root_system('C', 2)));
  Matrix A = Matrix::identity(d.m());
  HypercomplexTriple h = hypercomplex_structure(d, A);
  Connection c = obata_connection(d.ambient, h);
  const LieAlgebra& g = d.ambient;
  const int D = g.dim();

  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j) {
      Vec lhs = vec_sub(c.nabla[i].col_vec(j), c.nabla[j].col_vec(i));
      CHECK(lhs == sparse_to_dense(g.bracket_basis(i, j), D));
    }
  for (int k = 0; k < D; ++k) {
    CHECK(c.nabla[k] * h.I == h.I * c.nabla[k]);
    CHECK(c.nabla[k] * h.J == h.J * c.nabla[k]);
    CHECK(c.nabla[k] * h.K == h.K * c.nabla[k]);
  }
  CHECK(verify_nabla_e1(c, d, A).ok);

  HolonomyResult hf = holonomy_algebra(c, d, A, HolonomyMethod::filtration);
  HolonomyResult ha = holonomy_algebra(c, d, A, HolonomyMethod::alekseevskii);
  CHECK(hf.stabilized);
  CHECK(ha.stabilized);
  CHECK(hf.dim == ha.dim);
}

TEST_CASE("connection construction rejects bad input") {
  const Example& F = sp2();

  HypercomplexTriple bad = F.h;
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t col = 8; col < 12; ++col) bad.I.at(r, col) = -bad.I.at(r, col);
  CHECK_THROWS_AS(obata_connection(F.d.ambient, bad), std::invalid_argument);

  CHECK_THROWS_AS(
      holonomy_algebra(F.c, F.d, F.A, HolonomyMethod::filtration, 0),
      std::invalid_argument);
}
