#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "obata/joyce.hpp"
#include "obata/models.hpp"
#include "obata/root_system.hpp"
#include "obata/span_basis.hpp"

using namespace obata;

namespace {

JoyceDecomposition decompose(char letter, int rank) {
  return joyce_decompose(chevalley_compact_form(build_root_system(letter, rank)));
}

Rational extended_killing(const JoyceDecomposition& d, const Vec& x,
                          const Vec& y) {
  Rational g = d.ambient.killing(x, y);
  for (int t = 0; t < d.ell; ++t) g += x[std::size_t(t)] * y[std::size_t(t)];
  return g;
}

}  // namespace

TEST_CASE("layer data matches the diagram walk across types") {
  const std::pair<char, int> cases[] = {{'A', 2}, {'A', 3}, {'A', 4},
                                        {'B', 3}, {'C', 2}, {'C', 3},
                                        {'D', 4}, {'G', 2}, {'F', 4}};
  for (auto [letter, rank] : cases) {
    CAPTURE(letter);
    CAPTURE(rank);
    JoyceDecomposition d = decompose(letter, rank);
    DiagramDecomposition diag = diagram_joyce_decomposition(letter, rank);
    REQUIRE(d.m() == int(diag.layers.size()));
    for (std::size_t i = 0; i < diag.layers.size(); ++i)
      CHECK(d.layers[i].f_hdim() == diag.layers[i].f_hdim);
    CHECK(d.ell == diag.ell);
    CHECK(d.b_dim() == diag.b_dim);
    CHECK(int(d.pool.size()) == d.m());
    CHECK(d.ambient.dim() == 4 * d.quaternionic_dim());
  }
}

TEST_CASE("C2 decomposition against pinned layer data") {
  JoyceDecomposition d = decompose('C', 2);
  CHECK(d.m() == 2);
  CHECK(d.ell == 2);
  CHECK(d.b_dim() == 0);
  CHECK(d.f_hdims() == std::vector<int>{1, 0});
  CHECK(d.ambient.dim() == 12);
  CHECK(d.quaternionic_dim() == 3);
}

TEST_CASE("joyce relations and bracket inclusions hold on chevalley decompositions") {
  for (auto [letter, rank] :
       {std::pair{'C', 2}, {'A', 4}, {'B', 3}, {'G', 2}, {'D', 4}}) {
    CAPTURE(letter);
    CAPTURE(rank);
    JoyceDecomposition d = decompose(letter, rank);
    CheckReport rel = verify_joyce_relations(d);
    CHECK(rel.ok);
    for (const auto& msg : rel.failures) CAPTURE(msg);
    REQUIRE(rel.failures.empty());
    CheckReport inc = verify_bracket_inclusions(d);
    CHECK(inc.ok);
    REQUIRE(inc.failures.empty());
  }
}

TEST_CASE("shuffling the layer order breaks the downward relations") {
  JoyceDecomposition d = decompose('C', 2);
  std::swap(d.layers[0], d.layers[1]);
  CheckReport rel = verify_joyce_relations(d);
  CHECK_FALSE(rel.ok);
  bool j3 = false;
  for (const auto& msg : rel.failures) j3 = j3 || msg.rfind("J3", 0) == 0;
  CHECK(j3);
}

TEST_CASE("f brackets of the first C2 layer land in the triple span") {
  JoyceDecomposition d = decompose('C', 2);
  SpanBasis triples(std::size_t(d.ambient.dim()));
  for (const auto& L : d.layers) {
    triples.insert(L.e2);
    triples.insert(L.e3);
    triples.insert(L.e4);
  }
  const auto& fs = d.layers[0].fs;
  REQUIRE(fs.size() == 1);
  for (const Vec& a : fs[0])
    for (const Vec& b : fs[0])
      CHECK(triples.contains(d.ambient.bracket(a, b)));
}

TEST_CASE("decomposition is orthogonal for the extended killing form") {
  for (auto [letter, rank] : {std::pair{'C', 2}, {'A', 4}, {'B', 3}}) {
    CAPTURE(letter);
    CAPTURE(rank);
    JoyceDecomposition d = decompose(letter, rank);
    // parts: each pool vector's span, each d_i, each f_i
    std::vector<std::vector<Vec>> parts;
    parts.push_back(d.pool);
    for (const auto& L : d.layers) {
      parts.push_back({L.e2, L.e3, L.e4});
      std::vector<Vec> f;
      for (const auto& q : L.fs)
        for (const Vec& w : q) f.push_back(w);
      if (!f.empty()) parts.push_back(std::move(f));
    }
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b)
        for (const Vec& x : parts[a])
          for (const Vec& y : parts[b])
            CHECK(extended_killing(d, x, y) == 0);
  }
}

TEST_CASE("hypercomplex triple satisfies the quaternion relations") {
  JoyceDecomposition d = decompose('C', 2);
  HypercomplexTriple h = hypercomplex_structure(d, Matrix::identity(2));
  const std::size_t n = std::size_t(d.ambient.dim());
  Matrix id = Matrix::identity(n);
  CHECK(h.I * h.I == -id);
  CHECK(h.J * h.J == -id);
  CHECK(h.K * h.K == -id);
  CHECK(h.I * h.J == h.K);
  CHECK(h.J * h.I == -h.K);
  CHECK(h.I * h.J * h.K == -id);
  CHECK(h.I.determinant() == 1);
  CHECK(h.J.determinant() == 1);
  CHECK(h.K.determinant() == 1);
}

TEST_CASE("restriction to each h layer is the standard quaternion action") {
  JoyceDecomposition d = decompose('B', 3);
  Matrix A = Matrix::identity(std::size_t(d.m()));
  HypercomplexTriple h = hypercomplex_structure(d, A);
  Matrix P = d.adapted_matrix(A);
  Matrix Pinv = *P.inverse();
  const Matrix mats[3] = {Pinv * h.I * P, Pinv * h.J * P, Pinv * h.K * P};
  const int mm = d.m();
  for (int w = 0; w < 3; ++w) {
    Matrix block = quaternion_block(w);
    for (int i = 0; i < mm; ++i) {
      const int cols[4] = {i, mm + 3 * i, mm + 3 * i + 1, mm + 3 * i + 2};
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          CHECK(mats[w].at(std::size_t(cols[a]), std::size_t(cols[b])) ==
                block.at(std::size_t(a), std::size_t(b)));
    }
  }
}

TEST_CASE("integrability of the structure on chevalley decompositions") {
  for (auto [letter, rank] : {std::pair{'C', 2}, {'A', 2}, {'B', 3}}) {
    CAPTURE(letter);
    CAPTURE(rank);
    JoyceDecomposition d = decompose(letter, rank);
    HypercomplexTriple h =
        hypercomplex_structure(d, Matrix::identity(std::size_t(d.m())));
    CheckReport rep = verify_integrability(h, d.ambient);
    CHECK(rep.ok);
    REQUIRE(rep.failures.empty());
  }
}

TEST_CASE("a corrupted column of I produces a nonzero nijenhuis tensor") {
  JoyceDecomposition d = decompose('C', 2);
  Matrix A = Matrix::identity(2);
  HypercomplexTriple h = hypercomplex_structure(d, A);
  Matrix P = d.adapted_matrix(A);
  Matrix Pinv = *P.inverse();
  Matrix Ia = Pinv * h.I * P;
  // swap the adapted columns of the first two f vectors
  const std::size_t c0 = std::size_t(4 * d.m());
  for (std::size_t r = 0; r < Ia.rows(); ++r)
    std::swap(Ia.at(r, c0), Ia.at(r, c0 + 1));
  HypercomplexTriple bad{P * Ia * Pinv, h.J, h.K};
  CheckReport rep = verify_integrability(bad, d.ambient);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("pool vectors are hyper-holomorphic, layer vectors are not") {
  JoyceDecomposition d = decompose('C', 2);
  HypercomplexTriple h = hypercomplex_structure(d, Matrix::identity(2));
  CheckReport rep = hyperholomorphic_check(d, h);
  CHECK(rep.ok);

  JoyceDecomposition abuse = d;
  abuse.pool[0] = d.layers[0].e2;
  CheckReport bad = hyperholomorphic_check(abuse, h);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("parameter matrix enters only through the e1 images") {
  JoyceDecomposition d = decompose('A', 4);
  HypercomplexTriple h = hypercomplex_structure(d, Matrix::identity(2));
  Matrix scaled(2, 2);
  scaled.at(0, 0) = Rational(3);
  scaled.at(1, 1) = Rational(1, 7);
  HypercomplexTriple hs = hypercomplex_structure(d, scaled);
  Matrix mixed(2, 2);
  mixed.at(0, 1) = 1;
  mixed.at(1, 0) = 1;
  HypercomplexTriple hm = hypercomplex_structure(d, mixed);

  // the f action is ad of the triple and never sees the parameters
  for (const auto& L : d.layers)
    for (const auto& q : L.fs)
      for (const Vec& w : q)
      for (const HypercomplexTriple* o : {&hs, &hm}) {
        CHECK(h.I.apply(w) == o->I.apply(w));
        CHECK(h.J.apply(w) == o->J.apply(w));
        CHECK(h.K.apply(w) == o->K.apply(w));
      }
  // on each triple only the direction sent to the e1 line changes
  for (const auto& L : d.layers)
    for (const HypercomplexTriple* o : {&hs, &hm}) {
      CHECK(h.I.apply(L.e3) == o->I.apply(L.e3));
      CHECK(h.I.apply(L.e4) == o->I.apply(L.e4));
      CHECK(h.J.apply(L.e2) == o->J.apply(L.e2));
      CHECK(h.J.apply(L.e4) == o->J.apply(L.e4));
      CHECK(h.K.apply(L.e2) == o->K.apply(L.e2));
      CHECK(h.K.apply(L.e3) == o->K.apply(L.e3));
    }
  // the defining action I(e1^i) = e2^i pins the rest: rescaling e1^1 by 3
  // divides I on the e2 slot by 3, so the tensors genuinely differ
  CHECK(h.I.apply(d.pool[0]) == d.layers[0].e2);
  CHECK(hs.I.apply(vec_scale(d.pool[0], 3)) == d.layers[0].e2);
  CHECK(h.I != hs.I);
  CHECK(h.I != hm.I);
}

TEST_CASE("rejects singular and misshapen parameter matrices") {
  JoyceDecomposition d = decompose('C', 2);
  Matrix zero(2, 2);
  CHECK_THROWS_AS(hypercomplex_structure(d, zero), std::invalid_argument);
  Matrix wide(2, 3);
  CHECK_THROWS_AS(hypercomplex_structure(d, wide), std::invalid_argument);
  Matrix small = Matrix::identity(1);
  CHECK_THROWS_AS(hypercomplex_structure(d, small), std::invalid_argument);
}

TEST_CASE("rejects a realization whose killing form is indefinite") {
  ChevalleyRealization fake;
  fake.root_system = build_root_system('A', 1);
  LieAlgebra split(3);
  split.set_bracket(0, 1, {{2, Rational(2)}});    // [t, u] = 2 v
  split.set_bracket(0, 2, {{1, Rational(-2)}});   // [t, v] = -2 u
  split.set_bracket(1, 2, {{0, Rational(-2)}});   // [u, v] = -2 t
  REQUIRE(split.verify_jacobi().ok);
  fake.algebra = split;
  fake.cartan_index = {0};
  fake.root_space_index = {{1, 2}};
  CHECK_THROWS_AS(joyce_decompose(fake), std::invalid_argument);
}

TEST_CASE("adapted column bookkeeping and labels") {
  JoyceDecomposition d = decompose('C', 2);
  CHECK(d.column_label(0) == "e1^1");
  CHECK(d.column_label(1) == "e1^2");
  CHECK(d.column_label(2) == "e2^1");
  CHECK(d.column_label(4) == "e4^1");
  CHECK(d.column_label(5) == "e2^2");
  CHECK(d.column_label(8) == "f1^1");
  CHECK(d.column_label(11) == "f4^1");
  CHECK(d.column_info(8) == std::pair{0, BasisRole::f});
  CHECK(d.column_info(7) == std::pair{1, BasisRole::e4});
  CHECK_THROWS_AS(d.column_info(12), std::out_of_range);
  CHECK(d.adapted_matrix().inverse().has_value());
}
