#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilflow/algebra.hpp"
#include "nilflow/constructors.hpp"
#include "nilflow/io.hpp"
#include "oracles.hpp"

using namespace nilflow;

namespace {

Splitting split_builtin(const std::string& name) {
  auto [A, P] = builtin(name);
  return Splitting::make(std::move(A), std::move(P));
}

bool spans_same(const Mat& A, const Mat& B, double tol) {
  if (A.cols() != B.cols()) return false;
  if (A.cols() == 0) return true;
  Mat both(A.rows(), A.cols() + B.cols());
  both << A, B;
  return rank_of(both, tol) == rank_of(A, tol);
}

}  // namespace

TEST_CASE("load_algebra accepts the catalog documents") {
  for (const auto& name : catalog_names()) {
    auto [A0, P0] = builtin(name);
    auto [A, P] = load_algebra(algebra_to_json(A0, P0));
    CHECK(A.dim() == A0.dim());
    CHECK((P.gram - P0.gram).norm() == 0.0);
  }
}

TEST_CASE("load_algebra: heisenberg3 round trip") {
  auto [A0, P0] = builtin("heisenberg3");
  auto [A, P] = load_algebra(algebra_to_json(A0, P0));
  CHECK(A.dim() == 3);
  Vec X = Vec::Unit(3, 0), Y = Vec::Unit(3, 1), Z = Vec::Unit(3, 2);
  CHECK((A.bracket(X, Y) - Z).norm() == 0.0);
}

TEST_CASE("load_algebra rejects so(3): not step-two") {
  const std::string doc = R"({
    "dim": 3, "basis": ["X","Y","Z"],
    "brackets": [
      {"i":0,"j":1,"out":[{"k":2,"c":1.0}]},
      {"i":1,"j":2,"out":[{"k":0,"c":1.0}]},
      {"i":0,"j":2,"out":[{"k":1,"c":-1.0}]}],
    "metric": [[1,0,0],[0,1,0],[0,0,1]]})";
  CHECK_THROWS_WITH_AS(load_algebra(doc), doctest::Contains("E_NOT_STEP2"), Error);
}

TEST_CASE("load_algebra rejects a Jacobi violation") {
  // [e1,e2]=e3 with [e1,e3]=e4, [e2,e3]=0 breaks Jacobi and step-two; the
  // Jacobi check runs first.
  const std::string doc = R"({
    "dim": 4, "basis": ["a","b","c","d"],
    "brackets": [
      {"i":0,"j":1,"out":[{"k":2,"c":1.0}]},
      {"i":0,"j":2,"out":[{"k":3,"c":1.0}]},
      {"i":1,"j":3,"out":[{"k":0,"c":1.0}]}],
    "metric": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]})";
  CHECK_THROWS_WITH_AS(load_algebra(doc), doctest::Contains("E_JACOBI"), Error);
}

TEST_CASE("load_algebra schema errors") {
  CHECK_THROWS_WITH_AS(load_algebra("not json"), doctest::Contains("E_SCHEMA"), Error);
  CHECK_THROWS_WITH_AS(load_algebra(R"({"dim":1,"basis":["e"],"brackets":[],"metric":[[1]],"extra":0})"),
                       doctest::Contains("E_SCHEMA"), Error);
  // i >= j is rejected
  CHECK_THROWS_WITH_AS(
      load_algebra(
          R"({"dim":2,"basis":["a","b"],"brackets":[{"i":1,"j":0,"out":[]}],"metric":[[1,0],[0,1]]})"),
      doctest::Contains("E_SCHEMA"), Error);
  // asymmetric metric
  CHECK_THROWS_WITH_AS(
      load_algebra(R"({"dim":2,"basis":["a","b"],"brackets":[],"metric":[[1,0.1],[0,1]]})"),
      doctest::Contains("E_SCHEMA"), Error);
  // singular metric
  CHECK_THROWS_WITH_AS(
      load_algebra(R"({"dim":2,"basis":["a","b"],"brackets":[],"metric":[[1,0],[0,0]]})"),
      doctest::Contains("E_DEGENERATE"), Error);
}

TEST_CASE("bracket: antisymmetry and cross terms") {
  auto [A, P] = builtin("h3_plus_h3");
  const Vec X1 = Vec::Unit(6, 0), Y2 = Vec::Unit(6, 4), X = Vec::Unit(6, 0);
  CHECK(A.bracket(X, X).norm() == 0.0);
  CHECK(A.bracket(X1, Y2).norm() == 0.0);  // [X1, Y2] = 0
  CHECK_THROWS_AS(A.bracket(Vec::Zero(3), X), Error);
}

TEST_CASE("compute_center on the catalog") {
  auto [h3, p3] = builtin("heisenberg3");
  const Mat Z3 = compute_center(h3, 1e-10);
  CHECK(Z3.cols() == 1);
  CHECK(std::abs(Z3(2, 0)) == 1.0);

  auto abelian = StepTwoAlgebra::from_terms(4, {}, {});
  CHECK(compute_center(abelian, 1e-10).cols() == 4);

  auto [hh, phh] = builtin("h3_plus_h3");
  const Mat Zhh = compute_center(hh, 1e-10);
  CHECK(Zhh.cols() == 2);
  Mat expected(6, 2);
  expected.setZero();
  expected(2, 0) = 1.0;
  expected(5, 1) = 1.0;
  CHECK(spans_same(Zhh, expected, 1e-10));
}

TEST_CASE("orthogonal_split: signatures and degeneracy") {
  auto S = split_builtin("heisenberg3");
  CHECK(S.dim_v() == 2);
  CHECK(S.sig_v() == Signature{2, 0});
  CHECK(S.sig_z() == Signature{1, 0});

  auto [A, _] = builtin("heisenberg3");
  Mat G = Mat::Identity(3, 3);
  G(2, 2) = -1.0;
  auto S2 = Splitting::make(A, ScalarProduct::from_gram(G));
  CHECK(S2.sig_z() == Signature{0, 1});
  CHECK(S2.sig_v() == Signature{2, 0});

  Mat G3 = Mat::Zero(3, 3);
  G3(0, 2) = G3(2, 0) = 1.0;  // <Z,Z> = 0, <Z,X> = 1
  G3(1, 1) = 1.0;
  CHECK_THROWS_WITH_AS(Splitting::make(A, ScalarProduct::from_gram(G3)),
                       doctest::Contains("E_CENTER_DEGENERATE"), Error);
}

TEST_CASE("splitting invariants across the catalog") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    auto S = split_builtin(name);
    CHECK(S.dim_v() + S.dim_z() == S.dim());
    CHECK(S.sig_v().pos + S.sig_z().pos == S.product().sig.pos);
    CHECK(S.sig_v().neg + S.sig_z().neg == S.product().sig.neg);
    // complement is metric-orthogonal to the centre
    const Mat cross = S.complement_basis().transpose() * S.product().gram * S.center_basis();
    CHECK(cross.cwiseAbs().maxCoeff() <= 1e-12);
    // centre vectors commute with everything
    for (int c = 0; c < S.dim_z(); ++c)
      for (int j = 0; j < S.dim(); ++j)
        CHECK(S.algebra().bracket(S.center_basis().col(c), Vec::Unit(S.dim(), j)).norm() <=
              1e-10);
    // [v, v] lands in the centre
    for (int a = 0; a < S.dim_v(); ++a)
      for (int b = a + 1; b < S.dim_v(); ++b) {
        const Vec w = S.algebra().bracket(S.complement_basis().col(a),
                                          S.complement_basis().col(b));
        CHECK((w - S.z_part(w)).norm() <= 1e-10);
      }
  }
}

TEST_CASE("signature_of") {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = -1.0;
  CHECK(signature_of(D, 1e-10) == Signature{1, 1});
  CHECK(signature_of(Mat::Identity(4, 4), 1e-10) == Signature{4, 0});
  Mat O = Mat::Zero(2, 2);
  O(0, 1) = O(1, 0) = 1.0;  // eigenvalues +-1
  CHECK(signature_of(O, 1e-10) == Signature{1, 1});
  CHECK_THROWS_WITH_AS(signature_of(Mat::Zero(2, 2), 1e-10),
                       doctest::Contains("E_DEGENERATE"), Error);
}

TEST_CASE("ad_transpose: closed form on h3 and metivier5") {
  auto S = split_builtin("heisenberg3");
  const Mat M = ad_transpose(S, Vec::Unit(3, 0));  // U = X
  // (ad_X)^T Z = j(Z) X = Y
  CHECK((M * Vec::Unit(3, 2) - Vec::Unit(3, 1)).norm() <= 1e-12);

  // central U gives the zero map
  CHECK(ad_transpose(S, Vec::Unit(3, 2)).cwiseAbs().maxCoeff() <= 1e-12);

  auto S5 = split_builtin("metivier5");
  const Mat M5 = ad_transpose(S5, Vec::Unit(5, 2));  // U = X2
  const Mat J = j_operator(S5, Vec::Unit(5, 4)).matrix;
  const Vec want = S5.from_v(J * S5.v_coords(Vec::Unit(5, 2)));
  CHECK((M5 * Vec::Unit(5, 4) - want).norm() <= 1e-12);
  CHECK(std::abs(want(3)) == 2.0);  // lands on the Y2 axis with weight 2

  CHECK_THROWS_AS(ad_transpose(S, Vec::Zero(5)), Error);
}

TEST_CASE("ad_transpose satisfies its defining relation (property)") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    auto S = split_builtin(name);
    const int d = S.dim();
    for (uint64_t i = 0; i < 24; ++i) {
      auto rng = oracles::rng_for(7, i);
      const Vec U = oracles::gaussian_vector(rng, d);
      const Vec Y = oracles::gaussian_vector(rng, d);
      const Vec W = oracles::gaussian_vector(rng, d);
      const Mat M = ad_transpose(S, U);
      const double lhs = S.inner(M * Y, W);
      const double rhs = S.inner(Y, S.algebra().bracket(U, W));
      const double scale = std::max(1.0, U.norm() * Y.norm() * W.norm());
      CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("step-two: iterated brackets vanish (property)") {
  for (const auto& name : catalog_names()) {
    auto [A, P] = builtin(name);
    for (uint64_t i = 0; i < 8; ++i) {
      auto rng = oracles::rng_for(11, i);
      const Vec X = oracles::gaussian_vector(rng, A.dim());
      const Vec Y = oracles::gaussian_vector(rng, A.dim());
      const Vec W = oracles::gaussian_vector(rng, A.dim());
      CHECK(A.bracket(A.bracket(X, Y), W).norm() <= 1e-12 * X.norm() * Y.norm() * W.norm());
    }
  }
}
