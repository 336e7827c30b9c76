#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace vor;
using namespace testing_support;

TEST_CASE("quaternion relations in the split model") {
  auto s = q23(true);
  const auto& alg = s.ar->algebra();
  QVec i = basis_vector(4, 1), j = basis_vector(4, 2), k = basis_vector(4, 3);
  CHECK(multiply(alg, i, j) == k);
  QVec ji = multiply(alg, j, i);
  for (auto& x : ji) x = -x;
  CHECK(ji == k);
  QVec ii = multiply(alg, i, i);
  CHECK(ii == QVec{2, 0, 0, 0});
  CHECK(multiply(alg, j, j) == QVec{3, 0, 0, 0});
}

TEST_CASE("validate_embedding reports N") {
  CHECK(validate_embedding(matrix_algebra(2)).symmetric_dimension == 3);
  CHECK(validate_embedding(matrix_algebra(3)).symmetric_dimension == 6);
  auto r = validate_embedding(quaternion_split(2, 3, true, quadratic(2)));
  CHECK(r.ok);
  CHECK(r.symmetric_dimension == 3);
  auto c = validate_embedding(quaternion_cm(-1, -1, 7));
  CHECK(c.ok);
  CHECK(c.symmetric_dimension == 4);
  auto qm = validate_embedding(quaternion_matrix(-1, -3, 2));
  CHECK(qm.ok);
  CHECK(qm.symmetric_dimension == 6);
}

TEST_CASE("dagger") {
  auto alg = matrix_algebra(2);
  EVec e12 = to_scalar(basis_vector(4, 1));
  CHECK(dagger(alg, e12) == to_scalar(basis_vector(4, 2)));
  EVec one = to_scalar(alg.one);
  CHECK(dagger(alg, one) == one);
}

TEST_CASE("property: associativity and anti-automorphism on random elements") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (auto alg : {quaternion_cm(-1, -1, 7), quaternion_matrix(-1, -3, 2), matrix_algebra(3)}) {
    for (int t = 0; t < 20; ++t) {
      EVec a(alg.dim), b(alg.dim), c(alg.dim);
      for (int k = 0; k < alg.dim; ++k) {
        a[k] = dist(rng);
        b[k] = dist(rng);
        c[k] = dist(rng);
      }
      CHECK(multiply(alg, multiply(alg, a, b), c) == multiply(alg, a, multiply(alg, b, c)));
      CHECK(dagger(alg, multiply(alg, a, b)) == multiply(alg, dagger(alg, b), dagger(alg, a)));
      CHECK(dagger(alg, dagger(alg, a)) == a);
    }
  }
}

TEST_CASE("is_unit") {
  auto s = q23(true);
  auto one = s.ar->is_unit(QVec{1, 0, 0, 0});
  REQUIRE(one);
  CHECK(*one == QVec{1, 0, 0, 0});
  CHECK_FALSE(s.ar->is_unit(QVec{2, 0, 0, 0}));
  CHECK_FALSE(s.ar->is_unit(QVec{0, 1, 0, 0}));
  // 1 + i has norm 1 - 2 = -1, so it is a unit
  auto u = s.ar->is_unit(QVec{1, 1, 0, 0});
  REQUIRE(u);
  CHECK(s.ar->multiply(QVec{1, 1, 0, 0}, *u) == QVec{1, 0, 0, 0});
  s.ar->check_order();
  auto g = gl(2);
  CHECK_FALSE(g.ar->is_unit(QVec{2, 0, 0, 2}));
}

TEST_CASE("non-closed order is rejected") {
  AlgebraData alg = quaternion_split(2, 3, true, quadratic(2));
  const Rational h(1, 2);
  QMatrix bad = rows({{1, 0, 0, 0}, {0, h, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  try {
    Arithmetic ar(alg, bad, bad);
    ar.check_order();
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrderNotClosed);
  }
}

TEST_CASE("centralizer dimensions") {
  CHECK(gl(2).ar->centralizer_basis().size() == 1);
  CHECK(gl(3).ar->centralizer_basis().size() == 1);
  CHECK(q23(true).ar->centralizer_basis().size() == 4);
}
