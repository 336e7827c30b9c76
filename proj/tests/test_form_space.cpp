#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "vorunits/short_vectors.hpp"

using namespace vor;
using namespace testing_support;

namespace {

// chart coordinates of the 2x2 matrix m in the transpose model of Q^{2x2}
EVec matrix_form(const FormChart& chart, const std::vector<Scalar>& m) {
  EVec el(4);
  for (int k = 0; k < 4; ++k) el[k] = m[k];
  return chart.coords_of(el);
}

// chart coordinates of a 2x2 matrix over E0 in an embedded model
EVec embedded_form(const FormChart& chart, const AlgebraData& alg, const EMatrix& m) {
  EMatrix sys(4, alg.dim);
  EVec rhs(4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      for (int k = 0; k < alg.dim; ++k) sys(r * 2 + c, k) = alg.images[k](r, c);
      rhs[r * 2 + c] = m(r, c);
    }
  return chart.coords_of(*solve(sys, rhs));
}

}  // namespace

TEST_CASE("rank_one and form_apply in Q^{2x2}") {
  auto s = gl(2);
  const auto& ch = *s.chart;
  CHECK(ch.N() == 3);
  EVec r = ch.rank_one({1, -1});
  CHECK(ch.element_of(r) == EVec{1, -1, -1, 1});
  CHECK(ch.element_of(ch.rank_one({1, 0})) == EVec{1, 0, 0, 0});
  CHECK(ch.element_of(ch.rank_one({0, 0})) == EVec{0, 0, 0, 0});
  CHECK(ch.rank_one({2, 3}) == ch.rank_one({-2, -3}));
  EVec id = ch.trace_form();
  CHECK(ch.value(id, {1, 0}) == Scalar(1));
  CHECK(ch.value(id, {0, 0}) == Scalar(0));
  EVec f = matrix_form(ch, {2, 1, 1, 2});
  CHECK(ch.inner(f, f) == Scalar(10));
  CHECK(ch.inner(matrix_form(ch, {1, 0, 0, 0}), matrix_form(ch, {0, 0, 0, 1})) == Scalar(0));
  CHECK(ch.is_positive_definite(id));
  CHECK_FALSE(ch.is_positive_definite(matrix_form(ch, {1, 0, 0, -1})));
  EMatrix g = gram_of_form(ch, f);
  CHECK(g(0, 0) == Scalar(2));
  CHECK(g(0, 1) == Scalar(1));
  CHECK(g(1, 1) == Scalar(2));
  // value agrees with the inner product against the rank-one form
  for (IVec x : {IVec{1, 2}, IVec{-3, 1}, IVec{0, 5}}) CHECK(ch.value(f, x) == ch.inner(f, ch.rank_one(x)));
}

TEST_CASE("short vectors on Z^2") {
  auto s = gl(2);
  const auto& ch = *s.chart;
  EVec id = ch.trace_form();
  auto mv = minimal_vectors(ch, id);
  CHECK(mv.minimum == Scalar(1));
  CHECK(mv.count() == 4);
  EVec hex = matrix_form(ch, {2, 1, 1, 2});
  auto mh = minimal_vectors(ch, hex);
  CHECK(mh.minimum == Scalar(2));
  CHECK(mh.count() == 6);
  CHECK(short_vectors_up_to(ch, id, Scalar(Rational(1, 2))).count() == 0);
  CHECK(short_vectors_up_to(ch, id, Scalar(2)).count() == 8);
  // values of the hexagonal form are 2, 6, 8, ...: bound 4 keeps the 6 minimal vectors
  CHECK(short_vectors_up_to(ch, hex, Scalar(4)).count() == 6);
  CHECK(short_vectors_up_to(ch, hex, Scalar(6)).count() == 12);
  for (int bound = 1; bound <= 12; ++bound) {
    std::size_t count = 0;
    for (long x = -4; x <= 4; ++x)
      for (long y = -4; y <= 4; ++y)
        if ((x || y) && 2 * x * x + 2 * x * y + 2 * y * y <= bound) ++count;
    CHECK(short_vectors_up_to(ch, hex, Scalar(bound)).count() == count);
  }
}

TEST_CASE("property: minimal vectors agree with exhaustive search") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dist(-3, 3);
  auto s = gl(3);
  const auto& ch = *s.chart;
  int tested = 0;
  while (tested < 40) {
    // random positive form A^T A + I
    QMatrix a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = dist(rng);
    QMatrix g = a.transpose() * a;
    for (int i = 0; i < 3; ++i) g(i, i) += 1;
    EMatrix ge = to_scalar(g);
    EVec f = ch.from_gram(ge);
    auto rep = minimal_vectors(ch, f);
    // box: |x_i| <= sqrt(min * (G^-1)_ii); use a generous fixed box with an exactness check of the bound
    QMatrix ginv = *inverse(g);
    Rational mn = rep.minimum.rational();
    int box = 0;
    for (int i = 0; i < 3; ++i) {
      Rational b = mn * ginv(i, i);
      while (Rational(box * box) < b) ++box;
    }
    std::vector<IVec> found;
    Rational best = -1;
    for (long x = -box; x <= box; ++x)
      for (long y = -box; y <= box; ++y)
        for (long z = -box; z <= box; ++z) {
          if (x == 0 && y == 0 && z == 0) continue;
          IVec v{x, y, z};
          Rational val = ch.value(f, v).rational();
          if (best < 0 || val < best) {
            best = val;
            found.clear();
          }
          if (val == best) found.push_back(v);
        }
    CHECK(best == mn);
    std::sort(found.begin(), found.end());
    CHECK(found == rep.vectors);
    ++tested;
  }
}

TEST_CASE("F1 of the (2,3) example over Q(sqrt 2)") {
  auto s = q23(true);
  const auto& ch = *s.chart;
  const auto& alg = s.ar->algebra();
  Scalar t = alg.field->generator();
  EMatrix f1(2, 2);
  f1(0, 0) = 1;
  f1(0, 1) = Scalar(2) - t;
  f1(1, 0) = Scalar(2) - t;
  f1(1, 1) = 1;
  EVec f = embedded_form(ch, alg, f1);
  CHECK(ch.is_positive_definite(f));
  auto rep = minimal_vectors(ch, f);
  for (const auto& v : rep.values) CHECK(v == rep.minimum);
  CHECK(rep.count() >= 6);
  // rank-one span is the whole chart (F1 is perfect)
  EMatrix span(rep.count(), ch.N());
  for (std::size_t k = 0; k < rep.count(); ++k) {
    EVec r = ch.rank_one(rep.vectors[k]);
    for (int l = 0; l < ch.N(); ++l) span(k, l) = r[l];
  }
  CHECK(rank(span) == 3);
}

TEST_CASE("property: action compatibility") {
  auto s = q23(true);
  const auto& ch = *s.chart;
  const auto& ar = *s.ar;
  // 1 + i is a unit
  ZMatrix r = *to_integer(ar.rep(QVec{1, 1, 0, 0}));
  EVec f = ch.trace_form();
  EVec gf = ch.act(f, r);
  for (IVec x : {IVec{1, 0, 0, 0}, IVec{0, 1, 1, 0}, IVec{2, -1, 0, 3}})
    CHECK(ch.value(gf, x) == ch.value(f, apply_matrix(r, x)));
  // short vectors transform by the inverse
  auto a = minimal_vectors(ch, f);
  auto b = minimal_vectors(ch, gf);
  REQUIRE(a.count() == b.count());
  for (const auto& x : b.vectors) CHECK(std::binary_search(a.vectors.begin(), a.vectors.end(), apply_matrix(r, x)));
}

TEST_CASE("property: minimal vectors survive a skewed basis") {
  // G' = U^T G U for a unimodular U with large entries; the minimal vectors of
  // G' are U^-1 applied to those of G.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 3;
    EMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = Scalar(2);
    for (std::size_t i = 0; i + 1 < n; ++i) g(i, i + 1) = g(i + 1, i) = Scalar(-1);  // A_n: 2n(n+1)/2 minimal vectors
    ZMatrix u = ZMatrix::identity(n);
    for (int step = 0; step < 40; ++step) {
      const std::size_t a = rng() % n, b = rng() % n;
      if (a == b) continue;
      const long c = static_cast<long>(rng() % 7) - 3;
      for (std::size_t r = 0; r < n; ++r) u(r, b) += c * u(r, a);
    }
    EMatrix ue(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ue(i, j) = Scalar(u(i, j));
    EMatrix skew = ue.transpose() * g * ue;
    CAPTURE(trial);
    auto plain = minimal_vectors_gram(g);
    auto skewed = minimal_vectors_gram(skew);
    CHECK(plain.count() == n * (n + 1));
    CHECK(skewed.count() == plain.count());
    CHECK(skewed.minimum == Scalar(2));
    for (const auto& y : skewed.vectors) {
      IVec x(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x[i] += u(i, j).get_si() * y[j];
      CHECK(std::binary_search(plain.vectors.begin(), plain.vectors.end(), x));
    }
  }
}
