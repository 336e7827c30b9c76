#include <doctest.h>

#include "helpers.hpp"
#include "vorunits/isometry.hpp"
#include "vorunits/short_vectors.hpp"

using namespace vor;
using namespace testing_support;

namespace {

EVec gram_form(const FormChart& ch, std::initializer_list<std::initializer_list<Rational>> g) {
  return ch.from_gram(to_scalar(rows(g)));
}

EVec embedded(const FormChart& chart, const AlgebraData& alg, Scalar a, Scalar b, Scalar c) {
  EMatrix sys(4, alg.dim);
  EVec rhs{a, b, b, c};
  for (int r = 0; r < 2; ++r)
    for (int col = 0; col < 2; ++col)
      for (int k = 0; k < alg.dim; ++k) sys(r * 2 + col, k) = alg.images[k](r, col);
  return chart.coords_of(*solve(sys, rhs));
}

// brute force: all integer 2x2 matrices with entries in [-2,2] preserving the Gram matrix
int brute_force_gl2(const QMatrix& g) {
  int count = 0;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          if (a * d - b * c != 1 && a * d - b * c != -1) continue;
          QMatrix r = rows({{a, b}, {c, d}});
          if (r.transpose() * g * r == g) ++count;
        }
  return count;
}

}  // namespace

TEST_CASE("automorphism groups over Z^n") {
  auto s = gl(2);
  auto& ch = *s.chart;
  CHECK(automorphism_group(ch, ch.trace_form(), false).order() == 8);
  CHECK(brute_force_gl2(rows({{1, 0}, {0, 1}})) == 8);
  CHECK(automorphism_group(ch, gram_form(ch, {{2, 1}, {1, 2}}), false).order() == 12);
  CHECK(brute_force_gl2(rows({{2, 1}, {1, 2}})) == 12);
  CHECK(automorphism_group(ch, gram_form(ch, {{2, 1}, {1, 2}}), true).order() == 6);
  auto t = gl(3);
  auto& c3 = *t.chart;
  CHECK(automorphism_group(c3, gram_form(c3, {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}), false).order() == 48);
}

TEST_CASE("isometry test") {
  auto s = gl(2);
  auto& ch = *s.chart;
  EVec hex = gram_form(ch, {{2, 1}, {1, 2}});
  auto w = isometry_test(ch, hex, hex);
  REQUIRE(w);
  ZMatrix g(2, 2);
  g(0, 0) = 2;
  g(0, 1) = 1;
  g(1, 0) = 1;
  g(1, 1) = 1;
  EVec moved = ch.act(hex, g);
  auto h = isometry_test(ch, moved, hex);
  REQUIRE(h);
  CHECK(ch.act(hex, *h) == moved);
  auto back = isometry_test(ch, hex, moved);
  REQUIRE(back);
  CHECK(ch.act(moved, *back) == hex);
  CHECK_FALSE(isometry_test(ch, hex, ch.trace_form()));
}

TEST_CASE("stabilizers of the (2,3) forms over Q(sqrt 2)") {
  auto s = q23(true);
  auto& ch = *s.chart;
  const auto& alg = s.ar->algebra();
  Scalar r2 = alg.field->generator();
  EVec f1 = embedded(ch, alg, 1, Scalar(2) - r2, 1);
  EVec f2 = embedded(ch, alg, Scalar(6) - Scalar(3) * r2, 2, Scalar(2) + r2);
  EVec f3 = embedded(ch, alg, Scalar(9) - Scalar(3) * r2, 0, Scalar(5) + Scalar(3) * r2);
  CHECK(automorphism_group(ch, f1, false).order() == 2);
  CHECK(automorphism_group(ch, f2, false).order() == 4);
  CHECK(automorphism_group(ch, f3, false).order() == 6);
  CHECK_FALSE(isometry_test(ch, f1, f2));
  CHECK_FALSE(isometry_test(ch, f1, f3));
  CHECK_FALSE(isometry_test(ch, f2, f3));
  for (const auto& f : {f1, f2, f3}) {
    auto g = automorphism_group(ch, f, false);
    for (const auto& e : g.elements()) {
      CHECK(ch.act(f, e) == f);
      CHECK(s.ar->is_unit_rep(e));
    }
  }
}

TEST_CASE("set stabilizer and transporter") {
  auto s = gl(2);
  auto& ch = *s.chart;
  std::vector<IVec> edge{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  CHECK(set_stabilizer(ch, edge, false).order() == 8);
  std::vector<IVec> other{{1, 1}, {-1, -1}, {0, 1}, {0, -1}};
  auto t = set_transporter(ch, edge, other);
  REQUIRE(t);
  for (const auto& x : edge) {
    IVec y = apply_matrix(*t, x);
    CHECK(std::find(other.begin(), other.end(), y) != other.end());
  }
}
