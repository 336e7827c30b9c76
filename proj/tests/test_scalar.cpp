#include <doctest.h>

#include <random>

#include "vorunits/scalar.hpp"

using namespace vor;

namespace {

FieldPtr sqrt2() { return NumberField::make({-2, 0, 1}, {Rational(1), Rational(2)}); }

Scalar root(const FieldPtr& f) { return f->generator(); }

}  // namespace

TEST_CASE("make_field") {
  auto q = NumberField::make({-1, 1}, {Rational(1), Rational(1)});
  CHECK(q->degree() == 1);
  auto f = sqrt2();
  CHECK(f->degree() == 2);
  CHECK(std::abs(static_cast<double>(f->approx_root()) - 1.41421356) < 1e-6);
  auto c = NumberField::make({1, -3, 0, 1}, {Rational(3, 2), Rational(8, 5)});
  CHECK(c->degree() == 3);
  CHECK_THROWS_AS(NumberField::make({-4, 0, 1}, {Rational(1), Rational(3)}), Error);
  CHECK_THROWS_AS(NumberField::make({-2, 0, 1}, {Rational(2), Rational(3)}), Error);
  CHECK_THROWS_AS(NumberField::make({-2, 0, 1}, {Rational(-2), Rational(2)}), Error);
  try {
    NumberField::make({-2, 0, 1}, {Rational(-2), Rational(2)});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MultipleRootsInInterval);
  }
  try {
    NumberField::make({-2, 0, 1}, {Rational(2), Rational(3)});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoRootInInterval);
  }
  try {
    NumberField::make({-4, 0, 1}, {Rational(1), Rational(3)});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReduciblePolynomial);
  }
}

TEST_CASE("sign and compare in Q(sqrt 2)") {
  auto f = sqrt2();
  Scalar t = root(f);
  CHECK(sign_of(Scalar(0)) == 0);
  CHECK(sign_of(Scalar(2) - t) == 1);
  CHECK(sign_of(Scalar(1) - t) == -1);
  CHECK(compare(Scalar(3), Scalar(3)) == 0);
  CHECK(compare(t, Scalar(Rational(3, 2))) == -1);
  CHECK(compare(Scalar(2) - t, Scalar(Rational(1, 2))) == 1);
  CHECK(t * t == Scalar(2));
  CHECK((Scalar(1) + t) * (Scalar(-1) + t) == Scalar(1));
  CHECK((Scalar(1) + t).inverse() == t - Scalar(1));
}

TEST_CASE("cubic field arithmetic") {
  auto f = NumberField::make({1, -3, 0, 1}, {Rational(3, 2), Rational(8, 5)});
  Scalar t = root(f);
  CHECK(t * t * t - Scalar(3) * t + Scalar(1) == Scalar(0));
  CHECK(sign_of(t - Scalar(Rational(3, 2))) == 1);
  CHECK(sign_of(t - Scalar(Rational(16, 10))) == -1);
  // other roots: about 0.347 and -1.879; theta^2 - 2 is one of them (about 0.879?)
  Scalar u = t * t - Scalar(2);
  CHECK(u * u * u - Scalar(3) * u + Scalar(1) == Scalar(0));
  CHECK(std::abs(static_cast<double>(u.approx() - (t.approx() * t.approx() - 2))) < 1e-12);
  CHECK(u * u.inverse() == Scalar(1));
}

TEST_CASE("property: rational comparisons agree") {
  for (int a = -6; a <= 6; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = -6; c <= 6; ++c)
        for (int d = 1; d <= 4; ++d) {
          Rational x(a, b), y(c, d);
          x.canonicalize();
          y.canonicalize();
          int expect = x < y ? -1 : (x > y ? 1 : 0);
          CHECK(compare(Scalar(x), Scalar(y)) == expect);
        }
}

TEST_CASE("property: sign is multiplicative") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-20, 20);
  for (auto f : {sqrt2(), NumberField::make({1, -3, 0, 1}, {Rational(3, 2), Rational(8, 5)})}) {
    for (int trial = 0; trial < 300; ++trial) {
      Scalar::Coeffs cx, cy;
      for (int k = 0; k < f->degree(); ++k) {
        cx.push_back(Rational(dist(rng), 1 + std::abs(dist(rng))));
        cy.push_back(Rational(dist(rng), 1 + std::abs(dist(rng))));
      }
      for (auto& q : cx) q.canonicalize();
      for (auto& q : cy) q.canonicalize();
      Scalar x(f.get(), cx), y(f.get(), cy);
      CHECK(sign_of(x * y) == sign_of(x) * sign_of(y));
      CHECK(sign_of(x * x) >= 0);
      CHECK((sign_of(x * x) == 0) == x.is_zero());
      // agreement with floating evaluation when clearly separated from 0
      long double a = x.approx();
      if (std::abs(static_cast<double>(a)) > 1e-9) CHECK(sign_of(x) == (a > 0 ? 1 : -1));
    }
  }
}

TEST_CASE("mixed fields are rejected") {
  auto f = sqrt2();
  auto g = sqrt2();
  CHECK_THROWS_AS(compare(root(f), root(g)), Error);
}
