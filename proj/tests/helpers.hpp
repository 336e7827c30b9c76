#pragma once

// Small problem builders shared by the unit tests.

#include <memory>

#include "vorunits/algebra.hpp"
#include "vorunits/form_space.hpp"

namespace testing_support {

using namespace vor;

inline QMatrix rows(std::initializer_list<std::initializer_list<Rational>> r) {
  QMatrix m(r.size(), r.begin()->size());
  std::size_t i = 0;
  for (const auto& row : r) {
    std::size_t j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

struct Setup {
  std::unique_ptr<Arithmetic> ar;
  std::unique_ptr<FormChart> chart;
};

inline Setup make(AlgebraData alg, QMatrix order, QMatrix lattice) {
  Setup s;
  s.ar = std::make_unique<Arithmetic>(std::move(alg), std::move(order), std::move(lattice));
  s.chart = std::make_unique<FormChart>(*s.ar);
  return s;
}

/// Lambda = Z^{n x n} acting on L = Z^n (the first column).
inline Setup gl(int n) {
  AlgebraData alg = matrix_algebra(n);
  QMatrix order = QMatrix::identity(n * n);
  QMatrix lat(n, n * n);
  for (int r = 0; r < n; ++r) lat(r, r * n) = 1;
  return make(std::move(alg), order, lat);
}

inline FieldPtr quadratic(int d) {
  // root of x^2 - d in [1, d]
  return NumberField::make({Integer(-d), 0, 1}, {Rational(1), Rational(d)});
}

inline QMatrix q23_order() {
  const Rational h(1, 2);
  return rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {h, 0, h, h}, {0, h, 0, h}});
}

/// The maximal order of (2,3 / Q), split over Q(sqrt 2) or Q(sqrt 3).
inline Setup q23(bool at_sqrt2) {
  AlgebraData alg = quaternion_split(2, 3, at_sqrt2, quadratic(at_sqrt2 ? 2 : 3));
  return make(std::move(alg), q23_order(), q23_order());
}

/// Hurwitz order tensored with the ring of integers of Q(sqrt -d), d = 3 mod 4.
inline Setup cm(int d) {
  AlgebraData alg = quaternion_cm(-1, -1, d);
  const Rational h(1, 2);
  QMatrix hur = rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {h, h, h, h}});
  QMatrix ok = rows({{1, 0}, {h, h}});
  QMatrix order(8, 8);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 2; ++b)
      for (int q = 0; q < 4; ++q)
        for (int s = 0; s < 2; ++s) order(a * 2 + b, 2 * q + s) = hur(a, q) * ok(b, s);
  return make(std::move(alg), order, order);
}

/// M_2 over the maximal order <1, i, (i+k)/2, (1+j)/2> of (-1,-3 / Q), acting on O^2.
inline Setup quat_matrix() {
  AlgebraData alg = quaternion_matrix(-1, -3, 2);
  const Rational h(1, 2);
  QMatrix o = rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, h, 0, h}, {h, 0, h, 0}});
  QMatrix order(16, 16), lat(8, 16);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) order((r * 2 + c) * 4 + p, (r * 2 + c) * 4 + q) = o(p, q);
  for (int r = 0; r < 2; ++r)
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) lat(r * 4 + p, (r * 2) * 4 + q) = o(p, q);
  return make(std::move(alg), order, lat);
}

}  // namespace testing_support
