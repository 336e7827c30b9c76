#include "vorunits/linalg.hpp"

#include <algorithm>

namespace vor {

EMatrix to_scalar(const QMatrix& m) {
  EMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Scalar(m(i, j));
  return r;
}

EMatrix to_scalar(const ZMatrix& m) {
  EMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Scalar(m(i, j));
  return r;
}

EVec to_scalar(const QVec& v) {
  EVec r;
  r.reserve(v.size());
  for (const auto& q : v) r.emplace_back(q);
  return r;
}

QMatrix to_rational(const EMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_rational()) throw Error(ErrorKind::NotInAlgebra, "irrational entry");
      r(i, j) = m(i, j).rational();
    }
  return r;
}

std::optional<ZMatrix> to_integer(const QMatrix& m) {
  ZMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

QMatrix to_rational(const ZMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

std::vector<Integer> smith_diagonal(ZMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Pick the smallest nonzero entry in the remaining block as pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (!found || abs(m(i, j)) < abs(m(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(t, j), m(pi, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, pj));
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) {
          clean = false;
          for (std::size_t j = 0; j < cols; ++j) std::swap(m(t, j), m(i, j));
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) {
          clean = false;
          for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, j));
        }
      }
      if (!clean) continue;
      // Divisibility: fold in any entry of the block not divisible by the pivot.
      bool fixed = true;
      for (std::size_t i = t + 1; i < rows && fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            for (std::size_t k = t; k < cols; ++k) m(t, k) += m(i, k);
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (m(t, t) < 0) m(t, t) = -m(t, t);
  }
  std::vector<Integer> d;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) d.push_back(k < t ? m(k, k) : Integer(0));
  return d;
}

}  // namespace vor
