#include "vorunits/algebra.hpp"

#include <numeric>
#include <sstream>

namespace vor {

namespace {

Integer common_denominator(const QMatrix& m) {
  Integer den = 1;
  for (const auto& q : m.data()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  return den;
}

// Solves a X = b column by column with one elimination; nullopt if inconsistent.
std::optional<EMatrix> solve_many(const EMatrix& a, const EMatrix& b) {
  EMatrix aug(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
  }
  auto piv = rref(aug);
  for (auto p : piv)
    if (p >= a.cols()) return std::nullopt;
  EMatrix x(a.cols(), b.cols());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(r, a.cols() + j);
  return x;
}

struct QuatProduct {
  int index;
  Rational coef;
};

// Basis 1, i, j, k = ij of (a,b / Q).
QuatProduct quat_mult(int p, int q, const Rational& a, const Rational& b) {
  if (p == 0) return {q, 1};
  if (q == 0) return {p, 1};
  static const int idx[3][3] = {{0, 3, 2}, {3, 0, 1}, {2, 1, 0}};
  const Rational coef[3][3] = {{a, 1, a}, {-1, b, -b}, {-a, b, -a * b}};
  return {idx[p - 1][q - 1], coef[p - 1][q - 1]};
}

int quat_conj_sign(int q) { return q == 0 ? 1 : -1; }

AlgebraData blank(int dim) {
  AlgebraData alg;
  alg.dim = dim;
  alg.structure.assign(static_cast<std::size_t>(dim) * dim * dim, Rational(0));
  alg.one.assign(dim, Rational(0));
  alg.field = NumberField::rationals();
  alg.dagger = EMatrix(dim, dim);
  alg.trace.assign(dim, Scalar(0));
  return alg;
}

Rational& sc(AlgebraData& alg, int i, int j, int k) {
  return alg.structure[(i * alg.dim + j) * alg.dim + k];
}

}  // namespace

QVec basis_vector(int dim, int k) {
  QVec v(dim, Rational(0));
  v[k] = 1;
  return v;
}

QVec multiply(const AlgebraData& alg, const QVec& a, const QVec& b) {
  const int d = alg.dim;
  if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d)
    throw Error(ErrorKind::DimensionMismatch, "element length differs from algebra dimension");
  QVec r(d, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (sgn(b[j]) == 0) continue;
      Rational ab = a[i] * b[j];
      const Rational* row = &alg.structure[(i * d + j) * d];
      for (int k = 0; k < d; ++k)
        if (sgn(row[k]) != 0) r[k] += ab * row[k];
    }
  }
  return r;
}

EVec multiply(const AlgebraData& alg, const EVec& a, const EVec& b) {
  const int d = alg.dim;
  if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d)
    throw Error(ErrorKind::DimensionMismatch, "element length differs from algebra dimension");
  EVec r(d, Scalar(0));
  for (int i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      Scalar ab = a[i] * b[j];
      const Rational* row = &alg.structure[(i * d + j) * d];
      for (int k = 0; k < d; ++k)
        if (sgn(row[k]) != 0) r[k] += ab * Scalar(row[k]);
    }
  }
  return r;
}

EVec dagger(const AlgebraData& alg, const EVec& a) { return alg.dagger * a; }

QVec dagger(const AlgebraData& alg, const QVec& a) {
  EVec r = alg.dagger * to_scalar(a);
  QVec out;
  for (const auto& s : r) {
    if (!s.is_rational()) throw Error(ErrorKind::NotInAlgebra, "involution leaves the rational algebra");
    out.push_back(s.rational());
  }
  return out;
}

Scalar trace(const AlgebraData& alg, const EVec& a) { return dot(alg.trace, a); }

QMatrix left_multiplication(const AlgebraData& alg, const QVec& a) {
  const int d = alg.dim;
  QMatrix m(d, d);
  for (int j = 0; j < d; ++j) {
    QVec col = multiply(alg, a, basis_vector(d, j));
    for (int i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

EMatrix left_multiplication(const AlgebraData& alg, const EVec& a) {
  const int d = alg.dim;
  EMatrix m(d, d);
  for (int j = 0; j < d; ++j) {
    EVec e(d, Scalar(0));
    e[j] = 1;
    EVec col = multiply(alg, a, e);
    for (int i = 0; i < d; ++i) m(i, j) = col[i];
  }
  return m;
}

std::optional<EVec> inverse_element(const AlgebraData& alg, const EVec& a) {
  auto x = solve(left_multiplication(alg, a), to_scalar(alg.one));
  if (!x) return std::nullopt;
  if (multiply(alg, *x, a) != to_scalar(alg.one)) return std::nullopt;
  return x;
}

EmbeddingReport validate_embedding(const AlgebraData& alg) {
  EmbeddingReport rep;
  const int d = alg.dim;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    if (rep.failures.size() < 50) rep.failures.push_back(s);
  };
  auto pair = [](const char* what, int i, int j) {
    std::ostringstream os;
    os << what << " at basis pair (" << i << "," << j << ")";
    return os.str();
  };
  if (static_cast<int>(alg.structure.size()) != d * d * d || static_cast<int>(alg.one.size()) != d ||
      alg.dagger.rows() != static_cast<std::size_t>(d) || static_cast<int>(alg.trace.size()) != d) {
    fail("inconsistent dimensions");
    return rep;
  }
  std::vector<QVec> e;
  std::vector<EVec> ee;
  for (int k = 0; k < d; ++k) {
    e.push_back(basis_vector(d, k));
    ee.push_back(to_scalar(e.back()));
  }
  for (int k = 0; k < d; ++k)
    if (multiply(alg, alg.one, e[k]) != e[k] || multiply(alg, e[k], alg.one) != e[k])
      fail(pair("unit law fails", k, k));
  std::vector<std::vector<QVec>> prod(d, std::vector<QVec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prod[i][j] = multiply(alg, e[i], e[j]);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (multiply(alg, prod[i][j], e[k]) != multiply(alg, e[i], prod[j][k]))
          fail(pair("associativity fails", i, j) + " with " + std::to_string(k));
  std::vector<EVec> dag(d);
  for (int k = 0; k < d; ++k) dag[k] = dagger(alg, ee[k]);
  for (int k = 0; k < d; ++k) {
    if (dagger(alg, dag[k]) != ee[k]) fail(pair("dagger is not an involution", k, k));
    if (trace(alg, dag[k]) != alg.trace[k]) fail(pair("trace not dagger invariant", k, k));
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (dagger(alg, to_scalar(prod[i][j])) != multiply(alg, dag[j], dag[i]))
        fail(pair("dagger is not an anti-automorphism", i, j));
  EMatrix gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = trace(alg, multiply(alg, ee[i], dag[j]));
  if (gram != gram.transpose()) fail("trace pairing tr(x y^dagger) is not symmetric");
  else if (!is_positive_definite(gram)) fail("trace pairing tr(x x^dagger) is not positive definite");
  EMatrix fix = alg.dagger - EMatrix::identity(d);
  rep.symmetric_dimension = static_cast<int>(nullspace(fix).size());
  return rep;
}

AlgebraData matrix_algebra(int n) {
  AlgebraData alg = blank(n * n);
  auto id = [n](int r, int c) { return r * n + c; };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      for (int c2 = 0; c2 < n; ++c2) sc(alg, id(r, c), id(c, c2), id(r, c2)) = 1;
      alg.dagger(id(c, r), id(r, c)) = 1;
    }
  for (int r = 0; r < n; ++r) {
    alg.one[id(r, r)] = 1;
    alg.trace[id(r, r)] = 1;
  }
  alg.description = "matrix algebra Q^{" + std::to_string(n) + "x" + std::to_string(n) + "}";
  return alg;
}

AlgebraData quaternion_definite(const Rational& a, const Rational& b) {
  if (sgn(a) >= 0 || sgn(b) >= 0)
    throw Error(ErrorKind::IndefiniteWithoutSplittingData,
                "quaternion algebra is indefinite; supply a splitting field");
  AlgebraData alg = blank(4);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      auto pr = quat_mult(p, q, a, b);
      sc(alg, p, q, pr.index) = pr.coef;
    }
  for (int q = 0; q < 4; ++q) alg.dagger(q, q) = quat_conj_sign(q);
  alg.one[0] = 1;
  alg.trace[0] = 2;
  alg.description = "quaternion algebra (" + a.get_str() + "," + b.get_str() + "/Q)";
  return alg;
}

AlgebraData quaternion_cm(const Rational& a, const Rational& b, const Integer& d) {
  if (sgn(a) >= 0 || sgn(b) >= 0)
    throw Error(ErrorKind::ValidationError, "the CM construction needs a definite quaternion algebra");
  if (d <= 0) throw Error(ErrorKind::ValidationError, "d must be positive for Q(sqrt(-d))");
  AlgebraData alg = blank(8);
  auto id = [](int q, int s) { return 2 * q + s; };
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      auto pr = quat_mult(p, q, a, b);
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
          Rational coef = pr.coef;
          int u = s + t;
          if (u == 2) {
            coef *= Rational(-d);
            u = 0;
          }
          sc(alg, id(p, s), id(q, t), id(pr.index, u)) = coef;
        }
    }
  for (int q = 0; q < 4; ++q)
    for (int s = 0; s < 2; ++s) alg.dagger(id(q, s), id(q, s)) = quat_conj_sign(q) * (s == 0 ? 1 : -1);
  alg.one[0] = 1;
  alg.trace[0] = 4;
  alg.description = "(" + a.get_str() + "," + b.get_str() + "/Q) (x) Q(sqrt(-" + d.get_str() + "))";
  return alg;
}

AlgebraData quaternion_matrix(const Rational& a, const Rational& b, int n) {
  if (sgn(a) >= 0 || sgn(b) >= 0)
    throw Error(ErrorKind::ValidationError, "matrix rings need a definite quaternion algebra");
  AlgebraData alg = blank(4 * n * n);
  auto id = [n](int r, int c, int q) { return (r * n + c) * 4 + q; };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int c2 = 0; c2 < n; ++c2)
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q) {
            auto pr = quat_mult(p, q, a, b);
            sc(alg, id(r, c, p), id(c, c2, q), id(r, c2, pr.index)) = pr.coef;
          }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int q = 0; q < 4; ++q) alg.dagger(id(c, r, q), id(r, c, q)) = quat_conj_sign(q);
  for (int r = 0; r < n; ++r) {
    alg.one[id(r, r, 0)] = 1;
    alg.trace[id(r, r, 0)] = 2;
  }
  alg.description = "(" + a.get_str() + "," + b.get_str() + "/Q)^{" + std::to_string(n) + "x" +
                    std::to_string(n) + "}";
  return alg;
}

AlgebraData embedded_algebra(FieldPtr field, const std::vector<EMatrix>& images) {
  const int d = static_cast<int>(images.size());
  if (d == 0) throw Error(ErrorKind::ValidationError, "no basis images");
  const std::size_t s = images[0].rows();
  for (const auto& m : images)
    if (m.rows() != s || m.cols() != s) throw Error(ErrorKind::DimensionMismatch, "basis images differ in size");
  EMatrix flat(s * s, d);
  for (int k = 0; k < d; ++k)
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) flat(i * s + j, k) = images[k](i, j);
  if (rank(flat) != static_cast<std::size_t>(d))
    throw Error(ErrorKind::ValidationError, "basis images are linearly dependent");

  // Right-hand sides: all products, the identity, and all transposes.
  EMatrix rhs(s * s, d * d + 1 + d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      EMatrix p = images[i] * images[j];
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < s; ++c) rhs(r * s + c, i * d + j) = p(r, c);
    }
  for (std::size_t r = 0; r < s; ++r) rhs(r * s + r, d * d) = 1;
  for (int k = 0; k < d; ++k)
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t c = 0; c < s; ++c) rhs(r * s + c, d * d + 1 + k) = images[k](c, r);
  auto sol = solve_many(flat, rhs);
  if (!sol)
    throw Error(ErrorKind::ValidationError,
                "span of the basis images is not closed under products, identity and transposition");

  AlgebraData alg = blank(d);
  alg.field = std::move(field);
  alg.images = images;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Scalar& v = (*sol)(k, i * d + j);
        if (!v.is_rational())
          throw Error(ErrorKind::ValidationError, "structure constants are not rational");
        sc(alg, i, j, k) = v.rational();
      }
  for (int k = 0; k < d; ++k) {
    const Scalar& v = (*sol)(k, d * d);
    if (!v.is_rational()) throw Error(ErrorKind::ValidationError, "identity is not a rational combination");
    alg.one[k] = v.rational();
    for (int i = 0; i < d; ++i) alg.dagger(i, k) = (*sol)(i, d * d + 1 + k);
    Scalar tr(0);
    for (std::size_t r = 0; r < s; ++r) tr += images[k](r, r);
    alg.trace[k] = tr;
  }
  alg.description = "embedded algebra of dimension " + std::to_string(d);
  return alg;
}

AlgebraData quaternion_split(const Rational& a, const Rational& b, bool split_at_i, FieldPtr field) {
  if (!field || field->degree() != 2)
    throw Error(ErrorKind::IndefiniteWithoutSplittingData, "a real quadratic splitting field is required");
  const Scalar theta = field->generator();
  const Rational sq = split_at_i ? a : b;
  if (sgn(sq) <= 0)
    throw Error(ErrorKind::IndefiniteWithoutSplittingData, "the split generator must have positive square");
  if (theta * theta != Scalar(sq))
    throw Error(ErrorKind::ValidationError, "field generator does not square to " + sq.get_str());
  EMatrix one = EMatrix::identity(2);
  EMatrix diag(2, 2);
  diag(0, 0) = theta;
  diag(1, 1) = -theta;
  EMatrix off(2, 2);
  off(0, 1) = 1;
  off(1, 0) = Scalar(split_at_i ? b : a);
  EMatrix i = split_at_i ? diag : off;
  EMatrix j = split_at_i ? off : diag;
  AlgebraData alg = embedded_algebra(field, {one, i, j, i * j});
  alg.description = "quaternion algebra (" + a.get_str() + "," + b.get_str() + "/Q) split over " +
                    field->describe();
  return alg;
}

QMatrix lattice_basis(const QMatrix& generators) {
  const std::size_t cols = generators.cols();
  Integer den = common_denominator(generators);
  std::vector<ZVec> rows;
  for (std::size_t i = 0; i < generators.rows(); ++i) {
    ZVec r(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      Rational q = generators(i, j) * den;
      r[j] = q.get_num();
    }
    rows.push_back(std::move(r));
  }
  std::vector<ZVec> basis;
  for (std::size_t col = 0; col < cols && !rows.empty(); ++col) {
    // Euclid on column col among remaining rows.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
      if (best == rows.size()) break;
      bool reduced = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[best][j];
        if (rows[i][col] != 0) reduced = false;
      }
      if (reduced) {
        if (rows[best][col] < 0)
          for (auto& x : rows[best]) x = -x;
        basis.push_back(rows[best]);
        rows.erase(rows.begin() + best);
        break;
      }
    }
    std::erase_if(rows, [](const ZVec& r) {
      for (const auto& x : r)
        if (x != 0) return false;
      return true;
    });
  }
  QMatrix out(basis.size(), cols);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Rational q(basis[i][j], den);
      q.canonicalize();
      out(i, j) = q;
    }
  return out;
}

Arithmetic::Arithmetic(AlgebraData alg, QMatrix order_basis, QMatrix lattice_basis)
    : alg_(std::move(alg)), order_(std::move(order_basis)), lattice_(std::move(lattice_basis)) {
  const int d = alg_.dim;
  if (order_.rows() != static_cast<std::size_t>(d) || order_.cols() != static_cast<std::size_t>(d))
    throw Error(ErrorKind::DimensionMismatch, "order basis must be dim x dim");
  auto inv = inverse(order_);
  if (!inv) throw Error(ErrorKind::ValidationError, "order basis does not have full rank");
  order_inv_ = *inv;
  if (!in_order(alg_.one)) throw Error(ErrorKind::OrderNotClosed, "order does not contain 1");

  if (lattice_.cols() != static_cast<std::size_t>(d) || lattice_.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "lattice basis rows must have algebra length");
  m_ = static_cast<int>(lattice_.rows());
  if (d % m_ != 0) throw Error(ErrorKind::ValidationError, "lattice rank does not divide algebra dimension");
  n_ = d / m_;
  QMatrix red = lattice_;
  lat_pivots_ = rref(red);
  if (lat_pivots_.size() != static_cast<std::size_t>(m_))
    throw Error(ErrorKind::ValidationError, "lattice basis is not linearly independent");
  QMatrix sub(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) sub(i, j) = lattice_(i, lat_pivots_[j]);
  lat_sub_inv_ = *inverse(sub);

  for (int k = 0; k < d; ++k) {
    QMatrix r(m_, m_);
    QVec ek = basis_vector(d, k);
    for (int j = 0; j < m_; ++j) {
      QVec img = multiply(ek, lattice_.row(j));
      QVec c = lattice_coords(img);
      for (int i = 0; i < m_; ++i) r(i, j) = c[i];
    }
    basis_reps_.push_back(std::move(r));
  }
  QMatrix phi(m_ * m_, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) phi(i * m_ + j, k) = basis_reps_[k](i, j);
  QMatrix phit = phi.transpose();
  rep_pivots_ = rref(phit);
  if (rep_pivots_.size() != static_cast<std::size_t>(d))
    throw Error(ErrorKind::ValidationError, "A does not act faithfully on L");
  QMatrix psub(d, d);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) psub(r, k) = phi(rep_pivots_[r], k);
  rep_sub_inv_ = *inverse(psub);

  check_order();
  // L must be stable under Lambda.
  for (int i = 0; i < d; ++i) {
    QMatrix r = rep(order_.row(i));
    if (!to_integer(r))
      throw Error(ErrorKind::LatticeNotStable,
                  "order basis element " + std::to_string(i) + " does not preserve the lattice");
  }
}

QMatrix Arithmetic::rep(const QVec& a) const {
  QMatrix r(m_, m_);
  for (int k = 0; k < alg_.dim; ++k) {
    if (sgn(a[k]) == 0) continue;
    const QMatrix& b = basis_reps_[k];
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        if (sgn(b(i, j)) != 0) r(i, j) += a[k] * b(i, j);
  }
  return r;
}

QVec Arithmetic::element(const QMatrix& r) const {
  const int d = alg_.dim;
  QVec rhs(d);
  for (int p = 0; p < d; ++p) rhs[p] = r(rep_pivots_[p] / m_, rep_pivots_[p] % m_);
  QVec a = rep_sub_inv_ * rhs;
  if (rep(a) != r) throw Error(ErrorKind::NotInAlgebra, "matrix is not the image of an algebra element");
  return a;
}

QVec Arithmetic::lattice_coords(const QVec& v) const {
  QVec rhs(m_);
  for (int j = 0; j < m_; ++j) rhs[j] = v[lat_pivots_[j]];
  // v = c L  =>  v[piv] = c Lsub  =>  c = v[piv] Lsub^-1
  QVec c(m_, Rational(0));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) c[i] += rhs[j] * lat_sub_inv_(j, i);
  for (int k = 0; k < alg_.dim; ++k) {
    Rational s = 0;
    for (int i = 0; i < m_; ++i) s += c[i] * lattice_(i, k);
    if (s != v[k]) throw Error(ErrorKind::NotInAlgebra, "vector does not lie in the module V");
  }
  return c;
}

QVec Arithmetic::lattice_vector(const ZVec& c) const {
  QVec v(alg_.dim, Rational(0));
  for (int i = 0; i < m_; ++i) {
    if (c[i] == 0) continue;
    for (int k = 0; k < alg_.dim; ++k) v[k] += Rational(c[i]) * lattice_(i, k);
  }
  return v;
}

std::optional<QVec> Arithmetic::order_coords(const QVec& a) const {
  QVec c(alg_.dim, Rational(0));
  for (int i = 0; i < alg_.dim; ++i)
    for (int j = 0; j < alg_.dim; ++j)
      if (sgn(a[j]) != 0) c[i] += a[j] * order_inv_(j, i);
  return c;
}

bool Arithmetic::in_order(const QVec& a) const {
  auto c = order_coords(a);
  for (const auto& q : *c)
    if (q.get_den() != 1) return false;
  return true;
}

std::optional<QVec> Arithmetic::is_unit(const QVec& a) const {
  if (static_cast<int>(a.size()) != alg_.dim) throw Error(ErrorKind::NotInAlgebra, "wrong element length");
  if (!in_order(a)) return std::nullopt;
  auto x = solve(left_multiplication(alg_, a), alg_.one);
  if (!x) return std::nullopt;
  if (multiply(*x, a) != alg_.one) return std::nullopt;
  if (!in_order(*x)) return std::nullopt;
  return x;
}

bool Arithmetic::is_unit_rep(const ZMatrix& r) const {
  QMatrix rq = to_rational(r);
  QVec a = element(rq);
  if (!in_order(a)) return false;
  auto inv = inverse(rq);
  if (!inv) return false;
  return in_order(element(*inv));
}

const std::vector<QMatrix>& Arithmetic::centralizer_basis() const {
  if (centralizer_) return *centralizer_;
  const int m = m_;
  const int d = alg_.dim;
  QMatrix eq(static_cast<std::size_t>(d) * m * m, static_cast<std::size_t>(m) * m);
  for (int k = 0; k < d; ++k) {
    const QMatrix& r = basis_reps_[k];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::size_t row = (static_cast<std::size_t>(k) * m + i) * m + j;
        // (X R - R X)_{ij} = sum_l X_il R_lj - R_il X_lj
        for (int l = 0; l < m; ++l) {
          eq(row, i * m + l) += r(l, j);
          eq(row, l * m + j) -= r(i, l);
        }
      }
  }
  std::vector<QMatrix> out;
  for (const auto& v : nullspace(eq)) {
    QMatrix x(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) x(i, j) = v[i * m + j];
    out.push_back(std::move(x));
  }
  centralizer_ = std::move(out);
  return *centralizer_;
}

void Arithmetic::check_order() const {
  const int d = alg_.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (!in_order(multiply(order_.row(i), order_.row(j))))
        throw Error(ErrorKind::OrderNotClosed, "product of order basis elements " + std::to_string(i) +
                                                   " and " + std::to_string(j) + " leaves the order");
}

}  // namespace vor
