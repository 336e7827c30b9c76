#include "vorunits/form_space.hpp"

#include <cstdlib>

namespace vor {

ZVec to_z(const IVec& v) {
  ZVec r;
  r.reserve(v.size());
  for (long x : v) r.emplace_back(x);
  return r;
}

IVec to_i(const ZVec& v) {
  IVec r;
  r.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw Error(ErrorKind::Internal, "lattice coordinate exceeds machine range");
    r.push_back(x.get_si());
  }
  return r;
}

IVec apply_matrix(const ZMatrix& r, const IVec& v) {
  ZVec out(r.rows(), Integer(0));
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (v[j] != 0) out[i] += r(i, j) * v[j];
  return to_i(out);
}

namespace {

EVec scalar_unit(int n, int k) {
  EVec v(n, Scalar(0));
  v[k] = 1;
  return v;
}

}  // namespace

FormChart::FormChart(const Arithmetic& ar) : ar_(&ar) {
  const AlgebraData& alg = ar.algebra();
  const int d = alg.dim;
  const int m = ar.m();

  basis_ = nullspace(EMatrix(alg.dagger - EMatrix::identity(d)));
  const int n = static_cast<int>(basis_.size());
  if (n == 0) throw Error(ErrorKind::ChartMismatch, "no symmetric elements");
  EMatrix bm(n, d);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < d; ++i) bm(k, i) = basis_[k][i];
  EMatrix red = bm;
  basis_pivots_ = rref(red);
  EMatrix sub(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) sub(k, j) = bm(k, basis_pivots_[j]);
  basis_sub_inv_ = *inverse(sub);

  // tau(i,j) = tr(e_i e_j)
  EMatrix tau(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) tau(i, j) = trace(alg, multiply(alg, scalar_unit(d, i), scalar_unit(d, j)));
  auto tr_prod = [&](const EVec& a, const EVec& b) {
    Scalar s(0);
    for (int i = 0; i < d; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; j < d; ++j)
        if (!b[j].is_zero() && !tau(i, j).is_zero()) s += a[i] * b[j] * tau(i, j);
    }
    return s;
  };

  for (int i = 0; i < m; ++i) lattice_elems_.push_back(to_scalar(ar.lattice().row(i)));
  std::vector<EVec> ldag;
  for (int j = 0; j < m; ++j) ldag.push_back(dagger(alg, lattice_elems_[j]));
  for (int k = 0; k < n; ++k) {
    EMatrix t(m, m);
    for (int i = 0; i < m; ++i) {
      EVec p = multiply(alg, basis_[k], lattice_elems_[i]);
      for (int j = 0; j < m; ++j) t(i, j) = tr_prod(p, ldag[j]);
    }
    EMatrix g(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(i, j) = (t(i, j) + t(j, i)) / Scalar(2);
    gram_basis_.push_back(std::move(g));
  }

  std::vector<std::pair<int, int>> positions;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) positions.emplace_back(i, j);
  EMatrix pm(n, positions.size());
  for (int k = 0; k < n; ++k)
    for (std::size_t p = 0; p < positions.size(); ++p) pm(k, p) = gram_basis_[k](positions[p].first, positions[p].second);
  EMatrix pred = pm;
  auto piv = rref(pred);
  if (static_cast<int>(piv.size()) != n)
    throw Error(ErrorKind::ChartMismatch, "forms are not determined by their Gram matrices on L");
  EMatrix gsub(n, n);
  for (int r = 0; r < n; ++r) {
    gram_pivots_.push_back(positions[piv[r]]);
    for (int k = 0; k < n; ++k) gsub(r, k) = pm(k, piv[r]);
  }
  gram_sub_inv_ = *inverse(gsub);

  inner_ = EMatrix(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) inner_(k, l) = tr_prod(basis_[k], basis_[l]);
}

EMatrix FormChart::gram(const EVec& f) const {
  const int m = this->m();
  EMatrix g(m, m);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k].is_zero()) continue;
    const EMatrix& b = gram_basis_[k];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (!b(i, j).is_zero()) g(i, j) += f[k] * b(i, j);
  }
  return g;
}

EVec FormChart::pairing_vector(const IVec& x) const {
  const int m = this->m();
  EVec v(N(), Scalar(0));
  for (int k = 0; k < N(); ++k) {
    const EMatrix& b = gram_basis_[k];
    Scalar s(0);
    for (int i = 0; i < m; ++i) {
      if (x[i] == 0) continue;
      if (!b(i, i).is_zero()) s += b(i, i) * Scalar(x[i] * x[i]);
      for (int j = i + 1; j < m; ++j)
        if (x[j] != 0 && !b(i, j).is_zero()) s += b(i, j) * Scalar(2 * x[i] * x[j]);
    }
    v[k] = s;
  }
  return v;
}

Scalar FormChart::value(const EVec& f, const IVec& x) const { return dot(f, pairing_vector(x)); }

EVec FormChart::rank_one(const IVec& x) const {
  const AlgebraData& alg = ar_->algebra();
  EVec xe = to_scalar(ar_->lattice_vector(to_z(x)));
  return coords_of(multiply(alg, xe, dagger(alg, xe)));
}

EVec FormChart::element_of(const EVec& f) const {
  EVec e(ar_->dim(), Scalar(0));
  for (int k = 0; k < N(); ++k)
    if (!f[k].is_zero())
      for (int i = 0; i < ar_->dim(); ++i)
        if (!basis_[k][i].is_zero()) e[i] += f[k] * basis_[k][i];
  return e;
}

EVec FormChart::coords_of(const EVec& sym) const {
  EVec rhs(N());
  for (int j = 0; j < N(); ++j) rhs[j] = sym[basis_pivots_[j]];
  EVec f(N(), Scalar(0));
  for (int k = 0; k < N(); ++k)
    for (int j = 0; j < N(); ++j)
      if (!rhs[j].is_zero()) f[k] += rhs[j] * basis_sub_inv_(j, k);
  if (element_of(f) != sym) throw Error(ErrorKind::ChartMismatch, "element is not symmetric");
  return f;
}

Scalar FormChart::inner(const EVec& f1, const EVec& f2) const { return dot(f1, inner_ * f2); }

bool FormChart::is_positive_definite(const EVec& f) const { return vor::is_positive_definite(gram(f)); }

bool FormChart::is_positive_semidefinite(const EVec& f) const {
  return vor::is_positive_definite(gram(f), true);
}

EVec FormChart::from_gram(const EMatrix& g, bool verify) const {
  EVec rhs(N());
  for (int p = 0; p < N(); ++p) rhs[p] = g(gram_pivots_[p].first, gram_pivots_[p].second);
  EVec f = gram_sub_inv_ * rhs;
  if (verify && gram(f) != g) throw Error(ErrorKind::ChartMismatch, "matrix is not the Gram matrix of a form");
  return f;
}

EVec FormChart::act(const EVec& f, const ZMatrix& r) const {
  EMatrix re = to_scalar(r);
  return from_gram(re.transpose() * gram(f) * re, false);
}

EMatrix FormChart::point_action(const ZMatrix& r) const {
  EMatrix re = to_scalar(r);
  EMatrix rt = re.transpose();
  EMatrix mat(N(), N());
  for (int k = 0; k < N(); ++k) {
    EVec row = from_gram(rt * gram_basis_[k] * re, false);
    for (int l = 0; l < N(); ++l) mat(k, l) = row[l];
  }
  return mat;
}

EVec FormChart::trace_form() const { return coords_of(to_scalar(ar_->algebra().one)); }

namespace {

constexpr long long kResiduePrime = 2305843009213693951LL;  // 2^61 - 1

Integer from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  Integer r = hi * Integer("18446744073709551616") + lo;
  return neg ? Integer(-r) : r;
}

}  // namespace

std::vector<CompiledBilinear> CompiledBilinear::compile(const std::vector<EMatrix>& forms,
                                                        const FieldPtr& field) {
  return compile(forms, field.get());
}

std::vector<CompiledBilinear> CompiledBilinear::compile(const std::vector<EMatrix>& forms,
                                                        const NumberField* field) {
  const int degree = field ? field->degree() : 1;
  Integer den = 1;
  for (const auto& f : forms)
    for (const auto& s : f.data())
      for (const auto& q : s.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  const Integer limit = Integer(1) << 40;
  bool exact = true;
  for (const auto& f : forms)
    for (const auto& x : f.data())
      for (const auto& q : x.coeffs())
        if (abs(Integer(q * den)) >= limit) exact = false;
  const Integer prime(static_cast<long>(kResiduePrime));
  std::vector<CompiledBilinear> out;
  for (const auto& f : forms) {
    CompiledBilinear c;
    c.exact_ = exact;
    c.m_ = static_cast<int>(f.rows());
    c.degree_ = degree;
    c.denominator_ = den;
    c.field_ = degree > 1 ? field : nullptr;
    c.entries_.assign(static_cast<std::size_t>(degree) * c.m_ * c.m_, 0);
    for (int i = 0; i < c.m_; ++i)
      for (int j = 0; j < c.m_; ++j)
        for (int p = 0; p < degree; ++p) {
          Integer z(f(i, j).coeff(p) * den);
          if (!exact) {
            z %= prime;
            if (z < 0) z += prime;
          }
          c.entries_[(static_cast<std::size_t>(p) * c.m_ + i) * c.m_ + j] = z.get_si();
        }
    out.push_back(std::move(c));
  }
  return out;
}

CompiledBilinear::Value CompiledBilinear::eval(const IVec& x, const IVec& y) const {
  Value v(degree_, 0);
  for (int p = 0; p < degree_; ++p) {
    const long long* e = &entries_[static_cast<std::size_t>(p) * m_ * m_];
    __int128 s = 0;
    for (int i = 0; i < m_; ++i) {
      if (x[i] == 0) continue;
      __int128 t = 0;
      for (int j = 0; j < m_; ++j) t += static_cast<__int128>(e[i * m_ + j]) * y[j];
      if (!exact_) t %= kResiduePrime;
      s += t * x[i];
    }
    if (!exact_) {
      s %= kResiduePrime;
      if (s < 0) s += kResiduePrime;
    }
    v[p] = s;
  }
  return v;
}

Scalar CompiledBilinear::to_scalar(const Value& v) const {
  if (!exact_) throw Error(ErrorKind::Internal, "residue values cannot be converted back");
  Scalar::Coeffs c;
  for (int p = 0; p < degree_; ++p) {
    Rational q(from_i128(v[p]), denominator_);
    q.canonicalize();
    c.push_back(q);
  }
  if (degree_ == 1) return Scalar(c[0]);
  return Scalar(field_, c);
}

std::size_t ValueHash::operator()(const CompiledBilinear::Value& v) const {
  std::size_t h = v.size();
  for (auto x : v) {
    h = hash_combine(h, static_cast<std::size_t>(static_cast<unsigned long long>(x)));
    h = hash_combine(h, static_cast<std::size_t>(static_cast<unsigned long long>(x >> 64)));
  }
  return h;
}

}  // namespace vor
