#include "vorunits/short_vectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace vor {

EMatrix gram_of_form(const FormChart& chart, const EVec& f) {
  EMatrix g = chart.gram(f);
  if (!is_positive_definite(g)) throw Error(ErrorKind::NotPositive, "form is not positive definite");
  return g;
}

namespace {

using Real = long double;

Real ld(const Rational& q) {
  const double hi = q.get_d();
  return static_cast<Real>(hi) + static_cast<Real>(Rational(q - Rational(hi)).get_d());
}

// Approximation to long double precision; plain double coefficients lose too
// much for skewed Gram matrices with large entries.
Real approx(const Scalar& s) {
  if (s.is_zero()) return 0;
  const Real t = s.field() ? s.field()->approx_root() : 0;
  Real acc = 0;
  for (std::size_t k = s.coeffs().size(); k-- > 0;) acc = acc * t + ld(s.coeffs()[k]);
  return acc;
}

using RealMatrix = std::vector<std::vector<Real>>;

RealMatrix approx(const EMatrix& g) {
  RealMatrix out(g.rows(), std::vector<Real>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out[i][j] = approx(g(i, j));
  return out;
}

// LLL in floating point on a Gram matrix. Only the transformation is kept: it
// is integral and unimodular whatever the rounding, and the caller recomputes
// the reduced Gram matrix exactly. Columns of U are the new basis vectors.
std::vector<std::vector<long>> lll_transform(const RealMatrix& g0) {
  const int n = static_cast<int>(g0.size());
  std::vector<std::vector<long>> u(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  auto current = [&]() {
    RealMatrix tmp(n, std::vector<Real>(n, 0)), g(n, std::vector<Real>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (u[k][j] != 0) tmp[i][j] += g0[i][k] * static_cast<Real>(u[k][j]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (u[k][i] != 0) g[i][j] += static_cast<Real>(u[k][i]) * tmp[k][j];
    return g;
  };
  const Real delta = 0.99L;
  int k = 1;
  for (int iter = 0; k < n && iter < 100000; ++iter) {
    RealMatrix g = current();
    // Gram-Schmidt coefficients from the Gram matrix
    RealMatrix mu(n, std::vector<Real>(n, 0));
    std::vector<Real> b(n, 0);
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j < i; ++j) {
        Real s = g[i][j];
        for (int l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * b[l];
        mu[i][j] = s / b[j];
      }
      Real s = g[i][i];
      for (int l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * b[l];
      b[i] = s;
    }
    bool reduced = false;
    for (int j = k - 1; j >= 0; --j) {
      const long q = std::lround(mu[k][j]);
      if (q == 0) continue;
      for (int r = 0; r < n; ++r) u[r][k] -= q * u[r][j];
      for (int l = 0; l < j; ++l) mu[k][l] -= static_cast<Real>(q) * mu[j][l];
      mu[k][j] -= static_cast<Real>(q);
      reduced = true;
    }
    if (reduced) {
      // recompute b[k] from the updated vector
      g = current();
      Real s = g[k][k];
      for (int l = 0; l < k; ++l) s -= mu[k][l] * mu[k][l] * b[l];
      b[k] = s;
    }
    if (b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
      for (int r = 0; r < n; ++r) std::swap(u[r][k], u[r][k - 1]);
      k = std::max(k - 1, 1);
    } else {
      ++k;
    }
  }
  return u;
}

struct Reduced {
  EMatrix gram;  // exact U^T G U
  std::vector<std::vector<long>> u;

  IVec lift(const IVec& y) const {
    IVec x(y.size(), 0);
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) x[i] += u[i][j] * y[j];
    return x;
  }
};

Reduced reduce(const EMatrix& gram) {
  Reduced r;
  r.u = lll_transform(approx(gram));
  const std::size_t n = gram.rows();
  EMatrix ue(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ue(i, j) = Scalar(r.u[i][j]);
  r.gram = ue.transpose() * gram * ue;
  return r;
}

// Fincke-Pohst enumeration of all nonzero x with Q(x) <= bound (approximately,
// with slack), where Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
class Enumerator {
 public:
  Enumerator(const EMatrix& gram, Real bound, std::size_t cap, bool shrink)
      : m_(static_cast<int>(gram.rows())), cap_(cap), shrink_(shrink) {
    q_.assign(m_, std::vector<Real>(m_, 0));
    const RealMatrix g = approx(gram);
    for (int i = 0; i < m_; ++i) {
      Real d = g[i][i];
      for (int k = 0; k < i; ++k) d -= q_[k][k] * q_[k][i] * q_[k][i];
      if (!(d > 0)) throw Error(ErrorKind::NotPositive, "Gram matrix is not numerically positive definite");
      q_[i][i] = d;
      for (int j = i + 1; j < m_; ++j) {
        Real s = g[i][j];
        for (int k = 0; k < i; ++k) s -= q_[k][k] * q_[k][i] * q_[k][j];
        q_[i][j] = s / d;
      }
    }
    bound_ = bound * (1 + 1e-9L) + 1e-12L;
    x_.assign(m_, 0);
  }

  /// Candidates with their approximate values; with shrink, only those near the smallest value.
  std::vector<std::pair<IVec, Real>> run() {
    recurse(m_ - 1, 0);
    if (shrink_) {
      std::vector<std::pair<IVec, Real>> keep;
      for (auto& c : out_)
        if (c.second <= slack(best_)) keep.push_back(std::move(c));
      return keep;
    }
    return std::move(out_);
  }

 private:
  // used = contribution of the coordinates above i
  void recurse(int i, Real used) {
    Real c = 0;
    for (int j = i + 1; j < m_; ++j) c -= q_[i][j] * static_cast<Real>(x_[j]);
    Real r = std::sqrt(std::max<Real>(bound_ - used, 0) / q_[i][i]) + 1e-9L;
    long lo = static_cast<long>(std::ceil(c - r));
    long hi = static_cast<long>(std::floor(c + r));
    for (long v = lo; v <= hi; ++v) {
      Real t = static_cast<Real>(v) - c;
      Real now = used + q_[i][i] * t * t;
      if (now > bound_ + 1e-9L * (1 + bound_)) continue;
      x_[i] = v;
      if (i == 0) {
        bool zero = std::all_of(x_.begin(), x_.end(), [](long a) { return a == 0; });
        if (!zero) {
          if (shrink_ && now < best_) {
            best_ = now;
            bound_ = std::min(bound_, slack(now));
          }
          out_.emplace_back(x_, now);
          if (out_.size() > cap_)
            throw Error(ErrorKind::BudgetExceeded, "short vector enumeration exceeded its cap");
        }
      } else {
        recurse(i - 1, now);
      }
    }
    x_[i] = 0;
  }

  static Real slack(Real v) { return v * (1 + 1e-9L) + 1e-12L; }

  int m_;
  std::size_t cap_;
  bool shrink_;
  Real best_ = std::numeric_limits<Real>::infinity();
  std::vector<std::vector<Real>> q_;
  Real bound_ = 0;
  IVec x_;
  std::vector<std::pair<IVec, Real>> out_;
};

void sort_report(ShortVectorReport& rep) {
  std::vector<std::size_t> idx(rep.vectors.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rep.vectors[a] < rep.vectors[b]; });
  ShortVectorReport out;
  out.minimum = rep.minimum;
  for (auto k : idx) {
    out.vectors.push_back(std::move(rep.vectors[k]));
    out.values.push_back(std::move(rep.values[k]));
  }
  rep = std::move(out);
}

}  // namespace

namespace {

const NumberField* field_of(const EMatrix& gram) {
  for (const auto& s : gram.data())
    if (s.field()) return s.field();
  return nullptr;
}

ShortVectorReport exact_report(const EMatrix& gram, std::vector<std::pair<IVec, long double>>& cands,
                               const Scalar& bound, bool strict, bool minimal_only) {
  ShortVectorReport rep;
  std::optional<CompiledBilinear> compiled;
  try {
    compiled = CompiledBilinear::compile({gram}, field_of(gram)).front();
    if (!compiled->exact()) compiled.reset();
  } catch (const Error&) {
  }
  std::unordered_map<CompiledBilinear::Value, Scalar, ValueHash> cache;
  auto exact = [&](const IVec& x) -> Scalar {
    if (compiled) {
      auto key = compiled->eval(x, x);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, compiled->to_scalar(key)).first;
      return it->second;
    }
    Scalar v(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      v += gram(i, i) * Scalar(x[i] * x[i]);
      for (std::size_t j = i + 1; j < x.size(); ++j)
        if (x[j] != 0) v += gram(i, j) * Scalar(2 * x[i] * x[j]);
    }
    return v;
  };
  bool have_min = false;
  for (auto& [x, approx] : cands) {
    Scalar v = exact(x);
    int c = compare(v, bound);
    if (c > 0 || (strict && c == 0)) continue;
    if (!have_min || v < rep.minimum) {
      rep.minimum = v;
      have_min = true;
    }
    rep.vectors.push_back(std::move(x));
    rep.values.push_back(std::move(v));
  }
  if (minimal_only) {
    ShortVectorReport keep;
    keep.minimum = rep.minimum;
    for (std::size_t k = 0; k < rep.vectors.size(); ++k)
      if (rep.values[k] == rep.minimum) {
        keep.vectors.push_back(std::move(rep.vectors[k]));
        keep.values.push_back(rep.values[k]);
      }
    rep = std::move(keep);
  }
  sort_report(rep);
  return rep;
}

}  // namespace

ShortVectorReport short_vectors_gram(const EMatrix& gram, const Scalar& bound, bool strict, std::size_t cap) {
  if (bound.sign() <= 0) return {};
  const Reduced red = reduce(gram);
  Enumerator en(red.gram, approx(bound), cap, false);
  auto cands = en.run();
  for (auto& c : cands) c.first = red.lift(c.first);
  return exact_report(gram, cands, bound, strict, false);
}

ShortVectorReport minimal_vectors_gram(const EMatrix& gram) {
  const Reduced red = reduce(gram);
  // The smallest diagonal entry bounds the minimum from above.
  Scalar bound = red.gram(0, 0);
  for (std::size_t i = 1; i < gram.rows(); ++i)
    if (red.gram(i, i) < bound) bound = red.gram(i, i);
  Enumerator en(red.gram, approx(bound), 20'000'000, true);
  auto cands = en.run();
  for (auto& c : cands) c.first = red.lift(c.first);
  return exact_report(gram, cands, bound, false, true);
}

ShortVectorReport minimal_vectors(const FormChart& chart, const EVec& f) {
  return minimal_vectors_gram(gram_of_form(chart, f));
}

ShortVectorReport short_vectors_up_to(const FormChart& chart, const EVec& f, const Scalar& bound) {
  return short_vectors_gram(gram_of_form(chart, f), bound);
}

}  // namespace vor
