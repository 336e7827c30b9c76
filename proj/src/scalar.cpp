#include "vorunits/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace vor {

// ---------------------------------------------------------------------------
// Polynomials over Q

void trim(RationalPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int poly_degree(const RationalPoly& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (sgn(p[k]) != 0) return k;
  return -1;
}

Rational poly_eval(const RationalPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPoly poly_rem(RationalPoly a, const RationalPoly& b) {
  trim(a);
  const int db = poly_degree(b);
  if (db < 0) throw Error(ErrorKind::Internal, "polynomial division by zero");
  while (poly_degree(a) >= db) {
    const int da = poly_degree(a);
    Rational f = a[da] / b[db];
    for (int k = 0; k <= db; ++k) a[da - db + k] -= f * b[k];
    a[da] = 0;
    trim(a);
  }
  return a;
}

RationalPoly poly_derivative(const RationalPoly& p) {
  RationalPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

namespace {

int sign_variations(const std::vector<RationalPoly>& chain, const Rational& x) {
  int last = 0;
  int count = 0;
  for (const auto& p : chain) {
    int s = sgn(poly_eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int sturm_count(const RationalPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<RationalPoly> chain{p, poly_derivative(p)};
  trim(chain[0]);
  while (poly_degree(chain.back()) > 0) {
    RationalPoly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

namespace {

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

Integer int_eval(const std::vector<Integer>& p, const Integer& x) {
  Integer acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Exact division test of integer polynomials (divisor monic).
bool divides_monic(const std::vector<Integer>& f, const std::vector<Integer>& g) {
  std::vector<Integer> a = f;
  const int dg = static_cast<int>(g.size()) - 1;
  for (int k = static_cast<int>(a.size()) - 1; k >= dg; --k) {
    Integer q = a[k];
    if (q == 0) continue;
    for (int j = 0; j <= dg; ++j) a[k - dg + j] -= q * g[j];
  }
  for (int k = 0; k < dg; ++k)
    if (a[k] != 0) return false;
  return true;
}

}  // namespace

bool is_irreducible_over_q(const std::vector<Integer>& f) {
  const int deg = static_cast<int>(f.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  if (f[0] == 0) return false;
  // Integer roots (monic, so rational roots are integral and divide f(0)).
  for (const auto& d : divisors(f[0])) {
    if (int_eval(f, d) == 0 || int_eval(f, Integer(-d)) == 0) return false;
  }
  if (deg <= 3) return true;
  // Kronecker: look for monic factors of degree 2..deg/2 by interpolation.
  for (int k = 2; k <= deg / 2; ++k) {
    std::vector<Integer> points;
    std::vector<std::vector<Integer>> values;
    for (long a = 0; static_cast<int>(points.size()) < k + 1; a = (a <= 0 ? 1 - a : -a)) {
      Integer fa = int_eval(f, Integer(a));
      points.emplace_back(a);
      std::vector<Integer> ds;
      for (const auto& d : divisors(fa)) {
        ds.push_back(d);
        ds.push_back(-d);
      }
      values.push_back(std::move(ds));
    }
    std::size_t combos = 1;
    for (const auto& v : values) {
      combos *= v.size();
      if (combos > 5'000'000)
        throw Error(ErrorKind::ReduciblePolynomial,
                    "irreducibility test inconclusive (coefficients too large)");
    }
    std::vector<std::size_t> idx(k + 1, 0);
    while (true) {
      // Lagrange interpolation through (points[i], values[i][idx[i]]).
      RationalPoly g(k + 1, Rational(0));
      for (int i = 0; i <= k; ++i) {
        RationalPoly basis{Rational(1)};
        Rational denom = 1;
        for (int j = 0; j <= k; ++j) {
          if (j == i) continue;
          RationalPoly next(basis.size() + 1, Rational(0));
          for (std::size_t t = 0; t < basis.size(); ++t) {
            next[t + 1] += basis[t];
            next[t] -= basis[t] * Rational(points[j]);
          }
          basis = std::move(next);
          denom *= Rational(points[i] - points[j]);
        }
        Rational yi(values[i][idx[i]]);
        for (int t = 0; t <= k; ++t) g[t] += basis[t] * yi / denom;
      }
      if (g[k] == 1) {
        bool integral = true;
        std::vector<Integer> gi;
        for (auto& c : g) {
          c.canonicalize();
          if (c.get_den() != 1) {
            integral = false;
            break;
          }
          gi.push_back(c.get_num());
        }
        if (integral && divides_monic(f, gi)) return false;
      }
      int pos = 0;
      while (pos <= k && ++idx[pos] == values[pos].size()) idx[pos++] = 0;
      if (pos > k) break;
    }
  }
  return true;
}

std::vector<Integer> parse_integer_poly(const std::string& text) {
  std::map<int, Integer> terms;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
    if (i < s.size() && s[i] == '*') ++i;
    Integer coef = digits.empty() ? Integer(1) : Integer(digits);
    int power = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string pd;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) pd.push_back(s[i++]);
        if (pd.empty()) throw Error(ErrorKind::ParseError, "bad exponent in '" + text + "'");
        power = std::stoi(pd);
      }
    } else if (digits.empty()) {
      throw Error(ErrorKind::ParseError, "cannot parse polynomial '" + text + "'");
    }
    terms[power] += sign * coef;
    if (i < s.size() && s[i] != '+' && s[i] != '-')
      throw Error(ErrorKind::ParseError, "unexpected character in '" + text + "'");
  }
  std::vector<Integer> out(terms.rbegin()->first + 1, Integer(0));
  for (auto& [p, c] : terms) out[p] = c;
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      bool neg = s[0] == '-';
      std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
      dot = body.find('.');
      std::string ip = body.substr(0, dot);
      std::string fp = body.substr(dot + 1);
      if (ip.empty()) ip = "0";
      Integer num(ip + fp);
      Integer den = 1;
      for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
      Rational q(num, den);
      q.canonicalize();
      return neg ? Rational(-q) : q;
    }
    if (s[0] == '+') s = s.substr(1);
    Rational q(s);
    q.canonicalize();
    if (q.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "cannot parse rational '" + text + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// NumberField

namespace {

RationalPoly to_rational_poly(const std::vector<Integer>& p) {
  RationalPoly out;
  for (const auto& c : p) out.emplace_back(c);
  return out;
}

RationalInterval bisect_to(const RationalPoly& f, RationalInterval iv, const Rational& width) {
  int slo = sgn(poly_eval(f, iv.lo));
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = sgn(poly_eval(f, mid));
    if (sm == 0) return {mid, mid};
    if (sm == slo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

Rational pow2_neg(int bits) {
  Rational w(1);
  mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), bits);
  return w;
}

}  // namespace

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const auto q = make({Integer(-1), Integer(1)}, {Rational(1), Rational(1)});
  return q;
}

std::shared_ptr<const NumberField> NumberField::make(std::vector<Integer> minpoly,
                                                     RationalInterval interval) {
  while (minpoly.size() > 1 && minpoly.back() == 0) minpoly.pop_back();
  if (minpoly.size() < 2 || minpoly.back() != 1)
    throw Error(ErrorKind::ValidationError, "minimal polynomial must be monic of degree >= 1");
  if (interval.lo > interval.hi) std::swap(interval.lo, interval.hi);
  if (!is_irreducible_over_q(minpoly))
    throw Error(ErrorKind::ReduciblePolynomial, "polynomial is reducible over Q");

  auto field = std::shared_ptr<NumberField>(new NumberField());
  field->degree_ = static_cast<int>(minpoly.size()) - 1;
  field->minpoly_ = minpoly;
  field->interval_ = interval;
  const RationalPoly f = to_rational_poly(minpoly);

  if (field->degree_ == 1) {
    Rational root = -Rational(minpoly[0]);
    if (root < interval.lo || root > interval.hi)
      throw Error(ErrorKind::NoRootInInterval, "root " + root.get_str() + " outside interval");
    field->sharp_ = {root, root};
    field->root_approx_ = root.get_d();
    return field;
  }

  if (interval.lo == interval.hi)
    throw Error(ErrorKind::NoRootInInterval, "degenerate interval cannot hold an irrational root");
  // Rational endpoints are never roots of an irreducible polynomial of degree >= 2.
  const int roots = sturm_count(f, interval.lo, interval.hi);
  if (roots == 0) throw Error(ErrorKind::NoRootInInterval, "interval contains no real root");
  if (roots > 1) throw Error(ErrorKind::MultipleRootsInInterval, "interval contains several roots");

  field->sharp_ = bisect_to(f, interval, pow2_neg(96));
  {
    Rational mid = (field->sharp_.lo + field->sharp_.hi) / 2;
    double hi = mid.get_d();
    Rational rest = mid - Rational(hi);
    field->root_approx_ = static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
  }

  const int d = field->degree_;
  // theta^d = -(a_0 + ... + a_{d-1} theta^{d-1}); build theta^k for k < 2d-1.
  std::vector<Rational> cur(d);
  for (int k = 0; k < d; ++k) cur[k] = -Rational(minpoly[k]);
  field->powers_.push_back(cur);
  for (int k = d + 1; k < 2 * d - 1; ++k) {
    std::vector<Rational> next(d, Rational(0));
    for (int j = 0; j + 1 < d; ++j) next[j + 1] = cur[j];
    const Rational top = cur[d - 1];
    for (int j = 0; j < d; ++j) next[j] -= top * Rational(minpoly[j]);
    cur = std::move(next);
    field->powers_.push_back(cur);
  }

  if (d == 2) {
    field->quad_p_ = Rational(minpoly[1]);
    field->quad_disc_ = Rational(minpoly[1] * minpoly[1] - 4 * minpoly[0]);
    // theta + p/2 = eps * sqrt(disc)/2; the sign is fixed by the sharp interval.
    Rational centre = -field->quad_p_ / 2;
    RationalInterval iv = field->sharp_;
    while (iv.lo <= centre && centre <= iv.hi) iv = bisect_to(f, iv, (iv.hi - iv.lo) / 4);
    field->quad_eps_ = iv.lo > centre ? 1 : -1;
  }
  return field;
}

Scalar NumberField::generator() const {
  if (degree_ == 1) return Scalar(sharp_.lo);
  Scalar::Coeffs c{Rational(0), Rational(1)};
  return Scalar(this, c);
}

RationalInterval NumberField::refined_interval(int bits) const {
  if (degree_ == 1) return sharp_;
  return bisect_to(to_rational_poly(minpoly_), sharp_, pow2_neg(bits));
}

int NumberField::sign_of(const Rational* c, std::size_t n) const {
  if (n == 0) return 0;
  if (n == 1) return sgn(c[0]);
  if (degree_ == 2) {
    // a + b*theta = (a - b p/2) + (eps b / 2) sqrt(disc)
    Rational u = c[0] - c[1] * quad_p_ / 2;
    Rational w = c[1] * quad_eps_ / 2;
    int su = sgn(u);
    int sw = sgn(w);
    if (su >= 0 && sw >= 0) return (su > 0 || sw > 0) ? 1 : 0;
    if (su <= 0 && sw <= 0) return -1;
    Rational diff = u * u - w * w * quad_disc_;
    return su > 0 ? sgn(diff) : -sgn(diff);
  }
  // Interval Horner evaluation, refining until zero is excluded. The value is
  // nonzero because the minimal polynomial is irreducible and n <= degree.
  RationalInterval iv = sharp_;
  for (int bits = 96;; bits *= 2) {
    Rational lo = c[n - 1];
    Rational hi = c[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
      Rational p1 = lo * iv.lo, p2 = lo * iv.hi, p3 = hi * iv.lo, p4 = hi * iv.hi;
      lo = std::min({p1, p2, p3, p4});
      hi = std::max({p1, p2, p3, p4});
      lo += c[k];
      hi += c[k];
    }
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
    iv = refined_interval(bits * 2);
  }
}

std::string NumberField::describe() const {
  std::ostringstream os;
  bool first = true;
  for (int k = degree_; k >= 0; --k) {
    const Integer& c = minpoly_[k];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? "+" : "-");
    else if (c < 0) os << "-";
    Integer a = abs(c);
    if (a != 1 || k == 0) os << a.get_str();
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  os << " [" << interval_.lo.get_str() << "," << interval_.hi.get_str() << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const NumberField* field, Coeffs coeffs) : field_(field), c_(std::move(coeffs)) {
  if (field_ && static_cast<int>(c_.size()) > field_->degree())
    throw Error(ErrorKind::DimensionMismatch, "too many coefficients for field degree");
  if (field_ && field_->degree() == 1) field_ = nullptr;
  normalize();
}

void Scalar::normalize() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

const NumberField* Scalar::join(const NumberField* a, const NumberField* b) {
  if (!a) return b;
  if (!b || a == b) return a;
  throw Error(ErrorKind::FieldMismatch, "scalars from different number fields");
}

Rational Scalar::rational() const {
  if (c_.size() > 1) throw Error(ErrorKind::Internal, "scalar is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

int Scalar::sign() const {
  if (c_.size() <= 1) return c_.empty() ? 0 : sgn(c_[0]);
  return field_->sign_of(c_.data(), c_.size());
}

long double Scalar::approx() const {
  if (c_.empty()) return 0;
  const long double t = field_ ? field_->approx_root() : 0;
  long double acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + static_cast<long double>(c_[k].get_d());
  return acc;
}

std::size_t hash_integer(const Integer& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) + 7;
  const std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i)
    h = hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
  return h;
}

std::size_t hash_rational(const Rational& q) {
  return hash_combine(hash_integer(q.get_num()), hash_integer(q.get_den()));
}

std::size_t Scalar::hash() const {
  std::size_t h = c_.size();
  for (const auto& q : c_) h = hash_combine(h, hash_rational(q));
  return h;
}

std::string Scalar::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (sgn(c_[k]) == 0) continue;
    std::string s = c_[k].get_str();
    if (!first && s[0] != '-') os << "+";
    if (k == 0) {
      os << s;
    } else {
      if (s == "1") s = "";
      else if (s == "-1") s = "-";
      else s += "*";
      os << s << "t";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  field_ = join(field_, o.field_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  field_ = join(field_, o.field_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  normalize();
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  r.field_ = Scalar::join(a.field_, b.field_);
  if (a.c_.empty() || b.c_.empty()) return Scalar{};
  if (a.c_.size() == 1 || b.c_.size() == 1) {
    const Scalar& s = a.c_.size() == 1 ? a : b;
    const Scalar& v = a.c_.size() == 1 ? b : a;
    r.c_.reserve(v.c_.size());
    for (const auto& q : v.c_) r.c_.push_back(q * s.c_[0]);
    r.normalize();
    return r;
  }
  const std::size_t n = a.c_.size() + b.c_.size() - 1;
  std::vector<Rational> prod(n, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
  const int d = r.field_->degree();
  const auto& table = r.field_->reduction_table();
  r.c_.assign(std::min<std::size_t>(n, d), Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    if (static_cast<int>(k) < d) {
      r.c_[k] += prod[k];
    } else if (sgn(prod[k]) != 0) {
      const auto& row = table[k - d];
      for (int j = 0; j < d; ++j) r.c_[j] += prod[k] * row[j];
    }
  }
  r.normalize();
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
  if (c_.empty()) throw Error(ErrorKind::Internal, "division by zero");
  if (c_.size() == 1) return Scalar(Rational(1 / c_[0]));
  // Solve (x * theta^j) coordinates: M y = e_0 for y = x^{-1}.
  const int d = field_->degree();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
  Scalar basis(field_, Coeffs{Rational(1)});
  const Scalar theta = field_->generator();
  for (int j = 0; j < d; ++j) {
    Scalar col = *this * basis;
    for (int i = 0; i < d; ++i) m[i][j] = col.coeff(i);
    basis = basis * theta;
  }
  m[0][d] = 1;
  for (int col = 0, row = 0; col < d; ++col) {
    int piv = row;
    while (piv < d && sgn(m[piv][col]) == 0) ++piv;
    if (piv == d) throw Error(ErrorKind::Internal, "singular multiplication matrix");
    std::swap(m[piv], m[row]);
    Rational inv = 1 / m[row][col];
    for (int k = col; k <= d; ++k) m[row][k] *= inv;
    for (int i = 0; i < d; ++i) {
      if (i == row || sgn(m[i][col]) == 0) continue;
      Rational f = m[i][col];
      for (int k = col; k <= d; ++k) m[i][k] -= f * m[row][k];
    }
    ++row;
  }
  Coeffs out;
  for (int i = 0; i < d; ++i) out.push_back(m[i][d]);
  return Scalar(field_, out);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.c_.size() == 1) {
    field_ = join(field_, o.field_);
    for (auto& q : c_) q /= o.c_[0];
    return *this;
  }
  return *this = *this * o.inverse();
}

bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }

int sign_of(const Scalar& x) { return x.sign(); }

int compare(const Scalar& x, const Scalar& y) {
  if (x.field() && y.field() && x.field() != y.field())
    throw Error(ErrorKind::FieldMismatch, "comparison across number fields");
  return (x - y).sign();
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

}  // namespace vor
