#pragma once

// Exact scalars: rationals and elements of a real number field E0 = Q(theta)
// where theta is a distinguished real root, pinned down by an isolating
// interval. Every comparison is exact.

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "vorunits/error.hpp"

namespace vor {

using Integer = mpz_class;
using Rational = mpq_class;

struct RationalInterval {
  Rational lo;
  Rational hi;
};

/// Dense univariate polynomial, coefficient of x^k at index k.
using RationalPoly = std::vector<Rational>;

void trim(RationalPoly& p);
int poly_degree(const RationalPoly& p);
Rational poly_eval(const RationalPoly& p, const Rational& x);
RationalPoly poly_rem(RationalPoly a, const RationalPoly& b);
RationalPoly poly_derivative(const RationalPoly& p);
/// Number of distinct real roots of a squarefree p in the half-open interval (lo, hi].
int sturm_count(const RationalPoly& p, const Rational& lo, const Rational& hi);
bool is_irreducible_over_q(const std::vector<Integer>& monic);

/// Parses "x^3-3x+1" style text into integer coefficients (low degree first).
std::vector<Integer> parse_integer_poly(const std::string& text);
/// Parses "3", "-7/2" or "1.25".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

class Scalar;

class NumberField {
 public:
  /// Validates irreducibility and root isolation; throws vor::Error on failure.
  static std::shared_ptr<const NumberField> make(std::vector<Integer> minpoly,
                                                 RationalInterval interval);
  static std::shared_ptr<const NumberField> rationals();

  int degree() const { return degree_; }
  const std::vector<Integer>& minimal_polynomial() const { return minpoly_; }
  const RationalInterval& isolating_interval() const { return interval_; }
  /// The distinguished real root theta as a field element.
  Scalar generator() const;
  long double approx_root() const { return root_approx_; }

  /// theta^k expressed in the power basis, for degree <= k < 2*degree - 1.
  const std::vector<std::vector<Rational>>& reduction_table() const { return powers_; }

  /// Exact sign of a nonrational element (coefficients in the power basis).
  int sign_of(const Rational* coeffs, std::size_t count) const;
  RationalInterval refined_interval(int bits) const;

  std::string describe() const;

 private:
  NumberField() = default;

  int degree_ = 1;
  std::vector<Integer> minpoly_;
  RationalInterval interval_;
  RationalInterval sharp_;  // interval of width <= 2^-96, fixed at construction
  long double root_approx_ = 0;
  std::vector<std::vector<Rational>> powers_;
  // Quadratic fast path: theta = (-p + eps*sqrt(disc)) / 2.
  Rational quad_p_;
  Rational quad_disc_;
  int quad_eps_ = 0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Immutable element of Q or of a fixed NumberField. A scalar with no field
/// attached is a rational constant and mixes freely with any field; mixing two
/// different fields is rejected with ErrorKind::FieldMismatch.
class Scalar {
 public:
  using Coeffs = boost::container::small_vector<Rational, 2>;

  Scalar() = default;
  Scalar(long v) { if (v != 0) c_.emplace_back(v); }  // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(static_cast<long>(v)) {}     // NOLINT(google-explicit-constructor)
  Scalar(const Rational& q) { if (sgn(q) != 0) c_.push_back(q); }  // NOLINT
  Scalar(const Integer& z) : Scalar(Rational(z)) {}  // NOLINT
  Scalar(const NumberField* field, Coeffs coeffs);

  const NumberField* field() const { return field_; }
  const Coeffs& coeffs() const { return c_; }
  /// Coefficient of theta^k (zero beyond the stored length).
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rational rational() const;

  int sign() const;
  long double approx() const;
  std::size_t hash() const;
  std::string str() const;

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

 private:
  void normalize();
  static const NumberField* join(const NumberField* a, const NumberField* b);

  const NumberField* field_ = nullptr;
  Coeffs c_;
};

/// Sign under the distinguished real embedding: -1, 0 or +1.
int sign_of(const Scalar& x);
/// sign_of(x - y); rejects scalars from two different fields.
int compare(const Scalar& x, const Scalar& y);
Scalar abs(const Scalar& x);

struct ScalarHash {
  std::size_t operator()(const Scalar& s) const { return s.hash(); }
};

std::size_t hash_rational(const Rational& q);
std::size_t hash_integer(const Integer& z);

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace vor
