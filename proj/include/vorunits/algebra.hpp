#pragma once

// The algebra A (structure constants over Q), the ambient algebra A (x) E0 with
// its positive involution and trace, the order Lambda and the lattice L.

#include <optional>
#include <string>
#include <vector>

#include "vorunits/linalg.hpp"

namespace vor {

/// A by structure constants: e_i e_j = sum_k c(i,j,k) e_k. The same constants
/// define the ambient algebra A (x) E0 in which forms live.
struct AlgebraData {
  int dim = 0;
  std::vector<Rational> structure;  // dim^3 entries
  QVec one;
  FieldPtr field;                   // E0, the field of the form chart
  EMatrix dagger;                   // column k holds the coordinates of e_k^dagger
  EVec trace;                       // tr(e_k)
  std::vector<EMatrix> images;      // matrix images of the basis, when embedded
  std::string description;

  const Rational& c(int i, int j, int k) const { return structure[(i * dim + j) * dim + k]; }
};

QVec multiply(const AlgebraData& alg, const QVec& a, const QVec& b);
EVec multiply(const AlgebraData& alg, const EVec& a, const EVec& b);
EVec dagger(const AlgebraData& alg, const EVec& a);
QVec dagger(const AlgebraData& alg, const QVec& a);
Scalar trace(const AlgebraData& alg, const EVec& a);
/// Matrix of x -> a x on coordinate columns.
QMatrix left_multiplication(const AlgebraData& alg, const QVec& a);
EMatrix left_multiplication(const AlgebraData& alg, const EVec& a);
std::optional<EVec> inverse_element(const AlgebraData& alg, const EVec& a);
QVec basis_vector(int dim, int k);

struct EmbeddingReport {
  bool ok = true;
  int symmetric_dimension = 0;  // N
  std::vector<std::string> failures;
};

/// Checks unit, associativity, anti-automorphism and involution laws on all
/// basis pairs, and positivity of the trace pairing tr(x y^dagger).
EmbeddingReport validate_embedding(const AlgebraData& alg);

// Standard constructors.
AlgebraData matrix_algebra(int n);
/// (a,b / Q) embedded in 2x2 matrices over Q(sqrt a) (split_at_i) or Q(sqrt b).
AlgebraData quaternion_split(const Rational& a, const Rational& b, bool split_at_i, FieldPtr field);
/// Definite (a,b / Q) with its canonical involution; requires a, b < 0.
AlgebraData quaternion_definite(const Rational& a, const Rational& b);
/// (a,b / Q) (x) Q(sqrt(-d)) with dagger = conjugation (x) complex conjugation.
AlgebraData quaternion_cm(const Rational& a, const Rational& b, const Integer& d);
/// n x n matrices over definite (a,b / Q) with conjugate-transpose involution.
AlgebraData quaternion_matrix(const Rational& a, const Rational& b, int n);
/// A given by matrix images over E0; dagger is transposition, tr the matrix trace.
AlgebraData embedded_algebra(FieldPtr field, const std::vector<EMatrix>& images);

/// Z-basis (rows) of the Z-module generated by the given rational rows.
QMatrix lattice_basis(const QMatrix& generators);

/// Lambda, L and the representation of A on L.
class Arithmetic {
 public:
  Arithmetic(AlgebraData alg, QMatrix order_basis, QMatrix lattice_basis);

  const AlgebraData& algebra() const { return alg_; }
  int dim() const { return alg_.dim; }
  int m() const { return m_; }
  int n() const { return n_; }
  const QMatrix& order_basis() const { return order_; }
  const QMatrix& lattice() const { return lattice_; }

  QVec multiply(const QVec& a, const QVec& b) const { return vor::multiply(alg_, a, b); }

  /// Matrix R(a) with a * l_j = sum_i R(i,j) l_i.
  QMatrix rep(const QVec& a) const;
  /// rep(e_k) for the algebra basis.
  const std::vector<QMatrix>& basis_reps() const { return basis_reps_; }
  /// The element a with rep(a) = R; throws NotInAlgebra if there is none.
  QVec element(const QMatrix& r) const;
  QVec lattice_coords(const QVec& v) const;
  QVec lattice_vector(const ZVec& c) const;
  std::optional<QVec> order_coords(const QVec& a) const;
  bool in_order(const QVec& a) const;
  /// The inverse of a if a and a^-1 both lie in Lambda.
  std::optional<QVec> is_unit(const QVec& a) const;
  bool is_unit_rep(const ZMatrix& r) const;

  /// Centralizer of the image of A in End_Q(L (x) Q), as matrices in lattice coordinates.
  const std::vector<QMatrix>& centralizer_basis() const;
  /// Checks that products of order basis elements stay in the order; throws OrderNotClosed.
  void check_order() const;

 private:
  AlgebraData alg_;
  QMatrix order_;
  QMatrix order_inv_;
  QMatrix lattice_;
  int m_ = 0;
  int n_ = 0;
  std::vector<std::size_t> lat_pivots_;
  QMatrix lat_sub_inv_;
  std::vector<QMatrix> basis_reps_;
  std::vector<std::size_t> rep_pivots_;  // flattened entries of R determining a
  QMatrix rep_sub_inv_;
  mutable std::optional<std::vector<QMatrix>> centralizer_;
};

}  // namespace vor
