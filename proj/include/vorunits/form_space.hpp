#pragma once

// Exact chart coordinates on the symmetric space Sigma = {F : F^dagger = F}
// of the ambient algebra, evaluation F[x] = tr(F x x^dagger) on lattice vectors,
// and the action F -> g^dagger F g of units.

#include <boost/container/small_vector.hpp>
#include <vector>

#include "vorunits/algebra.hpp"

namespace vor {

/// Lattice coordinates of a vector of L (machine integers; short vectors are small).
using IVec = std::vector<long>;

ZVec to_z(const IVec& v);
IVec to_i(const ZVec& v);
/// R v for an integer matrix R.
IVec apply_matrix(const ZMatrix& r, const IVec& v);

class FormChart {
 public:
  explicit FormChart(const Arithmetic& ar);

  const Arithmetic& arithmetic() const { return *ar_; }
  const FieldPtr& field() const { return ar_->algebra().field; }
  int N() const { return static_cast<int>(basis_.size()); }
  int m() const { return ar_->m(); }

  /// Elements B_k of the ambient algebra spanning Sigma over E0.
  const std::vector<EVec>& basis() const { return basis_; }
  /// G^k(i,j) = b_{B_k}(l_i, l_j).
  const std::vector<EMatrix>& gram_basis() const { return gram_basis_; }

  EMatrix gram(const EVec& f) const;
  /// (B_k[x])_k, so that F[x] = f . pairing_vector(x).
  EVec pairing_vector(const IVec& x) const;
  Scalar value(const EVec& f, const IVec& x) const;
  /// Chart coordinates of x x^dagger.
  EVec rank_one(const IVec& x) const;
  EVec element_of(const EVec& f) const;
  /// Chart coordinates of a symmetric ambient element; throws ChartMismatch otherwise.
  EVec coords_of(const EVec& sym) const;
  Scalar inner(const EVec& f1, const EVec& f2) const;
  bool is_positive_definite(const EVec& f) const;
  bool is_positive_semidefinite(const EVec& f) const;
  /// The form whose Gram matrix on the lattice basis is g; throws ChartMismatch.
  EVec from_gram(const EMatrix& g, bool verify = true) const;
  /// Coordinates of g^dagger F g where R = rep(g).
  EVec act(const EVec& f, const ZMatrix& r) const;
  /// Matrix M with pairing(g X g^dagger) = M pairing(X) for points X of Sigma.
  EMatrix point_action(const ZMatrix& r) const;
  /// The trace form F0 = 1.
  EVec trace_form() const;
  const EMatrix& inner_gram() const { return inner_; }

 private:
  const Arithmetic* ar_;
  std::vector<EVec> basis_;
  std::vector<std::size_t> basis_pivots_;
  EMatrix basis_sub_inv_;
  std::vector<EMatrix> gram_basis_;
  std::vector<std::pair<int, int>> gram_pivots_;
  EMatrix gram_sub_inv_;
  EMatrix inner_;
  std::vector<EVec> lattice_elems_;
};

/// Bilinear forms with E0 entries scaled to machine integers, for fast exact
/// comparisons of values b(x, y) on short lattice vectors. All forms compiled
/// together share one denominator, so their values compare directly.
class CompiledBilinear {
 public:
  using Value = boost::container::small_vector<__int128, 3>;

  static std::vector<CompiledBilinear> compile(const std::vector<EMatrix>& forms, const FieldPtr& field);
  static std::vector<CompiledBilinear> compile(const std::vector<EMatrix>& forms, const NumberField* field);

  Value eval(const IVec& x, const IVec& y) const;
  /// Converts a value back to an exact scalar (divides by the shared denominator).
  /// Not available for residues.
  Scalar to_scalar(const Value& v) const;
  /// False when the scaled entries were too large and values are residues
  /// modulo a fixed prime: equal values are then only a necessary condition.
  bool exact() const { return exact_; }

 private:
  bool exact_ = true;
  int m_ = 0;
  int degree_ = 1;
  std::vector<long long> entries_;  // degree_ blocks of m x m
  Integer denominator_;
  const NumberField* field_ = nullptr;
};

struct ValueHash {
  std::size_t operator()(const CompiledBilinear::Value& v) const;
};

}  // namespace vor
