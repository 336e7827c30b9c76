#pragma once

// Isometries and automorphisms of forms inside the unit group, by
// backtracking on images of a K-basis chosen from a finite vector system.
// Candidate images are pruned by exact values of b_F and of b_F twisted by
// the centralizer of A acting on L; every result is verified exactly.

#include <optional>
#include <vector>

#include "vorunits/form_space.hpp"
#include "vorunits/group.hpp"

namespace vor {

struct VectorSystem {
  EMatrix gram;               // Gram matrix of the form on the lattice basis
  std::vector<IVec> vectors;  // closed under negation
};

struct IsometryOptions {
  bool first_only = false;
  /// Leaves must also map the source vector set onto the target vector set.
  bool require_set_map = false;
  std::size_t max_results = 10'000'000;
};

class IsometrySearch {
 public:
  explicit IsometrySearch(const FormChart& chart);

  /// All R = rep(g), g in Lambda^x, with R^T G2 R = G1 and g(source) among targets.
  std::vector<ZMatrix> run(const VectorSystem& source, const VectorSystem& target,
                           const IsometryOptions& opt) const;

  const std::vector<QMatrix>& centralizer() const { return centralizer_; }

 private:
  const FormChart* chart_;
  std::vector<QMatrix> centralizer_;
};

/// Stab of F in Lambda^x (modulo +-1 when mod_sign).
FiniteGroup automorphism_group(const FormChart& chart, const EVec& f, bool mod_sign);
/// Some unit g with g^dagger F2 g = F1, i.e. F2[g x] = F1[x].
std::optional<ZMatrix> isometry_test(const FormChart& chart, const EVec& f1, const EVec& f2);
/// Same, over given minimal-vector systems.
std::optional<ZMatrix> isometry_test(const FormChart& chart, const VectorSystem& s1, const VectorSystem& s2);

/// Units preserving a finite well-rounded vector set S (as a set), using the
/// Gram matrix of T_S^-1 with T_S = sum x x^dagger for pruning.
FiniteGroup set_stabilizer(const FormChart& chart, const std::vector<IVec>& s, bool mod_sign);
/// A unit g with g(s1) = s2, if any.
std::optional<ZMatrix> set_transporter(const FormChart& chart, const std::vector<IVec>& s1,
                                       const std::vector<IVec>& s2);
/// Chart coordinates of (sum_{x in S} x x^dagger)^-1.
EVec inverse_class_form(const FormChart& chart, const std::vector<IVec>& s);

}  // namespace vor
