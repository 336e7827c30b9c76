#pragma once

// Finite index subgroups of a presented group by Reidemeister-Schreier, and
// the reduced norm character used to cut out norm-one units.

#include "vorunits/presentation.hpp"

namespace vor {

/// Subgroup H of finite index given by the action of the generators on the
/// cosets 0..k-1, H the stabilizer of coset 0. perms[g][c] is the coset c.g.
/// Generator values of the result are the Schreier elements t_c x t_{c.x}^-1.
GroupPresentation reidemeister_schreier(const GroupPresentation& p,
                                        const std::vector<std::vector<std::size_t>>& perms);

/// Reduced norm of an element of a quaternion algebra over Q, from x^2 - t x + n = 0.
Rational reduced_norm(const AlgebraData& alg, const QVec& x);

/// Index <= 2 subgroup of units with positive reduced norm. A must be quaternion over Q.
GroupPresentation positive_norm_subgroup(const Arithmetic& ar, const GroupPresentation& p);

}  // namespace vor
