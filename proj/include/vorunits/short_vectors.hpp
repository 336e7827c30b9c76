#pragma once

// Minimum and minimal vectors of positive forms on L, through the Gram matrix
// of b_F on the lattice basis. Enumeration runs in floating point with an
// inflated bound; every reported vector is confirmed exactly.

#include <vector>

#include "vorunits/form_space.hpp"

namespace vor {

struct ShortVectorReport {
  Scalar minimum;
  std::vector<IVec> vectors;  // closed under negation, lexicographically sorted
  std::vector<Scalar> values;  // F[x] for each vector
  std::size_t count() const { return vectors.size(); }
};

/// Gram matrix of b_F on the lattice basis; throws NotPositive unless F is positive definite.
EMatrix gram_of_form(const FormChart& chart, const EVec& f);

/// All x with 0 < G[x] <= bound (or < bound when strict), for positive definite G.
ShortVectorReport short_vectors_gram(const EMatrix& gram, const Scalar& bound, bool strict = false,
                                     std::size_t cap = 20'000'000);
ShortVectorReport minimal_vectors_gram(const EMatrix& gram);

ShortVectorReport minimal_vectors(const FormChart& chart, const EVec& f);
ShortVectorReport short_vectors_up_to(const FormChart& chart, const EVec& f, const Scalar& bound);

}  // namespace vor
