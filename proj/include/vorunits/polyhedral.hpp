#pragma once

// Facets of a full-dimensional polyhedral cone given by generating rays, by
// incremental double description over E0 with a combinatorial adjacency test.

#include <boost/dynamic_bitset.hpp>
#include <vector>

#include "vorunits/linalg.hpp"

namespace vor {

struct ConeFacet {
  EVec normal;                     // normal . ray >= 0 for every ray; first nonzero entry is +-1
  std::vector<std::size_t> incidence;  // rays with normal . ray = 0, ascending
};

/// Scales v so that its first nonzero entry has absolute value 1.
EVec normalize_direction(EVec v);

/// Facets of cone(rays); throws ValidationError unless the rays span E0^dim.
/// Facets come sorted by incidence list.
std::vector<ConeFacet> cone_facets(const std::vector<EVec>& rays);

}  // namespace vor
