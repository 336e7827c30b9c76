#pragma once

// Cells of the well-rounded complex as minimal classes: the faces of a
// representative Voronoi domain of codimension 1 (edges) and 2 (ridges).

#include <optional>
#include <vector>

#include "vorunits/voronoi.hpp"

namespace vor {

struct MinimalClass {
  std::vector<IVec> vectors;          // S_L(C), both signs, sorted
  std::vector<std::size_t> rays;      // ray indices in the owning domain
  std::vector<std::size_t> facets;    // one facet (edge) or two (ridge)
  int corank = 0;
  std::size_t orbit = 0;
};

/// True iff S spans V over K, i.e. sum x x^dagger is positive definite.
bool is_well_rounded(const FormChart& chart, const std::vector<IVec>& s);

/// Sorted intersection of the facet incidences.
std::vector<std::size_t> face_rays(const PerfectForm& p, const std::vector<std::size_t>& facets);

/// Class of the face cut out by one or two facets of P. Throws ValidationError
/// if a pair does not meet in a ridge, NotWellRounded for boundary faces.
MinimalClass class_of_face(const FormChart& chart, const PerfectForm& p, std::size_t orbit,
                           const std::vector<std::size_t>& facets);

/// All ridges of P not in the boundary, as facet pairs (i < j), one per ridge.
std::vector<std::pair<std::size_t, std::size_t>> ridges(const FormChart& chart, const PerfectForm& p);

/// T_C = sum over S_L(C) of x x^dagger.
EVec canonical_class_form(const FormChart& chart, const MinimalClass& c);

/// Units preserving S_L(C).
FiniteGroup class_stabilizer(const FormChart& chart, const MinimalClass& c, bool mod_sign);

/// For the representative facet of facet orbit phi of orbit a: a unit swapping
/// the two domains across it, if one exists.
std::optional<ZMatrix> detect_inversion(const FormChart& chart, const VoronoiGraph& g, std::size_t a,
                                        std::size_t phi);

}  // namespace vor
