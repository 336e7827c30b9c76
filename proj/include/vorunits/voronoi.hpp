#pragma once

// Perfect forms, their Voronoi domains and the orbit enumeration.
//
// Conventions. A unit g acts on lattice coordinates by R = rep(g). On forms
// we use the left action g(F) = g^-dagger F g^-1, so S(g(F)) = g S(F); in
// chart terms g(F) = act(F, R^-1).

#include <map>
#include <optional>
#include <vector>

#include "vorunits/group.hpp"
#include "vorunits/polyhedral.hpp"
#include "vorunits/short_vectors.hpp"

namespace vor {

/// g(F) for the left action.
EVec left_act(const FormChart& chart, const EVec& f, const ZMatrix& r);
ZMatrix inverse_unit(const ZMatrix& r);
/// Sign-normalized vector: first nonzero coordinate positive.
IVec ray_vector(IVec v);

struct PerfectForm {
  EVec form;                           // min_L = 1
  std::vector<IVec> minimal;           // S_L(F), both signs, sorted
  std::vector<EVec> rays;              // distinct pairing vectors of x x^dagger
  std::vector<std::vector<IVec>> ray_vectors;  // the minimal vectors (one sign) of each ray
  std::vector<ConeFacet> facets;
  std::map<IVec, std::size_t> ray_of;  // ray_vector(x) -> ray index
  std::map<std::vector<std::size_t>, std::size_t> facet_of;  // incidence -> facet index

  std::size_t ray_index(const IVec& x) const;
  /// All minimal vectors (both signs) on the given rays.
  std::vector<IVec> vectors_of(const std::vector<std::size_t>& ray_set) const;
  /// Incidence (ray indices, sorted) of the image of a ray set under R.
  std::vector<std::size_t> map_rays(const ZMatrix& r, const std::vector<std::size_t>& ray_set) const;
  std::optional<std::size_t> facet_with_incidence(const std::vector<std::size_t>& inc) const;
};

/// Builds the perfect-form record for F (min must be 1); throws ValidationError if F is not perfect.
PerfectForm make_perfect(const FormChart& chart, const EVec& f);
/// Rank of the span of the rank-one forms of S_L(F).
std::size_t perfection_rank(const FormChart& chart, const std::vector<IVec>& vectors);

/// The largest lambda with min_L(F + lambda H) = min_L(F) = 1; H must not be positive semidefinite.
Scalar contact_parameter(const FormChart& chart, const EVec& f, const EVec& h);
PerfectForm initial_perfect_form(const FormChart& chart);
PerfectForm initial_perfect_form(const FormChart& chart, const EVec& f0);
/// Neighbor across facet k of P.
EVec neighbor(const FormChart& chart, const PerfectForm& p, std::size_t facet);

struct FacetOrbit {
  std::size_t rep;                   // facet index of the representative
  std::vector<std::size_t> members;  // facet indices
};

/// Per-facet-orbit edge data.
struct EdgeRecord {
  std::size_t target = 0;       // orbit b of the neighbor
  ZMatrix transporter;          // t with t(P_b) = neighbor across the representative facet
  std::size_t reverse_orbit = 0;   // facet orbit of P_b containing t^-1 of the shared facet
  std::size_t reverse_facet = 0;   // that facet of P_b
  std::size_t reverse_elem = 0;    // u in Gamma_b (element index) with u(rep) = reverse_facet
  EVec neighbor_form;
};

struct OrbitNode {
  PerfectForm perfect;
  FiniteGroup stabilizer;                // Gamma_v (mod +-1 in quotient mode)
  std::vector<FacetOrbit> facet_orbits;
  std::vector<std::size_t> orbit_of_facet;
  std::vector<std::size_t> facet_elem;   // h in Gamma_v (element index) with h(rep) = facet
  std::vector<EdgeRecord> edges;         // one per facet orbit
  // discovery: (parent orbit, parent facet orbit), none for the root
  std::optional<std::pair<std::size_t, std::size_t>> parent;
};

struct VoronoiOptions {
  bool mod_sign = false;
  std::size_t max_orbits = 100000;
};

struct VoronoiGraph {
  std::vector<OrbitNode> nodes;
  bool mod_sign = false;
};

VoronoiGraph enumerate_perfect_forms(const FormChart& chart, const VoronoiOptions& opt);

/// Facet orbits of P under a finite group of units stabilizing P.
void compute_facet_orbits(const PerfectForm& p, const FiniteGroup& g, std::vector<FacetOrbit>& orbits,
                          std::vector<std::size_t>& orbit_of, std::vector<std::size_t>& elem);

struct TessellationReport {
  bool ok = true;
  std::vector<std::string> failures;
};
/// Exact checks: facet normals vanish exactly on incidences and are positive
/// elsewhere; neighbors share the facet; edge records pair up; transporters are units.
TessellationReport check_tessellation(const FormChart& chart, const VoronoiGraph& g);

}  // namespace vor
