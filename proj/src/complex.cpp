#include "vorunits/complex.hpp"

#include <algorithm>
#include <set>

#include "vorunits/isometry.hpp"

namespace vor {

bool is_well_rounded(const FormChart& chart, const std::vector<IVec>& s) {
  if (s.empty()) return false;
  EVec t(chart.N(), Scalar(0));
  for (const auto& x : s) {
    EVec r = chart.rank_one(x);
    for (int k = 0; k < chart.N(); ++k) t[k] += r[k];
  }
  return chart.is_positive_definite(t);
}

std::vector<std::size_t> face_rays(const PerfectForm& p, const std::vector<std::size_t>& facets) {
  std::vector<std::size_t> cur = p.facets.at(facets.at(0)).incidence;
  for (std::size_t k = 1; k < facets.size(); ++k) {
    const auto& inc = p.facets.at(facets[k]).incidence;
    std::vector<std::size_t> next;
    std::set_intersection(cur.begin(), cur.end(), inc.begin(), inc.end(), std::back_inserter(next));
    cur = std::move(next);
  }
  return cur;
}

namespace {

std::size_t ray_rank(const FormChart& chart, const PerfectForm& p, const std::vector<std::size_t>& rays) {
  if (rays.empty()) return 0;
  EMatrix m(rays.size(), chart.N());
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (int k = 0; k < chart.N(); ++k) m(i, k) = p.rays[rays[i]][k];
  return rank(m);
}

}  // namespace

MinimalClass class_of_face(const FormChart& chart, const PerfectForm& p, std::size_t orbit,
                           const std::vector<std::size_t>& facets) {
  if (facets.empty() || facets.size() > 2) throw Error(ErrorKind::ValidationError, "faces are cut out by one or two facets");
  MinimalClass c;
  c.facets = facets;
  std::sort(c.facets.begin(), c.facets.end());
  c.corank = static_cast<int>(facets.size());
  c.orbit = orbit;
  c.rays = face_rays(p, c.facets);
  if (ray_rank(chart, p, c.rays) + c.corank != static_cast<std::size_t>(chart.N()))
    throw Error(ErrorKind::ValidationError, "facets do not meet in a face of the expected dimension");
  c.vectors = p.vectors_of(c.rays);
  if (!is_well_rounded(chart, c.vectors)) throw Error(ErrorKind::NotWellRounded, "face lies in the boundary");
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> ridges(const FormChart& chart, const PerfectForm& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::set<std::vector<std::size_t>> seen;
  const std::size_t need = static_cast<std::size_t>(chart.N()) - 2;
  for (std::size_t i = 0; i < p.facets.size(); ++i)
    for (std::size_t j = i + 1; j < p.facets.size(); ++j) {
      auto rays = face_rays(p, {i, j});
      if (rays.size() < need || seen.count(rays)) continue;
      if (ray_rank(chart, p, rays) != need) continue;
      seen.insert(rays);
      if (!is_well_rounded(chart, p.vectors_of(rays))) continue;
      out.emplace_back(i, j);
    }
  return out;
}

EVec canonical_class_form(const FormChart& chart, const MinimalClass& c) {
  if (!is_well_rounded(chart, c.vectors)) throw Error(ErrorKind::NotWellRounded, "class is not well rounded");
  EVec t(chart.N(), Scalar(0));
  for (const auto& x : c.vectors) {
    EVec r = chart.rank_one(x);
    for (int k = 0; k < chart.N(); ++k) t[k] += r[k];
  }
  return t;
}

FiniteGroup class_stabilizer(const FormChart& chart, const MinimalClass& c, bool mod_sign) {
  return set_stabilizer(chart, c.vectors, mod_sign);
}

std::optional<ZMatrix> detect_inversion(const FormChart& chart, const VoronoiGraph& g, std::size_t a,
                                        std::size_t phi) {
  const OrbitNode& node = g.nodes.at(a);
  const EdgeRecord& rec = node.edges.at(phi);
  if (rec.target != a) return std::nullopt;
  MinimalClass c = class_of_face(chart, node.perfect, a, {node.facet_orbits.at(phi).rep});
  FiniteGroup s = class_stabilizer(chart, c, g.mod_sign);
  for (const auto& e : s.elements())
    if (!node.stabilizer.contains(e)) return e;
  return std::nullopt;
}

}  // namespace vor
