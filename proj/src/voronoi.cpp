#include "vorunits/voronoi.hpp"

#include <algorithm>

#include "vorunits/isometry.hpp"

namespace vor {

EVec left_act(const FormChart& chart, const EVec& f, const ZMatrix& r) { return chart.act(f, inverse_unit(r)); }

ZMatrix inverse_unit(const ZMatrix& r) {
  auto inv = inverse(to_rational(r));
  if (!inv) throw Error(ErrorKind::NotAUnit, "singular matrix");
  auto z = to_integer(*inv);
  if (!z) throw Error(ErrorKind::NotAUnit, "inverse is not integral");
  return *z;
}

IVec ray_vector(IVec v) {
  for (long x : v) {
    if (x > 0) return v;
    if (x < 0) {
      for (auto& y : v) y = -y;
      return v;
    }
  }
  return v;
}

std::size_t PerfectForm::ray_index(const IVec& x) const {
  auto it = ray_of.find(ray_vector(x));
  if (it == ray_of.end()) throw Error(ErrorKind::Internal, "vector is not minimal");
  return it->second;
}

std::vector<IVec> PerfectForm::vectors_of(const std::vector<std::size_t>& ray_set) const {
  std::vector<IVec> out;
  for (auto r : ray_set)
    for (const auto& v : ray_vectors[r]) {
      out.push_back(v);
      IVec w = v;
      for (auto& x : w) x = -x;
      out.push_back(std::move(w));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> PerfectForm::map_rays(const ZMatrix& r, const std::vector<std::size_t>& ray_set) const {
  std::vector<std::size_t> out;
  out.reserve(ray_set.size());
  for (auto k : ray_set) out.push_back(ray_index(apply_matrix(r, ray_vectors[k].front())));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> PerfectForm::facet_with_incidence(const std::vector<std::size_t>& inc) const {
  auto it = facet_of.find(inc);
  if (it == facet_of.end()) return std::nullopt;
  return it->second;
}

std::size_t perfection_rank(const FormChart& chart, const std::vector<IVec>& vectors) {
  if (vectors.empty()) return 0;
  EMatrix m(vectors.size(), chart.N());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    EVec v = chart.pairing_vector(vectors[i]);
    for (int k = 0; k < chart.N(); ++k) m(i, k) = v[k];
  }
  return rank(m);
}

namespace {

EVec axpy(const EVec& f, const Scalar& u, const EVec& h) {
  EVec r = f;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (!h[k].is_zero()) r[k] += u * h[k];
  return r;
}

// Ray data from the minimal vectors.
void fill_rays(const FormChart& chart, PerfectForm& p) {
  for (const auto& x : p.minimal) {
    if (ray_vector(x) != x) continue;
    EVec v = chart.pairing_vector(x);
    std::size_t k = 0;
    while (k < p.rays.size() && p.rays[k] != v) ++k;
    if (k == p.rays.size()) {
      p.rays.push_back(std::move(v));
      p.ray_vectors.emplace_back();
    }
    p.ray_vectors[k].push_back(x);
    p.ray_of[x] = k;
  }
}

}  // namespace

PerfectForm make_perfect(const FormChart& chart, const EVec& f) {
  PerfectForm p;
  p.form = f;
  auto mv = minimal_vectors(chart, f);
  if (mv.minimum != Scalar(1)) throw Error(ErrorKind::ValidationError, "perfect forms are stored with minimum 1");
  p.minimal = std::move(mv.vectors);
  fill_rays(chart, p);
  EMatrix m(p.rays.size(), chart.N());
  for (std::size_t i = 0; i < p.rays.size(); ++i)
    for (int k = 0; k < chart.N(); ++k) m(i, k) = p.rays[i][k];
  if (rank(m) != static_cast<std::size_t>(chart.N())) throw Error(ErrorKind::ValidationError, "form is not perfect");
  p.facets = cone_facets(p.rays);
  for (std::size_t k = 0; k < p.facets.size(); ++k) p.facet_of[p.facets[k].incidence] = k;
  return p;
}

Scalar contact_parameter(const FormChart& chart, const EVec& f, const EVec& h) {
  if (chart.is_positive_semidefinite(h))
    throw Error(ErrorKind::DirectionNotOutward, "direction is positive semidefinite");
  const Scalar one(1);
  // probe(u): nullopt if F + uH is not positive definite, else its minimal vectors
  auto probe = [&](const Scalar& u) -> std::optional<ShortVectorReport> {
    EMatrix g = chart.gram(axpy(f, u, h));
    if (!is_positive_definite(g)) return std::nullopt;
    return minimal_vectors_gram(g);
  };
  auto too_far = [&](const std::optional<ShortVectorReport>& r) { return !r || r->minimum < one; };
  Scalar lo(0), u(1);
  std::optional<ShortVectorReport> rep;
  // grow until F + uH leaves the region {PD, min >= 1}
  while (true) {
    rep = probe(u);
    if (too_far(rep)) break;
    lo = u;
    u = u * Scalar(2);
  }
  // bisect until F + uH is positive definite with minimum below 1
  while (!rep) {
    Scalar mid = (lo + u) / Scalar(2);
    rep = probe(mid);
    if (!rep) {
      u = mid;
    } else if (!too_far(rep)) {
      lo = mid;
      rep.reset();
    } else {
      u = mid;
    }
  }
  // each minimal vector x below 1 gives an upper bound lambda_x for the contact parameter
  while (rep->minimum < one) {
    std::optional<Scalar> best;
    for (const auto& x : rep->vectors) {
      Scalar hx = chart.value(h, x);
      if (hx.sign() >= 0) throw Error(ErrorKind::Internal, "contact vector with nonnegative direction value");
      Scalar lam = (chart.value(f, x) - one) / (-hx);
      if (!best || lam < *best) best = lam;
    }
    u = *best;
    rep = probe(u);
    if (!rep) throw Error(ErrorKind::Internal, "contact search left the positive cone");
  }
  return u;
}

PerfectForm initial_perfect_form(const FormChart& chart) { return initial_perfect_form(chart, chart.trace_form()); }

PerfectForm initial_perfect_form(const FormChart& chart, const EVec& f0) {
  auto mv = minimal_vectors(chart, f0);
  EVec f = f0;
  Scalar inv = mv.minimum.inverse();
  for (auto& x : f) x *= inv;
  std::size_t rk = 0;
  while (true) {
    auto cur = minimal_vectors(chart, f);
    std::vector<IVec> reps;
    for (const auto& x : cur.vectors)
      if (ray_vector(x) == x) reps.push_back(x);
    std::size_t r = perfection_rank(chart, reps);
    if (r == static_cast<std::size_t>(chart.N())) return make_perfect(chart, f);
    if (r <= rk && rk != 0) throw Error(ErrorKind::NoProgress, "perfection rank did not grow");
    rk = r;
    EMatrix m(reps.size(), chart.N());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      EVec v = chart.pairing_vector(reps[i]);
      for (int k = 0; k < chart.N(); ++k) m(i, k) = v[k];
    }
    EVec h = nullspace(m).front();
    if (chart.is_positive_semidefinite(h))
      for (auto& x : h) x = -x;
    Scalar lam = contact_parameter(chart, f, h);
    f = axpy(f, lam, h);
  }
}

EVec neighbor(const FormChart& chart, const PerfectForm& p, std::size_t facet) {
  const EVec& h = p.facets[facet].normal;
  Scalar lam = contact_parameter(chart, p.form, h);
  return axpy(p.form, lam, h);
}

void compute_facet_orbits(const PerfectForm& p, const FiniteGroup& g, std::vector<FacetOrbit>& orbits,
                          std::vector<std::size_t>& orbit_of, std::vector<std::size_t>& elem) {
  const std::size_t nf = p.facets.size();
  const std::size_t none = static_cast<std::size_t>(-1);
  orbits.clear();
  orbit_of.assign(nf, none);
  elem.assign(nf, 0);
  for (std::size_t f = 0; f < nf; ++f) {
    if (orbit_of[f] != none) continue;
    FacetOrbit o;
    o.rep = f;
    const std::size_t id = orbits.size();
    for (std::size_t e = 0; e < g.order(); ++e) {
      auto inc = p.map_rays(g.elements()[e], p.facets[f].incidence);
      auto j = p.facet_with_incidence(inc);
      if (!j) throw Error(ErrorKind::Internal, "stabilizer does not permute the facets");
      if (orbit_of[*j] == none) {
        orbit_of[*j] = id;
        elem[*j] = e;
        o.members.push_back(*j);
      } else if (orbit_of[*j] != id) {
        throw Error(ErrorKind::Internal, "inconsistent facet orbits");
      }
    }
    std::sort(o.members.begin(), o.members.end());
    orbits.push_back(std::move(o));
  }
}

namespace {

struct Fingerprint {
  std::size_t minimal = 0, rays = 0, facets = 0;
  std::vector<std::size_t> incidence_sizes;
  bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const PerfectForm& p) {
  Fingerprint f;
  f.minimal = p.minimal.size();
  f.rays = p.rays.size();
  f.facets = p.facets.size();
  for (const auto& x : p.facets) f.incidence_sizes.push_back(x.incidence.size());
  std::sort(f.incidence_sizes.begin(), f.incidence_sizes.end());
  return f;
}

VectorSystem system_of(const FormChart& chart, const PerfectForm& p) {
  VectorSystem s;
  s.gram = chart.gram(p.form);
  s.vectors = p.minimal;
  return s;
}

}  // namespace

VoronoiGraph enumerate_perfect_forms(const FormChart& chart, const VoronoiOptions& opt) {
  VoronoiGraph graph;
  graph.mod_sign = opt.mod_sign;
  std::vector<Fingerprint> prints;
  std::vector<VectorSystem> systems;
  auto add_node = [&](PerfectForm p, std::optional<std::pair<std::size_t, std::size_t>> parent) {
    if (graph.nodes.size() >= opt.max_orbits)
      throw Error(ErrorKind::BudgetExceeded, "orbit budget exceeded");
    prints.push_back(fingerprint(p));
    systems.push_back(system_of(chart, p));
    OrbitNode node;
    node.perfect = std::move(p);
    node.parent = parent;
    graph.nodes.push_back(std::move(node));
  };
  add_node(initial_perfect_form(chart), std::nullopt);
  const ZMatrix id = ZMatrix::identity(chart.m());

  for (std::size_t a = 0; a < graph.nodes.size(); ++a) {
    {
      OrbitNode& node = graph.nodes[a];
      node.stabilizer = automorphism_group(chart, node.perfect.form, opt.mod_sign);
      compute_facet_orbits(node.perfect, node.stabilizer, node.facet_orbits, node.orbit_of_facet, node.facet_elem);
    }
    const std::size_t norbits = graph.nodes[a].facet_orbits.size();
    for (std::size_t phi = 0; phi < norbits; ++phi) {
      EVec nf = neighbor(chart, graph.nodes[a].perfect, graph.nodes[a].facet_orbits[phi].rep);
      PerfectForm pn = make_perfect(chart, nf);
      Fingerprint fp = fingerprint(pn);
      VectorSystem sn = system_of(chart, pn);
      EdgeRecord rec;
      rec.neighbor_form = nf;
      bool found = false;
      for (std::size_t b = 0; b < graph.nodes.size() && !found; ++b) {
        if (!(prints[b] == fp)) continue;
        auto t = isometry_test(chart, systems[b], sn);
        if (t) {
          rec.target = b;
          rec.transporter = *t;
          found = true;
        }
      }
      if (!found) {
        rec.target = graph.nodes.size();
        rec.transporter = id;
        add_node(std::move(pn), std::make_pair(a, phi));
      }
      graph.nodes[a].edges.push_back(std::move(rec));
    }
  }

  // reverse matching
  for (std::size_t a = 0; a < graph.nodes.size(); ++a) {
    OrbitNode& node = graph.nodes[a];
    for (std::size_t phi = 0; phi < node.facet_orbits.size(); ++phi) {
      EdgeRecord& rec = node.edges[phi];
      const OrbitNode& tb = graph.nodes[rec.target];
      ZMatrix tinv = inverse_unit(rec.transporter);
      const auto& inc = node.perfect.facets[node.facet_orbits[phi].rep].incidence;
      std::vector<std::size_t> image;
      for (auto r : inc) image.push_back(tb.perfect.ray_index(apply_matrix(tinv, node.perfect.ray_vectors[r].front())));
      std::sort(image.begin(), image.end());
      auto f = tb.perfect.facet_with_incidence(image);
      if (!f) throw Error(ErrorKind::Internal, "shared facet not found in the neighbor's domain");
      rec.reverse_facet = *f;
      rec.reverse_orbit = tb.orbit_of_facet[*f];
      rec.reverse_elem = tb.facet_elem[*f];
    }
  }
  return graph;
}

TessellationReport check_tessellation(const FormChart& chart, const VoronoiGraph& g) {
  TessellationReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  const Arithmetic& ar = chart.arithmetic();
  for (std::size_t a = 0; a < g.nodes.size(); ++a) {
    const OrbitNode& node = g.nodes[a];
    const PerfectForm& p = node.perfect;
    const std::string tag = "orbit " + std::to_string(a);
    if (minimal_vectors(chart, p.form).minimum != Scalar(1)) fail(tag + ": minimum is not 1");
    if (perfection_rank(chart, p.minimal) != static_cast<std::size_t>(chart.N())) fail(tag + ": not perfect");
    for (std::size_t f = 0; f < p.facets.size(); ++f) {
      const auto& fc = p.facets[f];
      std::vector<std::size_t> zero;
      for (std::size_t r = 0; r < p.rays.size(); ++r) {
        int s = dot(fc.normal, p.rays[r]).sign();
        if (s < 0) fail(tag + ": facet normal negative on a ray");
        if (s == 0) zero.push_back(r);
      }
      if (zero != fc.incidence) fail(tag + ": facet incidence mismatch");
      EMatrix m(zero.size(), chart.N());
      for (std::size_t i = 0; i < zero.size(); ++i)
        for (int k = 0; k < chart.N(); ++k) m(i, k) = p.rays[zero[i]][k];
      if (rank(m) + 1 != static_cast<std::size_t>(chart.N())) fail(tag + ": facet does not span a hyperplane");
    }
    if (node.edges.size() != node.facet_orbits.size()) fail(tag + ": dangling facet orbit");
    for (const auto& e : node.stabilizer.elements())
      if (chart.act(p.form, e) != p.form || !ar.is_unit_rep(e)) fail(tag + ": bad stabilizer element");
    for (std::size_t phi = 0; phi < node.edges.size(); ++phi) {
      const EdgeRecord& rec = node.edges[phi];
      const std::string etag = tag + " facet orbit " + std::to_string(phi);
      if (!ar.is_unit_rep(rec.transporter)) fail(etag + ": transporter is not a unit");
      if (left_act(chart, g.nodes[rec.target].perfect.form, rec.transporter) != rec.neighbor_form)
        fail(etag + ": transporter does not carry the representative to the neighbor");
      // the facet's vectors are minimal for the neighbor, the others are not
      const auto& inc = p.facets[node.facet_orbits[phi].rep].incidence;
      auto nvec = minimal_vectors(chart, rec.neighbor_form).vectors;
      for (std::size_t r = 0; r < p.rays.size(); ++r) {
        bool on = std::binary_search(inc.begin(), inc.end(), r);
        bool minimal = std::binary_search(nvec.begin(), nvec.end(), p.ray_vectors[r].front());
        if (on != minimal) fail(etag + ": neighbor does not share exactly the facet");
      }
      const EdgeRecord& back = g.nodes[rec.target].edges[rec.reverse_orbit];
      if (back.target != a || back.reverse_orbit != phi) fail(etag + ": edge records do not pair up");
    }
  }
  return rep;
}

}  // namespace vor
