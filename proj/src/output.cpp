#include "vorunits/output.hpp"

#include <sstream>

namespace vor {

namespace {

const char* kind_name(RelatorKind k) {
  switch (k) {
    case RelatorKind::Stabilizer: return "stabilizer";
    case RelatorKind::Tree: return "tree";
    case RelatorKind::EdgeStabilizer: return "edge";
    case RelatorKind::Inversion: return "inversion";
    case RelatorKind::Ridge: return "ridge";
    case RelatorKind::Derived: return "derived";
  }
  return "unknown";
}

std::string compact(const ZMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += m(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace

Json to_json(const Scalar& s) { return s.str(); }

Json to_json(const ZMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).fits_slong_p()) r.push_back(m(i, j).get_si());
      else r.push_back(m(i, j).get_str());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

Json to_json(const EMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(std::move(r));
  }
  return rows;
}

Json to_json(const EVec& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

ZMatrix parse_integer_matrix(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(ErrorKind::ParseError, "expected a matrix as a list of rows");
  const std::size_t r = j.size(), c = j[0].size();
  ZMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw Error(ErrorKind::ParseError, "ragged matrix rows");
    for (std::size_t k = 0; k < c; ++k) {
      const Json& e = j[i][k];
      if (e.is_number_integer()) m(i, k) = Integer(static_cast<long>(e.get<long>()));
      else if (e.is_string()) m(i, k) = Integer(e.get<std::string>());
      else throw Error(ErrorKind::ParseError, "matrix entries must be integers");
    }
  }
  return m;
}

Json graph_json(const FormChart& chart, const VoronoiGraph& g) {
  Json out;
  out["field"] = chart.field()->degree() == 1 ? std::string("Q") : chart.field()->describe();
  out["N"] = chart.N();
  out["m"] = chart.m();
  out["mod_sign"] = g.mod_sign;
  Json nodes = Json::array();
  for (std::size_t a = 0; a < g.nodes.size(); ++a) {
    const OrbitNode& v = g.nodes[a];
    Json n;
    n["index"] = a;
    n["form"] = to_json(v.perfect.form);
    n["gram"] = to_json(chart.gram(v.perfect.form));
    n["minimal_vectors"] = v.perfect.minimal.size();
    n["rays"] = v.perfect.rays.size();
    n["facets"] = v.perfect.facets.size();
    n["stabilizer_order"] = v.stabilizer.order();
    Json gens = Json::array();
    for (const auto& s : v.stabilizer.generators()) gens.push_back(to_json(s));
    n["stabilizer_generators"] = std::move(gens);
    Json orbits = Json::array();
    for (std::size_t k = 0; k < v.facet_orbits.size(); ++k) {
      const EdgeRecord& e = v.edges[k];
      Json o;
      o["representative"] = v.facet_orbits[k].rep;
      o["size"] = v.facet_orbits[k].members.size();
      o["target"] = e.target;
      o["transporter"] = to_json(e.transporter);
      o["reverse_facet_orbit"] = e.reverse_orbit;
      orbits.push_back(std::move(o));
    }
    n["facet_orbits"] = std::move(orbits);
    if (v.parent) n["parent"] = Json::array({v.parent->first, v.parent->second});
    else n["parent"] = nullptr;
    nodes.push_back(std::move(n));
  }
  out["orbits"] = std::move(nodes);
  return out;
}

std::string graph_dot(const VoronoiGraph& g) {
  std::ostringstream os;
  os << "digraph voronoi {\n";
  for (std::size_t a = 0; a < g.nodes.size(); ++a)
    os << "  P" << a << " [label=\"P" << a << "\\n|Stab|=" << g.nodes[a].stabilizer.order() << "\\nfacets "
       << g.nodes[a].perfect.facets.size() << "\"];\n";
  for (std::size_t a = 0; a < g.nodes.size(); ++a)
    for (std::size_t k = 0; k < g.nodes[a].edges.size(); ++k) {
      const EdgeRecord& e = g.nodes[a].edges[k];
      os << "  P" << a << " -> P" << e.target << " [label=\"f" << k << " x" << g.nodes[a].facet_orbits[k].members.size()
         << " " << compact(e.transporter) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

Json presentation_json(const GroupPresentation& p) {
  Json out;
  out["mod_sign"] = p.mod_sign;
  out["matrix_size"] = p.m;
  const auto names = p.names();
  Json gens = Json::array();
  for (const auto& g : p.generators) {
    Json j;
    j["name"] = g.name;
    j["kind"] = g.kind == GeneratorKind::Edge ? "edge" : "stabilizer";
    j["orbit"] = g.orbit;
    j["index"] = g.index;
    j["matrix"] = to_json(g.value);
    gens.push_back(std::move(j));
  }
  out["generators"] = std::move(gens);
  Json rels = Json::array();
  for (std::size_t k = 0; k < p.relators.size(); ++k) {
    Json j;
    j["word"] = to_string(p.relators[k], names);
    j["kind"] = k < p.kinds.size() ? kind_name(p.kinds[k]) : "derived";
    rels.push_back(std::move(j));
  }
  out["relators"] = std::move(rels);
  return out;
}

std::string presentation_text(const GroupPresentation& p) {
  const auto names = p.names();
  std::string out = "generators: ";
  for (std::size_t k = 0; k < names.size(); ++k) out += (k ? ", " : "") + names[k];
  out += "\nrelators: ";
  for (std::size_t k = 0; k < p.relators.size(); ++k) out += (k ? ", " : "") + to_string(p.relators[k], names);
  return out + "\n";
}

Json abelianization_json(const Abelianization& a) {
  Json out;
  Json t = Json::array();
  for (const auto& z : a.torsion) t.push_back(z.get_str());
  out["torsion"] = std::move(t);
  out["free_rank"] = a.free_rank;
  out["group"] = a.to_string();
  return out;
}

std::string canonical_dump(const Json& j) { return j.dump(1) + "\n"; }

}  // namespace vor
