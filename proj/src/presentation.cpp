#include "vorunits/presentation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace vor {

std::vector<std::string> GroupPresentation::names() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.name);
  return out;
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const GroupPresentation& p) : p_(&p), inv_(p.generators.size()) {}

  ZMatrix operator()(const Word& w) {
    ZMatrix r = ZMatrix::identity(p_->m);
    for (Letter l : w) {
      const std::size_t k = generator_of(l);
      if (k >= p_->generators.size()) throw Error(ErrorKind::ValidationError, "word uses an unknown generator");
      if (l > 0) {
        r = r * p_->generators[k].value;
      } else {
        if (!inv_[k]) inv_[k] = inverse_unit(p_->generators[k].value);
        r = r * *inv_[k];
      }
    }
    return r;
  }

 private:
  const GroupPresentation* p_;
  std::vector<std::optional<ZMatrix>> inv_;
};

bool trivial_value(const ZMatrix& r, bool mod_sign) {
  const ZMatrix id = ZMatrix::identity(r.rows());
  if (r == id) return true;
  return mod_sign && r == ZMatrix(r.rows(), r.cols()) - id;
}

Word shift(const Word& w, std::size_t offset) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(l > 0 ? l + static_cast<int>(offset) : l - static_cast<int>(offset));
  return out;
}

}  // namespace

ZMatrix GroupPresentation::evaluate(const Word& w) const { return Evaluator(*this)(w); }

bool GroupPresentation::is_trivial(const Word& w) const { return trivial_value(evaluate(w), mod_sign); }

bool GroupPresentation::represents(const Word& w, const ZMatrix& g) const {
  ZMatrix v = evaluate(w);
  if (v == g) return true;
  return mod_sign && v == ZMatrix(g.rows(), g.cols()) - g;
}

std::vector<std::size_t> GroupPresentation::failing_relators() const {
  Evaluator ev(*this);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < relators.size(); ++k)
    if (!trivial_value(ev(relators[k]), mod_sign)) out.push_back(k);
  return out;
}

Word UnitPresentation::stabilizer_word(const VoronoiGraph& g, std::size_t a, const ZMatrix& h) const {
  auto idx = g.nodes.at(a).stabilizer.index_of(h);
  if (!idx) throw Error(ErrorKind::NoStabilizerWitness, "element is not in the vertex stabilizer");
  return shift(g.nodes[a].stabilizer.word(*idx), stabilizer_offset.at(a));
}

namespace {

// Sorted ray indices of R^-1 applied to the given rays of p, as rays of q.
std::vector<std::size_t> pull_rays(const PerfectForm& p, const PerfectForm& q, const ZMatrix& rinv,
                                   const std::vector<std::size_t>& rays) {
  std::vector<std::size_t> out;
  out.reserve(rays.size());
  for (auto r : rays) out.push_back(q.ray_index(apply_matrix(rinv, p.ray_vectors[r].front())));
  std::sort(out.begin(), out.end());
  return out;
}

FiniteGroup facet_stabilizer(const OrbitNode& node, std::size_t facet, bool mod_sign) {
  const auto& inc = node.perfect.facets[facet].incidence;
  std::vector<ZMatrix> elems;
  for (const auto& e : node.stabilizer.elements())
    if (node.perfect.map_rays(e, inc) == inc) elems.push_back(e);
  return FiniteGroup(node.stabilizer.dim(), elems, mod_sign);
}

}  // namespace

UnitPresentation build_presentation(const FormChart& chart, const VoronoiGraph& g) {
  UnitPresentation up;
  GroupPresentation& pr = up.raw;
  pr.m = chart.m();
  pr.mod_sign = g.mod_sign;
  const std::size_t nv = g.nodes.size();
  const ZMatrix id = ZMatrix::identity(chart.m());
  auto add_relator = [&](Word w, RelatorKind kind) {
    pr.relators.push_back(free_reduce(w));
    pr.kinds.push_back(kind);
  };
  auto letter_of = [](int gen, bool inv = false) { return letter(gen, inv); };

  // vertex stabilizers
  for (std::size_t a = 0; a < nv; ++a) {
    const FiniteGroup& st = g.nodes[a].stabilizer;
    up.stabilizer_offset.push_back(pr.generators.size());
    for (std::size_t k = 0; k < st.generators().size(); ++k) {
      Generator gen;
      gen.name = "v" + std::to_string(a) + "s" + std::to_string(k);
      gen.value = st.generators()[k];
      gen.kind = GeneratorKind::Stabilizer;
      gen.orbit = a;
      gen.index = k;
      pr.generators.push_back(std::move(gen));
    }
    for (const auto& r : st.relators()) add_relator(shift(r, up.stabilizer_offset[a]), RelatorKind::Stabilizer);
  }
  auto word_at = [&](std::size_t a, const ZMatrix& h) { return up.stabilizer_word(g, a, h); };

  // edge orbits, oriented from the smaller side
  up.edge_of.resize(nv);
  for (std::size_t a = 0; a < nv; ++a) up.edge_of[a].assign(g.nodes[a].facet_orbits.size(), -1);
  for (std::size_t a = 0; a < nv; ++a) {
    const OrbitNode& node = g.nodes[a];
    for (std::size_t phi = 0; phi < node.edges.size(); ++phi) {
      const EdgeRecord& rec = node.edges[phi];
      auto self = std::make_pair(a, phi), other = std::make_pair(rec.target, rec.reverse_orbit);
      if (other < self) continue;
      EdgeOrbit e;
      e.a = a;
      e.phi = phi;
      e.b = rec.target;
      e.psi = rec.reverse_orbit;
      e.inverted = other == self;
      const auto& parent = g.nodes[rec.target].parent;
      e.tree = !e.inverted && rec.target != a && parent && *parent == self;
      e.value = rec.transporter;
      if (e.inverted) e.value = rec.transporter * node.stabilizer.elements()[rec.reverse_elem];
      if (e.tree && e.value != id) throw Error(ErrorKind::Internal, "tree edge with a nontrivial transporter");
      e.generator = static_cast<int>(pr.generators.size());
      Generator gen;
      gen.name = "e" + std::to_string(up.edges.size());
      gen.value = e.value;
      gen.kind = GeneratorKind::Edge;
      gen.orbit = a;
      gen.index = up.edges.size();
      pr.generators.push_back(std::move(gen));
      up.edge_of[a][phi] = static_cast<int>(up.edges.size());
      up.edge_of[e.b][e.psi] = static_cast<int>(up.edges.size());
      up.edges.push_back(std::move(e));
    }
  }
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t phi = 0; phi < up.edge_of[a].size(); ++phi)
      if (up.edge_of[a][phi] < 0) throw Error(ErrorKind::Internal, "facet orbit without an edge orbit");

  // type 1
  for (const auto& e : up.edges)
    if (e.tree) add_relator({letter_of(e.generator)}, RelatorKind::Tree);

  // types 2 and 3
  for (const auto& e : up.edges) {
    const OrbitNode& node = g.nodes[e.a];
    const std::size_t rep = node.facet_orbits[e.phi].rep;
    FiniteGroup ge = facet_stabilizer(node, rep, g.mod_sign);
    const Letter x = letter_of(e.generator), xi = letter_of(e.generator, true);
    if (!e.inverted) {
      ZMatrix tinv = inverse_unit(e.value);
      for (const auto& h : ge.generators()) {
        ZMatrix k = tinv * h * e.value;
        Word w{xi};
        w = concat(w, word_at(e.a, h));
        w.push_back(x);
        w = concat(w, inverse(word_at(e.b, k)));
        add_relator(std::move(w), RelatorKind::EdgeStabilizer);
      }
    } else {
      ZMatrix sinv = inverse_unit(e.value);
      add_relator(concat({x, x}, inverse(word_at(e.a, e.value * e.value))), RelatorKind::Inversion);
      for (const auto& h : ge.generators()) {
        Word w{x};
        w = concat(w, word_at(e.a, h));
        w.push_back(xi);
        w = concat(w, inverse(word_at(e.a, e.value * h * sinv)));
        add_relator(std::move(w), RelatorKind::Inversion);
      }
    }
  }

  // crossing data for the representative facets, then for all facets
  std::vector<std::vector<Side>> rep_side(nv);
  for (std::size_t a = 0; a < nv; ++a) rep_side[a].resize(g.nodes[a].facet_orbits.size());
  for (const auto& e : up.edges) {
    const Letter x = letter_of(e.generator), xi = letter_of(e.generator, true);
    if (e.inverted) {
      rep_side[e.a][e.phi] = Side{e.a, e.value, {x}};
      continue;
    }
    rep_side[e.a][e.phi] = Side{e.b, e.value, {x}};
    const OrbitNode& nb = g.nodes[e.b];
    const ZMatrix uinv = inverse_unit(nb.stabilizer.elements()[g.nodes[e.a].edges[e.phi].reverse_elem]);
    Side back;
    back.target = e.a;
    back.g = uinv * inverse_unit(e.value);
    back.w = word_at(e.b, uinv);
    back.w.push_back(xi);
    rep_side[e.b][e.psi] = std::move(back);
  }
  up.sides.resize(nv);
  for (std::size_t a = 0; a < nv; ++a) {
    const OrbitNode& node = g.nodes[a];
    for (std::size_t f = 0; f < node.perfect.facets.size(); ++f) {
      const Side& rs = rep_side[a][node.orbit_of_facet[f]];
      const ZMatrix& h = node.stabilizer.elements()[node.facet_elem[f]];
      Side s;
      s.target = rs.target;
      s.g = h * rs.g;
      s.w = free_reduce(concat(word_at(a, h), rs.w));
      // the domain across f must be s.g(P_target): it contains the facet and is not P_a
      const PerfectForm& q = g.nodes[s.target].perfect;
      auto pulled = pull_rays(node.perfect, q, inverse_unit(s.g), node.perfect.facets[f].incidence);
      if (!q.facet_with_incidence(pulled)) throw Error(ErrorKind::Internal, "side transformation misses the facet");
      if (s.target == a && node.stabilizer.contains(s.g))
        throw Error(ErrorKind::Internal, "side transformation fixes the domain");
      up.sides[a].push_back(std::move(s));
    }
  }

  // type 4: one cycle per ridge orbit
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> marked;
  auto mark = [&](std::size_t c, const std::vector<std::size_t>& rays) {
    const OrbitNode& node = g.nodes[c];
    for (const auto& h : node.stabilizer.elements()) marked.emplace(c, node.perfect.map_rays(h, rays));
  };
  auto facets_containing = [&](const PerfectForm& p, const std::vector<std::size_t>& rays) {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < p.facets.size(); ++f)
      if (std::includes(p.facets[f].incidence.begin(), p.facets[f].incidence.end(), rays.begin(), rays.end()))
        out.push_back(f);
    return out;
  };
  const std::size_t max_steps = 100000;
  for (std::size_t a = 0; a < nv; ++a) {
    const PerfectForm& pa = g.nodes[a].perfect;
    for (auto [f1, f2] : ridges(chart, pa)) {
      auto rays = face_rays(pa, {f1, f2});
      if (marked.count({a, rays})) continue;
      mark(a, rays);
      RidgeCycle cyc;
      cyc.orbit = a;
      cyc.facets = {f1, f2};
      std::size_t c = a, exit = f2;
      ZMatrix acc = id;
      Word w;
      while (true) {
        if (++cyc.length > max_steps) throw Error(ErrorKind::WalkNotClosing, "ridge walk does not close");
        const PerfectForm& pc = g.nodes[c].perfect;
        const Side& s = up.sides[c][exit];
        const PerfectForm& pn = g.nodes[s.target].perfect;
        const ZMatrix ginv = inverse_unit(s.g);
        auto next_rays = pull_rays(pc, pn, ginv, rays);
        auto entry = pn.facet_with_incidence(pull_rays(pc, pn, ginv, pc.facets[exit].incidence));
        if (!entry) throw Error(ErrorKind::WalkNotClosing, "crossed facet not found");
        acc = acc * s.g;
        w = concat(w, s.w);
        c = s.target;
        rays = std::move(next_rays);
        mark(c, rays);
        if (c == a && g.nodes[a].stabilizer.contains(acc)) break;
        auto around = facets_containing(pn, rays);
        if (around.size() != 2 || std::find(around.begin(), around.end(), *entry) == around.end())
          throw Error(ErrorKind::WalkNotClosing, "ridge is not contained in exactly two facets");
        exit = around[0] == *entry ? around[1] : around[0];
      }
      cyc.relator = free_reduce(concat(w, inverse(word_at(a, acc))));
      add_relator(cyc.relator, RelatorKind::Ridge);
      up.cycles.push_back(std::move(cyc));
    }
  }

  auto bad = pr.failing_relators();
  if (!bad.empty())
    throw Error(ErrorKind::RelatorEvaluationFailure,
                "relator " + std::to_string(bad.front()) + " does not evaluate to the identity");
  return up;
}

// ---------------------------------------------------------------------------
// Tietze simplification

namespace {

Word substitute(const Word& w, int gen, const Word& expr) {
  Word out;
  for (Letter l : w) {
    if (generator_of(l) != gen) {
      out.push_back(l);
    } else if (l > 0) {
      out.insert(out.end(), expr.begin(), expr.end());
    } else {
      Word inv = inverse(expr);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

void tidy(std::vector<Word>& rels) {
  std::vector<Word> out;
  std::set<Word> seen;
  for (auto& r : rels) {
    Word c = cyclic_reduce(r);
    if (c.empty()) continue;
    Word key = canonical_cyclic(c);
    if (!seen.insert(key).second) continue;
    out.push_back(std::move(key));
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& x, const Word& y) { return x.size() < y.size(); });
  rels = std::move(out);
}

std::size_t total_length(const std::vector<Word>& rels) {
  std::size_t n = 0;
  for (const auto& r : rels) n += r.size();
  return n;
}

}  // namespace

Simplified simplify(const GroupPresentation& p, const SimplifyOptions& opt) {
  const int n = static_cast<int>(p.generators.size());
  std::vector<Word> rels = p.relators;
  tidy(rels);
  std::vector<Word> subst(n);
  for (int k = 0; k < n; ++k) subst[k] = {letter(k)};
  std::vector<char> alive(n, 1);
  const std::size_t cap =
      std::min(opt.max_length, static_cast<std::size_t>(opt.growth * static_cast<double>(total_length(rels) + 16)));

  while (true) {
    // occurrences of each generator over all relators
    std::vector<std::size_t> occ(n, 0);
    for (const auto& r : rels)
      for (Letter l : r) ++occ[generator_of(l)];
    struct Candidate {
      std::size_t cost, rel;
      int gen;
      std::size_t len;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (opt.max_relator && rels[i].size() > opt.max_relator) continue;
      std::map<int, std::size_t> here;
      for (Letter l : rels[i]) ++here[generator_of(l)];
      for (auto [gen, c] : here) {
        if (c != 1) continue;
        const std::size_t elsewhere = occ[gen] - 1;
        cands.push_back({elsewhere * (rels[i].size() - 1), i, gen, rels[i].size()});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
      if (x.len != y.len) return x.len < y.len;
      if (x.cost != y.cost) return x.cost < y.cost;
      return x.gen > y.gen;
    });
    bool done = false;
    for (const auto& cand : cands) {
      const Word& r = rels[cand.rel];
      std::size_t pos = 0;
      while (generator_of(r[pos]) != cand.gen) ++pos;
      // r = u x^e v, so x^e = u^-1 v^-1 as a cyclic word starting after x
      Word rest(r.begin() + pos + 1, r.end());
      rest.insert(rest.end(), r.begin(), r.begin() + pos);
      Word expr = r[pos] > 0 ? inverse(rest) : rest;
      std::vector<Word> next;
      for (std::size_t i = 0; i < rels.size(); ++i)
        if (i != cand.rel) next.push_back(substitute(rels[i], cand.gen, expr));
      tidy(next);
      if (total_length(next) > cap) continue;
      rels = std::move(next);
      for (auto& s : subst) s = substitute(s, cand.gen, expr);
      alive[cand.gen] = 0;
      done = true;
      break;
    }
    if (!done) break;
  }

  // renumber the surviving generators
  std::vector<int> newid(n, -1);
  Simplified out;
  out.presentation.m = p.m;
  out.presentation.mod_sign = p.mod_sign;
  for (int k = 0; k < n; ++k)
    if (alive[k]) {
      newid[k] = static_cast<int>(out.presentation.generators.size());
      out.presentation.generators.push_back(p.generators[k]);
    }
  auto renumber = [&](const Word& w) {
    Word o;
    for (Letter l : w) o.push_back(letter(newid[generator_of(l)], l < 0));
    return o;
  };
  for (const auto& r : rels) {
    out.presentation.relators.push_back(renumber(r));
    out.presentation.kinds.push_back(RelatorKind::Derived);
  }
  for (const auto& s : subst) out.substitution.push_back(renumber(s));
  return out;
}

Word rewrite(const Simplified& s, const Word& w) {
  Word out;
  for (Letter l : w) {
    const Word& e = s.substitution.at(generator_of(l));
    if (l > 0) {
      out.insert(out.end(), e.begin(), e.end());
    } else {
      Word inv = inverse(e);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

// ---------------------------------------------------------------------------

Abelianization abelianization(int ngens, const std::vector<Word>& relators) {
  Abelianization ab;
  if (relators.empty()) {
    ab.free_rank = static_cast<std::size_t>(ngens);
    return ab;
  }
  ZMatrix m(relators.size(), ngens);
  for (std::size_t i = 0; i < relators.size(); ++i)
    for (Letter l : relators[i]) m(i, generator_of(l)) += l > 0 ? 1 : -1;
  auto d = smith_diagonal(m);
  std::size_t rk = 0;
  for (const auto& x : d) {
    if (sgn(x) == 0) continue;
    ++rk;
    if (x != 1) ab.torsion.push_back(x);
  }
  ab.free_rank = static_cast<std::size_t>(ngens) - rk;
  return ab;
}

std::string Abelianization::to_string() const {
  std::vector<std::string> parts;
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  if (parts.empty()) return "1";
  std::string s = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) s += " x " + parts[k];
  return s;
}

}  // namespace vor
