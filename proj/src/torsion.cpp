#include "vorunits/torsion.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

#include "vorunits/voronoi.hpp"

namespace vor {

namespace {

struct Candidate {
  ZMatrix value;
  Word word;  // in the simplified generators
  int order = 0;
  GeneratorKind kind = GeneratorKind::Stabilizer;
  std::size_t orbit = 0;
};

std::string key_of(const ZMatrix& m) {
  std::string k;
  for (const auto& x : m.data()) {
    k += x.get_str();
    k += ',';
  }
  return k;
}

std::string key_of(const EVec& v) {
  std::string k;
  for (const auto& x : v) {
    k += x.str();
    k += ';';
  }
  return k;
}

Word substitute_all(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (Letter l : w) {
    const Word& e = images.at(generator_of(l));
    if (l > 0) out.insert(out.end(), e.begin(), e.end());
    else {
      Word inv = inverse(e);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return free_reduce(out);
}

std::vector<Candidate> candidates(const VoronoiGraph& g, const UnitPresentation& up, const Simplified& s,
                                  int max_order) {
  const bool ms = g.mod_sign;
  std::vector<Candidate> out;
  std::map<std::string, std::size_t> seen;
  auto add = [&](const ZMatrix& m, const Word& raw, GeneratorKind kind, std::size_t orbit) {
    ZMatrix n = normalize_sign(m, ms);
    if (is_scalar_sign(n) && (ms || n == ZMatrix::identity(n.rows()))) return;
    const std::string k = key_of(n);
    if (seen.count(k)) return;
    seen[k] = out.size();
    const int o = element_order(n, ms, max_order);
    if (o == 0) return;
    out.push_back({n, rewrite(s, raw), o, kind, orbit});
  };
  for (std::size_t a = 0; a < g.nodes.size(); ++a)
    for (const auto& h : g.nodes[a].stabilizer.elements())
      add(h, up.stabilizer_word(g, a, h), GeneratorKind::Stabilizer, a);
  for (const auto& e : up.edges) {
    if (e.generator < 0) continue;
    for (std::size_t side : {e.a, e.b})
      for (const auto& h : g.nodes[side].stabilizer.elements()) {
        Word raw{letter(e.generator)};
        Word hw = up.stabilizer_word(g, side, h);
        raw.insert(raw.end(), hw.begin(), hw.end());
        add(e.value * h, free_reduce(raw), GeneratorKind::Edge, e.a);
      }
  }
  return out;
}

// Words in the new generators for every raw generator, found by walking the
// Cayley graph of the new generators over the domains w(P_b).
std::optional<std::vector<Word>> raw_in_new(const FormChart& chart, const VoronoiGraph& g, const UnitPresentation& up,
                                            const std::vector<ZMatrix>& gens, std::size_t max_ball) {
  const bool ms = g.mod_sign;
  const std::size_t nb = g.nodes.size();
  const int m = up.raw.m;
  struct Elem {
    ZMatrix value;
    Word word;
  };
  std::vector<ZMatrix> inv;
  for (const auto& x : gens) inv.push_back(inverse_unit(x));

  // Schreier elements of each vertex stabilizer, closed with words as they arrive
  std::vector<std::unordered_map<std::string, Elem>> stab(nb);
  std::vector<std::vector<Elem>> schreier(nb);
  for (std::size_t b = 0; b < nb; ++b) stab[b][key_of(normalize_sign(ZMatrix::identity(m), ms))] = {ZMatrix::identity(m), {}};
  auto close = [&](std::size_t b, const Elem& s) {
    if (stab[b].count(key_of(normalize_sign(s.value, ms)))) return;
    schreier[b].push_back(s);
    std::vector<Elem> queue;
    for (const auto& [k, e] : stab[b]) queue.push_back(e);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      if (stab[b].size() > g.nodes[b].stabilizer.order()) throw Error(ErrorKind::Internal, "stabilizer overflow");
      for (const auto& t : schreier[b]) {
        Elem p{queue[head].value * t.value, free_reduce(concat(queue[head].word, t.word))};
        const std::string k = key_of(normalize_sign(p.value, ms));
        if (stab[b].count(k)) continue;
        stab[b][k] = p;
        queue.push_back(p);
      }
    }
  };
  auto complete = [&](std::size_t b) { return stab[b].size() == g.nodes[b].stabilizer.order(); };

  // raw edge generators r: a word w with w(P_0) = r(P_0)
  const EVec& f0 = g.nodes[0].perfect.form;
  std::map<std::string, std::vector<std::size_t>> wanted;
  std::vector<std::optional<Word>> edge_word(up.raw.generators.size());
  for (std::size_t k = 0; k < up.raw.generators.size(); ++k)
    if (up.raw.generators[k].kind == GeneratorKind::Edge)
      wanted[key_of(left_act(chart, f0, up.raw.generators[k].value))].push_back(k);

  std::vector<std::map<std::string, Elem>> domains(nb);
  std::deque<Elem> queue{{ZMatrix::identity(m), {}}};
  std::map<std::string, bool> visited{{key_of(normalize_sign(ZMatrix::identity(m), ms)), true}};
  std::size_t found_edges = 0, need_edges = 0;
  for (const auto& [k, v] : wanted) need_edges += v.size();
  auto done = [&]() {
    if (found_edges < need_edges) return false;
    for (std::size_t b = 0; b < nb; ++b)
      if (!complete(b)) return false;
    return true;
  };
  while (!queue.empty() && !done()) {
    Elem cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t b = 0; b < nb; ++b) {
      const std::string dk = key_of(left_act(chart, g.nodes[b].perfect.form, cur.value));
      auto it = domains[b].find(dk);
      if (it == domains[b].end()) {
        domains[b][dk] = cur;
        if (b == 0) {
          auto w = wanted.find(dk);
          if (w != wanted.end())
            for (std::size_t k : w->second)
              if (!edge_word[k]) {
                edge_word[k] = cur.word;
                ++found_edges;
              }
        }
      } else if (!complete(b)) {
        // it(P_b) = cur(P_b): it^-1 cur fixes P_b
        close(b, {inverse_unit(it->second.value) * cur.value, free_reduce(concat(inverse(it->second.word), cur.word))});
      }
    }
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (bool iv : {false, true}) {
        Elem next{cur.value * (iv ? inv[k] : gens[k]), free_reduce(concat(cur.word, {letter(static_cast<int>(k), iv)}))};
        const std::string nk = key_of(normalize_sign(next.value, ms));
        if (visited.count(nk)) continue;
        visited[nk] = true;
        if (visited.size() > max_ball) return std::nullopt;
        queue.push_back(std::move(next));
      }
  }
  if (!done()) return std::nullopt;

  std::vector<Word> out(up.raw.generators.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Generator& r = up.raw.generators[k];
    if (r.kind == GeneratorKind::Stabilizer) {
      out[k] = stab[r.orbit].at(key_of(normalize_sign(r.value, ms))).word;
    } else {
      // r = w (w^-1 r) with w^-1 r in Stab(P_0)
      const Word& w = *edge_word[k];
      ZMatrix wv = ZMatrix::identity(m);
      for (Letter l : w) wv = wv * (l > 0 ? gens[generator_of(l)] : inv[generator_of(l)]);
      const ZMatrix s = inverse_unit(wv) * r.value;
      out[k] = free_reduce(concat(w, stab[0].at(key_of(normalize_sign(s, ms))).word));
    }
  }
  return out;
}

}  // namespace

int element_order(const ZMatrix& g, bool mod_sign, int cap) {
  ZMatrix x = g;
  for (int k = 1; k <= cap; ++k) {
    if (mod_sign ? is_scalar_sign(x) : x == ZMatrix::identity(x.rows())) return k;
    x = x * g;
  }
  return 0;
}

std::optional<TorsionResult> torsion_generators(const FormChart& chart, const VoronoiGraph& g,
                                                const UnitPresentation& up, const Simplified& s,
                                                const TorsionOptions& opt) {
  const GroupPresentation& p = s.presentation;
  const std::size_t k = p.generators.size();
  if (k != 2 || k > opt.max_generators) return std::nullopt;
  const int ng = static_cast<int>(k);

  long current = 0;
  for (const auto& x : p.generators) {
    const int o = element_order(x.value, p.mod_sign, opt.max_order);
    current += o ? o : 1L << 30;
  }
  auto pool = candidates(g, up, s, opt.max_order);
  std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.word.size() < b.word.size();
  });
  struct Pair {
    long sum;
    std::size_t len, i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const long sum = pool[i].order + pool[j].order;
      if (sum >= current) break;
      pairs.push_back({sum, pool[i].word.size() + pool[j].word.size(), i, j});
    }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.sum != b.sum) return a.sum < b.sum;
    return a.len < b.len;
  });

  TorsionResult res;
  std::optional<std::pair<std::size_t, std::size_t>> chosen;
  for (const auto& pr : pairs) {
    std::vector<Word> quotient = p.relators;
    quotient.push_back(pool[pr.i].word);
    quotient.push_back(pool[pr.j].word);
    const Abelianization ab = abelianization(ng, quotient);
    if (ab.free_rank || !ab.torsion.empty()) continue;
    if (res.tests++ >= opt.max_tests) break;
    auto idx = coset_enumeration(ng, p.relators, {pool[pr.i].word, pool[pr.j].word}, opt.max_cosets);
    if (idx && *idx == 1) {
      chosen = {pr.i, pr.j};
      break;
    }
  }
  if (!chosen) return std::nullopt;

  const Candidate& u = pool[chosen->first];
  const Candidate& v = pool[chosen->second];
  auto raw = raw_in_new(chart, g, up, {u.value, v.value}, opt.max_ball);
  if (!raw) return std::nullopt;

  // old simplified generator j is the surviving raw generator with substitution {j}
  std::vector<Word> old_in_new(k);
  for (std::size_t r = 0; r < s.substitution.size(); ++r)
    if (s.substitution[r].size() == 1 && s.substitution[r][0] > 0)
      old_in_new[generator_of(s.substitution[r][0])] = (*raw)[r];

  GroupPresentation q;
  q.m = p.m;
  q.mod_sign = p.mod_sign;
  const char* names[] = {"a", "b"};
  std::size_t n = 0;
  for (const Candidate* c : {&u, &v}) {
    Generator gen;
    gen.name = names[n++];
    gen.value = c->value;
    gen.kind = c->kind;
    gen.orbit = c->orbit;
    q.generators.push_back(std::move(gen));
  }
  for (int i = 0; i < 2; ++i) {
    const Candidate& c = i ? v : u;
    q.relators.push_back(power(Word{letter(i)}, c.order));
    q.relators.push_back(free_reduce(concat(Word{letter(i, true)}, substitute_all(c.word, old_in_new))));
  }
  for (const auto& r : p.relators) q.relators.push_back(substitute_all(r, old_in_new));
  q.kinds.assign(q.relators.size(), RelatorKind::Derived);

  SimplifyOptions tidy;
  tidy.max_relator = 1;
  Simplified t = simplify(q, tidy);
  if (t.presentation.generators.size() != 2) return std::nullopt;
  res.simplified.presentation = std::move(t.presentation);
  for (const auto& w : *raw) res.simplified.substitution.push_back(rewrite(t, w));
  res.orders = {u.order, v.order};
  return res;
}

}  // namespace vor
