#include "vorunits/subgroup.hpp"

#include <deque>

namespace vor {

GroupPresentation reidemeister_schreier(const GroupPresentation& p,
                                        const std::vector<std::vector<std::size_t>>& perms) {
  const std::size_t ng = p.generators.size();
  if (perms.size() != ng) throw Error(ErrorKind::DimensionMismatch, "one coset permutation per generator");
  const std::size_t k = ng ? perms[0].size() : 1;
  for (const auto& pi : perms)
    if (pi.size() != k) throw Error(ErrorKind::DimensionMismatch, "coset permutations of different degree");

  // Schreier transversal by breadth first search from coset 0.
  std::vector<Word> rep(k);
  std::vector<bool> seen(k, false);
  std::vector<std::vector<bool>> tree(k, std::vector<bool>(ng, false));  // (c, x) with rep(c.x) = rep(c) x
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  std::vector<std::vector<std::size_t>> inv(ng, std::vector<std::size_t>(k));
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t c = 0; c < k; ++c) inv[g][perms[g][c]] = c;
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < ng; ++g) {
      const std::size_t d = perms[g][c];
      if (!seen[d]) {
        seen[d] = true;
        tree[c][g] = true;
        rep[d] = rep[c];
        rep[d].push_back(letter(static_cast<int>(g)));
        queue.push_back(d);
      }
    }
    for (std::size_t g = 0; g < ng; ++g) {
      const std::size_t d = inv[g][c];
      if (!seen[d]) {
        // d.g = c, so rep(d) = rep(c) g^-1 keeps the transversal prefix closed
        seen[d] = true;
        tree[d][g] = true;
        rep[d] = rep[c];
        rep[d].push_back(letter(static_cast<int>(g), true));
        queue.push_back(d);
      }
    }
  }
  for (std::size_t c = 0; c < k; ++c)
    if (!seen[c]) throw Error(ErrorKind::ValidationError, "coset action is not transitive");

  GroupPresentation out;
  out.m = p.m;
  out.mod_sign = p.mod_sign;
  const auto names = p.names();
  std::vector<std::vector<int>> id(k, std::vector<int>(ng, -1));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t g = 0; g < ng; ++g) {
      if (tree[c][g]) continue;
      id[c][g] = static_cast<int>(out.generators.size());
      Generator s = p.generators[g];
      s.name = names[g] + "_" + std::to_string(c);
      s.kind = GeneratorKind::Edge;
      s.value = p.evaluate(rep[c]) * p.generators[g].value * p.evaluate(inverse(rep[perms[g][c]]));
      out.generators.push_back(std::move(s));
    }

  // Rewrite c r c^-1 for every coset c and relator r.
  for (std::size_t c = 0; c < k; ++c)
    for (const Word& r : p.relators) {
      Word w;
      std::size_t cur = c;
      for (Letter l : r) {
        const std::size_t g = static_cast<std::size_t>(generator_of(l));
        if (l > 0) {
          if (id[cur][g] >= 0) w.push_back(letter(id[cur][g]));
          cur = perms[g][cur];
        } else {
          const std::size_t d = inv[g][cur];
          if (id[d][g] >= 0) w.push_back(letter(id[d][g], true));
          cur = d;
        }
      }
      if (cur != c) throw Error(ErrorKind::ValidationError, "relator does not act trivially on cosets");
      w = free_reduce(w);
      if (w.empty()) continue;
      out.relators.push_back(std::move(w));
      out.kinds.push_back(RelatorKind::Derived);
    }
  return out;
}

Rational reduced_norm(const AlgebraData& alg, const QVec& x) {
  // x = s 1 is central: nrd = s^2
  std::size_t pivot = alg.dim;
  for (std::size_t i = 0; i < static_cast<std::size_t>(alg.dim); ++i)
    if (alg.one[i] != 0) {
      pivot = i;
      break;
    }
  const Rational s = x[pivot] / alg.one[pivot];
  bool scalar = true;
  for (int i = 0; i < alg.dim; ++i) scalar = scalar && x[i] == s * alg.one[i];
  if (scalar) return s * s;
  // x^2 = t x - n 1: solve from two coordinates where x and 1 are independent
  const QVec x2 = multiply(alg, x, x);
  for (int i = 0; i < alg.dim; ++i)
    for (int j = i + 1; j < alg.dim; ++j) {
      const Rational det = x[i] * alg.one[j] - x[j] * alg.one[i];
      if (det == 0) continue;
      const Rational t = (x2[i] * alg.one[j] - x2[j] * alg.one[i]) / det;
      const Rational n = -(x[i] * x2[j] - x[j] * x2[i]) / det;
      QVec check(alg.dim);
      for (int k = 0; k < alg.dim; ++k) check[k] = t * x[k] - n * alg.one[k];
      if (check != x2) throw Error(ErrorKind::ValidationError, "element does not satisfy a quadratic relation");
      return n;
    }
  throw Error(ErrorKind::Internal, "reduced norm: degenerate element");
}

GroupPresentation positive_norm_subgroup(const Arithmetic& ar, const GroupPresentation& p) {
  if (ar.dim() != 4) throw Error(ErrorKind::ValidationError, "reduced norm needs a quaternion algebra over Q");
  std::vector<std::vector<std::size_t>> perms;
  bool proper = false;
  for (const auto& g : p.generators) {
    const Rational n = reduced_norm(ar.algebra(), ar.element(to_rational(g.value)));
    const bool odd = n < 0;
    proper = proper || odd;
    perms.push_back(odd ? std::vector<std::size_t>{1, 0} : std::vector<std::size_t>{0, 1});
  }
  if (!proper) {
    for (auto& pi : perms) pi = {0};
  }
  return reidemeister_schreier(p, perms);
}

}  // namespace vor
