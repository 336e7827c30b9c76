#pragma once

// Invariant factors from determinantal divisors: d_k is the gcd of the k x k
// minors of the relation matrix. Exponential in the matrix size; small inputs only.

#include <algorithm>
#include <string>
#include <vector>

#include "vorunits/presentation.hpp"

namespace oracle {

using vor::Integer;

inline Integer det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<Integer>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[i][c]);
      sub.push_back(std::move(row));
    }
    Integer t = a[0][j] * det(sub);
    s += (j % 2 ? -t : t);
  }
  return s;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Abelianization in the format of vor::Abelianization::to_string.
inline std::string abelianization(int ngens, const std::vector<vor::Word>& rels) {
  const std::size_t r = rels.size(), n = static_cast<std::size_t>(ngens);
  std::vector<std::vector<Integer>> m(r, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (vor::Letter l : rels[i]) m[i][vor::generator_of(l)] += l > 0 ? 1 : -1;
  std::vector<Integer> d{1};
  for (std::size_t k = 1; k <= std::min(r, n); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(r, k, 0, cur, rs);
    subsets(n, k, 0, cur, cs);
    Integer g = 0;
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m[ri[a]][ci[b]];
        Integer x = det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      }
    if (g == 0) break;
    d.push_back(g);
  }
  vor::Abelianization ab;
  for (std::size_t k = 1; k < d.size(); ++k) {
    Integer s = d[k] / d[k - 1];
    if (s != 1) ab.torsion.push_back(s);
  }
  ab.free_rank = n - (d.size() - 1);
  return ab.to_string();
}

}  // namespace oracle
