#include "vorunits/polyhedral.hpp"

#include <algorithm>

namespace vor {

EVec normalize_direction(EVec v) {
  for (const auto& x : v)
    if (!x.is_zero()) {
      Scalar s = abs(x).inverse();
      for (auto& y : v) y *= s;
      return v;
    }
  return v;
}

namespace {

struct DDRay {
  EVec h;
  boost::dynamic_bitset<> zero;  // processed constraints vanishing on h
};

}  // namespace

std::vector<ConeFacet> cone_facets(const std::vector<EVec>& rays) {
  if (rays.empty()) throw Error(ErrorKind::ValidationError, "cone without rays");
  const std::size_t n = rays[0].size();
  const std::size_t r = rays.size();

  // An initial basis of constraints.
  std::vector<std::size_t> basis;
  {
    EMatrix acc(0, n);
    std::size_t rk = 0;
    for (std::size_t i = 0; i < r && basis.size() < n; ++i) {
      EMatrix ext(acc.rows() + 1, n);
      for (std::size_t a = 0; a < acc.rows(); ++a)
        for (std::size_t b = 0; b < n; ++b) ext(a, b) = acc(a, b);
      for (std::size_t b = 0; b < n; ++b) ext(acc.rows(), b) = rays[i][b];
      std::size_t k = rank(ext);
      if (k > rk) {
        rk = k;
        acc = std::move(ext);
        basis.push_back(i);
      }
    }
    if (basis.size() != n) throw Error(ErrorKind::ValidationError, "rays do not span the space");
  }
  EMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rays[basis[i]][j];
  EMatrix ainv = *inverse(a);

  std::vector<char> processed(r, 0);
  std::vector<DDRay> cur;
  for (std::size_t j = 0; j < n; ++j) {
    DDRay d;
    d.h = normalize_direction(ainv.col(j));
    d.zero.resize(r);
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) d.zero.set(basis[i]);
    cur.push_back(std::move(d));
  }
  for (auto b : basis) processed[b] = 1;
  std::size_t nproc = n;

  for (std::size_t c = 0; c < r; ++c) {
    if (processed[c]) continue;
    std::vector<Scalar> val(cur.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      val[k] = dot(cur[k].h, rays[c]);
      int s = val[k].sign();
      (s > 0 ? pos : (s < 0 ? neg : zer)).push_back(k);
    }
    processed[c] = 1;
    ++nproc;
    std::vector<DDRay> next;
    for (auto k : pos) next.push_back(cur[k]);
    for (auto k : zer) {
      next.push_back(cur[k]);
      next.back().zero.set(c);
    }
    if (!neg.empty()) {
      for (auto p : pos)
        for (auto q : neg) {
          boost::dynamic_bitset<> common = cur[p].zero & cur[q].zero;
          if (common.count() + 2 < n) continue;
          bool adjacent = true;
          for (std::size_t k = 0; k < cur.size() && adjacent; ++k) {
            if (k == p || k == q) continue;
            if (common.is_subset_of(cur[k].zero)) adjacent = false;
          }
          if (!adjacent) continue;
          DDRay d;
          d.h.resize(n);
          const Scalar& vp = val[p];
          const Scalar mq = -val[q];
          for (std::size_t j = 0; j < n; ++j) d.h[j] = vp * cur[q].h[j] + mq * cur[p].h[j];
          d.h = normalize_direction(std::move(d.h));
          d.zero = common;
          d.zero.set(c);
          next.push_back(std::move(d));
        }
    }
    cur = std::move(next);
  }
  (void)nproc;

  std::vector<ConeFacet> out;
  for (auto& d : cur) {
    ConeFacet f;
    f.normal = std::move(d.h);
    for (std::size_t i = 0; i < r; ++i) {
      int s = dot(f.normal, rays[i]).sign();
      if (s < 0) throw Error(ErrorKind::Internal, "facet normal is negative on a ray");
      if (s == 0) f.incidence.push_back(i);
    }
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const ConeFacet& x, const ConeFacet& y) { return x.incidence < y.incidence; });
  return out;
}

}  // namespace vor
