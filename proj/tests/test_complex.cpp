#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "vorunits/complex.hpp"

using namespace vor;
using namespace testing_support;

TEST_CASE("well-rounded sets") {
  auto s = gl(2);
  CHECK(is_well_rounded(*s.chart, {{1, 0}, {0, 1}}));
  CHECK_FALSE(is_well_rounded(*s.chart, {{1, 0}, {-1, 0}}));
  CHECK_FALSE(is_well_rounded(*s.chart, {}));
}

TEST_CASE("faces of the rank 2 domain") {
  auto s = gl(2);
  auto g = enumerate_perfect_forms(*s.chart, {});
  const PerfectForm& p = g.nodes[0].perfect;
  // every facet holds two rays, so two minimal vectors up to sign
  for (std::size_t f = 0; f < p.facets.size(); ++f) {
    auto c = class_of_face(*s.chart, p, 0, {f});
    CHECK(c.corank == 1);
    CHECK(c.vectors.size() == 4);
    CHECK(c.rays == face_rays(p, {f}));
  }
  // codimension two faces are single rays: not well rounded
  CHECK(ridges(*s.chart, p).empty());
  CHECK_THROWS_AS(class_of_face(*s.chart, p, 0, {0, 1}), Error);
}

TEST_CASE("ridges in rank 3") {
  auto s = gl(3);
  auto g = enumerate_perfect_forms(*s.chart, {});
  const PerfectForm& p = g.nodes[0].perfect;
  auto rs = ridges(*s.chart, p);
  REQUIRE_FALSE(rs.empty());
  for (auto [i, j] : rs) {
    CHECK(i < j);
    auto c = class_of_face(*s.chart, p, 0, {i, j});
    CHECK(c.corank == 2);
    CHECK(is_well_rounded(*s.chart, c.vectors));
    CHECK(s.chart->is_positive_definite(canonical_class_form(*s.chart, c)));
    // the stabilizer permutes S(C)
    FiniteGroup st = class_stabilizer(*s.chart, c, false);
    CHECK(st.order() >= 2);
    for (const auto& h : st.generators())
      for (const auto& x : c.vectors) {
        IVec y(x.size(), 0);
        for (std::size_t r = 0; r < x.size(); ++r)
          for (std::size_t k = 0; k < x.size(); ++k) y[r] += h(r, k).get_si() * x[k];
        CHECK(std::binary_search(c.vectors.begin(), c.vectors.end(), y));
      }
  }
}

TEST_CASE("inversions") {
  auto s = gl(2);
  auto g = enumerate_perfect_forms(*s.chart, {});
  auto inv = detect_inversion(*s.chart, g, 0, 0);
  REQUIRE(inv);
  // swaps P_0 with its neighbour across the representative facet
  const auto& node = g.nodes[0];
  EVec img = left_act(*s.chart, node.perfect.form, *inv);
  CHECK(img == node.edges[0].neighbor_form);
  CHECK(left_act(*s.chart, img, *inv) == node.perfect.form);

  auto q = q23(true);
  VoronoiOptions opt;
  opt.mod_sign = true;
  auto h = enumerate_perfect_forms(*q.chart, opt);
  for (std::size_t a = 0; a < h.nodes.size(); ++a)
    for (std::size_t phi = 0; phi < h.nodes[a].facet_orbits.size(); ++phi)
      CHECK_FALSE(detect_inversion(*q.chart, h, a, phi));
}
