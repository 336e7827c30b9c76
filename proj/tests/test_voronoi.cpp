#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "vorunits/isometry.hpp"
#include "vorunits/voronoi.hpp"

using namespace vor;
using namespace testing_support;

namespace {

std::vector<std::size_t> stabilizer_orders(const VoronoiGraph& g) {
  std::vector<std::size_t> o;
  for (const auto& n : g.nodes) o.push_back(n.stabilizer.order());
  std::sort(o.begin(), o.end());
  return o;
}

}  // namespace

TEST_CASE("double description") {
  // three independent rays: simplicial cone with 3 facets
  std::vector<EVec> rays{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}};
  auto f = cone_facets(rays);
  CHECK(f.size() == 3);
  // square cone over a square: 4 facets
  std::vector<EVec> sq{{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}};
  auto g = cone_facets(sq);
  CHECK(g.size() == 4);
  for (const auto& x : g) CHECK(x.incidence.size() == 2);
  // octahedron cone: 8 facets
  std::vector<EVec> oct{{1, 0, 0, 1}, {-1, 0, 0, 1}, {0, 1, 0, 1}, {0, -1, 0, 1}, {0, 0, 1, 1}, {0, 0, -1, 1}};
  CHECK(cone_facets(oct).size() == 8);
  // cube cone: 6 facets
  std::vector<EVec> cube;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) cube.push_back({a, b, c, 1});
  auto cf = cone_facets(cube);
  CHECK(cf.size() == 6);
  for (const auto& x : cf) CHECK(x.incidence.size() == 4);
}

TEST_CASE("initial perfect form in rank 2") {
  auto s = gl(2);
  auto p = initial_perfect_form(*s.chart);
  CHECK(p.minimal.size() == 6);
  CHECK(p.facets.size() == 3);
  EVec hex = s.chart->from_gram(to_scalar(rows({{1, Rational(1, 2)}, {Rational(1, 2), 1}})));
  CHECK(isometry_test(*s.chart, p.form, hex));
}

TEST_CASE("GL2(Z)") {
  auto s = gl(2);
  auto g = enumerate_perfect_forms(*s.chart, {});
  REQUIRE(g.nodes.size() == 1);
  CHECK(g.nodes[0].stabilizer.order() == 12);
  CHECK(g.nodes[0].perfect.facets.size() == 3);
  for (const auto& e : g.nodes[0].edges) CHECK(e.target == 0);
  auto rep = check_tessellation(*s.chart, g);
  CHECK(rep.ok);
}

TEST_CASE("GL3(Z)") {
  auto s = gl(3);
  auto g = enumerate_perfect_forms(*s.chart, {});
  REQUIRE(g.nodes.size() == 1);
  CHECK(g.nodes[0].stabilizer.order() == 48);
  CHECK(check_tessellation(*s.chart, g).ok);
}

TEST_CASE("(2,3) split over Q(sqrt 2) and Q(sqrt 3)") {
  auto s = q23(true);
  auto g = enumerate_perfect_forms(*s.chart, {});
  CHECK(g.nodes.size() == 3);
  CHECK(stabilizer_orders(g) == std::vector<std::size_t>{2, 4, 6});
  auto rep = check_tessellation(*s.chart, g);
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok);
  auto t = q23(false);
  auto h = enumerate_perfect_forms(*t.chart, {});
  CHECK(h.nodes.size() == 2);
  CHECK(stabilizer_orders(h) == std::vector<std::size_t>{2, 6});
  CHECK(check_tessellation(*t.chart, h).ok);
}

TEST_CASE("Hurwitz order over imaginary quadratic fields") {
  for (auto [d, count] : {std::pair{7, 1}, {31, 8}}) {
    auto s = cm(d);
    auto g = enumerate_perfect_forms(*s.chart, {});
    CHECK(g.nodes.size() == static_cast<std::size_t>(count));
    CHECK(check_tessellation(*s.chart, g).ok);
  }
}

TEST_CASE("2x2 matrices over the (-1,-3) maximal order") {
  auto s = quat_matrix();
  CHECK(s.chart->N() == 6);
  auto g = enumerate_perfect_forms(*s.chart, {});
  REQUIRE(g.nodes.size() == 1);
  CHECK(g.nodes[0].stabilizer.order() == 720);
  CHECK(check_tessellation(*s.chart, g).ok);
}
