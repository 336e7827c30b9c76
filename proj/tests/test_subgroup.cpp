#include <doctest.h>

#include "helpers.hpp"
#include "vorunits/subgroup.hpp"
#include "vorunits/voronoi.hpp"

using namespace vor;
using namespace testing_support;

namespace {

GroupPresentation abstract(int ngens, std::vector<Word> rels) {
  GroupPresentation p;
  p.m = 1;
  for (int k = 0; k < ngens; ++k) p.generators.push_back({std::string(1, char('a' + k)), ZMatrix::identity(1)});
  p.relators = std::move(rels);
  return p;
}

std::vector<std::size_t> cycle(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = (i + 1) % k;
  return c;
}

std::vector<std::size_t> fixed(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

}  // namespace

TEST_CASE("Schreier index formula for free groups") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 1; k <= 4; ++k) {
      auto p = abstract(static_cast<int>(n), {});
      std::vector<std::vector<std::size_t>> perms(n, fixed(k));
      perms[0] = cycle(k);
      auto h = reidemeister_schreier(p, perms);
      CHECK(h.generators.size() == 1 + k * (n - 1));
      CHECK(h.relators.empty());
      CHECK(abelianization(h).free_rank == 1 + k * (n - 1));
    }
}

TEST_CASE("subgroups of small finite groups") {
  // index 2 in Z/6 is Z/3
  auto z6 = abstract(1, {{1, 1, 1, 1, 1, 1}});
  CHECK(abelianization(reidemeister_schreier(z6, {cycle(2)})).to_string() == "Z/3");
  // index 3 in Z/6 is Z/2
  CHECK(abelianization(reidemeister_schreier(z6, {cycle(3)})).to_string() == "Z/2");
  // S3 = <a, b | a^3, b^2, (ab)^2>; the sign kernel is A3 = Z/3
  auto s3 = abstract(2, {{1, 1, 1}, {2, 2}, {1, 2, 1, 2}});
  auto a3 = reidemeister_schreier(s3, {fixed(2), cycle(2)});
  CHECK(abelianization(a3).to_string() == "Z/3");
  // a permutation action that does not respect a relator is rejected
  CHECK_THROWS_AS(reidemeister_schreier(z6, {cycle(4)}), Error);
}

TEST_CASE("Schreier generators evaluate to the transversal products") {
  auto s = gl(2);
  VoronoiOptions opt;
  auto g = enumerate_perfect_forms(*s.chart, opt);
  auto up = build_presentation(*s.chart, g);
  // determinant character of GL2(Z) on the raw generators
  std::vector<std::vector<std::size_t>> perms;
  for (const auto& x : up.raw.generators) {
    const Integer d = x.value(0, 0) * x.value(1, 1) - x.value(0, 1) * x.value(1, 0);
    perms.push_back(d > 0 ? fixed(2) : cycle(2));
  }
  auto h = reidemeister_schreier(up.raw, perms);
  CHECK(h.failing_relators().empty());
  for (const auto& x : h.generators) {
    const Integer d = x.value(0, 0) * x.value(1, 1) - x.value(0, 1) * x.value(1, 0);
    CHECK(d == 1);
  }
  // SL2(Z) abelianizes to Z/12
  CHECK(abelianization(h).to_string() == "Z/12");
}

TEST_CASE("reduced norm of quaternions") {
  AlgebraData h = quaternion_definite(-1, -1);
  CHECK(reduced_norm(h, {1, 1, 1, 1}) == 4);
  CHECK(reduced_norm(h, {3, 0, 0, 0}) == 9);
  CHECK(reduced_norm(h, {0, 2, 0, 1}) == 5);
  // x0^2 - 2 x1^2 - 3 x2^2 + 6 x3^2
  AlgebraData m = quaternion_split(2, 3, true, quadratic(2));
  CHECK(reduced_norm(m, {0, 1, 0, 0}) == -2);
  CHECK(reduced_norm(m, {1, 0, 1, 0}) == -2);
  CHECK(reduced_norm(m, {1, 1, 1, 1}) == 2);
  CHECK(reduced_norm(m, {0, 0, 0, 1}) == 6);
}

TEST_CASE("norm one units of the (2,3) order") {
  auto s = q23(true);
  VoronoiOptions opt;
  opt.mod_sign = true;
  auto g = enumerate_perfect_forms(*s.chart, opt);
  auto up = build_presentation(*s.chart, g);
  auto h = positive_norm_subgroup(*s.ar, up.raw);
  CHECK(h.failing_relators().empty());
  for (const auto& x : h.generators)
    CHECK(reduced_norm(s.ar->algebra(), s.ar->element(to_rational(x.value))) > 0);
  auto sp = simplify(h);
  CHECK(sp.presentation.failing_relators().empty());
  CHECK(abelianization(sp.presentation).to_string() == abelianization(h).to_string());
}
