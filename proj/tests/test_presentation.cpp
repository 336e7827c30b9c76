#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracle.hpp"
#include "vorunits/presentation.hpp"

using namespace vor;
using namespace testing_support;

namespace {

std::string snf_oracle(int ngens, const std::vector<Word>& rels) { return oracle::abelianization(ngens, rels); }

UnitPresentation present(const Setup& s, bool mod_sign, VoronoiGraph& g) {
  VoronoiOptions opt;
  opt.mod_sign = mod_sign;
  g = enumerate_perfect_forms(*s.chart, opt);
  return build_presentation(*s.chart, g);
}

SimplifyOptions deep() {
  SimplifyOptions o;
  o.max_relator = 0;
  return o;
}

}  // namespace

TEST_CASE("abelianization by Smith normal form") {
  const Word a3{1, 1, 1};
  CHECK(abelianization(1, {a3}).to_string() == "Z/3");
  // a^3, b^2, a t b t has exponent matrix [[3,0,0],[0,2,0],[1,1,2]]
  std::vector<Word> rels{{1, 1, 1}, {2, 2}, {1, 3, 2, 3}};
  CHECK(abelianization(3, rels).to_string() == "Z/12");
  CHECK(snf_oracle(3, rels) == "Z/12");
  CHECK(abelianization(2, {}).to_string() == "Z^2");
  CHECK(abelianization(1, {{1}}).to_string() == "1");
  CHECK(abelianization(2, {{1, 1}, {2, 2}}).to_string() == "Z/2 x Z/2");
  // commutator only: Z^2
  CHECK(abelianization(2, {{1, 2, -1, -2}}).to_string() == "Z^2");
}

TEST_CASE("abelianization agrees with the determinantal divisor oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int r = static_cast<int>(rng() % 4);
    std::vector<Word> rels;
    for (int i = 0; i < r; ++i) {
      Word w;
      const int len = 1 + static_cast<int>(rng() % 7);
      for (int k = 0; k < len; ++k) w.push_back(letter(static_cast<int>(rng() % n), rng() % 3 == 0));
      rels.push_back(w);
    }
    CAPTURE(trial);
    CHECK(abelianization(n, rels).to_string() == snf_oracle(n, rels));
  }
}

TEST_CASE("Tietze moves on a toy presentation") {
  // <a, b, c | c a^-1, b^2, a^3, c b c b> ~ <a, b | b^2, a^3, a b a b>
  GroupPresentation p;
  p.m = 1;
  for (const char* n : {"a", "b", "c"}) p.generators.push_back({n, ZMatrix::identity(1)});
  p.relators = {{3, -1}, {2, 2}, {1, 1, 1}, {3, 2, 3, 2}};
  auto s = simplify(p);
  CHECK(s.presentation.generators.size() == 2);
  CHECK(s.presentation.relators.size() == 3);
  CHECK(abelianization(s.presentation).to_string() == abelianization(p).to_string());
  CHECK(s.substitution[2] == Word{1});
  // b^2 is not a length-2 eliminating relator; ab = 1 is
  GroupPresentation q = p;
  q.relators = {{1, 2}, {1, 1, 1}};
  auto t = simplify(q);
  CHECK(t.presentation.generators.size() == 2);
  CHECK(abelianization(t.presentation).to_string() == "Z/3 x Z");
}

TEST_CASE("GL2(Z) presentation") {
  auto s = gl(2);
  VoronoiGraph g;
  auto up = present(s, false, g);
  CHECK(up.raw.failing_relators().empty());
  REQUIRE(up.edges.size() == 1);
  CHECK(up.edges[0].inverted);
  CHECK_FALSE(up.edges[0].tree);  // one vertex: the spanning tree has no edges
  CHECK(up.cycles.empty());
  CHECK(abelianization(up.raw).to_string() == "Z/2 x Z/2");
  CHECK(snf_oracle(static_cast<int>(up.raw.generators.size()), up.raw.relators) == "Z/2 x Z/2");
  auto inv = detect_inversion(*s.chart, g, up.edges[0].a, up.edges[0].phi);
  REQUIRE(inv);
  CHECK_FALSE(g.nodes[0].stabilizer.contains(*inv));
}

TEST_CASE("GL3(Z) presentation") {
  auto s = gl(3);
  VoronoiGraph g;
  auto up = present(s, false, g);
  CHECK(up.raw.failing_relators().empty());
  CHECK(abelianization(up.raw).to_string() == "Z/2");
  for (const auto& opt : {SimplifyOptions{}, deep()}) {
    auto sp = simplify(up.raw, opt);
    CHECK(sp.presentation.failing_relators().empty());
    CHECK(abelianization(sp.presentation).to_string() == "Z/2");
    for (std::size_t k = 0; k < sp.substitution.size(); ++k)
      CHECK(sp.presentation.represents(sp.substitution[k], up.raw.generators[k].value));
  }
}

TEST_CASE("quaternion order over Q(sqrt 2), modulo -1") {
  auto s = q23(true);
  VoronoiGraph g;
  auto up = present(s, true, g);
  CHECK(up.raw.mod_sign);
  CHECK(up.raw.failing_relators().empty());
  CHECK(up.edges.size() == 3);
  for (const auto& e : up.edges) {
    CHECK_FALSE(e.inverted);
    CHECK_FALSE(detect_inversion(*s.chart, g, e.a, e.phi));
  }
  CHECK(abelianization(up.raw).to_string() == "Z/12");

  auto light = simplify(up.raw);
  CHECK(light.presentation.generators.size() == 3);
  CHECK(light.presentation.relators.size() == 3);
  auto full = simplify(up.raw, deep());
  CHECK(full.presentation.generators.size() == 2);
  CHECK(full.presentation.relators.size() == 2);
  for (const auto* sp : {&light, &full}) {
    CHECK(sp->presentation.failing_relators().empty());
    CHECK(abelianization(sp->presentation).to_string() == "Z/12");
    CHECK(snf_oracle(static_cast<int>(sp->presentation.generators.size()), sp->presentation.relators) == "Z/12");
  }
}

TEST_CASE("simplification is idempotent") {
  for (int which = 0; which < 3; ++which) {
    auto s = which == 0 ? gl(2) : which == 1 ? gl(3) : q23(false);
    VoronoiGraph g;
    auto up = present(s, which == 2, g);
    for (const auto& opt : {SimplifyOptions{}, deep()}) {
      auto a = simplify(up.raw, opt);
      auto b = simplify(a.presentation, opt);
      CHECK(b.presentation.generators.size() == a.presentation.generators.size());
      CHECK(b.presentation.relators == a.presentation.relators);
    }
  }
}

TEST_CASE("rewriting words into the simplified generators") {
  auto s = q23(true);
  VoronoiGraph g;
  auto up = present(s, true, g);
  auto sp = simplify(up.raw, deep());
  std::mt19937 rng(3);
  const int n = static_cast<int>(up.raw.generators.size());
  for (int t = 0; t < 50; ++t) {
    Word w;
    for (int k = 0; k < 8; ++k) w.push_back(letter(static_cast<int>(rng() % n), rng() % 2));
    CHECK(sp.presentation.represents(rewrite(sp, w), up.raw.evaluate(w)));
  }
}

TEST_CASE("relators are checked exactly") {
  auto s = gl(2);
  VoronoiGraph g;
  auto up = present(s, false, g);
  GroupPresentation p = up.raw;
  // a^1 alone is not a relation
  p.relators.push_back({1});
  auto bad = p.failing_relators();
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == p.relators.size() - 1);
  // -1 is trivial only modulo the centre
  ZMatrix minus = ZMatrix(2, 2) - ZMatrix::identity(2);
  CHECK(p.is_trivial({}));
  p.mod_sign = true;
  Word w = *g.nodes[0].stabilizer.word_of(minus);
  CHECK(p.is_trivial(w));
  p.mod_sign = false;
  CHECK_FALSE(p.is_trivial(w));
}
