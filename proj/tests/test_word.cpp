#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "vorunits/word_solver.hpp"

using namespace vor;
using namespace testing_support;

namespace {

struct Solved {
  Setup s;
  VoronoiGraph g;
  UnitPresentation up;
};

Solved prepare(Setup s, bool mod_sign) {
  Solved out{std::move(s), {}, {}};
  VoronoiOptions opt;
  opt.mod_sign = mod_sign;
  out.g = enumerate_perfect_forms(*out.s.chart, opt);
  out.up = build_presentation(*out.s.chart, out.g);
  return out;
}

Word random_word(std::mt19937_64& rng, int ngens, int max_len) {
  Word w;
  const int len = static_cast<int>(rng() % (max_len + 1));
  for (int k = 0; k < len; ++k) w.push_back(letter(static_cast<int>(rng() % ngens), rng() & 1));
  return w;
}

void round_trips(Solved& x, int count, std::uint64_t seed) {
  WordSolver solver(*x.s.chart, x.g, x.up, seed);
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(x.up.raw.generators.size());
  for (int t = 0; t < count; ++t) {
    Word w = random_word(rng, n, 10);
    ZMatrix g = x.up.raw.evaluate(w);
    SolveResult r = solver.solve(g);
    CAPTURE(to_string(w, x.up.raw.names()));
    CHECK(x.up.raw.represents(r.word, g));
  }
}

}  // namespace

TEST_CASE("word text round trip") {
  std::vector<std::string> names{"a", "b", "t"};
  Word w{1, 1, 1, 3, -2, 3};
  CHECK(to_string(w, names) == "a^3*t*b^-1*t");
  CHECK(parse_word(to_string(w, names), names) == w);
  CHECK(parse_word("1", names).empty());
  CHECK(parse_word(" a * a^-1 ", names).empty());
  CHECK_THROWS_AS(parse_word("a*c", names), Error);
  CHECK_THROWS_AS(parse_word("a^x", names), Error);
}

TEST_CASE("interior point of the start domain") {
  auto x = prepare(gl(2), false);
  EVec p = interior_point(*x.s.chart, x.g.nodes[0].perfect);
  CHECK(dot(x.s.chart->trace_form(), p) == Scalar(1));
}

TEST_CASE("one crossing for a side transformation") {
  auto x = prepare(gl(2), false);
  WordSolver solver(*x.s.chart, x.g, x.up);
  // the unit carrying P_0 to its neighbour across facet 0
  const Side& side = x.up.sides[0][0];
  SolveResult r = solver.solve(side.g);
  CHECK(r.crossings == 1);
  CHECK(x.up.raw.represents(r.word, side.g));
  CHECK(r.word == free_reduce(side.w));
}

TEST_CASE("stabilizer elements need no crossing") {
  auto x = prepare(gl(2), false);
  WordSolver solver(*x.s.chart, x.g, x.up);
  for (const auto& h : x.g.nodes[0].stabilizer.elements()) {
    SolveResult r = solver.solve(h);
    CHECK(r.crossings == 0);
    CHECK(x.up.raw.represents(r.word, h));
  }
}

TEST_CASE("non-units are rejected") {
  auto x = prepare(gl(2), false);
  WordSolver solver(*x.s.chart, x.g, x.up);
  ZMatrix m = ZMatrix::identity(2);
  m(0, 0) = 2;
  CHECK_THROWS_AS(solver.solve(m), Error);
}

TEST_CASE("round trips in GL2(Z) and GL3(Z)") {
  auto a = prepare(gl(2), false);
  round_trips(a, 100, 11);
  auto b = prepare(gl(3), false);
  round_trips(b, 30, 12);
}

TEST_CASE("round trips for the quaternion order modulo -1") {
  auto x = prepare(q23(true), true);
  round_trips(x, 100, 13);
}

TEST_CASE("long words") {
  auto x = prepare(q23(false), true);
  WordSolver solver(*x.s.chart, x.g, x.up, 5);
  std::mt19937_64 rng(5);
  const int n = static_cast<int>(x.up.raw.generators.size());
  for (int t = 0; t < 5; ++t) {
    Word w;
    for (int k = 0; k < 40; ++k) w.push_back(letter(static_cast<int>(rng() % n), rng() & 1));
    ZMatrix g = x.up.raw.evaluate(w);
    CHECK(x.up.raw.represents(solver.solve(g).word, g));
  }
}

TEST_CASE("the solver is deterministic for a fixed seed") {
  auto x = prepare(q23(true), true);
  WordSolver s1(*x.s.chart, x.g, x.up, 9), s2(*x.s.chart, x.g, x.up, 9);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    ZMatrix g = x.up.raw.evaluate(random_word(rng, static_cast<int>(x.up.raw.generators.size()), 10));
    CHECK(s1.solve(g).word == s2.solve(g).word);
  }
}
