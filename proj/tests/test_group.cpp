#include <doctest.h>

#include "vorunits/group.hpp"

using namespace vor;

namespace {

ZMatrix z2(long a, long b, long c, long d) {
  ZMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("word utilities") {
  Word w{1, 2, -2, 3, -1};
  CHECK(free_reduce(w) == Word{1, 3, -1});
  CHECK(cyclic_reduce(w) == Word{3});
  CHECK(canonical_cyclic(Word{2, 1}) == canonical_cyclic(Word{1, 2}));
  CHECK(canonical_cyclic(Word{-1, -2}) == canonical_cyclic(Word{1, 2}));
  CHECK(inverse(Word{1, -2}) == Word{2, -1});
  CHECK(to_string(Word{1, 1, 1, 3, -2, 3}, {"a", "b", "t"}) == "a^3*t*b^-1*t");
}

TEST_CASE("coset enumeration") {
  CHECK(coset_enumeration(1, {{1, 1, 1}}, {}) == 3);
  CHECK(coset_enumeration(2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2}}, {}) == 6);
  CHECK(coset_enumeration(2, {{1, 1}, {2, 2, 2}, power({1, 2}, 5)}, {}) == 60);
  CHECK(coset_enumeration(2, {{1, 1}, {2, 2, 2}, power({1, 2}, 5)}, {{1}}) == 30);
  // free group of rank 1: overflow
  CHECK_FALSE(coset_enumeration(1, {}, {}, 100).has_value());
}

TEST_CASE("finite matrix groups") {
  // signed permutations of Z^2: dihedral of order 8
  FiniteGroup d4(2, {z2(0, 1, 1, 0), z2(-1, 0, 0, 1)}, false);
  CHECK(d4.order() == 8);
  CHECK(coset_enumeration(static_cast<int>(d4.generators().size()), d4.relators(), {}) == 8);
  for (std::size_t i = 0; i < d4.order(); ++i) CHECK(d4.evaluate(d4.word(i)) == d4.elements()[i]);
  FiniteGroup q(2, {z2(0, 1, 1, 0), z2(-1, 0, 0, 1)}, true);
  CHECK(q.order() == 4);
  // order 6 rotation generates a cyclic group presented by one power
  FiniteGroup c6(2, {z2(1, -1, 1, 0)}, false);
  CHECK(c6.order() == 6);
  CHECK(c6.generators().size() == 1);
  REQUIRE(c6.relators().size() == 1);
  CHECK(c6.relators()[0].size() == 6);
  for (const auto& r : d4.relators()) CHECK(d4.evaluate(r) == ZMatrix::identity(2));
  // Schreier relators with an element outside
  CHECK_FALSE(d4.contains(z2(1, 1, 0, 1)));
  CHECK_THROWS_AS(FiniteGroup(2, {z2(1, 1, 0, 1)}, false, 50), Error);
}
