#pragma once

// Presentation of the unit group from the Voronoi graph: vertex stabilizers,
// one generator per edge orbit, and the stabilizer, tree, edge and ridge
// relations. Also Tietze simplification and abelianization.

#include <string>
#include <vector>

#include "vorunits/complex.hpp"

namespace vor {

enum class GeneratorKind { Stabilizer, Edge };

struct Generator {
  std::string name;
  ZMatrix value;
  GeneratorKind kind = GeneratorKind::Stabilizer;
  std::size_t orbit = 0;  // owning vertex (stabilizer) or chosen side (edge)
  std::size_t index = 0;  // generator index in the vertex group, or edge orbit id
};

enum class RelatorKind { Stabilizer = 0, Tree = 1, EdgeStabilizer = 2, Inversion = 3, Ridge = 4, Derived = 5 };

struct GroupPresentation {
  int m = 0;              // matrix size of generator values
  bool mod_sign = false;  // presents the group modulo -1
  std::vector<Generator> generators;
  std::vector<Word> relators;
  std::vector<RelatorKind> kinds;

  std::vector<std::string> names() const;
  /// Product of generator values along w.
  ZMatrix evaluate(const Word& w) const;
  /// True if w evaluates to 1 (or to -1 when mod_sign).
  bool is_trivial(const Word& w) const;
  /// True if w evaluates to g (or to -g when mod_sign).
  bool represents(const Word& w, const ZMatrix& g) const;
  /// Indices of relators that do not evaluate trivially.
  std::vector<std::size_t> failing_relators() const;
};

struct EdgeOrbit {
  std::size_t a = 0, phi = 0;  // chosen side
  std::size_t b = 0, psi = 0;  // the other side
  bool inverted = false;
  bool tree = false;
  ZMatrix value;               // g_e
  int generator = -1;
};

/// Crossing data for one facet f of a representative domain P_a: the domain
/// across f is g(P_target), and w evaluates to g.
struct Side {
  std::size_t target = 0;
  ZMatrix g;
  Word w;
};

struct RidgeCycle {
  std::size_t orbit = 0;
  std::pair<std::size_t, std::size_t> facets;
  std::size_t length = 0;  // number of domains around the ridge
  Word relator;
};

struct UnitPresentation {
  GroupPresentation raw;
  std::vector<std::size_t> stabilizer_offset;  // first generator of each vertex group
  std::vector<EdgeOrbit> edges;
  std::vector<std::vector<int>> edge_of;       // [a][phi] -> edge orbit id
  std::vector<std::vector<Side>> sides;        // [a][facet]
  std::vector<RidgeCycle> cycles;

  /// Word in the generators of Gamma_a for an element of Gamma_a.
  Word stabilizer_word(const VoronoiGraph& g, std::size_t a, const ZMatrix& h) const;
};

UnitPresentation build_presentation(const FormChart& chart, const VoronoiGraph& g);

/// Tietze-simplified presentation; substitution[k] expresses the original
/// generator k in the new generators.
struct Simplified {
  GroupPresentation presentation;
  std::vector<Word> substitution;
};

struct SimplifyOptions {
  /// Only relators of at most this length define eliminated generators; 0 means any length.
  std::size_t max_relator = 2;
  /// Eliminations may not let the total relator length exceed this multiple of the start.
  double growth = 4.0;
  std::size_t max_length = 200000;
};

Simplified simplify(const GroupPresentation& p, const SimplifyOptions& opt = {});
/// Rewrites a word in the original generators into the simplified ones.
Word rewrite(const Simplified& s, const Word& w);

struct Abelianization {
  std::vector<Integer> torsion;  // invariant factors > 1
  std::size_t free_rank = 0;
  std::string to_string() const;
};

Abelianization abelianization(int ngens, const std::vector<Word>& relators);
inline Abelianization abelianization(const GroupPresentation& p) {
  return abelianization(static_cast<int>(p.generators.size()), p.relators);
}

}  // namespace vor
