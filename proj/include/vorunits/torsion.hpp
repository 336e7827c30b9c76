#pragma once

// Replaces a small simplified presentation by one on generators of small
// finite order. Candidates are torsion elements of vertex stabilizers and of
// the edge cosets g_e Stab; a candidate tuple is accepted only when coset
// enumeration proves it generates. The old generators are then rewritten
// through the tessellation and the presentation is transformed by Tietze moves.

#include <optional>

#include "vorunits/presentation.hpp"

namespace vor {

/// Multiplicative order of g (modulo -1 when mod_sign), or 0 above cap.
int element_order(const ZMatrix& g, bool mod_sign, int cap = 120);

struct TorsionOptions {
  std::size_t max_generators = 2;
  int max_order = 120;
  std::size_t max_tests = 20000;   // coset enumerations
  std::size_t max_cosets = 100000;
  std::size_t max_ball = 200000;   // elements visited while rewriting
};

struct TorsionResult {
  Simplified simplified;       // substitution expresses the raw generators
  std::vector<int> orders;     // of the new generators
  std::size_t tests = 0;       // coset enumerations run
};

/// nullopt if no tuple of smaller total order was found within the budgets.
std::optional<TorsionResult> torsion_generators(const FormChart& chart, const VoronoiGraph& g,
                                                const UnitPresentation& up, const Simplified& s,
                                                const TorsionOptions& opt = {});

}  // namespace vor
