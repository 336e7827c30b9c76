#pragma once

// Writes a unit as a word in the presentation generators by following the
// segment from an interior point x of P_0 to g(x) through the tessellation.

#include <cstdint>
#include <random>

#include "vorunits/presentation.hpp"

namespace vor {

/// Sum of the rays of P (pairing coordinates), scaled to trace 1. Strictly interior.
EVec interior_point(const FormChart& chart, const PerfectForm& p);

struct SolveResult {
  Word word;                 // over the raw presentation generators
  std::size_t crossings = 0;
  std::size_t retries = 0;   // perturbations after ambiguous crossings
};

class WordSolver {
 public:
  WordSolver(const FormChart& chart, const VoronoiGraph& g, const UnitPresentation& p, std::uint64_t seed = 1);

  SolveResult solve(const ZMatrix& unit);
  /// One walk along the segment from start to unit(end), both interior to P_0
  /// (pairing coordinates); throws AmbiguousCrossing when it meets a ridge.
  SolveResult walk(const ZMatrix& unit, const EVec& start, const EVec& end);

  std::size_t max_retries = 20;
  std::size_t max_steps = 1000000;

 private:
  const EMatrix& pull_matrix(std::size_t a, std::size_t f);
  EVec perturbed_start();

  const FormChart* chart_;
  const VoronoiGraph* graph_;
  const UnitPresentation* pres_;
  std::mt19937_64 rng_;
  std::vector<std::vector<std::optional<EMatrix>>> pull_;  // point action of the inverse side transformation
  EVec trace_;
};

}  // namespace vor
