#include "vorunits/word_solver.hpp"

namespace vor {

EVec interior_point(const FormChart& chart, const PerfectForm& p) {
  EVec x(chart.N(), Scalar(0));
  for (const auto& r : p.rays)
    for (int k = 0; k < chart.N(); ++k) x[k] += r[k];
  Scalar t = dot(chart.trace_form(), x);
  Scalar inv = t.inverse();
  for (auto& v : x) v *= inv;
  for (const auto& f : p.facets)
    if (dot(f.normal, x).sign() <= 0) throw Error(ErrorKind::Internal, "interior point on the boundary");
  return x;
}

WordSolver::WordSolver(const FormChart& chart, const VoronoiGraph& g, const UnitPresentation& p, std::uint64_t seed)
    : chart_(&chart), graph_(&g), pres_(&p), rng_(seed), trace_(chart.trace_form()) {
  pull_.resize(g.nodes.size());
  for (std::size_t a = 0; a < g.nodes.size(); ++a) pull_[a].resize(g.nodes[a].perfect.facets.size());
}

const EMatrix& WordSolver::pull_matrix(std::size_t a, std::size_t f) {
  auto& slot = pull_[a][f];
  if (!slot) slot = chart_->point_action(inverse_unit(pres_->sides[a][f].g));
  return *slot;
}

EVec WordSolver::perturbed_start() {
  const PerfectForm& p = graph_->nodes[0].perfect;
  std::uniform_int_distribution<long> d(1, 997);
  EVec x(chart_->N(), Scalar(0));
  for (const auto& r : p.rays) {
    Scalar w(Rational(1) + Rational(d(rng_), 997));
    for (int k = 0; k < chart_->N(); ++k) x[k] += w * r[k];
  }
  return x;
}

SolveResult WordSolver::walk(const ZMatrix& unit, const EVec& start, const EVec& end) {
  const VoronoiGraph& g = *graph_;
  SolveResult res;
  EVec p = start;
  EVec q = chart_->point_action(unit) * end;
  std::size_t c = 0;
  ZMatrix acc = ZMatrix::identity(chart_->m());
  Word w;
  Scalar s_cur(0);
  for (std::size_t step = 0;; ++step) {
    if (step > max_steps) throw Error(ErrorKind::NoProgress, "word solver exceeded its step budget");
    const PerfectForm& pc = g.nodes[c].perfect;
    std::optional<Scalar> best;
    std::size_t exit = 0, ties = 0;
    for (std::size_t f = 0; f < pc.facets.size(); ++f) {
      const EVec& h = pc.facets[f].normal;
      Scalar alpha = dot(h, p), beta = dot(h, q);
      Scalar d = alpha - beta;
      if (d.sign() <= 0) continue;
      Scalar s = alpha / d;
      if (!best || s < *best) {
        best = s;
        exit = f;
        ties = 1;
      } else if (s == *best) {
        ++ties;
      }
    }
    if (!best || *best >= Scalar(1)) break;  // the target lies in this domain
    // the parameter along the segment must increase strictly at every crossing
    if (*best <= s_cur || ties > 1) throw Error(ErrorKind::AmbiguousCrossing, "segment meets a ridge");
    s_cur = *best;
    const Side& side = pres_->sides[c][exit];
    const EMatrix& m = pull_matrix(c, exit);
    p = m * p;
    q = m * q;
    acc = acc * side.g;
    w = concat(w, side.w);
    c = side.target;
    ++res.crossings;
  }
  if (c != 0) throw Error(ErrorKind::Internal, "walk ended outside the start orbit");
  ZMatrix rest = inverse_unit(acc) * unit;
  w = concat(w, pres_->stabilizer_word(g, 0, rest));
  res.word = free_reduce(w);
  return res;
}

SolveResult WordSolver::solve(const ZMatrix& unit) {
  if (!chart_->arithmetic().is_unit_rep(unit)) throw Error(ErrorKind::NotAUnit, "matrix is not a unit of the order");
  EVec start = interior_point(*chart_, graph_->nodes[0].perfect), end = start;
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    try {
      SolveResult r = walk(unit, start, end);
      r.retries = attempt;
      if (!pres_->raw.represents(r.word, unit))
        throw Error(ErrorKind::Internal, "solved word does not evaluate to the unit");
      return r;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AmbiguousCrossing) throw;
      // independent endpoints: for involutions x -> g(x) always meets the fixed locus
      start = perturbed_start();
      end = perturbed_start();
    }
  }
  throw Error(ErrorKind::PerturbationBudgetExceeded, "segment kept meeting ridges");
}

}  // namespace vor
