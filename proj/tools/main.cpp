// Command line front end: perfect, present, word, verify, abelianize.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "vorunits/output.hpp"
#include "vorunits/problem.hpp"
#include "vorunits/subgroup.hpp"
#include "vorunits/torsion.hpp"
#include "vorunits/word_solver.hpp"

using namespace vor;
namespace fs = std::filesystem;

namespace {

enum Exit { Ok = 0, VerifyFailed = 1, BadInput = 2, Budget = 3, Failure = 4 };

struct StageError : std::runtime_error {
  StageError(std::string stage, const Error& e)
      : std::runtime_error(e.what()), stage(std::move(stage)), kind(e.kind()) {}
  std::string stage;
  ErrorKind kind;
};

template <class F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

struct Options {
  std::string problem;
  std::string mode;
  std::size_t max_orbits = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool deep = false;
  bool norm_one = false;
  bool torsion = false;
};

struct Run {
  ProblemSpec spec;
  Instance inst;
  VoronoiGraph graph;
  std::optional<UnitPresentation> pres;
  std::optional<GroupPresentation> subgroup;  // positive reduced norm, when asked for
  std::optional<Simplified> simple;
  bool deep = false;
  bool norm_one = false;
  bool torsion = false;
  std::optional<TorsionResult> torsion_result;

  const GroupPresentation& presented() const { return subgroup ? *subgroup : pres->raw; }
};

Run load(const Options& o) {
  Run r;
  r.spec = stage("parse", [&] { return read_problem_file(o.problem); });
  if (o.mode == "units") r.spec.mod_sign = false;
  else if (o.mode == "units-mod-center") r.spec.mod_sign = true;
  if (o.max_orbits) r.spec.max_orbits = o.max_orbits;
  if (o.seed) r.spec.seed = *o.seed;
  r.inst = stage("setup", [&] { return instantiate(r.spec); });
  r.deep = o.deep;
  r.norm_one = o.norm_one;
  r.torsion = o.torsion;
  if (r.norm_one && r.torsion)
    throw StageError("parse", Error(ErrorKind::ValidationError, "--torsion and --norm-one cannot be combined"));
  return r;
}

void run_voronoi(Run& r) {
  VoronoiOptions vo;
  vo.mod_sign = r.spec.mod_sign;
  vo.max_orbits = r.spec.max_orbits;
  r.graph = stage("voronoi", [&] { return enumerate_perfect_forms(*r.inst.chart, vo); });
}

void run_presentation(Run& r) {
  r.pres = stage("presentation", [&] { return build_presentation(*r.inst.chart, r.graph); });
  if (r.norm_one)
    r.subgroup = stage("subgroup", [&] { return positive_norm_subgroup(*r.inst.arithmetic, r.pres->raw); });
  SimplifyOptions so;
  if (r.deep) so.max_relator = 0;
  r.simple = stage("simplify", [&] { return simplify(r.presented(), so); });
  if (r.torsion) {
    r.torsion_result = stage("torsion", [&] { return torsion_generators(*r.inst.chart, r.graph, *r.pres, *r.simple); });
    if (r.torsion_result) r.simple = r.torsion_result->simplified;
  }
}

void write_file(const Options& o, const std::string& name, const std::string& data) {
  if (o.out.empty()) return;
  fs::create_directories(o.out);
  std::ofstream f(fs::path(o.out) / name);
  f << data;
  if (!f) throw std::runtime_error("cannot write " + (fs::path(o.out) / name).string());
}

int cmd_perfect(const Options& o) {
  Run r = load(o);
  run_voronoi(r);
  std::cout << "orbits: " << r.graph.nodes.size() << "\n";
  for (std::size_t a = 0; a < r.graph.nodes.size(); ++a) {
    const auto& v = r.graph.nodes[a];
    std::cout << "  P" << a << ": |S| = " << v.perfect.minimal.size() / 2 << ", facets " << v.perfect.facets.size()
              << " in " << v.facet_orbits.size() << " orbits, |Stab| = " << v.stabilizer.order() << "\n";
  }
  write_file(o, "graph.json", canonical_dump(graph_json(*r.inst.chart, r.graph)));
  write_file(o, "graph.dot", graph_dot(r.graph));
  return Ok;
}

int cmd_present(const Options& o) {
  Run r = load(o);
  run_voronoi(r);
  run_presentation(r);
  const auto& raw = r.presented();
  const auto& sp = r.simple->presentation;
  Abelianization ab = abelianization(sp);
  std::cout << "raw: " << raw.generators.size() << " generators, " << raw.relators.size() << " relators\n";
  std::cout << "simplified: " << sp.generators.size() << " generators, " << sp.relators.size() << " relators\n";
  std::cout << presentation_text(sp);
  if (r.torsion) {
    if (r.torsion_result)
      std::cout << "torsion generators: orders " << r.torsion_result->orders[0] << ", " << r.torsion_result->orders[1]
                << " (" << r.torsion_result->tests << " coset enumerations)\n";
    else
      std::cout << "torsion generators: none found\n";
  }
  std::cout << "abelianization: " << ab.to_string() << "\n";
  write_file(o, "raw.txt", presentation_text(raw));
  write_file(o, "simplified.txt", presentation_text(sp));
  Json j;
  j["problem"] = r.spec.name;
  j["mode"] = r.spec.mod_sign ? "units-mod-center" : "units";
  j["simplification"] = r.deep ? "deep" : "short relators";
  j["group"] = r.norm_one ? "positive reduced norm" : "all units";
  if (r.torsion_result) {
    Json orders = Json::array();
    for (int x : r.torsion_result->orders) orders.push_back(x);
    j["torsion_generator_orders"] = orders;
  }
  j["raw"] = presentation_json(raw);
  j["simplified"] = presentation_json(sp);
  j["abelianization"] = abelianization_json(ab);
  j["cycle_elements"] = "side transformations of the ridge walk mapped back to orbit representatives";
  write_file(o, "presentation.json", canonical_dump(j));
  return Ok;
}

int cmd_abelianize(const Options& o) {
  Run r = load(o);
  run_voronoi(r);
  run_presentation(r);
  Abelianization ab = abelianization(r.simple->presentation);
  std::cout << ab.to_string() << "\n";
  write_file(o, "abelianization.json", canonical_dump(abelianization_json(ab)));
  return Ok;
}

int cmd_word(const Options& o, const std::string& matrix, const std::string& word) {
  Run r = load(o);
  run_voronoi(r);
  run_presentation(r);
  const auto& raw = r.pres->raw;
  ZMatrix g;
  if (!matrix.empty()) {
    g = stage("parse", [&] {
      try {
        return parse_integer_matrix(Json::parse(matrix));
      } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
      }
    });
    if (g.rows() != static_cast<std::size_t>(raw.m) || g.cols() != static_cast<std::size_t>(raw.m))
      throw StageError("parse", Error(ErrorKind::DimensionMismatch, "matrix must be " + std::to_string(raw.m) +
                                                                        " x " + std::to_string(raw.m)));
  } else {
    Word w = stage("parse", [&] { return parse_word(word, raw.names()); });
    g = raw.evaluate(w);
  }
  WordSolver solver(*r.inst.chart, r.graph, *r.pres, r.spec.seed);
  SolveResult res = stage("word", [&] { return solver.solve(g); });
  Word simple = rewrite(*r.simple, res.word);
  std::cout << "word: " << to_string(res.word, raw.names()) << "\n";
  std::cout << "simplified: " << to_string(simple, r.simple->presentation.names()) << "\n";
  std::cout << "crossings: " << res.crossings << ", retries: " << res.retries << "\n";
  return Ok;
}

int cmd_verify(const Options& o, std::size_t trips) {
  Run r = load(o);
  run_voronoi(r);
  bool ok = true;
  auto report = [&ok](const std::string& what, bool pass, const std::string& detail) {
    std::cout << (pass ? "ok   " : "FAIL ") << what << (detail.empty() ? "" : ": " + detail) << "\n";
    ok = ok && pass;
  };
  TessellationReport tr = check_tessellation(*r.inst.chart, r.graph);
  report("tessellation", tr.ok, tr.ok ? std::to_string(r.graph.nodes.size()) + " orbits" : tr.failures.front());
  run_presentation(r);
  auto fr = r.pres->raw.failing_relators();
  report("raw relators", fr.empty(), std::to_string(r.pres->raw.relators.size() - fr.size()) + "/" +
                                         std::to_string(r.pres->raw.relators.size()) + " trivial");
  const auto& sp = r.simple->presentation;
  auto fs = sp.failing_relators();
  report("simplified relators", fs.empty(),
         std::to_string(sp.relators.size() - fs.size()) + "/" + std::to_string(sp.relators.size()) + " trivial");
  bool subst = true;
  for (std::size_t k = 0; k < r.simple->substitution.size(); ++k)
    subst = subst && sp.represents(r.simple->substitution[k], r.pres->raw.generators[k].value);
  report("substitution", subst, "");
  bool same = abelianization(r.pres->raw).to_string() == abelianization(sp).to_string();
  report("abelianization", same, abelianization(sp).to_string());

  WordSolver solver(*r.inst.chart, r.graph, *r.pres, r.spec.seed);
  std::mt19937_64 rng(r.spec.seed);
  const int ng = static_cast<int>(r.pres->raw.generators.size());
  std::size_t good = 0;
  std::string first_failure;
  for (std::size_t t = 0; t < trips; ++t) {
    Word w;
    std::size_t len = std::uniform_int_distribution<std::size_t>(0, 10)(rng);
    for (std::size_t k = 0; k < len; ++k)
      w.push_back(letter(std::uniform_int_distribution<int>(0, ng - 1)(rng), rng() & 1));
    ZMatrix g = r.pres->raw.evaluate(w);
    try {
      SolveResult s = solver.solve(g);
      if (r.pres->raw.represents(s.word, g) && sp.represents(rewrite(*r.simple, s.word), g)) ++good;
      else if (first_failure.empty()) first_failure = "mismatch for " + to_string(w, r.pres->raw.names());
    } catch (const Error& e) {
      if (first_failure.empty()) first_failure = e.what();
    }
  }
  report("round trips", good == trips,
         std::to_string(good) + "/" + std::to_string(trips) + (first_failure.empty() ? "" : ", " + first_failure));
  return ok ? Ok : VerifyFailed;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::GroupTooLarge:
    case ErrorKind::PerturbationBudgetExceeded: return Budget;
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::OrderNotClosed:
    case ErrorKind::LatticeNotStable:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ReduciblePolynomial:
    case ErrorKind::NoRootInInterval:
    case ErrorKind::MultipleRootsInInterval:
    case ErrorKind::IndefiniteWithoutSplittingData:
    case ErrorKind::NotAUnit: return BadInput;
    default: return Failure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit groups of orders: perfect forms, presentations and the word problem"};
  app.require_subcommand(1);
  Options o;
  std::string matrix, word;
  std::size_t trips = 100;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("problem", o.problem, "problem file")->required()->check(CLI::ExistingFile);
    sub->add_option("--mode", o.mode, "units or units-mod-center (overrides the problem file)")
        ->check(CLI::IsMember({"units", "units-mod-center"}));
    sub->add_option("--max-orbits", o.max_orbits, "orbit budget");
    sub->add_option("--seed", o.seed, "seed for perturbations and random words");
    sub->add_option("--out", o.out, "directory for result files");
    sub->add_flag("--deep", o.deep, "let Tietze eliminations use relators of any length");
    sub->add_flag("--torsion", o.torsion, "for two generators, switch to a generating pair of small finite orders");
  };
  auto* perfect = app.add_subcommand("perfect", "enumerate perfect-form orbits (graph.json, graph.dot)");
  common(perfect);
  auto* present = app.add_subcommand("present", "raw and simplified presentations");
  common(present);
  present->add_flag("--norm-one", o.norm_one, "present the units of positive reduced norm (quaternion algebras over Q)");
  auto* wordc = app.add_subcommand("word", "write a unit as a word in the generators");
  common(wordc);
  auto* input = wordc->add_option_group("input");
  input->add_option("--matrix", matrix, "unit as a JSON matrix on the lattice basis, e.g. [[0,1],[-1,0]]");
  input->add_option("--word", word, "word in the raw generators, e.g. v0s0*e1^-1");
  input->require_option(1);
  auto* verify = app.add_subcommand("verify", "tessellation, relator and round-trip checks");
  common(verify);
  verify->add_option("--round-trips", trips, "number of random words");
  auto* abel = app.add_subcommand("abelianize", "invariant factors of the abelianization");
  common(abel);
  abel->add_flag("--norm-one", o.norm_one, "units of positive reduced norm only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int c = app.exit(e);  // prints help or the message
    return c == 0 ? Ok : BadInput;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = Ok;
  try {
    if (*perfect) code = cmd_perfect(o);
    else if (*present) code = cmd_present(o);
    else if (*wordc) code = cmd_word(o, matrix, word);
    else if (*verify) code = cmd_verify(o, trips);
    else if (*abel) code = cmd_abelianize(o);
  } catch (const StageError& e) {
    std::cerr << "error in stage " << e.stage << ": " << e.what() << "\n";
    return exit_for(e.kind);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Failure;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "time: " << secs << " s\n";
  return code;
}
