#include <doctest.h>

#include "vorunits/output.hpp"
#include "vorunits/problem.hpp"
#include "vorunits/voronoi.hpp"

using namespace vor;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".problem"; }

ErrorKind kind_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

std::string message_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal GL2 problem") {
  auto p = parse_problem("algebra matrix 2\nlattice 2\n 1 0 0 0\n 0 0 1 0\nend\n");
  auto inst = instantiate(p);
  CHECK(inst.chart->N() == 3);
  CHECK(inst.arithmetic->m() == 2);
  CHECK_FALSE(p.mod_sign);
}

TEST_CASE("fixtures parse and round trip") {
  for (const char* name :
       {"gl2", "gl3", "q23_sqrt2", "q23_sqrt3", "cm_d7", "cm_d31", "cm_d55", "quat_matrix"}) {
    CAPTURE(name);
    ProblemSpec p = read_problem_file(fixture(name));
    CHECK(p.name == name);
    std::string t = to_text(p);
    CHECK(to_text(parse_problem(t)) == t);
  }
}

TEST_CASE("q23 fixture") {
  ProblemSpec p = read_problem_file(fixture("q23_sqrt2"));
  CHECK(p.mod_sign);
  auto inst = instantiate(p);
  CHECK(inst.chart->N() == 3);
  CHECK(inst.chart->field()->degree() == 2);
}

TEST_CASE("structure constants and embedded algebras round trip") {
  // Q x Q as 2x2 diagonal matrices
  const std::string diag =
      "name diag\nalgebra embedded 2 2\n 1 0 0 0\n 0 0 0 1\nend\norder identity\nlattice identity\n";
  ProblemSpec p = parse_problem(diag);
  CHECK(p.images.size() == 2);
  CHECK(to_text(parse_problem(to_text(p))) == to_text(p));

  // Gaussian rationals by structure constants with complex conjugation
  const std::string gauss =
      "algebra structure 2\n product 0 0 0 1\n product 0 1 1 1\n product 1 0 1 1\n product 1 1 0 -1\n"
      " one 1 0\n dagger\n 1 0\n 0 -1\n trace 2 0\nend\nlattice identity\n";
  ProblemSpec g = parse_problem(gauss);
  CHECK(g.constants.size() == 4);
  std::string t = to_text(g);
  CHECK(to_text(parse_problem(t)) == t);
  auto inst = instantiate(g);
  CHECK(inst.arithmetic->m() == 2);
  CHECK(inst.chart->N() == 1);
}

TEST_CASE("field scalars") {
  const std::string text =
      "field x^2-2 1 2\nalgebra embedded 1 1\n [1,0]\nend\nlattice 1\n 1\nend\n";
  ProblemSpec p = parse_problem(text);
  CHECK(p.minpoly.size() == 3);
  CHECK(to_text(p).find("field x^2-2 1 2") != std::string::npos);
  CHECK(scalar_text(p.field()->generator()) == "[0,1]");
}

TEST_CASE("parse errors carry line and column") {
  CHECK(kind_of("algebra matrix 2\nbogus 3\n") == ErrorKind::ParseError);
  CHECK(message_of("algebra matrix 2\nbogus 3\n").find("2:1") != std::string::npos);
  CHECK(message_of("algebra matrix 2\nmode  sideways\n").find("2:7") != std::string::npos);
  CHECK(kind_of("algebra matrix x\n") == ErrorKind::ParseError);
  CHECK(kind_of("algebra matrix 2\norder\n 1 0 0\nend\n") == ErrorKind::ParseError);
  CHECK(kind_of("") == ErrorKind::ParseError);
  CHECK(kind_of("field x^2-4 1 3\nalgebra matrix 2\n") == ErrorKind::ReduciblePolynomial);
}

TEST_CASE("order that is not closed") {
  // basis 1, E12/2, E21, E22: (E12/2)(E21) = E11/2 is not integral
  const std::string text =
      "algebra matrix 2\norder\n 1 0 0 1\n 0 1/2 0 0\n 0 0 1 0\n 0 0 0 1\nend\nlattice identity\n";
  CHECK(kind_of(text) == ErrorKind::OrderNotClosed);
  const std::string msg = message_of(text);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("elements") != std::string::npos);
}

TEST_CASE("lattice not stable") {
  const std::string text = "algebra matrix 2\nlattice 2\n 1 0 0 0\n 0 0 2 0\nend\n";
  CHECK(kind_of(text) == ErrorKind::LatticeNotStable);
}

TEST_CASE("result files round trip byte for byte") {
  auto inst = instantiate(read_problem_file(fixture("q23_sqrt2")));
  VoronoiOptions opt;
  opt.mod_sign = true;
  auto g = enumerate_perfect_forms(*inst.chart, opt);
  std::string a = canonical_dump(graph_json(*inst.chart, g));
  std::string b = canonical_dump(Json::parse(a));
  CHECK(a == b);
  // determinism
  auto g2 = enumerate_perfect_forms(*inst.chart, opt);
  CHECK(canonical_dump(graph_json(*inst.chart, g2)) == a);
  Json j = Json::parse(a);
  CHECK(j["orbits"].size() == 3);
  ZMatrix t = parse_integer_matrix(j["orbits"][0]["facet_orbits"][0]["transporter"]);
  CHECK(t == g.nodes[0].edges[0].transporter);
  CHECK(graph_dot(g).find("P0 ->") != std::string::npos);
}
