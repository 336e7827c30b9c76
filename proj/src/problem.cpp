#include "vorunits/problem.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace vor {

namespace {

struct Token {
  std::string text;
  int line = 0, col = 0;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++col;
      ++i;
      continue;
    }
    Token t{"", line, col};
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') {
      t.text.push_back(text[i++]);
      ++col;
    }
    out.push_back(std::move(t));
  }
  return out;
}

[[noreturn]] void fail_at(const Token& t, const std::string& msg) {
  throw Error(ErrorKind::ParseError, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    static const Token eof{"<end of file>", 0, 0};
    if (done()) return toks_.empty() ? eof : last_eof();
    return toks_[pos_];
  }
  const Token& next() {
    if (done()) fail_at(peek(), "unexpected end of file");
    return toks_[pos_++];
  }
  bool accept(const std::string& s) {
    if (!done() && toks_[pos_].text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& s) {
    const Token& t = next();
    if (t.text != s) fail_at(t, "expected '" + s + "', found '" + t.text + "'");
  }

  Rational rational() {
    const Token& t = next();
    try {
      return parse_rational(t.text);
    } catch (const Error&) {
      fail_at(t, "expected a rational number, found '" + t.text + "'");
    }
  }
  Integer integer() {
    const Token& t = next();
    try {
      return Integer(t.text);
    } catch (const std::exception&) {
      fail_at(t, "expected an integer, found '" + t.text + "'");
    }
  }
  long count(long lo, long hi) {
    const Token& t = next();
    try {
      std::size_t used = 0;
      long v = std::stol(t.text, &used);
      if (used != t.text.size() || v < lo || v > hi) throw std::out_of_range("range");
      return v;
    } catch (const std::exception&) {
      fail_at(t, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], found '" +
                     t.text + "'");
    }
  }
  Scalar scalar(const FieldPtr& field) {
    const Token& t = next();
    const std::string& s = t.text;
    if (s.empty() || s[0] != '[') {
      try {
        return Scalar(parse_rational(s));
      } catch (const Error&) {
        fail_at(t, "expected a scalar, found '" + s + "'");
      }
    }
    if (s.back() != ']') fail_at(t, "unterminated coefficient list");
    Scalar::Coeffs c;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string part;
    try {
      while (std::getline(ss, part, ',')) c.push_back(parse_rational(part));
    } catch (const Error&) {
      fail_at(t, "bad coefficient in '" + s + "'");
    }
    if (static_cast<int>(c.size()) > field->degree()) fail_at(t, "more coefficients than the field degree");
    if (field->degree() == 1) return c.empty() ? Scalar(0) : Scalar(c[0]);
    return Scalar(field.get(), c);
  }

 private:
  const Token& last_eof() const {
    static Token t;
    t = Token{"<end of file>", toks_.back().line, toks_.back().col + static_cast<int>(toks_.back().text.size())};
    return t;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string rational_text(const Rational& q) { return q.get_str(); }

[[noreturn]] void rethrow_at(const Error& e, int line, const std::string& block) {
  std::string what = e.what();
  std::string prefix = std::string(to_string(e.kind())) + ": ";
  if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
  throw Error(e.kind(), "line " + std::to_string(line) + " (" + block + "): " + what);
}

}  // namespace

std::string scalar_text(const Scalar& s) {
  if (s.is_rational()) return rational_text(s.rational());
  std::string out = "[";
  for (std::size_t k = 0; k < s.coeffs().size(); ++k) {
    if (k) out += ",";
    out += rational_text(s.coeffs()[k]);
  }
  return out + "]";
}

FieldPtr ProblemSpec::field() const {
  if (minpoly.empty()) return NumberField::rationals();
  return NumberField::make(minpoly, interval);
}

int ProblemSpec::algebra_dim() const {
  switch (kind) {
    case AlgebraKind::Matrix: return n * n;
    case AlgebraKind::QuaternionSplit:
    case AlgebraKind::QuaternionDefinite: return 4;
    case AlgebraKind::QuaternionCM: return 8;
    case AlgebraKind::QuaternionMatrix: return 4 * n * n;
    case AlgebraKind::Embedded: return static_cast<int>(images.size());
    case AlgebraKind::Structure: return dim;
  }
  return 0;
}

AlgebraData ProblemSpec::algebra() const {
  switch (kind) {
    case AlgebraKind::Matrix: return matrix_algebra(n);
    case AlgebraKind::QuaternionSplit: return quaternion_split(a, b, split_at_i, field());
    case AlgebraKind::QuaternionDefinite: return quaternion_definite(a, b);
    case AlgebraKind::QuaternionCM: return quaternion_cm(a, b, d);
    case AlgebraKind::QuaternionMatrix: return quaternion_matrix(a, b, n);
    case AlgebraKind::Embedded: return embedded_algebra(field(), images);
    case AlgebraKind::Structure: {
      AlgebraData alg;
      alg.dim = dim;
      alg.structure.assign(static_cast<std::size_t>(dim) * dim * dim, Rational(0));
      for (const auto& c : constants) alg.structure[(c.i * dim + c.j) * dim + c.k] = c.c;
      alg.one = one;
      alg.field = field();
      alg.dagger = dagger.transpose();
      alg.trace = trace;
      alg.description = "algebra of dimension " + std::to_string(dim) + " by structure constants";
      return alg;
    }
  }
  throw Error(ErrorKind::Internal, "unknown algebra kind");
}

QMatrix ProblemSpec::order_basis() const {
  return order ? *order : QMatrix::identity(algebra_dim());
}

QMatrix ProblemSpec::lattice_basis() const {
  switch (lattice_kind) {
    case LatticeKind::Identity: return QMatrix::identity(algebra_dim());
    case LatticeKind::Order: return order_basis();
    case LatticeKind::Rows: return lattice;
  }
  return lattice;
}

Instance instantiate(const ProblemSpec& p) {
  Instance inst;
  inst.arithmetic = std::make_unique<Arithmetic>(p.algebra(), p.order_basis(), p.lattice_basis());
  inst.chart = std::make_unique<FormChart>(*inst.arithmetic);
  return inst;
}

ProblemSpec parse_problem(const std::string& text) {
  Parser ps(tokenize(text));
  ProblemSpec p;
  FieldPtr field = NumberField::rationals();
  bool have_algebra = false;
  int algebra_line = 1, order_line = 1, lattice_line = 1;
  std::optional<QMatrix> pending_order;
  long lattice_rows = 0;
  std::vector<Rational> lattice_entries;
  Token lattice_tok;

  while (!ps.done()) {
    const Token& key = ps.next();
    const std::string& k = key.text;
    if (k == "name") {
      p.name = ps.next().text;
    } else if (k == "field") {
      if (have_algebra) fail_at(key, "field must come before the algebra");
      if (ps.accept("rational")) {
        p.minpoly.clear();
        field = NumberField::rationals();
        continue;
      }
      const Token& poly = ps.next();
      try {
        p.minpoly = parse_integer_poly(poly.text);
      } catch (const Error& e) {
        fail_at(poly, e.what());
      }
      p.interval.lo = ps.rational();
      p.interval.hi = ps.rational();
      try {
        field = p.field();
      } catch (const Error& e) {
        rethrow_at(e, key.line, "field");
      }
    } else if (k == "algebra") {
      if (have_algebra) fail_at(key, "duplicate algebra");
      have_algebra = true;
      algebra_line = key.line;
      const Token& tag = ps.next();
      const std::string& t = tag.text;
      if (t == "matrix") {
        p.kind = AlgebraKind::Matrix;
        p.n = static_cast<int>(ps.count(1, 8));
      } else if (t == "quaternion_split") {
        p.kind = AlgebraKind::QuaternionSplit;
        p.a = ps.rational();
        p.b = ps.rational();
        const Token& s = ps.next();
        if (s.text != "i" && s.text != "j") fail_at(s, "expected 'i' or 'j'");
        p.split_at_i = s.text == "i";
      } else if (t == "quaternion_definite") {
        p.kind = AlgebraKind::QuaternionDefinite;
        p.a = ps.rational();
        p.b = ps.rational();
      } else if (t == "quaternion_cm") {
        p.kind = AlgebraKind::QuaternionCM;
        p.a = ps.rational();
        p.b = ps.rational();
        p.d = ps.integer();
      } else if (t == "quaternion_matrix") {
        p.kind = AlgebraKind::QuaternionMatrix;
        p.a = ps.rational();
        p.b = ps.rational();
        p.n = static_cast<int>(ps.count(1, 4));
      } else if (t == "embedded") {
        p.kind = AlgebraKind::Embedded;
        int dim = static_cast<int>(ps.count(1, 256));
        int size = static_cast<int>(ps.count(1, 64));
        for (int e = 0; e < dim; ++e) {
          EMatrix m(size, size);
          for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) m(i, j) = ps.scalar(field);
          p.images.push_back(std::move(m));
        }
        ps.expect("end");
      } else if (t == "structure") {
        p.kind = AlgebraKind::Structure;
        p.dim = static_cast<int>(ps.count(1, 256));
        const int dim = p.dim;
        p.one.assign(dim, Rational(0));
        p.dagger = EMatrix::identity(dim);
        p.trace.assign(dim, Scalar(0));
        for (;;) {
          const Token& sub = ps.next();
          if (sub.text == "end") break;
          if (sub.text == "product") {
            StructureConstant c;
            c.i = static_cast<int>(ps.count(0, dim - 1));
            c.j = static_cast<int>(ps.count(0, dim - 1));
            c.k = static_cast<int>(ps.count(0, dim - 1));
            c.c = ps.rational();
            p.constants.push_back(c);
          } else if (sub.text == "one") {
            for (int i = 0; i < dim; ++i) p.one[i] = ps.rational();
          } else if (sub.text == "dagger") {
            for (int i = 0; i < dim; ++i)
              for (int j = 0; j < dim; ++j) p.dagger(i, j) = ps.scalar(field);
          } else if (sub.text == "trace") {
            for (int i = 0; i < dim; ++i) p.trace[i] = ps.scalar(field);
          } else {
            fail_at(sub, "expected product, one, dagger, trace or end");
          }
        }
      } else {
        fail_at(tag, "unknown algebra '" + t + "'");
      }
    } else if (k == "order") {
      if (!have_algebra) fail_at(key, "order must come after the algebra");
      order_line = key.line;
      if (ps.accept("identity")) {
        pending_order.reset();
        continue;
      }
      const int dim = p.algebra_dim();
      QMatrix m(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = ps.rational();
      ps.expect("end");
      pending_order = std::move(m);
    } else if (k == "lattice") {
      if (!have_algebra) fail_at(key, "lattice must come after the algebra");
      lattice_line = key.line;
      if (ps.accept("identity")) {
        p.lattice_kind = ProblemSpec::LatticeKind::Identity;
        continue;
      }
      if (ps.accept("order")) {
        p.lattice_kind = ProblemSpec::LatticeKind::Order;
        continue;
      }
      const int dim = p.algebra_dim();
      lattice_rows = ps.count(1, dim);
      QMatrix m(lattice_rows, dim);
      for (long i = 0; i < lattice_rows; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = ps.rational();
      ps.expect("end");
      p.lattice_kind = ProblemSpec::LatticeKind::Rows;
      p.lattice = std::move(m);
    } else if (k == "mode") {
      const Token& m = ps.next();
      if (m.text == "units") p.mod_sign = false;
      else if (m.text == "units-mod-center") p.mod_sign = true;
      else fail_at(m, "mode must be 'units' or 'units-mod-center'");
    } else if (k == "max_orbits") {
      p.max_orbits = static_cast<std::size_t>(ps.count(1, 100000000));
    } else if (k == "seed") {
      const Token& s = ps.next();
      try {
        std::size_t used = 0;
        p.seed = std::stoull(s.text, &used);
        if (used != s.text.size()) throw std::invalid_argument("seed");
      } catch (const std::exception&) {
        fail_at(s, "expected a nonnegative integer seed");
      }
    } else {
      fail_at(key, "unknown keyword '" + k + "'");
    }
  }
  if (!have_algebra) fail_at(ps.peek(), "missing 'algebra'");
  p.order = std::move(pending_order);

  // validation
  AlgebraData alg;
  try {
    alg = p.algebra();
    EmbeddingReport rep = validate_embedding(alg);
    if (!rep.ok) {
      std::string msg = "embedding checks failed:";
      for (const auto& f : rep.failures) msg += " " + f + ";";
      throw Error(ErrorKind::ValidationError, msg);
    }
  } catch (const Error& e) {
    rethrow_at(e, algebra_line, "algebra");
  }
  try {
    Arithmetic ar(std::move(alg), p.order_basis(), p.lattice_basis());
  } catch (const Error& e) {
    bool lat = e.kind() == ErrorKind::LatticeNotStable ||
               std::string(e.what()).find("lattice") != std::string::npos;
    rethrow_at(e, lat ? lattice_line : order_line, lat ? "lattice" : "order");
  }
  return p;
}

ProblemSpec read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string to_text(const ProblemSpec& p) {
  std::ostringstream os;
  os << "name " << p.name << "\n";
  if (p.minpoly.empty()) {
    os << "field rational\n";
  } else {
    std::string poly;
    for (std::size_t k = p.minpoly.size(); k-- > 0;) {
      const Integer& c = p.minpoly[k];
      if (c == 0) continue;
      std::string s = c.get_str();
      if (!poly.empty() && s[0] != '-') poly += "+";
      if (k == 0) {
        poly += s;
      } else {
        if (s == "1") s = "";
        else if (s == "-1") s = "-";
        poly += s + "x";
        if (k > 1) poly += "^" + std::to_string(k);
      }
    }
    os << "field " << poly << " " << rational_text(p.interval.lo) << " " << rational_text(p.interval.hi) << "\n";
  }
  switch (p.kind) {
    case AlgebraKind::Matrix: os << "algebra matrix " << p.n << "\n"; break;
    case AlgebraKind::QuaternionSplit:
      os << "algebra quaternion_split " << rational_text(p.a) << " " << rational_text(p.b) << " "
         << (p.split_at_i ? "i" : "j") << "\n";
      break;
    case AlgebraKind::QuaternionDefinite:
      os << "algebra quaternion_definite " << rational_text(p.a) << " " << rational_text(p.b) << "\n";
      break;
    case AlgebraKind::QuaternionCM:
      os << "algebra quaternion_cm " << rational_text(p.a) << " " << rational_text(p.b) << " " << p.d.get_str()
         << "\n";
      break;
    case AlgebraKind::QuaternionMatrix:
      os << "algebra quaternion_matrix " << rational_text(p.a) << " " << rational_text(p.b) << " " << p.n << "\n";
      break;
    case AlgebraKind::Embedded: {
      const std::size_t s = p.images.empty() ? 0 : p.images[0].rows();
      os << "algebra embedded " << p.images.size() << " " << s << "\n";
      for (const auto& m : p.images) {
        for (std::size_t i = 0; i < s; ++i) {
          os << " ";
          for (std::size_t j = 0; j < s; ++j) os << " " << scalar_text(m(i, j));
          os << "\n";
        }
      }
      os << "end\n";
      break;
    }
    case AlgebraKind::Structure: {
      os << "algebra structure " << p.dim << "\n";
      std::vector<StructureConstant> cs;
      {
        std::vector<Rational> dense(static_cast<std::size_t>(p.dim) * p.dim * p.dim, Rational(0));
        for (const auto& c : p.constants) dense[(c.i * p.dim + c.j) * p.dim + c.k] = c.c;
        for (int i = 0; i < p.dim; ++i)
          for (int j = 0; j < p.dim; ++j)
            for (int k = 0; k < p.dim; ++k) {
              const Rational& v = dense[(i * p.dim + j) * p.dim + k];
              if (sgn(v) != 0) cs.push_back({i, j, k, v});
            }
      }
      for (const auto& c : cs) os << "  product " << c.i << " " << c.j << " " << c.k << " " << rational_text(c.c) << "\n";
      os << "  one";
      for (const auto& q : p.one) os << " " << rational_text(q);
      os << "\n  dagger\n";
      for (int i = 0; i < p.dim; ++i) {
        os << "   ";
        for (int j = 0; j < p.dim; ++j) os << " " << scalar_text(p.dagger(i, j));
        os << "\n";
      }
      os << "  trace";
      for (const auto& t : p.trace) os << " " << scalar_text(t);
      os << "\nend\n";
      break;
    }
  }
  auto rows_out = [&os](const QMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      os << " ";
      for (std::size_t j = 0; j < m.cols(); ++j) os << " " << rational_text(m(i, j));
      os << "\n";
    }
    os << "end\n";
  };
  if (!p.order) {
    os << "order identity\n";
  } else {
    os << "order\n";
    rows_out(*p.order);
  }
  switch (p.lattice_kind) {
    case ProblemSpec::LatticeKind::Identity: os << "lattice identity\n"; break;
    case ProblemSpec::LatticeKind::Order: os << "lattice order\n"; break;
    case ProblemSpec::LatticeKind::Rows:
      os << "lattice " << p.lattice.rows() << "\n";
      rows_out(p.lattice);
      break;
  }
  os << "mode " << (p.mod_sign ? "units-mod-center" : "units") << "\n";
  os << "max_orbits " << p.max_orbits << "\n";
  os << "seed " << p.seed << "\n";
  return os.str();
}

}  // namespace vor
