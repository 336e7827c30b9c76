#pragma once

// Problem files: a small line-oriented text format naming the field, the
// algebra, the order, the lattice and the run options.
//
//   name q23_sqrt2
//   field x^2-2 1 2
//   algebra quaternion_split 2 3 i
//   order
//     1 0 0 0
//     ...
//   end
//   lattice order
//   mode units-mod-center
//
// Scalars of E0 are rationals or coefficient lists [c0,c1,...] in the power
// basis of the field generator. '#' starts a comment.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vorunits/form_space.hpp"

namespace vor {

enum class AlgebraKind { Matrix, QuaternionSplit, QuaternionDefinite, QuaternionCM, QuaternionMatrix, Embedded, Structure };

struct StructureConstant {
  int i = 0, j = 0, k = 0;
  Rational c;
};

struct ProblemSpec {
  std::string name = "problem";
  // empty: the rationals
  std::vector<Integer> minpoly;
  RationalInterval interval;

  AlgebraKind kind = AlgebraKind::Matrix;
  int n = 2;                  // matrix size (Matrix, QuaternionMatrix)
  Rational a, b;              // quaternion parameters
  bool split_at_i = true;
  Integer d;                  // QuaternionCM
  std::vector<EMatrix> images;                // Embedded
  int dim = 0;                                // Structure
  std::vector<StructureConstant> constants;   // Structure
  QVec one;
  EMatrix dagger;  // row k: coordinates of e_k^dagger
  EVec trace;

  std::optional<QMatrix> order;  // none: the standard basis
  enum class LatticeKind { Identity, Order, Rows } lattice_kind = LatticeKind::Identity;
  QMatrix lattice;

  bool mod_sign = false;
  std::size_t max_orbits = 100000;
  std::uint64_t seed = 1;

  FieldPtr field() const;
  AlgebraData algebra() const;
  int algebra_dim() const;
  QMatrix order_basis() const;
  QMatrix lattice_basis() const;
};

/// Parses and validates; errors are ParseError with line:column, or the
/// failing validation (OrderNotClosed, ValidationError, ...) with the line of
/// the offending block.
ProblemSpec parse_problem(const std::string& text);
ProblemSpec read_problem_file(const std::string& path);
/// Canonical text; parse_problem(to_text(p)) reproduces it byte for byte.
std::string to_text(const ProblemSpec& p);

struct Instance {
  std::unique_ptr<Arithmetic> arithmetic;
  std::unique_ptr<FormChart> chart;
};

Instance instantiate(const ProblemSpec& p);

/// Scalar text used by the problem format.
std::string scalar_text(const Scalar& s);

}  // namespace vor
