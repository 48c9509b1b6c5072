#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirac_stab/algebroid.hpp"
#include "dirac_stab/courant.hpp"
#include "dirac_stab/linfty.hpp"
#include "dirac_stab/stability.hpp"

namespace dirac_stab::cli {

enum class Kind { Linfty, QuadraticLie, DiracSplit, PolyAlgebroid, Germ, CartanDirac };

std::string to_string(Kind k);

struct LinftyDoc {
  LInftyAlgebra algebra;
  std::map<std::string, GradedVector> elements;
  std::map<std::string, GradedSubspace> subalgebras;
};

struct QuadraticDoc {
  QuadraticLieAlgebra algebra;
  std::map<std::string, Subspace> subspaces;
};

struct SplitDoc {
  QuadraticLieAlgebra ambient;
  Subspace dirac;
  std::optional<Subspace> complement;  // lagrangian_complement when absent
  std::map<std::string, ExtElement> forms;   // on A, in the dual of its reduced basis
  std::map<std::string, Subspace> ideals;    // in A coordinates
};

struct AlgebroidDoc {
  PolyLieAlgebroid algebroid;
  PolySection pi;
  PolySection h;
  std::optional<std::vector<Rational>> point;
};

struct CartanDiracDoc {
  LieAlgebra g;
  RMatrix metric;
};

/// Parsed input document. Exactly one of the payloads is set, matching `kind`.
struct Document {
  Kind kind = Kind::Linfty;
  std::string name;
  std::optional<LinftyDoc> linfty;
  std::optional<QuadraticDoc> quadratic;
  std::optional<SplitDoc> split;
  std::optional<AlgebroidDoc> algebroid;
  std::optional<FixedPointGerm> germ;
  std::optional<CartanDiracDoc> cartan;
};

/// Parses a document. Syntax errors carry line and column; schema errors carry the
/// JSON pointer of the offending value. Both throw ParseError.
Document parse_document(const std::string& text);

/// "x1,...,xm" as rationals.
std::vector<Rational> parse_point(const std::string& text);

}  // namespace dirac_stab::cli
