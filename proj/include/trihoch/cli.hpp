#pragma once

// Input files, job orchestration and report emission for the trihoch tool.
//
// Quiver files:       vertex <label> / arrow <label> : <src> -> <dst>
// Triangular files:   algebra A<i> dim <d>, unit A<i> : <d coefficients>,
//                     mul A<i> : <a> <b> <c> <coeff>, module M<j><i> dim <d>,
//                     lact M<j><i> : <a> <m> <m'> <coeff>,
//                     ract M<j><i> : <m> <a> <m'> <coeff>,
//                     mu <l> <j> <i> : <y> <x> <z> <coeff>
// Simplicial files:   vertex <label> (optional), facet <label> ...
//
// Levels are numbered from 1 in files and basis indices from 0.  M<j>_<i>
// spells a module name whose level numbers have more than one digit.  '#'
// starts a comment.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trihoch/algebra.hpp"
#include "trihoch/hochcomplex.hpp"
#include "trihoch/quiver.hpp"

namespace trihoch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInvariant = 2;
inline constexpr int kExitOracle = 3;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  std::vector<std::string> violations;
};

Quiver parse_quiver_file(const std::string& text);
std::string emit_quiver(const Quiver& q);

/// Parses and validates; throws ParseError or ValidationError.
template <class F>
TriangularAlgebra<F> parse_triangular_file(const F& field, const std::string& text);

template <class F>
std::string emit_triangular(const TriangularAlgebra<F>& t);

SimplicialComplex parse_simplicial_file(const std::string& text);

/// Same levels, dimensions and structure constants, block by block.
template <class F>
bool blockwise_equal(const TriangularAlgebra<F>& a, const TriangularAlgebra<F>& b);

enum class InputKind { quiver, triangular, simplicial };

/// Guesses the kind from the keywords used; throws ParseError if none fits.
InputKind detect_kind(const std::string& text);

struct FieldChoice {
  std::uint32_t prime = 0;  // 0 selects the rationals
};

/// "rat" or "fp:<p>".
FieldChoice parse_field(const std::string& spec);

enum class Report { pages, hochschild, e1_structure, oracle_check, degeneration_check };

/// Comma separated names: pages, hochschild, e1-structure, oracle-check,
/// degeneration-check.
std::vector<Report> parse_reports(const std::string& csv);

enum class Coefficients { regular, dual };

struct JobSpec {
  InputKind kind = InputKind::quiver;
  std::string text;
  FieldChoice field;
  /// Degrees 0..max_degree-1 are reported.
  Index max_degree = 4;
  std::vector<Report> reports{Report::pages, Report::hochschild};
  bool tsv = false;
  std::size_t oracle_budget = kDefaultOracleBudget;
  Coefficients coefficients = Coefficients::regular;
};

struct JobResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Never throws; output is empty when the input is rejected.
JobResult run_job(const JobSpec& job);

}  // namespace trihoch::cli
