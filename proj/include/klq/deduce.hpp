#pragma once

// Integer feasibility for partially known unitriangular decomposition
// matrices: given Q = L * m with L lower unitriangular and some entries of L
// unknown, enumerate the unknowns for which every multiplicity m_k >= 0.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klq/integer.hpp"

namespace klq {

/// Polynomial with integer coefficients in a fixed list of variables.
class MultiPoly {
public:
  using Monomial = std::vector<int>;  // exponent per variable

  explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}
  static MultiPoly constant(std::size_t nvars, const Integer& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index);

  std::size_t num_vars() const { return nvars_; }
  const std::map<Monomial, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Integer constant_term() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  Integer evaluate(const std::vector<Integer>& values) const;
  /// Splits this = a * x_var + b with a, b free of x_var. Requires degree_in(var) <= 1.
  std::pair<MultiPoly, MultiPoly> split_linear(std::size_t var) const;
  std::string to_string(const std::vector<std::string>& names) const;

private:
  void add_term(const Monomial& m, const Integer& c);

  std::size_t nvars_;
  std::map<Monomial, Integer> terms_;
};

struct ScenarioConstraint {
  std::string text;
  MultiPoly poly;  // poly >= 0, or poly = 0 when equality
  bool equality = false;
};

struct VariableBounds {
  std::optional<Integer> lo, hi;
};

struct DecompositionScenario {
  std::vector<std::string> labels;
  std::vector<Integer> qvector;
  std::vector<std::string> variables;  // sorted
  /// matrix[row][col], rows indexed by labels, lower unitriangular.
  std::vector<std::vector<MultiPoly>> matrix;
  std::vector<ScenarioConstraint> constraints;
  std::vector<VariableBounds> bounds;  // per variable, explicit only

  std::size_t size() const { return labels.size(); }
  std::size_t variable_index(const std::string& name) const;
};

/// Parses an affine expression over the given variables. Grammar:
///   expr := ['-'] term (('+' | '-') term)*,  term := int | var | int '*' var
/// Throws InputError (syntax, with column; unknown variable).
MultiPoly parse_affine(const std::string& text, const std::vector<std::string>& variables);

/// Parses "expr (<= | >= | =) expr". Throws InputError.
ScenarioConstraint parse_constraint(const std::string& text, const std::vector<std::string>& variables);

/// Parses the JSON scenario document; throws InputError with line/column or
/// the offending field on any problem.
DecompositionScenario parse_scenario(const std::string& json_text);
DecompositionScenario load_scenario(const std::string& path);

/// m = L^{-1} q by forward substitution; entries are polynomials in the
/// variables (not necessarily affine).
std::vector<MultiPoly> symbolic_multiplicities(const DecompositionScenario& s);

struct SolveOptions {
  std::size_t max_variables = 12;
  /// Stop after this many assignments (FeasibleSet::truncated is then set).
  std::size_t max_solutions = 100000;
  /// Enumeration order as variable indices; empty means the sorted order.
  std::vector<std::size_t> order;
};

struct FeasibleSet {
  std::vector<std::string> variables;
  std::vector<MultiPoly> multiplicities;
  /// Search box after bound propagation (empty box: no solutions).
  std::vector<std::pair<Integer, Integer>> box;
  bool empty_box = false;
  /// Assignments in lexicographic order of the sorted variables.
  std::vector<std::vector<Integer>> assignments;
  std::vector<std::vector<Integer>> values;  // multiplicities per assignment
  bool truncated = false;
};

/// Throws GuardError for too many variables, InputError when some variable
/// stays unbounded after propagation.
FeasibleSet solve(const DecompositionScenario& s, const SolveOptions& options = {});

/// Copy of the scenario with constraint `index` removed.
DecompositionScenario without_constraint(const DecompositionScenario& s, std::size_t index);

}  // namespace klq
