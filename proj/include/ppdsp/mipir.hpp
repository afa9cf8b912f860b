#pragma once

// Solver-agnostic mixed-integer model: variables with bounds, linear rows,
// a maximization objective, LP-format emission and solver-output parsing.

#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ppdsp/errors.hpp"

namespace ppdsp::mip {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Binary, Integer, Continuous };

// Decode hint attached to a variable: which family it belongs to and its
// indexes. For x, (a, b) = (origin, destination); for y, a = request; for u
// and h, a = node.
struct VarRole {
  char family = '\0';  // 'x', 'y', 'u', 'h' or '\0'
  int truck = -1;
  int a = -1;
  int b = -1;
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;
  VarRole role;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct LinearRow {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

struct Census {
  std::int64_t num_variables = 0;
  std::int64_t num_rows = 0;

  friend bool operator==(const Census&, const Census&) = default;
};

// Always maximizes. Variables and rows keep insertion order.
class MipModel {
 public:
  // Throws EmitError on a duplicate or illegal name or inconsistent bounds.
  int add_variable(Variable variable);

  // Merges repeated variables. Throws if `terms` is empty or references an
  // undeclared variable.
  void add_row(std::string name, std::vector<Term> terms, Sense sense, double rhs);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<LinearRow>& rows() const { return rows_; }
  Variable& variable(int index) { return variables_.at(static_cast<std::size_t>(index)); }
  const Variable& variable(int index) const { return variables_.at(static_cast<std::size_t>(index)); }

  std::optional<int> find(std::string_view name) const;

  void reserve(std::size_t variables, std::size_t rows) {
    variables_.reserve(variables);
    index_.reserve(variables);
    rows_.reserve(rows);
  }

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<Variable> variables_;
  std::vector<LinearRow> rows_;
  std::unordered_map<std::string, int> index_;
};

bool is_valid_name(std::string_view name);

namespace detail {
inline void append_part(std::string& out, std::string_view part) { out.append(part); }
inline void append_part(std::string& out, int value) {
  char buf[16];
  const auto end = std::to_chars(buf, buf + sizeof buf, value).ptr;
  out.append(buf, end);
}
}  // namespace detail

// Concatenates text and integer parts, e.g. label("x_t", 0, "_o", 3).
template <typename... Parts>
std::string label(const Parts&... parts) {
  std::string out;
  (detail::append_part(out, parts), ...);
  return out;
}

// Declared variables and rows; bounds are not rows.
Census census(const MipModel& model);

// CPLEX-LP text: Maximize / Subject To / Bounds / Generals / Binaries / End.
// Identical models give identical bytes.
std::string emit_lp(const MipModel& model);

// Reads back the subset of LP that emit_lp writes.
MipModel read_lp(std::string_view text);

// Objective value and the largest row or bound violation at a point.
double objective_value(const MipModel& model, const std::vector<double>& values);
double max_violation(const MipModel& model, const std::vector<double>& values);

// ---------------------------------------------------------------------------
// Solver output

enum class SolverStatus { Optimal, Feasible, Infeasible, TimeLimit, Error, Unknown };

const char* to_string(SolverStatus status);

// Solution file dialects:
//  - Plain: "name value" per line; '#' starts a comment. Optional header
//    comments "# status: <SolverStatus>" and "# objective: <value>".
//  - Cbc: the `solu` file of COIN-OR CBC (status line, then
//    "index name value reduced-cost" rows).
//  - Xml: CPLEX-style <variable name=".." value=".."/> elements with an
//    optional <header solutionStatusString=".." objectiveValue=".."/>.
enum class Dialect { Plain, Cbc, Xml };

const char* to_string(Dialect dialect);
std::optional<Dialect> dialect_from_string(std::string_view text);

struct Assignment {
  std::vector<double> values;         // indexed like model.variables()
  std::vector<std::string> warnings;  // unknown names, etc.
};

struct SolverReport {
  SolverStatus status = SolverStatus::Unknown;
  std::optional<double> objective;
  Assignment assignment;
};

// Plain dialect. Unknown names produce a warning; missing names read as 0.
// Throws ParseError with the line number for malformed lines.
Assignment parse_solution(std::string_view text, const MipModel& model);

SolverReport parse_solver_output(std::string_view text, const MipModel& model, Dialect dialect);

}  // namespace ppdsp::mip
