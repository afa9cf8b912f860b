#pragma once

// Runs external MIP solvers on emitted models, decodes and cross-checks
// their answers, enumerates small instances exhaustively, and drives the
// benchmark grid.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ppdsp/core.hpp"
#include "ppdsp/enc_location.hpp"
#include "ppdsp/enc_request.hpp"
#include "ppdsp/instgen.hpp"
#include "ppdsp/mipir.hpp"
#include "ppdsp/tsplib.hpp"

namespace ppdsp {

enum class Formulation { Location, Request };

const char* to_string(Formulation f);
// Accepts "location"/"loc" and "request"/"req".
std::optional<Formulation> formulation_from_string(std::string_view text);

// ---------------------------------------------------------------------------
// Solver process

// A solver invocation. The template is expanded with {model_path},
// {solution_path} and {time_limit_s} and run through the shell.
struct SolverAdapter {
  std::string name;
  std::string command_template;
  mip::Dialect dialect = mip::Dialect::Plain;
  std::filesystem::path work_dir;  // scratch root; system temp dir when empty

  // Throws Error when the template lacks {model_path}.
  void check() const;
};

// CBC binary: env PPDSP_CBC, then the path found at configure time, then
// `cbc` on PATH. Empty when none is usable.
std::optional<std::string> find_cbc();
SolverAdapter cbc_adapter(const std::string& binary);
// HiGHS through its Python bindings and tools/highs_solve.py.
SolverAdapter highs_adapter(const std::string& script);

// "cbc", "highs" or a raw template (plain dialect unless the name says
// otherwise). Returns nullopt for "none".
std::optional<SolverAdapter> adapter_from_spec(const std::string& spec);

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit, Error, NotSolved };

const char* to_string(SolveStatus status);

enum class SolveErrorKind {
  None,
  ProcessFailure,
  UnparsableOutput,
  DecodeFailure,
  ValidatorViolation,
  ObjectiveMismatch,
};

const char* to_string(SolveErrorKind kind);

struct SolveOptions {
  double time_limit_s = 600.0;
  LocationOptions location;
  bool keep_files = false;
  // Applied to the encoded model before emission; tests use it to inject
  // rows.
  std::function<void(mip::MipModel&)> model_hook;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::NotSolved;
  SolveErrorKind error = SolveErrorKind::None;
  std::string message;
  std::optional<double> objective;  // as reported by the solver
  std::optional<double> xi;         // recomputed on the decoded solution
  std::optional<DeliveryRoutingSolution> solution;
  std::vector<std::vector<int>> node_paths;  // request formulation only
  ValidationReport validation;
  mip::Census census;
  double wall_time_s = 0.0;
};

// Relative tolerance on |objective - xi|.
inline constexpr double kObjectiveTolerance = 1e-6;

// Validator settings matching what a formulation's model enforces.
ValidationOptions validation_for(Formulation formulation, const LocationOptions& location = {});

SolveOutcome solve(const Instance& instance, Formulation formulation, const SolverAdapter& adapter,
                   const SolveOptions& options = {});

// ---------------------------------------------------------------------------
// Exhaustive search

struct OracleLimits {
  int max_requests = 5;
  int max_trucks = 3;
  int max_nodes = 8;
  // Location semantics: also route through locations no served request
  // needs. Only matters when arc costs violate the triangle inequality.
  bool transit_probe = false;
};

struct OracleResult {
  double value = 0.0;
  DeliveryRoutingSolution solution;
  std::int64_t assignments = 0;
};

// Best delivery routing solution over all request-to-truck assignments.
// Ties go to the lexicographically smallest assignment vector (entry r is
// the truck serving r, -1 for none, and -1 sorts first), then to the first
// route in enumeration order. `order` applies to location semantics only;
// request semantics sequences events explicitly.
OracleResult oracle(const Instance& instance, RouteSemantics semantics, OracleLimits limits = {},
                    LoadOrder order = LoadOrder::PickupFirst);

struct ScoredSolution {
  DeliveryRoutingSolution solution;
  double xi = 0.0;
};

// Every feasible solution, each truck's route ranging over all feasible
// orderings of its stops. Same limits and orders as oracle.
std::vector<ScoredSolution> enumerate_xi(const Instance& instance,
                                         RouteSemantics semantics = RouteSemantics::Location,
                                         OracleLimits limits = {},
                                         LoadOrder order = LoadOrder::PickupFirst);

// ---------------------------------------------------------------------------
// Benchmark grid

struct BenchConfig {
  std::vector<TsplibSample> samples;
  std::vector<double> k_list;
  std::vector<int> m_list;
  std::vector<Formulation> formulations;
  std::optional<SolverAdapter> adapter;  // nullopt: encode only
  double time_limit_s = 600.0;
  std::uint64_t seed = 0;
  int workers = 1;
  GenerationOptions generation;
};

struct BenchRecord {
  std::string sample;
  double k = 1.0;
  int m = 0;
  int n = 0;
  Formulation formulation = Formulation::Location;
  std::int64_t num_vars = 0;
  std::int64_t num_rows = 0;
  std::string status;
  std::optional<double> objective;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::string note;  // not serialized; failure detail for logs
};

// One record per (sample, k, m, formulation) in that nesting order.
// Per-cell failures are recorded in the status column.
std::vector<BenchRecord> bench(const BenchConfig& config);

std::string to_csv(const std::vector<BenchRecord>& records);
// Throws ParseError with the offending line.
std::vector<BenchRecord> parse_csv(std::string_view text);

struct ReportLabel {
  std::string solver;  // "none" for encode-only
  double time_limit_s = 0.0;
};

// One table per sample; rows are (m, k), each with counts and objective
// for both formulations. Bold marks the smaller count and the larger
// objective of a pair.
std::string render_markdown(const std::vector<BenchRecord>& records, const ReportLabel& label);

}  // namespace ppdsp
