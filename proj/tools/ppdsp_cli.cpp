// Command-line front end: gen, build, solve, validate, oracle, bench, report.
//
// Exit codes: 0 success, 2 input error, 3 verification failure, 4 solver
// process error.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppdsp/harness.hpp"
#include "ppdsp/instance_io.hpp"

namespace fs = std::filesystem;
using namespace ppdsp;

namespace {

constexpr int kInputError = 2;
constexpr int kVerificationError = 3;
constexpr int kSolverError = 4;

struct ExitWith {
  int code;
  std::string message;
};

std::string shortest(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string absolute(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitWith{kInputError, "cannot read " + absolute(path)};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ExitWith{kInputError, "cannot write " + absolute(path)};
  out << text;
}

void log_config(const std::string& command, const std::vector<std::pair<std::string, std::string>>& items) {
  std::cerr << "ppdsp " << command << ":";
  for (const auto& [k, v] : items) std::cerr << ' ' << k << '=' << v;
  std::cerr << '\n';
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ',';
    if constexpr (std::is_floating_point_v<T>) {
      out << shortest(items[i]);
    } else {
      out << items[i];
    }
  }
  return out.str();
}

Instance load_instance(const std::string& path) { return parse_instance(read_text(path)); }

Formulation parse_formulation(const std::string& text) {
  auto f = formulation_from_string(text);
  if (!f) throw ExitWith{kInputError, "unknown formulation '" + text + "' (use loc or req)"};
  return *f;
}

LoadOrder parse_load_order(const std::string& text) {
  if (text == "pickup-first") return LoadOrder::PickupFirst;
  if (text == "netted") return LoadOrder::Netted;
  throw ExitWith{kInputError, "unknown load order '" + text + "' (use pickup-first or netted)"};
}

RouteSemantics parse_semantics(const std::string& text) {
  if (text == "location" || text == "loc") return RouteSemantics::Location;
  if (text == "request" || text == "req") return RouteSemantics::Request;
  throw ExitWith{kInputError, "unknown semantics '" + text + "' (use location or request)"};
}

std::string default_solver() {
  if (const char* env = std::getenv("PPDSP_SOLVER_CMD"); env && *env) return env;
  return "cbc";
}

void print_solution(const DeliveryRoutingSolution& solution) {
  for (const TruckPlan& plan : solution.plans) {
    std::cout << "  truck " << plan.truck << ": requests {";
    for (std::size_t i = 0; i < plan.requests.size(); ++i) std::cout << (i ? "," : "") << plan.requests[i];
    std::cout << "} route";
    if (plan.route.empty()) std::cout << " (unused)";
    for (int v : plan.route) std::cout << ' ' << v;
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pickup and delivery selection: instance generation, MIP encoding and solving"};
  app.require_subcommand(1);

  // gen
  std::string tsplib_path, out_dir;
  std::vector<double> k_list;
  int m = 2;
  std::uint64_t seed = 0;
  bool verbatim = false;
  bool per_k = false;
  auto* gen = app.add_subcommand("gen", "generate one instance file per k from a TSPLIB sample");
  gen->add_option("--tsplib", tsplib_path, "TSPLIB file")->required();
  gen->add_option("--k", k_list, "repetition rates, e.g. 1,1.5,2")->required()->delimiter(',');
  gen->add_option("--m", m, "number of trucks")->required();
  gen->add_option("--seed", seed, "generator seed")->required();
  gen->add_option("--out", out_dir, "output directory")->required();
  gen->add_flag("--verbatim-tail-decrement", verbatim, "reproduce the literal pair-sorting decrement");
  gen->add_flag("--per-k", per_k, "draw each k independently instead of taking prefixes");

  // build
  std::string instance_path, formulation_text = "loc", lp_path;
  bool pickup_first = false;
  auto* build = app.add_subcommand("build", "encode an instance and write an LP file");
  build->add_option("--instance", instance_path)->required();
  build->add_option("--formulation", formulation_text, "loc or req")->required();
  build->add_option("--lp", lp_path, "LP output path")->required();
  build->add_flag("--pickup-first", pickup_first, "location model: add pickup-first capacity rows");

  // solve
  std::string solver_spec = default_solver(), solution_out;
  double time_limit = 600.0;
  bool keep_files = false;
  auto* solve_cmd = app.add_subcommand("solve", "encode, run a solver, decode and verify");
  solve_cmd->add_option("--instance", instance_path)->required();
  solve_cmd->add_option("--formulation", formulation_text, "loc or req")->required();
  solve_cmd->add_option("--solver", solver_spec, "cbc, highs, or a command template (default $PPDSP_SOLVER_CMD or cbc)");
  solve_cmd->add_option("--time-limit", time_limit, "seconds")->check(CLI::Range(1.0, 1e9));
  solve_cmd->add_option("--out", solution_out, "write the decoded solution here");
  solve_cmd->add_flag("--pickup-first", pickup_first, "location model: add pickup-first capacity rows");
  solve_cmd->add_flag("--keep-files", keep_files, "keep the scratch directory");

  // validate
  std::string solution_path, semantics_text = "location", load_order_text = "pickup-first";
  auto* validate = app.add_subcommand("validate", "check a solution file against an instance");
  validate->add_option("--instance", instance_path)->required();
  validate->add_option("--solution", solution_path)->required();
  validate->add_option("--semantics", semantics_text, "location or request");
  validate->add_option("--load-order", load_order_text, "pickup-first or netted");

  // oracle
  bool all = false, transit = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive optimum of a small instance");
  oracle_cmd->add_option("--instance", instance_path)->required();
  oracle_cmd->add_option("--semantics", semantics_text, "location or request");
  oracle_cmd->add_option("--load-order", load_order_text, "pickup-first or netted");
  oracle_cmd->add_flag("--all", all, "list every feasible solution with its value");
  oracle_cmd->add_flag("--transit-probe", transit, "also route through unneeded locations");
  oracle_cmd->add_option("--out", solution_out, "write the best solution here");

  // bench
  std::vector<std::string> tsplib_paths, formulation_list{"location", "request"};
  std::vector<int> m_list;
  std::string csv_path;
  int workers = 1;
  std::string bench_solver = "none";
  auto* bench_cmd = app.add_subcommand("bench", "run the sample x k x m x formulation grid");
  bench_cmd->add_option("--tsplib", tsplib_paths, "TSPLIB files")->required()->delimiter(',');
  bench_cmd->add_option("--k", k_list)->required()->delimiter(',');
  bench_cmd->add_option("--m", m_list)->required()->delimiter(',');
  bench_cmd->add_option("--formulations", formulation_list)->delimiter(',');
  bench_cmd->add_option("--solver", bench_solver, "none (encode only), cbc, highs or a template");
  bench_cmd->add_option("--time-limit", time_limit)->check(CLI::Range(1.0, 1e9));
  bench_cmd->add_option("--seed", seed)->required();
  bench_cmd->add_option("--workers", workers)->check(CLI::Range(1, 256));
  bench_cmd->add_option("--out", csv_path, "CSV output")->required();
  bench_cmd->add_flag("--verbatim-tail-decrement", verbatim);
  bench_cmd->add_flag("--per-k", per_k);

  // report
  std::string report_out, label_solver;
  double label_time = -1.0;
  auto* report = app.add_subcommand("report", "render a bench CSV as markdown tables");
  report->add_option("--csv", csv_path)->required();
  report->add_option("--out", report_out, "markdown output (stdout when omitted)");
  report->add_option("--solver-name", label_solver, "objective label; default from the CSV sidecar");
  report->add_option("--time-limit", label_time, "objective label; default from the CSV sidecar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*gen) {
      log_config("gen", {{"tsplib", absolute(tsplib_path)}, {"k", join(k_list)}, {"m", std::to_string(m)},
                         {"seed", std::to_string(seed)}, {"out", absolute(out_dir)},
                         {"verbatim_tail_decrement", verbatim ? "1" : "0"}, {"per_k", per_k ? "1" : "0"}});
      const TsplibSample sample = parse_tsplib(read_text(tsplib_path));
      GenerationOptions options;
      options.verbatim_tail_decrement = verbatim;
      options.per_k_families = per_k;
      const auto family = generate_family(sample, k_list, m, seed, options);
      fs::create_directories(out_dir);
      for (const auto& [k, instance] : family) {
        const fs::path file = fs::path(out_dir) / (sample.name + "_k" + shortest(k) + "_m" + std::to_string(m) +
                                                   "_s" + std::to_string(seed) + ".instance");
        write_text(file.string(), serialize_instance(instance));
        std::cout << "k=" << shortest(k) << " n=" << instance.num_requests() << ' ' << absolute(file.string()) << '\n';
        if (auto missing = instance.uncovered_nodes(); !missing.empty()) {
          std::cerr << "note: k=" << shortest(k) << " leaves " << missing.size() << " location(s) unused\n";
        }
      }
      return 0;
    }

    if (*build) {
      log_config("build", {{"instance", absolute(instance_path)}, {"formulation", formulation_text},
                           {"lp", absolute(lp_path)}, {"pickup_first", pickup_first ? "1" : "0"}});
      const Instance instance = load_instance(instance_path);
      const Formulation f = parse_formulation(formulation_text);
      const mip::MipModel model = f == Formulation::Location
                                      ? encode_location(instance, {pickup_first}).model
                                      : encode_request(instance).model;
      write_text(lp_path, mip::emit_lp(model));
      const mip::Census c = mip::census(model);
      std::cout << "vars=" << c.num_variables << " rows=" << c.num_rows << '\n';
      return 0;
    }

    if (*solve_cmd) {
      log_config("solve", {{"instance", absolute(instance_path)}, {"formulation", formulation_text},
                           {"solver", solver_spec}, {"time_limit_s", shortest(time_limit)},
                           {"pickup_first", pickup_first ? "1" : "0"}});
      const Instance instance = load_instance(instance_path);
      const Formulation f = parse_formulation(formulation_text);
      auto adapter = adapter_from_spec(solver_spec);
      if (!adapter) throw ExitWith{kInputError, "solve needs a solver (got 'none')"};
      SolveOptions options;
      options.time_limit_s = time_limit;
      options.location.pickup_first_capacity = pickup_first;
      options.keep_files = keep_files;
      const SolveOutcome outcome = solve(instance, f, *adapter, options);
      std::cout << "status=" << to_string(outcome.status);
      if (outcome.objective) std::cout << " objective=" << shortest(*outcome.objective);
      std::cout << " vars=" << outcome.census.num_variables << " rows=" << outcome.census.num_rows
                << " wall_time_s=" << shortest(outcome.wall_time_s) << '\n';
      if (outcome.solution) print_solution(*outcome.solution);
      if (outcome.solution && !solution_out.empty()) {
        write_text(solution_out, serialize_routing_solution(*outcome.solution));
      }
      switch (outcome.error) {
        case SolveErrorKind::None: return 0;
        case SolveErrorKind::ProcessFailure:
        case SolveErrorKind::UnparsableOutput:
          std::cerr << "error: " << to_string(outcome.error) << ": " << outcome.message << '\n';
          return kSolverError;
        default:
          std::cerr << "error: " << to_string(outcome.error) << ": " << outcome.message << '\n';
          return kVerificationError;
      }
    }

    if (*validate) {
      log_config("validate", {{"instance", absolute(instance_path)}, {"solution", absolute(solution_path)},
                              {"semantics", semantics_text}, {"load_order", load_order_text}});
      const Instance instance = load_instance(instance_path);
      const DeliveryRoutingSolution solution = parse_routing_solution(read_text(solution_path));
      const ValidationReport r =
          validate_solution(solution, instance, {parse_semantics(semantics_text), parse_load_order(load_order_text)});
      if (r.ok()) {
        std::cout << "ok xi=" << shortest(xi(solution, instance)) << '\n';
        return 0;
      }
      std::cout << r.describe();
      return kVerificationError;
    }

    if (*oracle_cmd) {
      log_config("oracle", {{"instance", absolute(instance_path)}, {"semantics", semantics_text},
                            {"load_order", load_order_text}, {"transit_probe", transit ? "1" : "0"}});
      const Instance instance = load_instance(instance_path);
      OracleLimits limits;
      limits.transit_probe = transit;
      const RouteSemantics semantics = parse_semantics(semantics_text);
      const LoadOrder order = parse_load_order(load_order_text);
      if (all) {
        for (const ScoredSolution& s : enumerate_xi(instance, semantics, limits, order)) {
          std::cout << "xi=" << shortest(s.xi) << '\n';
          print_solution(s.solution);
        }
        return 0;
      }
      const OracleResult result = oracle(instance, semantics, limits, order);
      std::cout << shortest(result.value) << '\n';
      print_solution(result.solution);
      if (!solution_out.empty()) write_text(solution_out, serialize_routing_solution(result.solution));
      return 0;
    }

    if (*bench_cmd) {
      std::vector<std::string> abs_paths;
      for (const auto& p : tsplib_paths) abs_paths.push_back(absolute(p));
      log_config("bench", {{"tsplib", join(abs_paths)}, {"k", join(k_list)}, {"m", join(m_list)},
                           {"formulations", join(formulation_list)}, {"solver", bench_solver},
                           {"time_limit_s", shortest(time_limit)}, {"seed", std::to_string(seed)},
                           {"workers", std::to_string(workers)}, {"out", absolute(csv_path)}});
      BenchConfig config;
      for (const auto& p : tsplib_paths) config.samples.push_back(parse_tsplib(read_text(p)));
      config.k_list = k_list;
      config.m_list = m_list;
      for (const auto& f : formulation_list) config.formulations.push_back(parse_formulation(f));
      config.adapter = adapter_from_spec(bench_solver);
      config.time_limit_s = time_limit;
      config.seed = seed;
      config.workers = workers;
      config.generation.verbatim_tail_decrement = verbatim;
      config.generation.per_k_families = per_k;
      const auto records = bench(config);
      write_text(csv_path, to_csv(records));
      nlohmann::json meta = {{"solver", config.adapter ? config.adapter->name : "none"},
                             {"time_limit_s", config.adapter ? time_limit : 0.0}};
      write_text(csv_path + ".meta.json", meta.dump(2) + "\n");
      int failures = 0;
      for (const auto& r : records) {
        if (!r.note.empty()) {
          ++failures;
          std::cerr << "cell " << r.sample << " k=" << shortest(r.k) << " m=" << r.m << ' '
                    << to_string(r.formulation) << ": " << r.status << ": " << r.note << '\n';
        }
      }
      std::cout << records.size() << " records, " << failures << " failed\n";
      return 0;
    }

    if (*report) {
      log_config("report", {{"csv", absolute(csv_path)}, {"out", report_out.empty() ? "-" : absolute(report_out)}});
      const auto records = parse_csv(read_text(csv_path));
      ReportLabel label{"none", 0.0};
      if (fs::exists(csv_path + ".meta.json")) {
        const auto meta = nlohmann::json::parse(read_text(csv_path + ".meta.json"));
        label.solver = meta.value("solver", "none");
        label.time_limit_s = meta.value("time_limit_s", 0.0);
      }
      if (!label_solver.empty()) label.solver = label_solver;
      if (label_time >= 0) label.time_limit_s = label_time;
      const std::string md = render_markdown(records, label);
      if (report_out.empty()) {
        std::cout << md;
      } else {
        write_text(report_out, md);
      }
      return 0;
    }
  } catch (const ExitWith& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const OracleRefused& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverError;
  }
  return 0;
}
