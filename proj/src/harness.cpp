#include "ppdsp/harness.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "ppdsp/instance_io.hpp"

namespace ppdsp {

const char* to_string(Formulation f) {
  return f == Formulation::Location ? "location" : "request";
}

std::optional<Formulation> formulation_from_string(std::string_view text) {
  if (text == "location" || text == "loc") return Formulation::Location;
  if (text == "request" || text == "req") return Formulation::Request;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Solver process

void SolverAdapter::check() const {
  if (command_template.find("{model_path}") == std::string::npos) {
    throw Error("solver template must contain {model_path}: " + command_template);
  }
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

void replace_all(std::string& text, const std::string& key, const std::string& value) {
  for (std::size_t pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
}

bool executable(const std::filesystem::path& p) {
  std::error_code ec;
  return std::filesystem::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string tail(const std::string& text, std::size_t max_chars = 600) {
  return text.size() <= max_chars ? text : "..." + text.substr(text.size() - max_chars);
}

std::string shortest(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::filesystem::path make_scratch(const std::filesystem::path& root) {
  static std::atomic<std::uint64_t> counter{0};
  const std::filesystem::path base = root.empty() ? std::filesystem::temp_directory_path() : root;
  for (;;) {
    auto dir = base / ("ppdsp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    if (std::filesystem::create_directories(dir)) return dir;
  }
}

}  // namespace

std::optional<std::string> find_cbc() {
  if (const char* env = std::getenv("PPDSP_CBC"); env && *env) {
    if (executable(env)) return std::string(env);
  }
#ifdef PPDSP_DEFAULT_CBC
  if (executable(PPDSP_DEFAULT_CBC)) return std::string(PPDSP_DEFAULT_CBC);
#endif
  if (const char* path = std::getenv("PATH")) {
    std::istringstream dirs(path);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
      if (!dir.empty() && executable(std::filesystem::path(dir) / "cbc")) {
        return (std::filesystem::path(dir) / "cbc").string();
      }
    }
  }
  return std::nullopt;
}

SolverAdapter cbc_adapter(const std::string& binary) {
  return {"cbc", shell_quote(binary) + " {model_path} sec {time_limit_s} solve solu {solution_path}",
          mip::Dialect::Cbc, {}};
}

SolverAdapter highs_adapter(const std::string& script) {
  return {"highs", "python3 " + shell_quote(script) + " {model_path} {solution_path} {time_limit_s}",
          mip::Dialect::Plain, {}};
}

std::optional<SolverAdapter> adapter_from_spec(const std::string& spec) {
  if (spec.empty() || spec == "none") return std::nullopt;
  if (spec == "cbc") {
    auto binary = find_cbc();
    if (!binary) throw Error("no CBC binary found (set PPDSP_CBC or put cbc on PATH)");
    return cbc_adapter(*binary);
  }
  if (spec == "highs") {
#ifdef PPDSP_HIGHS_SCRIPT
    return highs_adapter(PPDSP_HIGHS_SCRIPT);
#else
    throw Error("HiGHS adapter script location unknown; pass a full template instead");
#endif
  }
  // "<dialect>:<template>" selects a dialect; a bare template reads plain.
  SolverAdapter adapter;
  std::string body = spec;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    if (auto dialect = mip::dialect_from_string(spec.substr(0, colon))) {
      adapter.dialect = *dialect;
      body = spec.substr(colon + 1);
    }
  }
  adapter.command_template = body;
  std::istringstream words(body);
  std::string first;
  words >> first;
  adapter.name = std::filesystem::path(first).filename().string();
  adapter.check();
  return adapter;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::TimeLimit: return "TimeLimit";
    case SolveStatus::Error: return "Error";
    case SolveStatus::NotSolved: return "NotSolved";
  }
  return "?";
}

const char* to_string(SolveErrorKind kind) {
  switch (kind) {
    case SolveErrorKind::None: return "None";
    case SolveErrorKind::ProcessFailure: return "ProcessFailure";
    case SolveErrorKind::UnparsableOutput: return "UnparsableOutput";
    case SolveErrorKind::DecodeFailure: return "DecodeFailure";
    case SolveErrorKind::ValidatorViolation: return "ValidatorViolation";
    case SolveErrorKind::ObjectiveMismatch: return "ObjectiveMismatch";
  }
  return "?";
}

ValidationOptions validation_for(Formulation formulation, const LocationOptions& location) {
  if (formulation == Formulation::Request) return {RouteSemantics::Request, LoadOrder::PickupFirst};
  return {RouteSemantics::Location,
          location.pickup_first_capacity ? LoadOrder::PickupFirst : LoadOrder::Netted};
}

SolveOutcome solve(const Instance& instance, Formulation formulation, const SolverAdapter& adapter,
                   const SolveOptions& options) {
  adapter.check();
  if (!(options.time_limit_s >= 1.0)) throw Error("time limit must be at least 1 s");

  std::optional<LocationEncoding> loc;
  std::optional<RequestEncoding> req;
  mip::MipModel* model = nullptr;
  if (formulation == Formulation::Location) {
    loc = encode_location(instance, options.location);
    model = &loc->model;
  } else {
    req = encode_request(instance);
    model = &req->model;
  }
  if (options.model_hook) options.model_hook(*model);

  SolveOutcome out;
  out.census = mip::census(*model);
  auto fail = [&](SolveErrorKind kind, std::string message) {
    out.status = SolveStatus::Error;
    out.error = kind;
    out.message = std::move(message);
    return out;
  };

  const std::filesystem::path dir = make_scratch(adapter.work_dir);
  struct Cleanup {
    std::filesystem::path dir;
    bool keep;
    ~Cleanup() {
      std::error_code ec;
      if (!keep) std::filesystem::remove_all(dir, ec);
    }
  } cleanup{dir, options.keep_files};

  const auto model_path = dir / "model.lp";
  const auto solution_path = dir / "solution.txt";
  const auto log_path = dir / "solver.log";
  {
    std::ofstream lp(model_path, std::ios::binary);
    lp << mip::emit_lp(*model);
  }
  std::string command = adapter.command_template;
  replace_all(command, "{model_path}", shell_quote(model_path.string()));
  replace_all(command, "{solution_path}", shell_quote(solution_path.string()));
  replace_all(command, "{time_limit_s}",
              std::to_string(static_cast<long long>(std::ceil(options.time_limit_s))));
  command = "cd " + shell_quote(dir.string()) + " && " + command + " > " +
            shell_quote(log_path.string()) + " 2>&1";

  const auto start = std::chrono::steady_clock::now();
  const int rc = std::system(command.c_str());
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
    const int code = rc != -1 && WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return fail(SolveErrorKind::ProcessFailure, "solver exited with status " + std::to_string(code) +
                                                    ": " + tail(read_file(log_path)));
  }
  if (!std::filesystem::exists(solution_path)) {
    return fail(SolveErrorKind::ProcessFailure,
                "solver wrote no solution file: " + tail(read_file(log_path)));
  }

  mip::SolverReport report;
  try {
    report = mip::parse_solver_output(read_file(solution_path), *model, adapter.dialect);
  } catch (const ParseError& e) {
    return fail(SolveErrorKind::UnparsableOutput, e.what());
  }
  out.objective = report.objective;

  switch (report.status) {
    case mip::SolverStatus::Infeasible: out.status = SolveStatus::Infeasible; return out;
    case mip::SolverStatus::TimeLimit: out.status = SolveStatus::TimeLimit; return out;
    case mip::SolverStatus::Error: return fail(SolveErrorKind::ProcessFailure, "solver reported an error");
    case mip::SolverStatus::Optimal: out.status = SolveStatus::Optimal; break;
    case mip::SolverStatus::Feasible:
    case mip::SolverStatus::Unknown: out.status = SolveStatus::Feasible; break;
  }

  const std::vector<double>& values = report.assignment.values;
  try {
    if (loc) {
      out.solution = decode_location(*loc, values);
    } else {
      RequestDecoding decoded = decode_request(*req, values, instance);
      out.solution = std::move(decoded.solution);
      out.node_paths = std::move(decoded.node_paths);
    }
  } catch (const DecodeError& e) {
    return fail(SolveErrorKind::DecodeFailure, e.what());
  }

  out.validation = validate_solution(*out.solution, instance, validation_for(formulation, options.location));
  if (!out.validation.ok()) {
    return fail(SolveErrorKind::ValidatorViolation, out.validation.describe());
  }
  out.xi = xi(*out.solution, instance);
  if (!out.objective) out.objective = mip::objective_value(*model, values);
  if (std::fabs(*out.objective - *out.xi) > kObjectiveTolerance * std::max(1.0, std::fabs(*out.xi))) {
    return fail(SolveErrorKind::ObjectiveMismatch, "solver objective " + shortest(*out.objective) +
                                                       " but decoded solution has xi " + shortest(*out.xi));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive search

namespace {

constexpr double kTie = 1e-9;

struct RouteOption {
  std::vector<int> route;
  std::vector<Event> events;
  double cost = 0.0;
};

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

void check_limits(const Instance& instance, const OracleLimits& limits) {
  const int n = instance.num_requests();
  const int m = instance.num_trucks();
  const int v = instance.num_nodes();
  if (n > limits.max_requests || m > limits.max_trucks || v > limits.max_nodes) {
    const double estimate = std::pow(m + 1.0, n) * factorial(std::min(2 * n, 170));
    throw OracleRefused(estimate, "instance too large for exhaustive search (n=" + std::to_string(n) +
                                      ", m=" + std::to_string(m) + ", |V|=" + std::to_string(v) +
                                      "; about " + shortest(estimate) + " candidates)");
  }
}

std::vector<int> requests_in(unsigned mask, int n) {
  std::vector<int> out;
  for (int r = 0; r < n; ++r) {
    if (mask & (1u << r)) out.push_back(r);
  }
  return out;
}

// Feasible routes of one truck for one delivery; only the first cheapest
// when `all` is false.
std::vector<RouteOption> truck_routes(const Instance& instance, int t, const std::vector<int>& delivery,
                                      RouteSemantics semantics, LoadOrder order,
                                      const OracleLimits& limits, bool all) {
  std::vector<RouteOption> found;
  if (delivery.empty()) {
    found.push_back({});
    return found;
  }
  const Truck& truck = instance.truck(t);
  auto offer = [&](RouteOption option) {
    if (all) {
      found.push_back(std::move(option));
    } else if (found.empty()) {
      found.push_back(std::move(option));
    } else if (option.cost < found.front().cost - kTie) {
      found.front() = std::move(option);
    }
  };

  if (semantics == RouteSemantics::Location) {
    std::vector<int> required;
    for (int r : delivery) {
      required.push_back(instance.request(r).pickup);
      required.push_back(instance.request(r).dropoff);
    }
    std::sort(required.begin(), required.end());
    required.erase(std::unique(required.begin(), required.end()), required.end());

    std::vector<int> others;
    if (limits.transit_probe) {
      for (int v = 1; v < instance.num_nodes(); ++v) {
        if (!std::binary_search(required.begin(), required.end(), v)) others.push_back(v);
      }
    }
    for (unsigned extra = 0; extra < (1u << others.size()); ++extra) {
      std::vector<int> stops = required;
      for (std::size_t i = 0; i < others.size(); ++i) {
        if (extra & (1u << i)) stops.push_back(others[i]);
      }
      std::sort(stops.begin(), stops.end());
      do {
        std::vector<int> route{kDepot};
        route.insert(route.end(), stops.begin(), stops.end());
        route.push_back(kDepot);
        if (!validate_route(truck, delivery, route, instance, order).ok()) continue;
        const double cost = route_cost(t, route, instance);
        offer({std::move(route), {}, cost});
      } while (std::next_permutation(stops.begin(), stops.end()));
    }
    return found;
  }

  // Request semantics: depth-first over pickup/dropoff events.
  const int k = static_cast<int>(delivery.size());
  std::vector<int> state(static_cast<std::size_t>(k), 0);  // 0 waiting, 1 on board, 2 done
  std::vector<Event> events;
  int load = 0;
  std::function<void()> extend = [&]() {
    if (static_cast<int>(events.size()) == 2 * k) {
      RouteOption option;
      option.events = events;
      option.route = route_from_events(events, instance);
      option.cost = route_cost(t, option.route, instance);
      offer(std::move(option));
      return;
    }
    for (int i = 0; i < k; ++i) {
      const Request& req = instance.request(delivery[i]);
      if (state[i] == 0 && load + req.volume <= truck.capacity) {
        state[i] = 1;
        load += req.volume;
        events.push_back({req.id, EventKind::Pickup});
        extend();
        events.pop_back();
        load -= req.volume;
        state[i] = 0;
      } else if (state[i] == 1) {
        state[i] = 2;
        load -= req.volume;
        events.push_back({req.id, EventKind::Dropoff});
        extend();
        events.pop_back();
        load += req.volume;
        state[i] = 1;
      }
    }
  };
  extend();
  return found;
}

// Calls visit(assignment) for every vector in {-1..m-1}^n in lexicographic
// order.
template <typename Visit>
void for_each_assignment(int n, int m, Visit visit) {
  std::vector<int> a(static_cast<std::size_t>(n), -1);
  for (;;) {
    visit(a);
    int i = n - 1;
    while (i >= 0 && a[i] == m - 1) {
      a[i] = -1;
      --i;
    }
    if (i < 0) return;
    ++a[i];
  }
}

std::vector<unsigned> masks_of(const std::vector<int>& assignment, int m) {
  std::vector<unsigned> masks(static_cast<std::size_t>(m), 0u);
  for (std::size_t r = 0; r < assignment.size(); ++r) {
    if (assignment[r] >= 0) masks[assignment[r]] |= 1u << r;
  }
  return masks;
}

TruckPlan make_plan(int t, std::vector<int> delivery, const RouteOption& option) {
  TruckPlan plan;
  plan.truck = t;
  plan.requests = std::move(delivery);
  plan.route = option.route;
  plan.events = option.events;
  return plan;
}

}  // namespace

OracleResult oracle(const Instance& instance, RouteSemantics semantics, OracleLimits limits,
                    LoadOrder order) {
  check_limits(instance, limits);
  const int n = instance.num_requests();
  const int m = instance.num_trucks();

  // Best route per (truck, delivery subset); nullopt when infeasible.
  std::map<std::pair<int, unsigned>, std::optional<RouteOption>> memo;
  auto best_route = [&](int t, unsigned mask) -> const std::optional<RouteOption>& {
    auto [it, fresh] = memo.try_emplace({t, mask});
    if (fresh) {
      auto options = truck_routes(instance, t, requests_in(mask, n), semantics, order, limits, false);
      if (!options.empty()) it->second = std::move(options.front());
    }
    return it->second;
  };

  OracleResult result;
  std::optional<std::vector<int>> best_assignment;
  double best = 0.0;
  for_each_assignment(n, m, [&](const std::vector<int>& a) {
    ++result.assignments;
    const auto masks = masks_of(a, m);
    double value = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (a[r] >= 0) value += instance.request(static_cast<int>(r)).payment;
    }
    for (int t = 0; t < m; ++t) {
      const auto& option = best_route(t, masks[t]);
      if (!option) return;
      value -= option->cost;
    }
    if (!best_assignment || value > best + kTie) {
      best = value;
      best_assignment = a;
    }
  });

  const auto masks = masks_of(*best_assignment, m);
  for (int t = 0; t < m; ++t) {
    result.solution.plans.push_back(make_plan(t, requests_in(masks[t], n), *best_route(t, masks[t])));
  }
  result.value = xi(result.solution, instance);
  return result;
}

std::vector<ScoredSolution> enumerate_xi(const Instance& instance, RouteSemantics semantics,
                                         OracleLimits limits, LoadOrder order) {
  check_limits(instance, limits);
  const int n = instance.num_requests();
  const int m = instance.num_trucks();
  std::map<std::pair<int, unsigned>, std::vector<RouteOption>> memo;
  auto routes = [&](int t, unsigned mask) -> const std::vector<RouteOption>& {
    auto [it, fresh] = memo.try_emplace({t, mask});
    if (fresh) it->second = truck_routes(instance, t, requests_in(mask, n), semantics, order, limits, true);
    return it->second;
  };

  std::vector<ScoredSolution> out;
  for_each_assignment(n, m, [&](const std::vector<int>& a) {
    const auto masks = masks_of(a, m);
    std::vector<const std::vector<RouteOption>*> per_truck;
    for (int t = 0; t < m; ++t) {
      per_truck.push_back(&routes(t, masks[t]));
      if (per_truck.back()->empty()) return;
    }
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    for (;;) {
      ScoredSolution scored;
      for (int t = 0; t < m; ++t) {
        scored.solution.plans.push_back(make_plan(t, requests_in(masks[t], n), (*per_truck[t])[pick[t]]));
      }
      scored.xi = xi(scored.solution, instance);
      out.push_back(std::move(scored));
      int t = m - 1;
      while (t >= 0 && pick[t] + 1 == per_truck[t]->size()) {
        pick[t] = 0;
        --t;
      }
      if (t < 0) break;
      ++pick[t];
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Benchmark grid

std::vector<BenchRecord> bench(const BenchConfig& config) {
  if (config.adapter) config.adapter->check();
  std::vector<BenchRecord> records;
  struct Cell {
    std::size_t record;
    const Instance* instance;
  };
  std::vector<Cell> cells;
  // Instances per (sample, m); stable addresses for the workers.
  std::map<std::pair<std::size_t, int>, std::map<double, Instance>> families;
  std::map<std::pair<std::size_t, int>, std::string> failures;
  for (std::size_t s = 0; s < config.samples.size(); ++s) {
    for (int m : config.m_list) {
      try {
        families[{s, m}] = generate_family(config.samples[s], config.k_list, m, config.seed, config.generation);
      } catch (const Error& e) {
        failures[{s, m}] = e.what();
      }
    }
  }
  for (std::size_t s = 0; s < config.samples.size(); ++s) {
    for (double k : config.k_list) {
      for (int m : config.m_list) {
        for (Formulation f : config.formulations) {
          BenchRecord rec;
          rec.sample = config.samples[s].name;
          rec.k = k;
          rec.m = m;
          rec.formulation = f;
          rec.seed = config.seed;
          if (auto it = failures.find({s, m}); it != failures.end()) {
            rec.status = "GenerationError";
            rec.note = it->second;
            records.push_back(std::move(rec));
            continue;
          }
          const Instance& instance = families.at({s, m}).at(k);
          rec.n = instance.num_requests();
          records.push_back(std::move(rec));
          cells.push_back({records.size() - 1, &instance});
        }
      }
    }
  }

  auto run = [&](BenchRecord& rec, const Instance& instance) {
    const mip::Census predicted =
        rec.formulation == Formulation::Location
            ? predicted_counts_location(instance.num_nodes(), instance.num_requests(), instance.num_trucks())
            : predicted_counts_request(instance.num_requests(), instance.num_trucks());
    try {
      if (!config.adapter) {
        const mip::Census c = rec.formulation == Formulation::Location
                                  ? mip::census(encode_location(instance).model)
                                  : mip::census(encode_request(instance).model);
        rec.num_vars = c.num_variables;
        rec.num_rows = c.num_rows;
        rec.status = to_string(SolveStatus::NotSolved);
      } else {
        SolveOptions options;
        options.time_limit_s = config.time_limit_s;
        const SolveOutcome outcome = solve(instance, rec.formulation, *config.adapter, options);
        rec.num_vars = outcome.census.num_variables;
        rec.num_rows = outcome.census.num_rows;
        rec.status = to_string(outcome.status);
        rec.wall_time_s = outcome.wall_time_s;
        if (outcome.status == SolveStatus::Optimal || outcome.status == SolveStatus::Feasible) {
          rec.objective = outcome.objective;
        }
        if (outcome.error != SolveErrorKind::None) {
          rec.status = to_string(outcome.error);
          rec.note = outcome.message;
        }
      }
      if (rec.num_vars != predicted.num_variables || rec.num_rows != predicted.num_rows) {
        rec.status = "CountMismatch";
        rec.note = "predicted vars=" + std::to_string(predicted.num_variables) +
                   " rows=" + std::to_string(predicted.num_rows);
      }
    } catch (const Error& e) {
      rec.status = "Error";
      rec.note = e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) run(records[cells[i].record], *cells[i].instance);
  };
  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return records;
}

namespace {
constexpr const char* kCsvHeader =
    "sample,k,m,n,formulation,num_vars,num_rows,status,objective,wall_time_s,seed";
}

std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.sample << ',' << shortest(r.k) << ',' << r.m << ',' << r.n << ','
        << to_string(r.formulation) << ',' << r.num_vars << ',' << r.num_rows << ',' << r.status
        << ',' << (r.objective ? shortest(*r.objective) : "") << ',' << shortest(r.wall_time_s)
        << ',' << r.seed << '\n';
  }
  return out.str();
}

std::vector<BenchRecord> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError(1, "unexpected CSV header");
  ++line_no;
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) throw ParseError(line_no, "expected 11 fields, got " + std::to_string(f.size()));
    try {
      BenchRecord r;
      r.sample = f[0];
      r.k = std::stod(f[1]);
      r.m = std::stoi(f[2]);
      r.n = std::stoi(f[3]);
      auto form = formulation_from_string(f[4]);
      if (!form) throw ParseError(line_no, "unknown formulation '" + f[4] + "'");
      r.formulation = *form;
      r.num_vars = std::stoll(f[5]);
      r.num_rows = std::stoll(f[6]);
      r.status = f[7];
      if (!f[8].empty()) r.objective = std::stod(f[8]);
      r.wall_time_s = std::stod(f[9]);
      r.seed = std::stoull(f[10]);
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "malformed number in '" + line + "'");
    }
  }
  return out;
}

std::string render_markdown(const std::vector<BenchRecord>& records, const ReportLabel& label) {
  const bool solved = label.solver != "none" && !label.solver.empty();
  const std::string opt_label =
      solved ? "Opt. (" + label.solver + ", " + shortest(label.time_limit_s) + " s)" : "Opt. (not solved)";

  std::vector<std::string> samples;
  for (const auto& r : records) {
    if (std::find(samples.begin(), samples.end(), r.sample) == samples.end()) samples.push_back(r.sample);
  }

  auto bold = [](const std::string& s, bool on) { return on ? "**" + s + "**" : s; };

  std::ostringstream out;
  out << "# Model sizes and objective values\n\n";
  if (solved) {
    out << "Objective columns come from " << label.solver << " with a " << shortest(label.time_limit_s)
        << " s time limit per model. They are not comparable with optimal values reported elsewhere, "
           "which may come from other instance seeds, solvers and time limits.\n";
  } else {
    out << "Encode-only run: no solver was invoked, so objective columns are empty.\n";
  }
  for (const std::string& sample : samples) {
    out << "\n## " << sample << "\n\n";
    out << "| m | k | n | Request #Var. | Request #Con. | Request " << opt_label << " | Location #Var. | Location #Con. | Location "
        << opt_label << " |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    // (m, k) -> records per formulation
    std::map<std::pair<int, double>, std::map<Formulation, const BenchRecord*>> rows;
    for (const auto& r : records) {
      if (r.sample == sample) rows[{r.m, r.k}][r.formulation] = &r;
    }
    for (const auto& [key, by_form] : rows) {
      const BenchRecord* rq = by_form.count(Formulation::Request) ? by_form.at(Formulation::Request) : nullptr;
      const BenchRecord* lc = by_form.count(Formulation::Location) ? by_form.at(Formulation::Location) : nullptr;
      const int n = rq ? rq->n : lc->n;
      auto counts = [&](const BenchRecord* self, const BenchRecord* other, bool vars) -> std::string {
        if (!self) return "n/a";
        const auto a = vars ? self->num_vars : self->num_rows;
        const bool wins = other && a < (vars ? other->num_vars : other->num_rows);
        return bold(std::to_string(a), wins);
      };
      auto objective = [&](const BenchRecord* self, const BenchRecord* other) -> std::string {
        if (!self) return "n/a";
        if (!self->objective) return self->status == "NotSolved" ? "-" : self->status;
        std::string s = shortest(*self->objective);
        if (self->status != "Optimal") s += " (" + self->status + ")";
        return bold(s, other && other->objective && *self->objective > *other->objective);
      };
      out << "| " << key.first << " | " << shortest(key.second) << " | " << n << " | " << counts(rq, lc, true)
          << " | " << counts(rq, lc, false) << " | " << objective(rq, lc) << " | " << counts(lc, rq, true)
          << " | " << counts(lc, rq, false) << " | " << objective(lc, rq) << " |\n";
    }
  }
  return out.str();
}

}  // namespace ppdsp
