// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "ppdsp/enc_location.hpp"
#include "ppdsp/enc_request.hpp"
#include "ppdsp/harness.hpp"
#include "ppdsp/instance_io.hpp"

using namespace ppdsp;

namespace {

constexpr double kTol = 1e-6;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (v.pass && secs > budget_s) {
    v.pass = false;
    v.detail = "took longer than " + std::to_string(budget_s) + " s";
  }
  if (!v.pass) ++failures;
  std::printf("%s [%d] %s (%.2f s)%s%s\n", v.pass ? "PASS" : "FAIL", id, title, secs,
              v.detail.empty() ? "" : ": ", v.detail.c_str());
  std::fflush(stdout);
}

// Worked example: known optimum and the 21 hand-computed values, sorted.
Verdict example1() {
  Verdict v;
  const Instance inst = fixtures::example1();
  const auto best = oracle(inst, RouteSemantics::Location);
  v.require(best.value == 11, "oracle value " + std::to_string(best.value));
  v.require(best.solution == fixtures::example1_optimum(), "oracle solution is not DS*");
  std::vector<double> values;
  for (const auto& s : enumerate_xi(inst)) values.push_back(s.xi);
  std::sort(values.begin(), values.end());
  const std::vector<double> by_hand{-2, -1, 0, 0, 0, 1, 1, 2, 2, 2, 3, 4, 4, 5, 7, 7, 7, 8, 9, 10, 11};
  v.require(values == by_hand, "enumerated values differ from the hand-computed list");
  return v;
}

Verdict reference_counts() {
  Verdict v;
  BenchConfig config;
  for (const char* s : {"burma14", "ulysses16", "ulysses22"}) config.samples.push_back(fixtures::sample(s));
  config.k_list = {1};
  config.m_list = {2};
  config.formulations = {Formulation::Location, Formulation::Request};
  const auto records = bench(config);
  const std::vector<std::pair<std::int64_t, std::int64_t>> expected{
      {458, 1041}, {576, 1027}, {588, 1380}, {720, 1300}, {1074, 2685}, {1248, 2311}};
  v.require(records.size() == expected.size(), "record count");
  for (std::size_t i = 0; i < records.size() && i < expected.size(); ++i) {
    const auto& r = records[i];
    v.require(std::make_pair(r.num_vars, r.num_rows) == expected[i],
              r.sample + " " + to_string(r.formulation) + " gave (" + std::to_string(r.num_vars) + ", " +
                  std::to_string(r.num_rows) + ")");
  }
  v.require(predicted_counts_location(14, requests_for(3, 14), 10) == mip::Census{2420, 5580},
            "location prediction at |V|=14, k=3, m=10");
  v.require(predicted_counts_request(requests_for(1, 22), 10) == mip::Census{6240, 11511},
            "request prediction at |V|=22, k=1, m=10");
  return v;
}

Verdict census_grid() {
  Verdict v;
  long cells = 0;
  for (int nv = 4; nv <= 22; ++nv) {
    for (int n = 1; n <= 32; ++n) {
      for (int m = 1; m <= 10; ++m) {
        const Instance inst = fixtures::random_instance(nv * 10000 + n * 100 + m, nv, n, m);
        const auto loc = mip::census(encode_location(inst).model);
        v.require(loc == predicted_counts_location(nv, n, m),
                  "location census at (" + std::to_string(nv) + "," + std::to_string(n) + "," + std::to_string(m) + ")");
        const auto req = mip::census(encode_request(inst).model);
        v.require(req == predicted_counts_request(n, m),
                  "request census at (" + std::to_string(nv) + "," + std::to_string(n) + "," + std::to_string(m) + ")");
        ++cells;
      }
    }
  }
  v.require(cells == 19 * 32 * 10, "grid size");
  return v;
}

std::vector<Instance> suite() {
  std::vector<Instance> out;
  for (int i = 0; i < 20; ++i) {
    const int nv = 4 + i % 3;
    const int n = 2 + i % 3;
    out.push_back(fixtures::random_instance(2024 + i, nv, n, 2));
  }
  return out;
}

std::optional<SolverAdapter> any_solver() {
  if (auto c = fixtures::cbc()) return c;
  return fixtures::highs();
}

Verdict solver_equivalence() {
  Verdict v;
  const auto adapter = any_solver();
  v.require(adapter.has_value(), "no MIP solver available (CBC or HiGHS)");
  if (!adapter) return v;
  int index = 0;
  for (const Instance& inst : suite()) {
    const std::string tag = "instance " + std::to_string(index++);
    struct Case {
      Formulation formulation;
      bool strict;
      RouteSemantics semantics;
      LoadOrder order;
    };
    for (const Case& c : {Case{Formulation::Location, false, RouteSemantics::Location, LoadOrder::Netted},
                          Case{Formulation::Location, true, RouteSemantics::Location, LoadOrder::PickupFirst},
                          Case{Formulation::Request, false, RouteSemantics::Request, LoadOrder::PickupFirst}}) {
      SolveOptions options;
      options.time_limit_s = 120;
      options.location.pickup_first_capacity = c.strict;
      const auto out = solve(inst, c.formulation, *adapter, options);
      const double exact = oracle(inst, c.semantics, {}, c.order).value;
      const std::string what = tag + " " + to_string(c.formulation) + (c.strict ? " (pickup-first)" : "");
      v.require(out.status == SolveStatus::Optimal && out.error == SolveErrorKind::None,
                what + ": " + to_string(out.status) + " " + out.message);
      if (!out.xi || !out.objective) continue;
      v.require(std::fabs(*out.xi - exact) <= kTol * std::max(1.0, std::fabs(exact)),
                what + ": solver " + std::to_string(*out.xi) + " vs oracle " + std::to_string(exact));
      v.require(std::fabs(*out.xi - *out.objective) <= kTol * std::max(1.0, std::fabs(*out.xi)),
                what + ": objective inconsistent with xi");
      v.require(out.validation.ok(), what + ": " + out.validation.describe());
    }
  }
  if (v.pass) v.detail = "solver " + adapter->name;
  return v;
}

Verdict dominance() {
  Verdict v;
  int strict = 0;
  for (const Instance& inst : suite()) {
    const double req = oracle(inst, RouteSemantics::Request).value;
    const double loc = oracle(inst, RouteSemantics::Location).value;
    const double netted = oracle(inst, RouteSemantics::Location, {}, LoadOrder::Netted).value;
    v.require(req >= loc - kTol && req >= netted - kTol, "request optimum below location optimum");
    if (req > std::max(loc, netted) + kTol) ++strict;
  }
  if (v.pass) {
    v.detail = strict > 0 ? std::to_string(strict) + " of 20 instances separate strictly"
                          : "no separation witnessed";
  }
  return v;
}

Verdict determinism() {
  Verdict v;
  const std::vector<double> ks{1, 1.5, 2, 2.5, 3};
  for (const char* name : {"burma14", "ulysses16", "ulysses22"}) {
    const auto sample = fixtures::sample(name);
    const auto a = generate_family(sample, ks, 3, 77);
    const auto b = generate_family(sample, ks, 3, 77);
    for (double k : ks) {
      v.require(serialize_instance(a.at(k)) == serialize_instance(b.at(k)), std::string(name) + " gen differs");
    }
  }
  BenchConfig config;
  for (const char* s : {"burma14", "ulysses16", "ulysses22"}) config.samples.push_back(fixtures::sample(s));
  config.k_list = ks;
  config.m_list = {2, 5};
  config.formulations = {Formulation::Location, Formulation::Request};
  config.seed = 77;
  config.workers = 4;
  const std::string first = to_csv(bench(config));
  config.workers = 1;
  v.require(first == to_csv(bench(config)), "bench CSV differs between runs");
  return v;
}

Verdict disclosure() {
  Verdict v;
  std::vector<BenchRecord> records{
      {"burma14", 1, 2, 7, Formulation::Location, 458, 1041, "Optimal", 100.0, 1, 0, ""},
      {"burma14", 1, 2, 7, Formulation::Request, 576, 1027, "Optimal", 110.0, 1, 0, ""}};
  const std::string md = render_markdown(records, {"cbc", 600});
  v.require(md.find("Request Opt. (cbc, 600 s)") != std::string::npos, "request column label");
  v.require(md.find("Location Opt. (cbc, 600 s)") != std::string::npos, "location column label");
  v.require(md.find("not comparable") != std::string::npos, "missing disclaimer");
  const std::string none = render_markdown(records, {"none", 0});
  v.require(none.find("Opt. (not solved)") != std::string::npos, "encode-only label");
  return v;
}

}  // namespace

int main() {
  criterion(1, "worked example: optimum 11 at DS*, 21 hand-computed values", 1.0, example1);
  criterion(2, "reference model sizes for k=1, m=2 and two m=10 cells", 5.0, reference_counts);
  criterion(3, "census equals closed form over |V| 4..22, n 1..32, m 1..10", 60.0, census_grid);
  criterion(4, "external solver matches exhaustive optimum on 20 small instances", 600.0, solver_equivalence);
  criterion(5, "request optimum dominates location optimum", 60.0, dominance);
  criterion(6, "generation and encode-only bench are deterministic", 60.0, determinism);
  criterion(7, "report labels objective columns with solver and time limit", 1.0, disclosure);
  return failures == 0 ? 0 : 1;
}
