#pragma once

// Shared test inputs: the two-truck, three-request worked example built in
// code, small random instances drawn independently of the generator, and
// solver lookup.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ppdsp/core.hpp"
#include "ppdsp/harness.hpp"
#include "ppdsp/tsplib.hpp"

namespace fixtures {

// Node ids: delta = 0, a = 1, b = 2, c = 3.
inline constexpr int kA = 1;
inline constexpr int kB = 2;
inline constexpr int kC = 3;

inline ppdsp::Instance example1() {
  std::vector<ppdsp::Location> nodes{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}};
  std::vector<ppdsp::Request> requests{
      {0, 13.0, 4, kA, kC},
      {1, 7.0, 2, kA, kB},
      {2, 4.0, 1, kB, kC},
  };
  ppdsp::Truck t1{0, 6, 1.0, std::vector<double>{0, 2, 2, 2, 2, 0, 4, 7, 2, 4, 0, 2, 2, 7, 2, 0}};
  ppdsp::Truck t2{1, 3, 1.0, std::vector<double>{0, 1, 1, 1, 1, 0, 3, 5, 1, 3, 0, 1, 1, 5, 1, 0}};
  return ppdsp::Instance(ppdsp::LocationGraph(std::move(nodes)), std::move(requests), {t1, t2},
                         {"example1", 1.0, 2, 3, 0});
}

// DS*: t1 serves {r1, r2} along delta-a-b-c-delta, t2 serves {r3} along
// delta-b-c-delta.
inline ppdsp::DeliveryRoutingSolution example1_optimum() {
  ppdsp::DeliveryRoutingSolution s;
  s.plans.push_back({0, {0, 1}, {0, kA, kB, kC, 0}, {}});
  s.plans.push_back({1, {2}, {0, kB, kC, 0}, {}});
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string data_path(const std::string& name) { return std::string(PPDSP_DATA_DIR) + "/" + name; }

inline ppdsp::TsplibSample sample(const std::string& name) {
  return ppdsp::parse_tsplib(read_file(data_path("tsplib/" + name + ".tsp")));
}

// Random instance with |V| nodes on a 100x100 grid, n requests with
// distinct endpoints, fleet from the generator's rules. Uses its own RNG so
// that it does not share code paths with the generator under test.
inline ppdsp::Instance random_instance(std::uint64_t seed, int num_nodes, int n, int m) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  std::uniform_int_distribution<int> coord(0, 100);
  std::uniform_int_distribution<int> node(1, num_nodes - 1);
  std::uniform_int_distribution<int> volume(1, 9);
  std::uniform_int_distribution<int> pay(20, 160);
  std::vector<ppdsp::Location> nodes;
  for (int v = 0; v < num_nodes; ++v) nodes.push_back({v, double(coord(rng)), double(coord(rng))});
  std::vector<ppdsp::Request> requests;
  for (int r = 0; r < n; ++r) {
    int f = node(rng);
    int g = node(rng);
    while (g == f) g = node(rng);
    requests.push_back({r, double(pay(rng)), volume(rng), f, g});
  }
  const int caps[] = {25, 20, 15};
  const double coefs[] = {1.2, 1.0, 0.8};
  std::vector<ppdsp::Truck> trucks;
  for (int t = 0; t < m; ++t) trucks.push_back({t, caps[t % 3], coefs[t % 3], std::nullopt});
  return ppdsp::Instance(ppdsp::LocationGraph(std::move(nodes)), std::move(requests), std::move(trucks),
                         {"random", 1.0, m, n, seed});
}

inline std::optional<ppdsp::SolverAdapter> cbc() {
  std::string path = PPDSP_CBC_PATH;
  if (path.empty()) {
    auto found = ppdsp::find_cbc();
    if (!found) return std::nullopt;
    path = *found;
  }
  return ppdsp::cbc_adapter(path);
}

inline std::optional<ppdsp::SolverAdapter> highs() {
  if (!PPDSP_HAVE_HIGHS) return std::nullopt;
  return ppdsp::highs_adapter(PPDSP_HIGHS_SCRIPT);
}

}  // namespace fixtures
