#include "ppdsp/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace ppdsp {

double Rng::uniform(double a, double b) {
  constexpr double kScale = 1.0 / 9007199254740991.0;  // 1 / (2^53 - 1)
  const double u = static_cast<double>(next() >> 11) * kScale;
  return a + (b - a) * u;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = next();
  while (draw >= limit) draw = next();
  return draw % bound;
}

long long round_half_up(double x) { return static_cast<long long>(std::floor(x + 0.5)); }

int requests_for(double k, int num_nodes) {
  return static_cast<int>(round_half_up(k * (num_nodes - 1) / 2.0));
}

std::vector<int> repetition_counts(int num_nondepot, int n, Rng& rng) {
  if (num_nondepot < 1) {
    throw GenerationError(GenerationError::Kind::TooFewNodes, "no non-depot nodes");
  }
  if (2LL * n < num_nondepot) {
    throw GenerationError(GenerationError::Kind::InfeasibleRepetition,
                          "InfeasibleRepetition: 2n = " + std::to_string(2LL * n) + " < " +
                              std::to_string(num_nondepot) + " non-depot nodes");
  }
  std::vector<int> counts(num_nondepot, 1);
  long long total = num_nondepot;
  while (total < 2LL * n) {
    const auto i = static_cast<std::size_t>(round_half_up(rng.uniform(0.0, num_nondepot - 1)));
    ++counts[i];
    ++total;
  }
  return counts;
}

std::vector<int> expand_counts(const std::vector<int>& counts) {
  std::vector<int> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(counts[i]), static_cast<int>(i));
  }
  return out;
}

std::vector<NodePair> pair_nodes(const std::vector<int>& counts, int n, Rng& rng,
                                 long long reshuffle_cap) {
  std::vector<int> shuffled = expand_counts(counts);
  if (shuffled.size() != 2 * static_cast<std::size_t>(n)) {
    throw GenerationError(GenerationError::Kind::BadParameter,
                          "repetition counts sum to " + std::to_string(shuffled.size()) +
                              ", expected 2n = " + std::to_string(2 * n));
  }
  std::vector<NodePair> pairs;
  std::set<NodePair> seen;
  for (long long attempt = 0; attempt < reshuffle_cap; ++attempt) {
    rng.shuffle(shuffled);
    pairs.clear();
    seen.clear();
    bool complete = true;
    for (int i = 0; i < n; ++i) {
      const NodePair p{shuffled[2 * i], shuffled[2 * i + 1]};
      if (p.first == p.second || !seen.insert(p).second) {
        complete = false;
        break;
      }
      pairs.push_back(p);
    }
    if (complete) return pairs;
  }
  throw GenerationError(GenerationError::Kind::PairingStalled,
                        "PairingStalled: no valid pairing after " + std::to_string(reshuffle_cap) +
                            " shuffles");
}

PairFamily sort_pairs(const std::vector<int>& counts, std::vector<NodePair> pairs,
                      bool verbatim_tail_decrement) {
  std::vector<int> remaining = counts;
  std::vector<NodePair> head;
  std::vector<NodePair> tail;  // built front-first, reversed at the end

  auto count = [&](int node) -> int& { return remaining.at(static_cast<std::size_t>(node)); };

  while (!pairs.empty()) {
    std::size_t i = 0;
    while (i < pairs.size()) {
      const auto [a, b] = pairs[i];
      if (count(a) == 1 && count(b) == 1) {
        --count(a);
        --count(b);
        head.insert(head.begin(), pairs[i]);
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(i));
      } else if (count(a) == 1 || count(b) == 1) {
        --count(a);
        --count(b);
        head.push_back(pairs[i]);
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }

    int best = 0;
    std::ptrdiff_t best_index = -1;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const int sum = count(pairs[j].first) + count(pairs[j].second);
      if (sum > best) {
        best = sum;
        best_index = static_cast<std::ptrdiff_t>(j);
      }
    }
    if (best_index >= 0) {
      const auto [a, b] = pairs[static_cast<std::size_t>(best_index)];
      --count(a);
      if (verbatim_tail_decrement) {
        count(b) = count(a) - 1;
      } else {
        --count(b);
      }
      tail.push_back(pairs[static_cast<std::size_t>(best_index)]);
      pairs.erase(pairs.begin() + best_index);
    } else if (!pairs.empty()) {
      // Only reachable with corrupted counts (verbatim mode): no pair is
      // critical and none has a positive count sum.
      for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) tail.push_back(*it);
      pairs.clear();
    }
  }

  PairFamily family;
  family.head_size = head.size();
  family.repetition_counts = counts;
  family.sorted_pairs = std::move(head);
  family.sorted_pairs.insert(family.sorted_pairs.end(), tail.rbegin(), tail.rend());
  return family;
}

std::vector<Request> make_requests(const LocationGraph& graph,
                                   const std::vector<NodePair>& sorted_pairs, int n,
                                   int average_volume, Rng& rng) {
  if (n < 0 || static_cast<std::size_t>(n) > sorted_pairs.size()) {
    throw GenerationError(GenerationError::Kind::BadParameter,
                          "asked for " + std::to_string(n) + " requests from " +
                              std::to_string(sorted_pairs.size()) + " pairs");
  }
  const double average_distance = graph.average_distance();
  std::vector<Request> requests;
  requests.reserve(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    Request req;
    req.id = r;
    req.volume = static_cast<int>(round_half_up(rng.uniform(1.0, 2.0 * average_volume - 1.0)));
    req.payment = static_cast<double>(
        round_half_up(2.0 * average_distance * req.volume / average_volume));
    req.pickup = sorted_pairs[static_cast<std::size_t>(r)].first + 1;
    req.dropoff = sorted_pairs[static_cast<std::size_t>(r)].second + 1;
    requests.push_back(req);
  }
  return requests;
}

std::vector<Truck> make_fleet(int m) {
  if (m < 1) throw GenerationError(GenerationError::Kind::BadParameter, "m must be >= 1");
  constexpr int kCapacity[] = {25, 20, 15};
  constexpr double kCoefficient[] = {1.2, 1.0, 0.8};
  std::vector<Truck> fleet;
  for (int t = 0; t < m; ++t) {
    Truck truck;
    truck.id = t;
    truck.capacity = kCapacity[t % 3];
    truck.cost_coefficient = kCoefficient[t % 3];
    fleet.push_back(truck);
  }
  return fleet;
}

LocationGraph graph_from_sample(const TsplibSample& sample) {
  std::vector<Location> nodes;
  nodes.reserve(sample.coords.size());
  for (std::size_t i = 0; i < sample.coords.size(); ++i) {
    nodes.push_back({static_cast<int>(i), sample.coords[i].x, sample.coords[i].y});
  }
  return LocationGraph(std::move(nodes));
}

std::map<double, Instance> generate_family(const TsplibSample& sample,
                                           const std::vector<double>& k_list, int m,
                                           std::uint64_t seed, GenerationOptions options) {
  if (sample.coords.size() < kMinSampleNodes) {
    throw GenerationError(GenerationError::Kind::TooFewNodes, "sample needs at least 3 nodes");
  }
  if (k_list.empty()) throw GenerationError(GenerationError::Kind::BadParameter, "empty k list");
  if (!std::is_sorted(k_list.begin(), k_list.end())) {
    throw GenerationError(GenerationError::Kind::BadParameter, "k list must be ascending");
  }
  if (k_list.front() < 1.0) throw GenerationError(GenerationError::Kind::BadParameter, "k must be >= 1");

  const LocationGraph graph = graph_from_sample(sample);
  const int num_nodes = graph.size();
  const std::vector<Truck> fleet = make_fleet(m);

  auto build = [&](int n) {
    Rng rng(seed);
    const std::vector<int> counts = repetition_counts(num_nodes - 1, n, rng);
    std::vector<NodePair> pairs = pair_nodes(counts, n, rng, options.reshuffle_cap);
    const PairFamily family = sort_pairs(counts, std::move(pairs), options.verbatim_tail_decrement);
    return make_requests(graph, family.sorted_pairs, n, options.average_volume, rng);
  };

  const std::vector<Request> all_requests =
      options.per_k_families ? std::vector<Request>{} : build(requests_for(k_list.back(), num_nodes));

  std::map<double, Instance> out;
  for (double k : k_list) {
    const int n = requests_for(k, num_nodes);
    if (n < 1) throw GenerationError(GenerationError::Kind::BadParameter, "n(k) must be >= 1");
    std::vector<Request> requests =
        options.per_k_families ? build(n)
                               : std::vector<Request>(all_requests.begin(), all_requests.begin() + n);
    InstanceMeta meta{sample.name, k, m, n, seed};
    out.emplace(k, Instance(graph, std::move(requests), fleet, std::move(meta)));
  }
  return out;
}

}  // namespace ppdsp
