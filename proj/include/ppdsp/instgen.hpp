#pragma once

// Seeded generation of instance families from TSPLIB coordinate samples.
//
// A family is built once at the largest repetition rate k. Every non-depot
// node gets a repetition count, the 2n selections are shuffled into n
// ordered pickup/dropoff pairs, the pairs are ordered so that truncating
// from the back keeps nodes covered as long as possible, and each request
// draws a volume and derives its payment from it. Smaller k values take
// prefixes of the same request list.
//
// Pair and count vectors are indexed by non-depot position: index i refers to
// location id i + 1.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ppdsp/core.hpp"
#include "ppdsp/tsplib.hpp"

namespace ppdsp {

// mt19937_64 with explicitly specified derived draws, so that a seed yields
// the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Continuous uniform on the closed interval [a, b] from 53 random bits.
  double uniform(double a, double b);

  // Uniform integer in [0, bound) by rejection on the top of the 64-bit range.
  std::uint64_t below(std::uint64_t bound);

  // Fisher-Yates, drawing swap indexes from the back of the range forward.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// floor(x + 0.5).
long long round_half_up(double x);

// round(k (|V| - 1) / 2).
int requests_for(double k, int num_nodes);

using NodePair = std::pair<int, int>;

// Every node at least once, the rest drawn uniformly. Throws GenerationError(InfeasibleRepetition) if 2n < count.
std::vector<int> repetition_counts(int num_nondepot, int n, Rng& rng);

// The multiset list [0 x counts[0], 1 x counts[1], ...] that pair_nodes
// shuffles.
std::vector<int> expand_counts(const std::vector<int>& counts);

inline constexpr long long kDefaultReshuffleCap = 1'000'000;

// Restarts from a fresh shuffle whenever a pair is degenerate or
// repeats an earlier ordered pair. Throws GenerationError(PairingStalled)
// after `reshuffle_cap` failed shuffles.
std::vector<NodePair> pair_nodes(const std::vector<int>& counts, int n, Rng& rng,
                                 long long reshuffle_cap = kDefaultReshuffleCap);

struct PairFamily {
  std::vector<NodePair> sorted_pairs;
  std::vector<int> repetition_counts;
  // Number of leading pairs placed as the last remaining pair of some node.
  std::size_t head_size = 0;
};

// Head: pairs that use up the last count of an endpoint. Tail: the rest,
// highest remaining count sum last. With `verbatim_tail_decrement` the tail
// step overwrites the second endpoint's count with the first endpoint's
// count minus one instead of decrementing it (compatibility mode).
PairFamily sort_pairs(const std::vector<int>& counts, std::vector<NodePair> pairs,
                      bool verbatim_tail_decrement = false);

inline constexpr int kDefaultAverageVolume = 5;

// Volume round(Uniform(1, 2 avg - 1)); payment round(2 avgDist q / avg).
std::vector<Request> make_requests(const LocationGraph& graph,
                                   const std::vector<NodePair>& sorted_pairs, int n,
                                   int average_volume, Rng& rng);

// Capacities 25, 20, 15 with cost coefficients 1.2, 1.0, 0.8, cycled.
std::vector<Truck> make_fleet(int m);

struct GenerationOptions {
  int average_volume = kDefaultAverageVolume;
  long long reshuffle_cap = kDefaultReshuffleCap;
  bool verbatim_tail_decrement = false;
  // Build every k from its own repetition counts and pairs instead of
  // taking prefixes of the largest-k list. Prefixes shorter than the pair
  // family's head can leave locations unused; this mode never does.
  bool per_k_families = false;
};

LocationGraph graph_from_sample(const TsplibSample& sample);

// One instance per k. Uses a single RNG stream seeded with `seed` (one
// stream per k with per_k_families).
std::map<double, Instance> generate_family(const TsplibSample& sample,
                                           const std::vector<double>& k_list, int m,
                                           std::uint64_t seed, GenerationOptions options = {});

}  // namespace ppdsp
