#pragma once

// Domain model of the profit-maximizing pickup and delivery selection
// problem: locations, requests, trucks, delivery routing solutions, the
// profit-cost value of a solution, and an MIP-independent validator.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppdsp/errors.hpp"

namespace ppdsp {

inline constexpr int kDepot = 0;

struct Location {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

// Complete directed graph over locations with Euclidean distances. Node 0 is
// the depot and ids are dense.
class LocationGraph {
 public:
  LocationGraph() = default;
  explicit LocationGraph(std::vector<Location> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const Location& node(int id) const { return nodes_.at(id); }
  std::span<const Location> nodes() const { return nodes_; }
  bool contains(int id) const { return id >= 0 && id < size(); }

  double distance(int from, int to) const {
    return distances_[static_cast<std::size_t>(from) * nodes_.size() + to];
  }

  // Mean distance over all ordered pairs of distinct nodes.
  double average_distance() const;

 private:
  std::vector<Location> nodes_;
  std::vector<double> distances_;
};

struct Request {
  int id = 0;
  double payment = 0.0;
  int volume = 1;
  int pickup = 0;
  int dropoff = 0;
};

struct Truck {
  int id = 0;
  int capacity = 0;
  double cost_coefficient = 1.0;
  // Optional row-major |V|x|V| arc cost table. When present it replaces
  // cost_coefficient x distance; hand-made fixtures use it.
  std::optional<std::vector<double>> arc_costs;
};

struct InstanceMeta {
  std::string sample;
  double k = 1.0;
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
};

class Instance {
 public:
  Instance() = default;
  // Throws StructuralError when an invariant does not hold.
  Instance(LocationGraph graph, std::vector<Request> requests, std::vector<Truck> trucks,
           InstanceMeta meta);

  const LocationGraph& graph() const { return graph_; }
  std::span<const Request> requests() const { return requests_; }
  std::span<const Truck> trucks() const { return trucks_; }
  const InstanceMeta& meta() const { return meta_; }

  int num_nodes() const { return graph_.size(); }
  int num_requests() const { return static_cast<int>(requests_.size()); }
  int num_trucks() const { return static_cast<int>(trucks_.size()); }

  const Request& request(int id) const;
  const Truck& truck(int id) const;

  // l^t(o,d); zero on the diagonal.
  double arc_cost(int truck, int from, int to) const;

  // Non-depot nodes that no request touches.
  std::vector<int> uncovered_nodes() const;

 private:
  LocationGraph graph_;
  std::vector<Request> requests_;
  std::vector<Truck> trucks_;
  InstanceMeta meta_;
};

enum class EventKind { Pickup, Dropoff };

struct Event {
  int request = 0;
  EventKind kind = EventKind::Pickup;

  friend bool operator==(const Event&, const Event&) = default;
};

// (D_t, S_t) for one truck. `route` lists location ids and starts and ends at
// the depot, e.g. {0, 1, 2, 3, 0}; it is empty for an unused truck. `events`
// is only filled under request semantics, where a location may be visited
// more than once and the order of operations is explicit.
struct TruckPlan {
  int truck = 0;
  std::vector<int> requests;
  std::vector<int> route;
  std::vector<Event> events;

  friend bool operator==(const TruckPlan&, const TruckPlan&) = default;
};

struct DeliveryRoutingSolution {
  std::vector<TruckPlan> plans;

  friend bool operator==(const DeliveryRoutingSolution&,
                         const DeliveryRoutingSolution&) = default;
};

// Total payment of the served requests minus the arc costs of all routes.
// Does not check feasibility. Throws StructuralError on unknown ids.
double xi(const DeliveryRoutingSolution& solution, const Instance& instance);
double xi(const TruckPlan& plan, const Instance& instance);

// Route cost of one truck along `route`.
double route_cost(int truck, std::span<const int> route, const Instance& instance);

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  NotCycle,
  RepeatedNode,
  MissingNode,
  PrecedenceViolated,
  CapacityExceeded,
  NegativeLoad,
  DuplicateAssignment,
  UnknownId,
  StrayEvent,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::NotCycle;
  int truck = -1;
  int node = -1;     // witness location, -1 when not applicable
  int request = -1;  // witness request, -1 when not applicable
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  void merge(const ValidationReport& other);
  std::string describe() const;
};

// How pickups and dropoffs at the same location are sequenced when a route
// visits that location once.
//  - PickupFirst: load everything, check capacity, then unload. This is the
//    reading under which the hand-worked example with two trucks and three
//    requests has optimum 11.
//  - Netted: only the net change at a location matters, which is exactly
//    what the location-based MIP's load-difference coupling enforces.
enum class LoadOrder { PickupFirst, Netted };

enum class RouteSemantics { Location, Request };

struct ValidationOptions {
  RouteSemantics semantics = RouteSemantics::Location;
  LoadOrder load_order = LoadOrder::PickupFirst;
};

ValidationReport validate_route(const Truck& truck, std::span<const int> delivery,
                                std::span<const int> route, const Instance& instance,
                                LoadOrder order = LoadOrder::PickupFirst);

// Request-semantics check of an explicit pickup/dropoff sequence. The route
// must equal the depot-framed sequence of event locations with consecutive
// duplicates collapsed.
ValidationReport validate_event_route(const Truck& truck, std::span<const int> delivery,
                                      std::span<const Event> events, std::span<const int> route,
                                      const Instance& instance);

ValidationReport validate_solution(const DeliveryRoutingSolution& solution,
                                   const Instance& instance, ValidationOptions options = {});

struct LoadPoint {
  int node = 0;
  int load = 0;

  friend bool operator==(const LoadPoint&, const LoadPoint&) = default;
};

// Load carried when leaving each non-depot stop of `route`. Throws
// RouteError(MissingNode) if a delivered request's endpoint is not on the
// route.
std::vector<LoadPoint> load_profile(const Truck& truck, std::span<const int> delivery,
                                    std::span<const int> route, const Instance& instance);

class RouteError : public Error {
 public:
  explicit RouteError(Violation violation);
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

// Depot-framed location route for an event sequence: consecutive events at
// the same location collapse into one stop. Empty when `events` is empty.
std::vector<int> route_from_events(std::span<const Event> events, const Instance& instance);

}  // namespace ppdsp
