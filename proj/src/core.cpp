#include "ppdsp/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ppdsp {

LocationGraph::LocationGraph(std::vector<Location> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw StructuralError("location graph has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != static_cast<int>(i)) {
      throw StructuralError("location ids must be 0..|V|-1 in order; found id " +
                            std::to_string(nodes_[i].id) + " at position " + std::to_string(i));
    }
  }
  const std::size_t n = nodes_.size();
  distances_.assign(n * n, 0.0);
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t d = 0; d < n; ++d) {
      if (o == d) continue;
      distances_[o * n + d] =
          std::hypot(nodes_[o].x - nodes_[d].x, nodes_[o].y - nodes_[d].y);
    }
  }
}

double LocationGraph::average_distance() const {
  const int n = size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (int o = 0; o < n; ++o) {
    for (int d = 0; d < n; ++d) {
      if (o != d) total += distance(o, d);
    }
  }
  return total / (static_cast<double>(n) * (n - 1));
}

Instance::Instance(LocationGraph graph, std::vector<Request> requests, std::vector<Truck> trucks,
                   InstanceMeta meta)
    : graph_(std::move(graph)),
      requests_(std::move(requests)),
      trucks_(std::move(trucks)),
      meta_(std::move(meta)) {
  const int v = graph_.size();
  if (v < 1) throw StructuralError("instance has an empty location graph");
  for (std::size_t i = 0; i < requests_.size(); ++i) {
    const Request& r = requests_[i];
    const std::string where = "request " + std::to_string(r.id);
    if (r.id != static_cast<int>(i)) {
      throw StructuralError("request ids must be 0..n-1 in order; found " + std::to_string(r.id));
    }
    if (!graph_.contains(r.pickup) || !graph_.contains(r.dropoff)) {
      throw StructuralError(where + " references an unknown location");
    }
    if (r.pickup == kDepot || r.dropoff == kDepot) {
      throw StructuralError(where + " has an endpoint at the depot");
    }
    if (r.pickup == r.dropoff) throw StructuralError(where + " has pickup == dropoff");
    if (r.volume < 1) throw StructuralError(where + " has volume < 1");
    if (!(r.payment >= 0.0)) throw StructuralError(where + " has a negative payment");
  }
  for (std::size_t i = 0; i < trucks_.size(); ++i) {
    const Truck& t = trucks_[i];
    const std::string where = "truck " + std::to_string(t.id);
    if (t.id != static_cast<int>(i)) {
      throw StructuralError("truck ids must be 0..m-1 in order; found " + std::to_string(t.id));
    }
    if (t.capacity <= 0) throw StructuralError(where + " has capacity <= 0");
    if (!(t.cost_coefficient > 0.0)) throw StructuralError(where + " has cost coefficient <= 0");
    if (t.arc_costs) {
      if (t.arc_costs->size() != static_cast<std::size_t>(v) * v) {
        throw StructuralError(where + " arc cost table is not |V|x|V|");
      }
      for (double c : *t.arc_costs) {
        if (!(c >= 0.0)) throw StructuralError(where + " has a negative arc cost");
      }
    }
  }
  if (meta_.n != num_requests()) {
    throw StructuralError("meta.n = " + std::to_string(meta_.n) + " but there are " +
                          std::to_string(num_requests()) + " requests");
  }
  if (meta_.m != num_trucks()) {
    throw StructuralError("meta.m = " + std::to_string(meta_.m) + " but there are " +
                          std::to_string(num_trucks()) + " trucks");
  }
}

const Request& Instance::request(int id) const {
  if (id < 0 || id >= num_requests()) throw StructuralError("unknown request id " + std::to_string(id));
  return requests_[id];
}

const Truck& Instance::truck(int id) const {
  if (id < 0 || id >= num_trucks()) throw StructuralError("unknown truck id " + std::to_string(id));
  return trucks_[id];
}

double Instance::arc_cost(int truck_id, int from, int to) const {
  const Truck& t = truck(truck_id);
  if (!graph_.contains(from)) throw StructuralError("unknown location id " + std::to_string(from));
  if (!graph_.contains(to)) throw StructuralError("unknown location id " + std::to_string(to));
  if (from == to) return 0.0;
  if (t.arc_costs) return (*t.arc_costs)[static_cast<std::size_t>(from) * num_nodes() + to];
  return t.cost_coefficient * graph_.distance(from, to);
}

std::vector<int> Instance::uncovered_nodes() const {
  std::vector<bool> seen(num_nodes(), false);
  for (const Request& r : requests_) {
    seen[r.pickup] = true;
    seen[r.dropoff] = true;
  }
  std::vector<int> out;
  for (int v = 1; v < num_nodes(); ++v) {
    if (!seen[v]) out.push_back(v);
  }
  return out;
}

double route_cost(int truck, std::span<const int> route, const Instance& instance) {
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) {
    cost += instance.arc_cost(truck, route[i], route[i + 1]);
  }
  return cost;
}

double xi(const TruckPlan& plan, const Instance& instance) {
  instance.truck(plan.truck);
  double value = 0.0;
  for (int r : plan.requests) value += instance.request(r).payment;
  return value - route_cost(plan.truck, plan.route, instance);
}

double xi(const DeliveryRoutingSolution& solution, const Instance& instance) {
  double value = 0.0;
  for (const TruckPlan& plan : solution.plans) value += xi(plan, instance);
  return value;
}

// ---------------------------------------------------------------------------

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NotCycle: return "NotCycle";
    case ViolationKind::RepeatedNode: return "RepeatedNode";
    case ViolationKind::MissingNode: return "MissingNode";
    case ViolationKind::PrecedenceViolated: return "PrecedenceViolated";
    case ViolationKind::CapacityExceeded: return "CapacityExceeded";
    case ViolationKind::NegativeLoad: return "NegativeLoad";
    case ViolationKind::DuplicateAssignment: return "DuplicateAssignment";
    case ViolationKind::UnknownId: return "UnknownId";
    case ViolationKind::StrayEvent: return "StrayEvent";
  }
  return "?";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

void ValidationReport::merge(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

std::string ValidationReport::describe() const {
  if (ok()) return "valid\n";
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << to_string(v.kind);
    if (v.truck >= 0) out << " truck=" << v.truck;
    if (v.node >= 0) out << " node=" << v.node;
    if (v.request >= 0) out << " request=" << v.request;
    if (!v.detail.empty()) out << ": " << v.detail;
    out << '\n';
  }
  return out.str();
}

RouteError::RouteError(Violation violation)
    : Error(std::string(to_string(violation.kind)) + ": " + violation.detail),
      violation_(std::move(violation)) {}

namespace {

Violation make_violation(ViolationKind kind, int truck, int node, int request, std::string detail) {
  return Violation{kind, truck, node, request, std::move(detail)};
}

// Returns false (and records the problem) when an id is out of range.
bool check_ids(const Truck& truck, std::span<const int> delivery, std::span<const int> route,
               const Instance& instance, ValidationReport& report) {
  bool good = true;
  for (int r : delivery) {
    if (r < 0 || r >= instance.num_requests()) {
      report.violations.push_back(make_violation(ViolationKind::UnknownId, truck.id, -1, r,
                                                 "unknown request id " + std::to_string(r)));
      good = false;
    }
  }
  for (int v : route) {
    if (!instance.graph().contains(v)) {
      report.violations.push_back(make_violation(ViolationKind::UnknownId, truck.id, v, -1,
                                                 "unknown location id " + std::to_string(v)));
      good = false;
    }
  }
  return good;
}

}  // namespace

ValidationReport validate_route(const Truck& truck, std::span<const int> delivery,
                                std::span<const int> route, const Instance& instance,
                                LoadOrder order) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, int node, int request, std::string detail) {
    report.violations.push_back(make_violation(kind, truck.id, node, request, std::move(detail)));
  };
  if (!check_ids(truck, delivery, route, instance, report)) return report;

  std::set<int> unique_requests;
  for (int r : delivery) {
    if (!unique_requests.insert(r).second) {
      add(ViolationKind::DuplicateAssignment, -1, r, "request listed twice in one delivery");
    }
  }

  if (route.empty()) {
    if (!delivery.empty()) add(ViolationKind::NotCycle, -1, -1, "nonempty delivery with empty route");
    return report;
  }
  if (route.size() < 3 || route.front() != kDepot || route.back() != kDepot) {
    add(ViolationKind::NotCycle, -1, -1, "route must start and end at the depot and visit a location");
    return report;
  }

  // First position of every interior stop.
  std::map<int, std::size_t> position;
  for (std::size_t i = 1; i + 1 < route.size(); ++i) {
    const int v = route[i];
    if (v == kDepot) {
      add(ViolationKind::RepeatedNode, v, -1, "depot visited inside the route");
      continue;
    }
    if (!position.emplace(v, i).second) add(ViolationKind::RepeatedNode, v, -1, "location visited twice");
  }

  for (int r : unique_requests) {
    const Request& req = instance.request(r);
    auto pick = position.find(req.pickup);
    auto drop = position.find(req.dropoff);
    if (pick == position.end()) add(ViolationKind::MissingNode, req.pickup, r, "pickup not on route");
    if (drop == position.end()) add(ViolationKind::MissingNode, req.dropoff, r, "dropoff not on route");
    if (pick != position.end() && drop != position.end() && pick->second >= drop->second) {
      add(ViolationKind::PrecedenceViolated, req.dropoff, r, "dropoff reached before pickup");
    }
  }

  std::map<int, int> loaded;
  std::map<int, int> unloaded;
  for (int r : unique_requests) {
    const Request& req = instance.request(r);
    loaded[req.pickup] += req.volume;
    unloaded[req.dropoff] += req.volume;
  }
  int load = 0;
  for (std::size_t i = 1; i + 1 < route.size(); ++i) {
    const int v = route[i];
    if (v == kDepot || position.at(v) != i) continue;
    const int up = loaded.count(v) ? loaded.at(v) : 0;
    const int down = unloaded.count(v) ? unloaded.at(v) : 0;
    if (order == LoadOrder::PickupFirst) {
      load += up;
      if (load > truck.capacity) {
        add(ViolationKind::CapacityExceeded, v, -1,
            "load " + std::to_string(load) + " exceeds capacity " + std::to_string(truck.capacity));
      }
      load -= down;
    } else {
      load += up - down;
      if (load > truck.capacity) {
        add(ViolationKind::CapacityExceeded, v, -1,
            "load " + std::to_string(load) + " exceeds capacity " + std::to_string(truck.capacity));
      }
    }
    if (load < 0) add(ViolationKind::NegativeLoad, v, -1, "load " + std::to_string(load));
  }
  return report;
}

std::vector<int> route_from_events(std::span<const Event> events, const Instance& instance) {
  std::vector<int> route;
  if (events.empty()) return route;
  route.push_back(kDepot);
  for (const Event& e : events) {
    const Request& req = instance.request(e.request);
    const int v = e.kind == EventKind::Pickup ? req.pickup : req.dropoff;
    if (route.back() != v) route.push_back(v);
  }
  route.push_back(kDepot);
  return route;
}

ValidationReport validate_event_route(const Truck& truck, std::span<const int> delivery,
                                      std::span<const Event> events, std::span<const int> route,
                                      const Instance& instance) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, int node, int request, std::string detail) {
    report.violations.push_back(make_violation(kind, truck.id, node, request, std::move(detail)));
  };
  if (!check_ids(truck, delivery, route, instance, report)) return report;
  for (const Event& e : events) {
    if (e.request < 0 || e.request >= instance.num_requests()) {
      add(ViolationKind::UnknownId, -1, e.request, "event for unknown request");
      return report;
    }
  }

  std::set<int> assigned;
  for (int r : delivery) {
    if (!assigned.insert(r).second) {
      add(ViolationKind::DuplicateAssignment, -1, r, "request listed twice in one delivery");
    }
  }

  std::map<int, std::size_t> pick_at;
  std::map<int, std::size_t> drop_at;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    const Request& req = instance.request(e.request);
    if (!assigned.count(e.request)) {
      add(ViolationKind::StrayEvent, -1, e.request, "event for a request outside the delivery");
      continue;
    }
    auto& slot = e.kind == EventKind::Pickup ? pick_at : drop_at;
    if (!slot.emplace(e.request, i).second) {
      add(ViolationKind::RepeatedNode, e.kind == EventKind::Pickup ? req.pickup : req.dropoff,
          e.request, "event repeated");
    }
  }
  for (int r : assigned) {
    const Request& req = instance.request(r);
    const bool has_pick = pick_at.count(r) > 0;
    const bool has_drop = drop_at.count(r) > 0;
    if (!has_pick) add(ViolationKind::MissingNode, req.pickup, r, "no pickup event");
    if (!has_drop) add(ViolationKind::MissingNode, req.dropoff, r, "no dropoff event");
    if (has_pick && has_drop && pick_at.at(r) > drop_at.at(r)) {
      add(ViolationKind::PrecedenceViolated, req.dropoff, r, "dropoff event before pickup event");
    }
  }

  int load = 0;
  for (const Event& e : events) {
    if (!assigned.count(e.request)) continue;
    const Request& req = instance.request(e.request);
    const int v = e.kind == EventKind::Pickup ? req.pickup : req.dropoff;
    load += e.kind == EventKind::Pickup ? req.volume : -req.volume;
    if (load > truck.capacity) {
      add(ViolationKind::CapacityExceeded, v, e.request,
          "load " + std::to_string(load) + " exceeds capacity " + std::to_string(truck.capacity));
    }
    if (load < 0) add(ViolationKind::NegativeLoad, v, e.request, "load " + std::to_string(load));
  }

  const std::vector<int> expected = route_from_events(events, instance);
  if (!std::equal(expected.begin(), expected.end(), route.begin(), route.end())) {
    add(ViolationKind::NotCycle, -1, -1, "route does not match the event sequence");
  }
  return report;
}

ValidationReport validate_solution(const DeliveryRoutingSolution& solution,
                                   const Instance& instance, ValidationOptions options) {
  ValidationReport report;
  std::set<int> trucks_seen;
  std::map<int, int> owner;
  for (const TruckPlan& plan : solution.plans) {
    if (plan.truck < 0 || plan.truck >= instance.num_trucks()) {
      report.violations.push_back(make_violation(ViolationKind::UnknownId, plan.truck, -1, -1,
                                                 "unknown truck id " + std::to_string(plan.truck)));
      continue;
    }
    if (!trucks_seen.insert(plan.truck).second) {
      report.violations.push_back(make_violation(ViolationKind::DuplicateAssignment, plan.truck, -1,
                                                 -1, "truck has more than one plan"));
    }
    std::set<int> in_plan(plan.requests.begin(), plan.requests.end());
    for (int r : in_plan) {
      auto [it, fresh] = owner.emplace(r, plan.truck);
      if (!fresh) {
        report.violations.push_back(make_violation(
            ViolationKind::DuplicateAssignment, plan.truck, -1, r,
            "request also assigned to truck " + std::to_string(it->second)));
      }
    }
    const Truck& truck = instance.truck(plan.truck);
    if (options.semantics == RouteSemantics::Location) {
      report.merge(validate_route(truck, plan.requests, plan.route, instance, options.load_order));
    } else {
      report.merge(validate_event_route(truck, plan.requests, plan.events, plan.route, instance));
    }
  }
  return report;
}

std::vector<LoadPoint> load_profile(const Truck& truck, std::span<const int> delivery,
                                    std::span<const int> route, const Instance& instance) {
  std::vector<LoadPoint> profile;
  if (delivery.empty() && route.empty()) return profile;
  std::map<int, int> change;
  for (int r : delivery) {
    const Request& req = instance.request(r);
    for (int endpoint : {req.pickup, req.dropoff}) {
      if (std::find(route.begin(), route.end(), endpoint) == route.end()) {
        throw RouteError(make_violation(ViolationKind::MissingNode, truck.id, endpoint, r,
                                        "request endpoint not on route"));
      }
    }
    change[req.pickup] += req.volume;
    change[req.dropoff] -= req.volume;
  }
  std::set<int> visited;
  int load = 0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    const int v = route[i];
    if (v == kDepot || !visited.insert(v).second) continue;
    load += change.count(v) ? change.at(v) : 0;
    profile.push_back({v, load});
  }
  return profile;
}

}  // namespace ppdsp
