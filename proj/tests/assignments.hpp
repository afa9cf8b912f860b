#pragma once

// Writes a delivery routing solution as a point in each model's variable
// space, following the models' own meaning of x, y, u and h. Used to check
// that a known-feasible solution satisfies every row and scores its xi.

#include <vector>

#include "ppdsp/core.hpp"
#include "ppdsp/enc_location.hpp"
#include "ppdsp/enc_request.hpp"

namespace fixtures {

// u is the visit position among non-depot stops, h the net load after a
// stop. Unvisited locations get u = 0, h = 0.
inline std::vector<double> location_point(const ppdsp::LocationEncoding& enc,
                                          const ppdsp::DeliveryRoutingSolution& s,
                                          const ppdsp::Instance& inst) {
  std::vector<double> x(static_cast<std::size_t>(enc.model.num_variables()), 0.0);
  for (const auto& plan : s.plans) {
    const int t = plan.truck;
    for (int r : plan.requests) x[enc.y(t, r)] = 1;
    std::vector<int> change(static_cast<std::size_t>(inst.num_nodes()), 0);
    for (int r : plan.requests) {
      change[inst.request(r).pickup] += inst.request(r).volume;
      change[inst.request(r).dropoff] -= inst.request(r).volume;
    }
    int load = 0;
    for (std::size_t i = 0; i + 1 < plan.route.size(); ++i) {
      x[enc.x(t, plan.route[i], plan.route[i + 1])] = 1;
      const int v = plan.route[i + 1];
      if (v == ppdsp::kDepot) continue;
      load += change[v];
      x[enc.u(t, v)] = static_cast<double>(i);
      x[enc.h(t, v)] = load;
    }
  }
  return x;
}

// Node path per plan in the request graph: the events in order, framed by
// the two depots. An idle truck goes straight from start to end.
inline std::vector<int> request_path(const ppdsp::RequestGraphMap& g, const ppdsp::TruckPlan& plan) {
  std::vector<int> path{g.start()};
  for (const auto& e : plan.events) {
    path.push_back(e.kind == ppdsp::EventKind::Pickup ? g.pickup(e.request) : g.dropoff(e.request));
  }
  path.push_back(g.end());
  return path;
}

// u is the path position; h the load after the node. Unvisited pickups get
// u = 0 and dropoffs u = 1 so that pickup-before-dropoff holds for them too;
// their h sits at its lower bound.
inline std::vector<double> request_point(const ppdsp::RequestEncoding& enc,
                                         const ppdsp::DeliveryRoutingSolution& s) {
  const auto& g = enc.graph;
  std::vector<double> x(static_cast<std::size_t>(enc.model.num_variables()), 0.0);
  for (int t = 0; t < enc.num_trucks; ++t) {
    for (int v = 0; v < g.size(); ++v) {
      x[enc.u(t, v)] = g.is_dropoff(v) ? 1 : 0;
      x[enc.h(t, v)] = enc.model.variable(enc.h(t, v)).lower;
    }
    ppdsp::TruckPlan idle;
    idle.truck = t;
    const ppdsp::TruckPlan* plan = &idle;
    for (const auto& p : s.plans) {
      if (p.truck == t) plan = &p;
    }
    const std::vector<int> path = request_path(g, *plan);
    int load = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const int v = path[i];
      if (i + 1 < path.size()) x[enc.x(t, v, path[i + 1])] = 1;
      load += g.nodes[v].volume_change;
      x[enc.u(t, v)] = static_cast<double>(i);
      x[enc.h(t, v)] = load;
    }
  }
  return x;
}

}  // namespace fixtures
