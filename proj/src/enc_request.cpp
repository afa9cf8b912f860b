#include "ppdsp/enc_request.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppdsp {
namespace {

using mip::Sense;
using mip::Term;
using mip::VarKind;

}  // namespace

RequestGraphMap make_request_graph(const Instance& instance) {
  RequestGraphMap map;
  const int n = instance.num_requests();
  map.num_requests = n;
  map.nodes.assign(static_cast<std::size_t>(2 * n + 2), RequestNode{});
  for (int r = 0; r < n; ++r) {
    const Request& req = instance.request(r);
    map.nodes[map.pickup(r)] = {req.pickup, req.volume, r};
    map.nodes[map.dropoff(r)] = {req.dropoff, -req.volume, r};
  }
  return map;
}

RequestEncoding encode_request(const Instance& instance) {
  RequestEncoding enc;
  enc.graph = make_request_graph(instance);
  enc.num_trucks = instance.num_trucks();
  const RequestGraphMap& g = enc.graph;
  const int nn = g.size();
  const int n = g.num_requests;
  const int m = enc.num_trucks;
  const int end = g.end();
  mip::MipModel& model = enc.model;
  {
    const mip::Census size = predicted_counts_request(n, m);
    model.reserve(static_cast<std::size_t>(size.num_variables), static_cast<std::size_t>(size.num_rows));
  }

  // Arcs fixed to zero: self loops, start->dropoff, pickup->end, into the
  // start depot from a request node, and out of the end depot.
  auto fixed = [&](int o, int d) {
    if (o == d) return true;
    if (o == 0 && g.is_dropoff(d)) return true;
    if (g.is_pickup(o) && d == end) return true;
    if (d == 0 && o != 0 && o != end) return true;
    if (o == end && d != 0 && d != end) return true;
    return false;
  };

  for (int t = 0; t < m; ++t) {
    for (int o = 0; o < nn; ++o) {
      for (int d = 0; d < nn; ++d) {
        const double profit = g.is_pickup(o) ? instance.request(g.nodes[o].request).payment : 0.0;
        const double cost = instance.arc_cost(t, g.nodes[o].location, g.nodes[d].location);
        mip::Variable v;
        v.name = mip::label("x_t", t, "_o", o, "_d", d);
        v.kind = VarKind::Binary;
        v.upper = fixed(o, d) ? 0.0 : 1.0;
        v.objective = profit - cost;
        v.role = {'x', t, o, d};
        model.add_variable(std::move(v));
      }
    }
  }
  for (int t = 0; t < m; ++t) {
    for (int v = 0; v < nn; ++v) {
      model.add_variable({mip::label("u_t", t, "_v", v), VarKind::Integer,
                          0.0, double(nn - 1), 0.0, {'u', t, v, -1}});
    }
  }
  for (int t = 0; t < m; ++t) {
    const int cap = instance.truck(t).capacity;
    for (int v = 0; v < nn; ++v) {
      const int q = g.nodes[v].volume_change;
      // A request larger than the truck would leave an empty interval and
      // make the whole model infeasible; clamp instead. The load rows still
      // keep this truck away from the node.
      const int hi = std::max(0, std::min(cap, cap + q));
      const int lo = std::min(std::max(0, q), hi);
      model.add_variable({mip::label("h_t", t, "_v", v),
                          VarKind::Continuous, double(lo), double(hi), 0.0, {'h', t, v, -1}});
    }
  }

  for (int t = 0; t < m; ++t) {
    const std::string ts = "_t" + std::to_string(t);
    std::vector<Term> out_start;
    std::vector<Term> in_end;
    for (int d = 0; d < nn; ++d) out_start.push_back({enc.x(t, 0, d), 1.0});
    for (int o = 0; o < nn; ++o) in_end.push_back({enc.x(t, o, end), 1.0});
    model.add_row("a3s" + ts, std::move(out_start), Sense::Equal, 1.0);
    model.add_row("a3e" + ts, std::move(in_end), Sense::Equal, 1.0);
  }
  for (int r = 0; r < n; ++r) {
    const int d = g.pickup(r);
    std::vector<Term> terms;
    for (int t = 0; t < m; ++t) {
      for (int o = 0; o < nn; ++o) terms.push_back({enc.x(t, o, d), 1.0});
    }
    model.add_row("a4_v" + std::to_string(d), std::move(terms), Sense::LessEqual, 1.0);
  }
  for (int t = 0; t < m; ++t) {
    const std::string ts = "_t" + std::to_string(t);
    for (int r = 0; r < n; ++r) {
      const int o = g.pickup(r);
      std::vector<Term> terms;
      for (int d = 0; d < nn; ++d) terms.push_back({enc.x(t, o, d), 1.0});
      for (int d = 0; d < nn; ++d) terms.push_back({enc.x(t, o + n, d), -1.0});
      model.add_row("a5" + ts + "_r" + std::to_string(r), std::move(terms), Sense::Equal, 0.0);
    }
    for (int v = 1; v < end; ++v) {
      std::vector<Term> terms;
      for (int d = 0; d < nn; ++d) {
        if (d != v) terms.push_back({enc.x(t, v, d), 1.0});
      }
      for (int o = 0; o < nn; ++o) {
        if (o != v) terms.push_back({enc.x(t, o, v), -1.0});
      }
      model.add_row(mip::label("a6", ts, "_v", v), std::move(terms), Sense::Equal, 0.0);
    }
    // MTZ: u_d - u_o - N x_od >= 1 - N
    for (int o = 0; o < nn; ++o) {
      for (int d = 0; d < nn; ++d) {
        if (o == d) continue;
        model.add_row(mip::label("a7", ts, "_o", o, "_d", d),
                      {{enc.u(t, d), 1.0}, {enc.u(t, o), -1.0}, {enc.x(t, o, d), -double(nn)}},
                      Sense::GreaterEqual, 1.0 - nn);
      }
    }
    for (int r = 0; r < n; ++r) {
      model.add_row("a8" + ts + "_r" + std::to_string(r),
                    {{enc.u(t, g.dropoff(r)), 1.0}, {enc.u(t, g.pickup(r)), -1.0}},
                    Sense::GreaterEqual, 1.0);
    }
    // Load: h_d - h_o - c x_od >= q_d - c
    const double cap = instance.truck(t).capacity;
    for (int o = 0; o < nn; ++o) {
      for (int d = 0; d < nn; ++d) {
        if (o == d) continue;
        model.add_row(mip::label("a9", ts, "_o", o, "_d", d),
                      {{enc.h(t, d), 1.0}, {enc.h(t, o), -1.0}, {enc.x(t, o, d), -cap}},
                      Sense::GreaterEqual, g.nodes[d].volume_change - cap);
      }
    }
  }
  return enc;
}

mip::Census predicted_counts_request(int n, int m) {
  const std::int64_t big_n = 2LL * n + 2;
  const std::int64_t vars = m * big_n * big_n + 2 * m * big_n;
  const std::int64_t rows = 2LL * m + n + 4LL * m * n + 2 * m * big_n * (big_n - 1);
  return {vars, rows};
}

RequestDecoding decode_request(const RequestEncoding& enc, const std::vector<double>& values,
                               const Instance& instance) {
  if (values.size() != static_cast<std::size_t>(enc.model.num_variables())) {
    throw DecodeError("assignment has " + std::to_string(values.size()) + " values, model has " +
                      std::to_string(enc.model.num_variables()) + " variables");
  }
  auto bit = [&](int index) {
    const double v = values[static_cast<std::size_t>(index)];
    const double r = std::round(v);
    if (std::fabs(v - r) > 1e-6 || (r != 0.0 && r != 1.0)) {
      throw DecodeError("non-binary value " + std::to_string(v) + " for " +
                        enc.model.variable(index).name);
    }
    return r == 1.0;
  };

  const RequestGraphMap& g = enc.graph;
  const int nn = g.size();
  RequestDecoding out;
  for (int t = 0; t < enc.num_trucks; ++t) {
    std::vector<int> next(static_cast<std::size_t>(nn), -1);
    int arcs = 0;
    for (int o = 0; o < nn; ++o) {
      for (int d = 0; d < nn; ++d) {
        if (!bit(enc.x(t, o, d))) continue;
        if (o == d || next[o] != -1) {
          throw DecodeError("truck " + std::to_string(t) + ": arc (" + std::to_string(o) + "," +
                            std::to_string(d) + ") is a loop or a second departure");
        }
        next[o] = d;
        ++arcs;
      }
    }
    std::vector<int> path{g.start()};
    std::vector<bool> seen(static_cast<std::size_t>(nn), false);
    seen[0] = true;
    while (path.back() != g.end()) {
      const int to = next[path.back()];
      if (to == -1 || seen[to]) {
        throw DecodeError("truck " + std::to_string(t) + ": no path from node 0 to node " +
                          std::to_string(g.end()) + " (stuck at node " +
                          std::to_string(path.back()) + ")");
      }
      seen[to] = true;
      path.push_back(to);
    }
    if (static_cast<int>(path.size()) - 1 != arcs) {
      for (int o = 0; o < nn; ++o) {
        if (next[o] != -1 && !seen[o]) {
          throw DecodeError("truck " + std::to_string(t) + ": arc (" + std::to_string(o) + "," +
                            std::to_string(next[o]) + ") is off the depot path");
        }
      }
      throw DecodeError("truck " + std::to_string(t) + ": arcs do not form a single path");
    }

    TruckPlan plan;
    plan.truck = t;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const int v = path[i];
      const RequestNode& node = g.nodes[v];
      if (g.is_pickup(v)) {
        plan.requests.push_back(node.request);
        plan.events.push_back({node.request, EventKind::Pickup});
      } else {
        plan.events.push_back({node.request, EventKind::Dropoff});
      }
    }
    std::sort(plan.requests.begin(), plan.requests.end());
    plan.route = route_from_events(plan.events, instance);
    out.solution.plans.push_back(std::move(plan));
    out.node_paths.push_back(std::move(path));
  }
  return out;
}

}  // namespace ppdsp
