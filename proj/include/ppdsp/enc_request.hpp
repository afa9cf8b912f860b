#pragma once

// Request-based MIP: every request contributes its own pickup and dropoff
// node, plus a start depot (node 0) and an end depot (node 2n+1). Request r
// has pickup node r+1 and dropoff node r+1+n.

#include <vector>

#include "ppdsp/core.hpp"
#include "ppdsp/mipir.hpp"

namespace ppdsp {

struct RequestNode {
  int location = kDepot;
  int volume_change = 0;  // +q at a pickup, -q at a dropoff, 0 at the depots
  int request = -1;
};

struct RequestGraphMap {
  std::vector<RequestNode> nodes;
  int num_requests = 0;

  int size() const { return static_cast<int>(nodes.size()); }
  int start() const { return 0; }
  int end() const { return 2 * num_requests + 1; }
  int pickup(int r) const { return r + 1; }
  int dropoff(int r) const { return r + 1 + num_requests; }
  bool is_pickup(int v) const { return v >= 1 && v <= num_requests; }
  bool is_dropoff(int v) const { return v > num_requests && v <= 2 * num_requests; }
};

RequestGraphMap make_request_graph(const Instance& instance);

struct RequestEncoding {
  mip::MipModel model;
  RequestGraphMap graph;
  int num_trucks = 0;

  int x(int t, int o, int d) const { return (t * size() + o) * size() + d; }
  int u(int t, int v) const { return num_trucks * size() * size() + t * size() + v; }
  int h(int t, int v) const { return num_trucks * size() * (size() + 1) + t * size() + v; }
  int size() const { return graph.size(); }
};

RequestEncoding encode_request(const Instance& instance);

mip::Census predicted_counts_request(int n, int m);

struct RequestDecoding {
  DeliveryRoutingSolution solution;          // with events and collapsed routes
  std::vector<std::vector<int>> node_paths;  // per truck, 0 ... 2n+1
};

// Throws DecodeError when values are not integral within 1e-6 or a truck's
// arcs do not form one path from node 0 to node 2n+1.
RequestDecoding decode_request(const RequestEncoding& encoding, const std::vector<double>& values,
                               const Instance& instance);

}  // namespace ppdsp
