#pragma once

// Location-based MIP: one graph node per physical location, so co-located
// request endpoints share a node and a truck visits each location at most
// once.

#include <array>
#include <utility>
#include <vector>

#include "ppdsp/core.hpp"
#include "ppdsp/mipir.hpp"

namespace ppdsp {

struct LocationOptions {
  // Adds, per truck and ordered pair of distinct non-depot locations, a row
  // bounding the load on arrival plus the pickups at the destination by the
  // capacity. Without it the load coupling only constrains the net change
  // per location (LoadOrder::Netted).
  bool pickup_first_capacity = false;
};

struct LocationEncoding {
  mip::MipModel model;
  int num_nodes = 0;
  int num_requests = 0;
  int num_trucks = 0;

  int x(int t, int o, int d) const { return (t * num_nodes + o) * num_nodes + d; }
  int y(int t, int r) const { return num_trucks * num_nodes * num_nodes + t * num_requests + r; }
  // v in 1..|V|-1
  int u(int t, int v) const {
    return num_trucks * (num_nodes * num_nodes + num_requests) + t * (num_nodes - 1) + (v - 1);
  }
  int h(int t, int v) const {
    return num_trucks * (num_nodes * num_nodes + num_requests + num_nodes - 1) +
           t * (num_nodes - 1) + (v - 1);
  }
};

LocationEncoding encode_location(const Instance& instance, LocationOptions options = {});

// Closed-form (variables, rows) of encode_location with default options.
mip::Census predicted_counts_location(int num_nodes, int n, int m);

// Rows added by LocationOptions::pickup_first_capacity.
std::int64_t pickup_first_extra_rows(int num_nodes, int m);

// Throws DecodeError when values are not integral within 1e-6 or a truck's
// arcs do not form a single depot-rooted cycle.
DeliveryRoutingSolution decode_location(const LocationEncoding& encoding,
                                        const std::vector<double>& values);

}  // namespace ppdsp
