#include "ppdsp/enc_location.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace ppdsp {
namespace {

using mip::Sense;
using mip::Term;
using mip::VarKind;
using mip::Variable;

std::string tag(char family, int t, char k1, int a) {
  return std::string(1, family) + "_t" + std::to_string(t) + "_" + k1 + std::to_string(a);
}

}  // namespace

LocationEncoding encode_location(const Instance& instance, LocationOptions options) {
  LocationEncoding enc;
  const int nv = instance.num_nodes();
  const int n = instance.num_requests();
  const int m = instance.num_trucks();
  enc.num_nodes = nv;
  enc.num_requests = n;
  enc.num_trucks = m;
  mip::MipModel& model = enc.model;
  {
    const mip::Census size = predicted_counts_location(nv, n, m);
    const std::int64_t extra = options.pickup_first_capacity ? pickup_first_extra_rows(nv, m) : 0;
    model.reserve(static_cast<std::size_t>(size.num_variables), static_cast<std::size_t>(size.num_rows + extra));
  }

  for (int t = 0; t < m; ++t) {
    for (int o = 0; o < nv; ++o) {
      for (int d = 0; d < nv; ++d) {
        Variable v;
        v.name = mip::label("x_t", t, "_o", o, "_d", d);
        v.kind = VarKind::Binary;
        v.lower = 0.0;
        v.upper = o == d ? 0.0 : 1.0;
        v.objective = o == d ? 0.0 : -instance.arc_cost(t, o, d);
        v.role = {'x', t, o, d};
        model.add_variable(std::move(v));
      }
    }
  }
  for (int t = 0; t < m; ++t) {
    for (int r = 0; r < n; ++r) {
      model.add_variable({tag('y', t, 'r', r), VarKind::Binary, 0.0, 1.0,
                          instance.request(r).payment, {'y', t, r, -1}});
    }
  }
  for (int t = 0; t < m; ++t) {
    for (int v = 1; v < nv; ++v) {
      model.add_variable({tag('u', t, 'v', v), VarKind::Integer, 0.0, static_cast<double>(nv - 2),
                          0.0, {'u', t, v, -1}});
    }
  }
  for (int t = 0; t < m; ++t) {
    for (int v = 1; v < nv; ++v) {
      model.add_variable({tag('h', t, 'v', v), VarKind::Continuous, 0.0,
                          static_cast<double>(instance.truck(t).capacity), 0.0, {'h', t, v, -1}});
    }
  }

  const double total_volume = std::accumulate(
      instance.requests().begin(), instance.requests().end(), 0.0,
      [](double acc, const Request& r) { return acc + r.volume; });

  for (int r = 0; r < n; ++r) {
    std::vector<Term> terms;
    for (int t = 0; t < m; ++t) terms.push_back({enc.y(t, r), 1.0});
    model.add_row("c3_r" + std::to_string(r), std::move(terms), Sense::LessEqual, 1.0);
  }

  for (int t = 0; t < m; ++t) {
    const std::string ts = "_t" + std::to_string(t);
    const double cap = instance.truck(t).capacity;
    const double big_m = cap + total_volume;

    // Visit coupling and ordering of each request's endpoints.
    for (int r = 0; r < n; ++r) {
      const Request& req = instance.request(r);
      const std::string rs = ts + "_r" + std::to_string(r);
      for (int which = 0; which < 2; ++which) {
        const int target = which == 0 ? req.pickup : req.dropoff;
        std::vector<Term> terms{{enc.y(t, r), 1.0}};
        for (int o = 0; o < nv; ++o) {
          if (o != target) terms.push_back({enc.x(t, o, target), -1.0});
        }
        model.add_row((which == 0 ? "c4" : "c5") + rs, std::move(terms), Sense::LessEqual, 0.0);
      }
    }
    for (int o = 0; o < nv; ++o) {
      std::vector<Term> terms;
      for (int d = 0; d < nv; ++d) {
        if (d != o) terms.push_back({enc.x(t, o, d), 1.0});
      }
      for (int d = 0; d < nv; ++d) {
        if (d != o) terms.push_back({enc.x(t, d, o), -1.0});
      }
      model.add_row("c6" + ts + "_v" + std::to_string(o), std::move(terms), Sense::Equal, 0.0);
    }
    for (int o = 0; o < nv; ++o) {
      std::vector<Term> terms;
      for (int d = 0; d < nv; ++d) {
        if (d != o) terms.push_back({enc.x(t, o, d), 1.0});
      }
      model.add_row("c7" + ts + "_v" + std::to_string(o), std::move(terms), Sense::LessEqual, 1.0);
    }
    // MTZ: u_d - u_o - |V| x_od >= 1 - |V|
    for (int o = 1; o < nv; ++o) {
      for (int d = 1; d < nv; ++d) {
        if (o == d) continue;
        model.add_row(mip::label("c8", ts, "_o", o, "_d", d),
                      {{enc.u(t, d), 1.0}, {enc.u(t, o), -1.0}, {enc.x(t, o, d), -double(nv)}},
                      Sense::GreaterEqual, 1.0 - nv);
      }
    }
    // Pickup before dropoff: u_f - u_g + |V| y <= |V| - 1 (integer gap for the strict form).
    for (int r = 0; r < n; ++r) {
      const Request& req = instance.request(r);
      model.add_row("c9" + ts + "_r" + std::to_string(r),
                    {{enc.u(t, req.pickup), 1.0}, {enc.u(t, req.dropoff), -1.0}, {enc.y(t, r), double(nv)}},
                    Sense::LessEqual, nv - 1.0);
    }
    // Load coupling along used arcs: h_d - h_o = Gamma_d when x_od = 1.
    std::vector<std::vector<Term>> gamma(static_cast<std::size_t>(nv));
    std::vector<std::vector<Term>> pickups(static_cast<std::size_t>(nv));
    for (int r = 0; r < n; ++r) {
      const Request& req = instance.request(r);
      gamma[req.pickup].push_back({enc.y(t, r), double(req.volume)});
      gamma[req.dropoff].push_back({enc.y(t, r), -double(req.volume)});
      pickups[req.pickup].push_back({enc.y(t, r), double(req.volume)});
    }
    for (int o = 1; o < nv; ++o) {
      for (int d = 1; d < nv; ++d) {
        if (o == d) continue;
        const std::string od = mip::label(ts, "_o", o, "_d", d);
        for (int side = 0; side < 2; ++side) {
          // lo: h_d - h_o - Gamma - M x >= -M ; hi: h_d - h_o - Gamma + M x <= M
          std::vector<Term> terms{{enc.h(t, d), 1.0}, {enc.h(t, o), -1.0}};
          for (const Term& g : gamma[d]) terms.push_back({g.var, -g.coef});
          terms.push_back({enc.x(t, o, d), side == 0 ? -big_m : big_m});
          model.add_row((side == 0 ? "c10lo" : "c10hi") + od, std::move(terms),
                        side == 0 ? Sense::GreaterEqual : Sense::LessEqual, side == 0 ? -big_m : big_m);
        }
      }
    }
    if (options.pickup_first_capacity) {
      for (int o = 1; o < nv; ++o) {
        for (int d = 1; d < nv; ++d) {
          if (o == d) continue;
          std::vector<Term> terms{{enc.h(t, o), 1.0}};
          terms.insert(terms.end(), pickups[d].begin(), pickups[d].end());
          terms.push_back({enc.x(t, o, d), big_m});
          model.add_row(mip::label("cap", ts, "_o", o, "_d", d),
                        std::move(terms), Sense::LessEqual, cap + big_m);
        }
      }
    }
  }
  return enc;
}

mip::Census predicted_counts_location(int num_nodes, int n, int m) {
  const std::int64_t v = num_nodes;
  const std::int64_t vars = m * v * v + std::int64_t{m} * n + 2 * m * (v - 1);
  const std::int64_t rows = n + 3LL * m * n + 2 * m * v + 3 * m * (v - 1) * (v - 2);
  return {vars, rows};
}

std::int64_t pickup_first_extra_rows(int num_nodes, int m) {
  return std::int64_t{m} * (num_nodes - 1) * (num_nodes - 2);
}

DeliveryRoutingSolution decode_location(const LocationEncoding& enc,
                                        const std::vector<double>& values) {
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

  const int nv = enc.num_nodes;
  DeliveryRoutingSolution solution;
  for (int t = 0; t < enc.num_trucks; ++t) {
    TruckPlan plan;
    plan.truck = t;
    for (int r = 0; r < enc.num_requests; ++r) {
      if (bit(enc.y(t, r))) plan.requests.push_back(r);
    }
    std::vector<int> next(static_cast<std::size_t>(nv), -1);
    int arcs = 0;
    for (int o = 0; o < nv; ++o) {
      for (int d = 0; d < nv; ++d) {
        if (!bit(enc.x(t, o, d))) continue;
        if (o == d || next[o] != -1) {
          throw DecodeError("truck " + std::to_string(t) + ": arc (" + std::to_string(o) + "," +
                            std::to_string(d) + ") is a loop or a second departure");
        }
        next[o] = d;
        ++arcs;
      }
    }
    if (arcs > 0) {
      std::vector<bool> seen(static_cast<std::size_t>(nv), false);
      plan.route.push_back(kDepot);
      int at = kDepot;
      do {
        const int to = next[at];
        if (to == -1) {
          throw DecodeError("truck " + std::to_string(t) + ": route stops at location " +
                            std::to_string(at) + " without returning to the depot");
        }
        if (to != kDepot && seen[to]) {
          throw DecodeError("truck " + std::to_string(t) + ": location " + std::to_string(to) +
                            " reached twice");
        }
        seen[to] = true;
        plan.route.push_back(to);
        at = to;
      } while (at != kDepot);
      if (static_cast<int>(plan.route.size()) - 1 != arcs) {
        for (int o = 0; o < nv; ++o) {
          if (next[o] != -1 && (o == kDepot ? false : !seen[o])) {
            throw DecodeError("truck " + std::to_string(t) + ": arc (" + std::to_string(o) + "," +
                              std::to_string(next[o]) + ") is not on the depot cycle");
          }
        }
        throw DecodeError("truck " + std::to_string(t) + ": arcs do not form a single depot cycle");
      }
    }
    solution.plans.push_back(std::move(plan));
  }
  return solution;
}

}  // namespace ppdsp
