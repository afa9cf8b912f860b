#include "ppdsp/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ppdsp {

using nlohmann::json;

std::string format_real(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string quoted(const std::string& s) { return json(s).dump(); }

template <typename Range, typename Fn>
std::string join(const Range& items, Fn&& fn) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += ", ";
    first = false;
    out += fn(item);
  }
  return out;
}

// Appends `records` as a JSON array, one element per line.
void write_array(std::ostringstream& out, const char* key, const std::vector<std::string>& records,
                 bool last) {
  out << "  \"" << key << "\": [";
  if (records.empty()) {
    out << "]";
  } else {
    out << "\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      out << "    " << records[i] << (i + 1 < records.size() ? ",\n" : "\n");
    }
    out << "  ]";
  }
  out << (last ? "\n" : ",\n");
}

const json& field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object()) throw SchemaError(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

double real_field(const json& object, const char* key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_number()) throw SchemaError(path + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(path + "." + key, "expected a finite number");
  return d;
}

long long int_field(const json& object, const char* key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_number_integer()) throw SchemaError(path + "." + key, "expected an integer");
  return v.get<long long>();
}

const json& array_field(const json& object, const char* key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_array()) throw SchemaError(path + "." + key, "expected an array");
  return v;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; convert it to a line number.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError(line, e.what());
  }
}

}  // namespace

std::string serialize_instance(const Instance& instance) {
  const InstanceMeta& meta = instance.meta();
  std::ostringstream out;
  out << "{\n";
  out << "  \"meta\": {\"sample\": " << quoted(meta.sample) << ", \"k\": " << format_real(meta.k)
      << ", \"m\": " << meta.m << ", \"n\": " << meta.n << ", \"seed\": " << meta.seed << "},\n";

  std::vector<std::string> records;
  for (const Location& loc : instance.graph().nodes()) {
    records.push_back("{\"id\": " + std::to_string(loc.id) + ", \"x\": " + format_real(loc.x) +
                      ", \"y\": " + format_real(loc.y) + "}");
  }
  write_array(out, "locations", records, false);

  records.clear();
  for (const Request& r : instance.requests()) {
    records.push_back("{\"id\": " + std::to_string(r.id) + ", \"w\": " + format_real(r.payment) +
                      ", \"q\": " + std::to_string(r.volume) +
                      ", \"pickup\": " + std::to_string(r.pickup) +
                      ", \"dropoff\": " + std::to_string(r.dropoff) + "}");
  }
  write_array(out, "requests", records, false);

  records.clear();
  const int v = instance.num_nodes();
  for (const Truck& t : instance.trucks()) {
    std::string rec = "{\"id\": " + std::to_string(t.id) +
                      ", \"capacity\": " + std::to_string(t.capacity) +
                      ", \"coefficient\": " + format_real(t.cost_coefficient);
    if (t.arc_costs) {
      rec += ", \"costs\": [";
      for (int o = 0; o < v; ++o) {
        if (o > 0) rec += ", ";
        rec += "[";
        for (int d = 0; d < v; ++d) {
          if (d > 0) rec += ", ";
          rec += format_real((*t.arc_costs)[static_cast<std::size_t>(o) * v + d]);
        }
        rec += "]";
      }
      rec += "]";
    }
    rec += "}";
    records.push_back(std::move(rec));
  }
  write_array(out, "trucks", records, true);
  out << "}\n";
  return out.str();
}

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw SchemaError("$", "expected an object");

  const json& meta_json = field(doc, "meta", "$");
  InstanceMeta meta;
  {
    const json& sample = field(meta_json, "sample", "meta");
    if (!sample.is_string()) throw SchemaError("meta.sample", "expected a string");
    meta.sample = sample.get<std::string>();
    meta.k = real_field(meta_json, "k", "meta");
    meta.m = static_cast<int>(int_field(meta_json, "m", "meta"));
    meta.n = static_cast<int>(int_field(meta_json, "n", "meta"));
    const json& seed = field(meta_json, "seed", "meta");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
      throw SchemaError("meta.seed", "expected an unsigned integer");
    }
    meta.seed = seed.get<std::uint64_t>();
  }

  std::vector<Location> nodes;
  const json& locations = array_field(doc, "locations", "$");
  for (std::size_t i = 0; i < locations.size(); ++i) {
    const std::string path = "locations[" + std::to_string(i) + "]";
    Location loc;
    loc.id = static_cast<int>(int_field(locations[i], "id", path));
    if (loc.id != static_cast<int>(i)) throw SchemaError(path + ".id", "ids must be 0..|V|-1 in order");
    loc.x = real_field(locations[i], "x", path);
    loc.y = real_field(locations[i], "y", path);
    nodes.push_back(loc);
  }
  if (nodes.empty()) throw SchemaError("locations", "at least the depot is required");
  const int v = static_cast<int>(nodes.size());

  std::vector<Request> requests;
  const json& reqs = array_field(doc, "requests", "$");
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const std::string path = "requests[" + std::to_string(i) + "]";
    Request r;
    r.id = static_cast<int>(int_field(reqs[i], "id", path));
    if (r.id != static_cast<int>(i)) throw SchemaError(path + ".id", "ids must be 0..n-1 in order");
    r.payment = real_field(reqs[i], "w", path);
    if (r.payment < 0) throw SchemaError(path + ".w", "payment must be >= 0");
    r.volume = static_cast<int>(int_field(reqs[i], "q", path));
    if (r.volume < 1) throw SchemaError(path + ".q", "volume must be >= 1");
    r.pickup = static_cast<int>(int_field(reqs[i], "pickup", path));
    r.dropoff = static_cast<int>(int_field(reqs[i], "dropoff", path));
    for (auto [key, node] : {std::pair{"pickup", r.pickup}, std::pair{"dropoff", r.dropoff}}) {
      if (node < 0 || node >= v) throw SchemaError(path + "." + key, "unknown location");
      if (node == kDepot) throw SchemaError(path + "." + key, "request endpoint at the depot");
    }
    if (r.pickup == r.dropoff) throw SchemaError(path, "pickup equals dropoff");
    requests.push_back(r);
  }

  std::vector<Truck> trucks;
  const json& fleet = array_field(doc, "trucks", "$");
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const std::string path = "trucks[" + std::to_string(i) + "]";
    Truck t;
    t.id = static_cast<int>(int_field(fleet[i], "id", path));
    if (t.id != static_cast<int>(i)) throw SchemaError(path + ".id", "ids must be 0..m-1 in order");
    t.capacity = static_cast<int>(int_field(fleet[i], "capacity", path));
    if (t.capacity <= 0) throw SchemaError(path + ".capacity", "capacity must be > 0");
    t.cost_coefficient = real_field(fleet[i], "coefficient", path);
    if (t.cost_coefficient <= 0) throw SchemaError(path + ".coefficient", "coefficient must be > 0");
    if (fleet[i].contains("costs")) {
      const json& rows = array_field(fleet[i], "costs", path);
      if (rows.size() != static_cast<std::size_t>(v)) throw SchemaError(path + ".costs", "expected |V| rows");
      std::vector<double> table;
      for (std::size_t o = 0; o < rows.size(); ++o) {
        const std::string row_path = path + ".costs[" + std::to_string(o) + "]";
        if (!rows[o].is_array() || rows[o].size() != static_cast<std::size_t>(v)) {
          throw SchemaError(row_path, "expected |V| entries");
        }
        for (const json& c : rows[o]) {
          if (!c.is_number() || c.get<double>() < 0) throw SchemaError(row_path, "costs must be >= 0");
          table.push_back(c.get<double>());
        }
      }
      t.arc_costs = std::move(table);
    }
    trucks.push_back(std::move(t));
  }

  if (meta.n != static_cast<int>(requests.size())) throw SchemaError("meta.n", "does not match request count");
  if (meta.m != static_cast<int>(trucks.size())) throw SchemaError("meta.m", "does not match truck count");

  try {
    return Instance(LocationGraph(std::move(nodes)), std::move(requests), std::move(trucks),
                    std::move(meta));
  } catch (const StructuralError& e) {
    throw SchemaError("$", e.what());
  }
}

std::string serialize_routing_solution(const DeliveryRoutingSolution& solution) {
  std::ostringstream out;
  out << "{\n";
  std::vector<std::string> records;
  for (const TruckPlan& plan : solution.plans) {
    auto num = [](int x) { return std::to_string(x); };
    std::string rec = "{\"truck\": " + std::to_string(plan.truck) + ", \"requests\": [" +
                      join(plan.requests, num) + "], \"route\": [" + join(plan.route, num) + "]";
    if (!plan.events.empty()) {
      rec += ", \"events\": [" + join(plan.events, [](const Event& e) {
               return std::string("\"") + (e.kind == EventKind::Pickup ? "P" : "D") +
                      std::to_string(e.request) + "\"";
             }) + "]";
    }
    records.push_back(rec + "}");
  }
  write_array(out, "plans", records, true);
  out << "}\n";
  return out.str();
}

DeliveryRoutingSolution parse_routing_solution(std::string_view text) {
  const json doc = parse_json(text);
  DeliveryRoutingSolution solution;
  const json& plans = array_field(doc, "plans", "$");
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const std::string path = "plans[" + std::to_string(i) + "]";
    TruckPlan plan;
    plan.truck = static_cast<int>(int_field(plans[i], "truck", path));
    auto ints = [&](const char* key) {
      std::vector<int> out;
      for (const json& x : array_field(plans[i], key, path)) {
        if (!x.is_number_integer()) throw SchemaError(path + "." + key, "expected integers");
        out.push_back(x.get<int>());
      }
      return out;
    };
    plan.requests = ints("requests");
    plan.route = ints("route");
    if (plans[i].contains("events")) {
      for (const json& e : array_field(plans[i], "events", path)) {
        const std::string tok = e.is_string() ? e.get<std::string>() : "";
        if (tok.size() < 2 || (tok[0] != 'P' && tok[0] != 'D')) {
          throw SchemaError(path + ".events", "expected \"P<r>\" or \"D<r>\"");
        }
        Event ev;
        ev.kind = tok[0] == 'P' ? EventKind::Pickup : EventKind::Dropoff;
        try {
          std::size_t used = 0;
          ev.request = std::stoi(tok.substr(1), &used);
          if (used != tok.size() - 1) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw SchemaError(path + ".events", "bad event token " + tok);
        }
        plan.events.push_back(ev);
      }
    }
    solution.plans.push_back(std::move(plan));
  }
  return solution;
}

}  // namespace ppdsp
