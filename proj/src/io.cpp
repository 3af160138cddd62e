#include "lsrp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lsrp {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed for " + path.string());
}

namespace {

Duration duration_value(const json& j, std::string_view what) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    auto units = j.get<std::int64_t>();
    if (units <= 0) throw FormatError(std::string(what) + " must be positive");
    return Duration::from_units(units);
  }
  if (j.is_number_float()) {
    double x = j.get<double>();
    if (!(x > 0)) throw FormatError(std::string(what) + " must be positive");
    return Duration::from_ticks(ticks_from_double(x));
  }
  if (j.is_string()) return parse_duration(j.get<std::string>());
  throw FormatError(std::string(what) + " must be a number");
}

TimePoint time_value(const json& j, std::string_view what) {
  if (j.is_number_integer() || j.is_number_unsigned()) return TimePoint::from_units(j.get<std::int64_t>());
  if (j.is_number_float()) return TimePoint::from_ticks(ticks_from_double(j.get<double>()));
  if (j.is_string()) return TimePoint::from_ticks(parse_ticks(j.get<std::string>()));
  throw FormatError(std::string(what) + " must be a number");
}

VertexId vertex_value(const json& j, const Graph& g) {
  VertexId v = kNoVertex;
  if (j.is_number_integer() || j.is_number_unsigned()) {
    v = j.get<VertexId>();
  } else if (j.is_string()) {
    v = g.find(j.get<std::string>());
    if (v == kNoVertex) throw FormatError("unknown vertex name \"" + j.get<std::string>() + "\"");
  } else if (j.is_array() && j.size() == 2 && g.grid_info()) {
    int row = j[0].get<int>(), col = j[1].get<int>();
    v = g.grid_info()->id(row, col);
    if (v == kNoVertex)
      throw FormatError("cell (" + std::to_string(row) + "," + std::to_string(col) + ") is not a passable cell");
  } else {
    throw FormatError("vertex must be an id, a name or a [row, col] cell");
  }
  if (!g.valid(v)) throw FormatError("vertex id " + std::to_string(v) + " out of range");
  return v;
}

json vertex_json(VertexId v, const Graph& g) {
  if (g.grid_info()) {
    auto [row, col] = g.grid_info()->id_to_cell[v];
    return json::array({row, col});
  }
  if (!g.names().empty()) return g.name(v);
  return v;
}

std::shared_ptr<Graph> parse_graph(const json& jg, const std::filesystem::path& base_dir) {
  std::string type = jg.at("type").get<std::string>();
  if (type == "grid") {
    std::string text;
    if (jg.contains("map")) {
      text = jg["map"].get<std::string>();
    } else if (jg.contains("map_file")) {
      std::filesystem::path p = jg["map_file"].get<std::string>();
      text = read_text_file(p.is_absolute() ? p : base_dir / p);
    } else {
      throw FormatError("grid graph needs \"map\" or \"map_file\"");
    }
    return std::make_shared<Graph>(parse_map(text));
  }
  if (type == "edges") {
    std::vector<std::string> names;
    int count = 0;
    if (jg.contains("vertices")) {
      names = jg["vertices"].get<std::vector<std::string>>();
      count = static_cast<int>(names.size());
    } else {
      count = jg.at("vertex_count").get<int>();
    }
    if (count <= 0) throw FormatError("edge-list graph needs at least one vertex");
    Graph named;
    if (!names.empty()) {
      named = Graph(count, {});
      named.set_names(names);
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : jg.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("each edge must be a pair");
      VertexId a = names.empty() ? e[0].get<VertexId>() : vertex_value(e[0], named);
      VertexId b = names.empty() ? e[1].get<VertexId>() : vertex_value(e[1], named);
      if (a < 0 || b < 0 || a >= count || b >= count) throw FormatError("edge endpoint out of range");
      if (a == b) throw FormatError("self-loop edges are not allowed");
      edges.emplace_back(a, b);
    }
    auto g = std::make_shared<Graph>(count, edges);
    if (!names.empty()) g->set_names(std::move(names));
    return g;
  }
  throw FormatError("unknown graph type \"" + type + "\"");
}

}  // namespace

InstanceFile parse_instance_json(std::string_view text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("instance JSON: ") + e.what());
  }
  try {
    if (j.value("schema", std::string(kInstanceSchema)) != kInstanceSchema)
      throw FormatError("unsupported instance schema \"" + j["schema"].get<std::string>() + "\"");
    InstanceFile out;
    out.name = j.value("name", std::string());
    auto g = parse_graph(j.at("graph"), base_dir);
    Instance& inst = out.instance;
    inst.graph = g;
    for (const auto& v : j.at("starts")) inst.starts.push_back(vertex_value(v, *g));
    for (const auto& v : j.at("goals")) inst.goals.push_back(vertex_value(v, *g));
    const int n = inst.agent_count();
    if (static_cast<int>(inst.goals.size()) != n)
      throw InstanceError("starts and goals differ in length");

    std::vector<Duration> per_agent;
    const json& jd = j.at("durations");
    if (jd.is_array()) {
      for (const auto& d : jd) per_agent.push_back(duration_value(d, "duration"));
    } else if (jd.is_object()) {
      if (jd.contains("seed")) out.duration_seed = jd["seed"].get<std::uint64_t>();
      if (jd.contains("values")) {
        for (const auto& d : jd["values"]) per_agent.push_back(duration_value(d, "duration"));
      } else if (out.duration_seed) {
        per_agent = sample_durations(n, *out.duration_seed);
      } else {
        throw FormatError("durations object needs \"seed\" or \"values\"");
      }
    } else {
      throw FormatError("durations must be a list or an object");
    }
    if (static_cast<int>(per_agent.size()) != n)
      throw InstanceError("expected " + std::to_string(n) + " durations, got " + std::to_string(per_agent.size()));

    if (j.contains("duration_table")) {
      inst.durations = DurationModel::table(per_agent);
      for (const auto& row : j["duration_table"]) {
        AgentId a = row.at("agent").get<AgentId>();
        if (a < 0 || a >= n) throw InstanceError("duration_table agent out of range");
        VertexId from = vertex_value(row.at("from"), *g), to = vertex_value(row.at("to"), *g);
        if (!g->adjacent(from, to)) throw InstanceError("duration_table entry is not an edge");
        inst.durations.set(a, from, to, duration_value(row.at("duration"), "duration"));
      }
    } else {
      inst.durations = DurationModel::uniform(per_agent);
    }
    if (j.contains("priorities")) out.priorities = j["priorities"].get<std::vector<double>>();
    check_instance(inst);
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("instance JSON: ") + e.what());
  }
}

InstanceFile load_instance_file(const std::filesystem::path& path) {
  return parse_instance_json(read_text_file(path), path.parent_path());
}

std::string write_instance_json(const InstanceFile& file) {
  const Instance& inst = file.instance;
  const Graph& g = inst.g();
  json j;
  j["schema"] = kInstanceSchema;
  if (!file.name.empty()) j["name"] = file.name;
  if (g.grid_info()) {
    j["graph"] = {{"type", "grid"}, {"map", render_map(g)}};
  } else {
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back({vertex_json(a, g), vertex_json(b, g)});
    json jg = {{"type", "edges"}};
    if (!g.names().empty()) jg["vertices"] = g.names();
    else jg["vertex_count"] = g.size();
    jg["edges"] = edges;
    j["graph"] = jg;
  }
  json starts = json::array(), goals = json::array();
  for (VertexId v : inst.starts) starts.push_back(vertex_json(v, g));
  for (VertexId v : inst.goals) goals.push_back(vertex_json(v, g));
  j["starts"] = starts;
  j["goals"] = goals;
  json values = json::array();
  for (AgentId i = 0; i < inst.agent_count(); ++i) values.push_back(inst.durations.agent_default(i).units());
  if (file.duration_seed) j["durations"] = {{"seed", *file.duration_seed}, {"values", values}};
  else j["durations"] = values;
  if (!inst.durations.is_uniform()) {
    std::vector<std::uint64_t> keys;
    for (const auto& [k, d] : inst.durations.overrides()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    json table = json::array();
    for (auto k : keys) {
      AgentId a;
      VertexId from, to;
      DurationModel::unpack(k, a, from, to);
      table.push_back({{"agent", a},
                       {"from", vertex_json(from, g)},
                       {"to", vertex_json(to, g)},
                       {"duration", inst.durations.overrides().at(k).units()}});
    }
    j["duration_table"] = table;
  }
  if (!file.priorities.empty()) j["priorities"] = file.priorities;
  return j.dump(2) + "\n";
}

Instance instance_from_benchmark(std::string_view map_text, std::string_view scen_text, int n,
                                 std::vector<Duration> durations) {
  auto g = std::make_shared<Graph>(parse_map(map_text));
  ScenRows rows = parse_scen(scen_text, n, *g);
  Instance inst;
  inst.graph = g;
  inst.starts = std::move(rows.starts);
  inst.goals = std::move(rows.goals);
  inst.durations = DurationModel::uniform(std::move(durations));
  check_instance(inst);
  return inst;
}

std::string write_solution_json(const Solution& sol, std::string_view planner, bool include_timing) {
  std::ostringstream out;
  out << "{\n  \"schema\": \"" << kSolutionSchema << "\",\n";
  out << "  \"planner\": " << json(std::string(planner)).dump() << ",\n";
  out << "  \"status\": \"" << to_string(sol.status) << "\",\n";
  out << "  \"paths\": [";
  for (std::size_t i = 0; i < sol.paths.size(); ++i) {
    out << (i ? ",\n    [" : "\n    [");
    for (std::size_t k = 0; k < sol.paths[i].size(); ++k) {
      const PathEntry& e = sol.paths[i][k];
      out << (k ? ", " : "") << "{\"v\": " << e.vertex << ", \"arrive\": " << to_string(e.arrive)
          << ", \"depart\": " << to_string(e.depart) << "}";
    }
    out << "]";
  }
  out << (sol.paths.empty() ? "],\n" : "\n  ],\n");
  out << "  \"metrics\": {\"soc\": " << to_string(sol.metrics.soc) << ", \"makespan\": " << to_string(sol.metrics.makespan)
      << ", \"iterations\": " << sol.metrics.iterations;
  if (include_timing) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", sol.metrics.wall_ms);
    out << ", \"wall_ms\": " << buf;
  }
  out << "}\n}\n";
  return out.str();
}

SolutionFile parse_solution_json(std::string_view text, const Graph& g) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("solution JSON: ") + e.what());
  }
  try {
    if (j.value("schema", std::string(kSolutionSchema)) != kSolutionSchema)
      throw FormatError("unsupported solution schema");
    SolutionFile out;
    out.planner = j.value("planner", std::string());
    Solution& sol = out.solution;
    try {
      sol.status = parse_status(j.at("status").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    for (const auto& jp : j.at("paths")) {
      TimedPath p;
      for (const auto& e : jp)
        p.push_back({vertex_value(e.at("v"), g), time_value(e.at("arrive"), "arrive"), time_value(e.at("depart"), "depart")});
      sol.paths.push_back(std::move(p));
    }
    if (j.contains("metrics")) {
      const json& m = j["metrics"];
      if (m.contains("soc")) sol.metrics.soc = time_value(m["soc"], "soc") - TimePoint::zero();
      if (m.contains("makespan")) sol.metrics.makespan = time_value(m["makespan"], "makespan") - TimePoint::zero();
      sol.metrics.iterations = m.value("iterations", std::uint64_t{0});
      sol.metrics.wall_ms = m.value("wall_ms", 0.0);
    }
    return out;
  } catch (const json::exception& e) {
    throw FormatError(std::string("solution JSON: ") + e.what());
  }
}

}  // namespace lsrp
