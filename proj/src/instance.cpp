#include "lsrp/instance.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace lsrp {

DurationModel DurationModel::uniform(std::vector<Duration> per_agent) {
  DurationModel m;
  m.defaults_ = std::move(per_agent);
  return m;
}

DurationModel DurationModel::table(std::vector<Duration> defaults) {
  return uniform(std::move(defaults));
}

std::uint64_t DurationModel::key(AgentId agent, VertexId from, VertexId to) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(agent)) << 42) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 21) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(to));
}

void DurationModel::unpack(std::uint64_t key, AgentId& agent, VertexId& from, VertexId& to) {
  constexpr std::uint64_t mask = (std::uint64_t{1} << 21) - 1;
  agent = static_cast<AgentId>(key >> 42);
  from = static_cast<VertexId>((key >> 21) & mask);
  to = static_cast<VertexId>(key & mask);
}

void DurationModel::set(AgentId agent, VertexId from, VertexId to, Duration d) {
  if (d.ticks() <= 0) throw InstanceError("edge durations must be positive");
  if (from >= (1 << 21) || to >= (1 << 21)) throw InstanceError("duration table vertex id too large");
  overrides_[key(agent, from, to)] = d;
}

Duration DurationModel::operator()(AgentId agent, VertexId from, VertexId to) const {
  if (!overrides_.empty()) {
    if (auto it = overrides_.find(key(agent, from, to)); it != overrides_.end()) return it->second;
  }
  return defaults_[agent];
}

Duration DurationModel::min_over(const Graph& g) const {
  Duration best = Duration::infinity();
  if (g.edge_count() == 0) return best;
  std::vector<std::size_t> per_agent(defaults_.size(), 0);
  for (const auto& [k, d] : overrides_) {
    AgentId a;
    VertexId u, v;
    unpack(k, a, u, v);
    if (a < static_cast<AgentId>(defaults_.size()) && g.valid(u) && g.valid(v) && g.adjacent(u, v)) {
      ++per_agent[a];
      best = std::min(best, d);
    }
  }
  for (std::size_t a = 0; a < defaults_.size(); ++a)
    if (per_agent[a] < 2 * g.edge_count()) best = std::min(best, defaults_[a]);
  return best;
}

Duration DurationModel::max_over(const Graph& g) const {
  Duration best = Duration::from_ticks(0);
  if (g.edge_count() == 0) return best;
  std::vector<std::size_t> per_agent(defaults_.size(), 0);
  for (const auto& [k, d] : overrides_) {
    AgentId a;
    VertexId u, v;
    unpack(k, a, u, v);
    if (a < static_cast<AgentId>(defaults_.size()) && g.valid(u) && g.valid(v) && g.adjacent(u, v)) {
      ++per_agent[a];
      best = std::max(best, d);
    }
  }
  for (std::size_t a = 0; a < defaults_.size(); ++a)
    if (per_agent[a] < 2 * g.edge_count()) best = std::max(best, defaults_[a]);
  return best;
}

void check_instance(const Instance& inst) {
  if (!inst.graph) throw InstanceError("instance has no graph");
  const Graph& g = *inst.graph;
  const int n = inst.agent_count();
  if (static_cast<int>(inst.goals.size()) != n) throw InstanceError("start and goal counts differ");
  if (static_cast<int>(inst.durations.agent_count()) != n)
    throw InstanceError("duration model covers " + std::to_string(inst.durations.agent_count()) +
                        " agents, instance has " + std::to_string(n));
  std::vector<char> seen_s(g.size(), 0), seen_g(g.size(), 0);
  for (int i = 0; i < n; ++i) {
    if (!g.valid(inst.starts[i]) || !g.valid(inst.goals[i]))
      throw InstanceError("agent " + std::to_string(i) + " has an out-of-range start or goal");
    if (seen_s[inst.starts[i]]++) throw InstanceError("duplicate start vertex for agent " + std::to_string(i));
    if (seen_g[inst.goals[i]]++) throw InstanceError("duplicate goal vertex for agent " + std::to_string(i));
    if (inst.durations.agent_default(i).ticks() <= 0)
      throw InstanceError("agent " + std::to_string(i) + " has a non-positive duration");
  }
}

std::vector<int> component_labels(const Graph& g) {
  std::vector<int> comp(g.size(), -1);
  int label = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = label;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(u))
        if (comp[w] < 0) {
          comp[w] = label;
          stack.push_back(w);
        }
    }
    ++label;
  }
  return comp;
}

bool goals_reachable(const Instance& inst) {
  std::vector<int> comp = component_labels(inst.g());
  for (int i = 0; i < inst.agent_count(); ++i)
    if (comp[inst.starts[i]] != comp[inst.goals[i]]) return false;
  return true;
}

Instance random_instance(std::shared_ptr<const Graph> graph, int n, std::uint64_t seed) {
  const Graph& g = *graph;
  std::vector<int> comp = component_labels(g);
  std::vector<int> sizes;
  for (int c : comp) {
    if (c >= static_cast<int>(sizes.size())) sizes.resize(c + 1, 0);
    ++sizes[c];
  }
  if (sizes.empty()) throw InstanceError("graph has no vertices");
  int largest = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<VertexId> pool;
  for (VertexId v = 0; v < g.size(); ++v)
    if (comp[v] == largest) pool.push_back(v);
  if (n < 0 || n > static_cast<int>(pool.size()))
    throw InstanceError("cannot place " + std::to_string(n) + " agents on " + std::to_string(pool.size()) +
                        " connected vertices");

  std::mt19937_64 rng(seed);
  auto pick = [&](std::vector<VertexId> cells) {
    for (int k = 0; k < n; ++k) {
      auto j = k + static_cast<std::size_t>(rng() % (cells.size() - k));
      std::swap(cells[k], cells[j]);
    }
    cells.resize(n);
    return cells;
  };
  Instance inst;
  inst.graph = std::move(graph);
  inst.starts = pick(pool);
  inst.goals = pick(pool);
  inst.durations = DurationModel::uniform(sample_durations(n, seed));
  return inst;
}

namespace {

std::vector<std::string> scen_rows(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("version", 0) == 0) continue;
    }
    rows.push_back(line);
  }
  return rows;
}

}  // namespace

int count_scen_rows(std::string_view text) { return static_cast<int>(scen_rows(text).size()); }

ScenRows parse_scen(std::string_view text, int n, const Graph& g) {
  if (n < 0) throw FormatError("negative agent count");
  if (!g.grid_info()) throw FormatError("scen files require a grid graph");
  const auto& info = *g.grid_info();
  auto rows = scen_rows(text);
  if (n > static_cast<int>(rows.size()))
    throw FormatError("requested " + std::to_string(n) + " agents but scen has " + std::to_string(rows.size()) +
                      " rows");
  ScenRows out;
  for (int k = 0; k < n; ++k) {
    std::istringstream ls(rows[k]);
    std::string bucket, map;
    int w, h, sx, sy, gx, gy;
    if (!(ls >> bucket >> map >> w >> h >> sx >> sy >> gx >> gy))
      throw FormatError("malformed scen row " + std::to_string(k + 1));
    if (w != info.width || h != info.height)
      throw FormatError("scen row " + std::to_string(k + 1) + " map size does not match");
    VertexId s = info.id(sy, sx);
    VertexId t = info.id(gy, gx);
    if (s == kNoVertex || t == kNoVertex)
      throw FormatError("scen row " + std::to_string(k + 1) + " references a blocked or out-of-range cell");
    out.starts.push_back(s);
    out.goals.push_back(t);
  }
  return out;
}

std::vector<Duration> sample_durations(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Duration> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(Duration::from_units(1 + static_cast<std::int64_t>(rng() % 5)));
  return out;
}

}  // namespace lsrp
