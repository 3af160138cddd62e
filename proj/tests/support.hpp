#pragma once

// Independent reference implementations used by the tests. None of them
// call into the planner, the validator or the distance tables.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lsrp/graph.hpp"
#include "lsrp/instance.hpp"
#include "lsrp/solution.hpp"

namespace testing {

using lsrp::AgentId;
using lsrp::Duration;
using lsrp::Graph;
using lsrp::Instance;
using lsrp::TimedPath;
using lsrp::TimePoint;
using lsrp::VertexId;

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 8;

inline std::shared_ptr<Graph> named_graph(const std::vector<std::string>& names,
                                          const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph probe(static_cast<int>(names.size()), {});
  probe.set_names(names);
  std::vector<std::pair<VertexId, VertexId>> ids;
  for (const auto& [a, b] : edges) ids.emplace_back(probe.find(a), probe.find(b));
  auto g = std::make_shared<Graph>(static_cast<int>(names.size()), ids);
  g->set_names(names);
  return g;
}

inline std::shared_ptr<Graph> open_grid(int w, int h) {
  return std::make_shared<Graph>(Graph::grid(w, h, std::vector<bool>(static_cast<std::size_t>(w) * h, true)));
}

inline Instance make_instance(std::shared_ptr<const Graph> g, std::vector<VertexId> starts, std::vector<VertexId> goals,
                              std::vector<double> units) {
  Instance in;
  in.graph = std::move(g);
  in.starts = std::move(starts);
  in.goals = std::move(goals);
  std::vector<Duration> ds;
  for (double u : units) ds.push_back(Duration::from_ticks(static_cast<std::int64_t>(u * 1000 + 0.5)));
  in.durations = lsrp::DurationModel::uniform(ds);
  return in;
}

inline Instance toy_instance() {
  auto g = named_graph({"A", "B", "C", "D", "E"}, {{"A", "B"}, {"B", "C"}, {"B", "D"}, {"D", "E"}});
  return make_instance(g, {g->find("E"), g->find("D"), g->find("B")}, {g->find("D"), g->find("B"), g->find("C")},
                       {1, 2, 3});
}

// Tree used by the swap walkthrough: A-B, B-C, B-D, D-E, E-F.
// Agent 0 is yellow (start E, goal D), agent 1 is blue (start D, goal E).
inline Instance swap_tree_instance() {
  auto g = named_graph({"A", "B", "C", "D", "E", "F"},
                       {{"A", "B"}, {"B", "C"}, {"B", "D"}, {"D", "E"}, {"E", "F"}});
  return make_instance(g, {g->find("E"), g->find("D")}, {g->find("D"), g->find("E")}, {1, 1});
}

// Dense adjacency matrix straight from the edge list.
inline std::vector<std::vector<bool>> adjacency_matrix(const Graph& g) {
  std::vector<std::vector<bool>> m(g.size(), std::vector<bool>(g.size(), false));
  for (auto [a, b] : g.edges()) m[a][b] = m[b][a] = true;
  return m;
}

// All-pairs hop counts; kInf when disconnected.
inline std::vector<std::vector<std::int64_t>> floyd_warshall(const Graph& g) {
  const int n = g.size();
  auto adj = adjacency_matrix(g);
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, kInf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < n; ++j)
      if (adj[i][j]) d[i][j] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] < kInf && d[k][j] < kInf) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Cost of reaching `goal` from every vertex with the agent's directed
// durations (textbook O(V^2) Dijkstra over the dense matrix).
inline std::vector<std::int64_t> dijkstra_to_goal(const Instance& in, AgentId agent, VertexId goal) {
  const Graph& g = in.g();
  const int n = g.size();
  auto adj = adjacency_matrix(g);
  std::vector<std::int64_t> d(n, kInf);
  std::vector<bool> done(n, false);
  d[goal] = 0;
  for (int it = 0; it < n; ++it) {
    int u = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && (u < 0 || d[v] < d[u])) u = v;
    if (u < 0 || d[u] >= kInf) break;
    done[u] = true;
    for (int w = 0; w < n; ++w)
      if (adj[u][w]) d[w] = std::min(d[w], d[u] + in.duration(agent, w, u).ticks());
  }
  return d;
}

// Every simple cycle length through edge (u, v), by exhaustive path search.
inline int longest_cycle_through(const Graph& g, VertexId u, VertexId v) {
  auto adj = adjacency_matrix(g);
  std::vector<bool> used(g.size(), false);
  int best = 0;
  std::function<void(VertexId, int)> dfs = [&](VertexId x, int len) {
    if (x == v) {
      best = std::max(best, len);
      return;
    }
    for (int y = 0; y < g.size(); ++y) {
      if (!adj[x][y] || used[y]) continue;
      if (x == u && y == v) continue;  // the edge itself closes the cycle
      used[y] = true;
      dfs(y, len + 1);
      used[y] = false;
    }
  };
  used[u] = true;
  dfs(u, 1);
  return best;  // vertices on the cycle, 0 if none
}

// Vertices an agent following `path` occupies at time x (in half-ticks),
// read directly off the path entries.
inline std::vector<VertexId> occupied_at(const TimedPath& path, std::int64_t x) {
  std::vector<VertexId> out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::int64_t a = 2 * path[k].arrive.ticks(), d = 2 * path[k].depart.ticks();
    bool last = k + 1 == path.size();
    if (x >= a && (last || x <= d)) out.push_back(path[k].vertex);
    if (!last) {
      std::int64_t next_arrive = 2 * path[k + 1].arrive.ticks();
      if (x > d && x < next_arrive) {
        out.push_back(path[k].vertex);
        out.push_back(path[k + 1].vertex);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Conflicting (agent, agent, vertex) triples found by sampling every
// half-tick up to one tick past the last event.
inline std::set<std::tuple<AgentId, AgentId, VertexId>> sampled_conflicts(const std::vector<TimedPath>& paths) {
  std::int64_t horizon = 0;
  for (const auto& p : paths)
    for (const auto& e : p) horizon = std::max(horizon, 2 * e.depart.ticks() + 2);
  std::set<std::tuple<AgentId, AgentId, VertexId>> out;
  for (std::int64_t x = 0; x <= horizon; ++x) {
    std::map<VertexId, std::vector<AgentId>> at;
    for (AgentId i = 0; i < static_cast<AgentId>(paths.size()); ++i)
      for (VertexId v : occupied_at(paths[i], x)) at[v].push_back(i);
    for (const auto& [v, agents] : at)
      for (std::size_t a = 0; a < agents.size(); ++a)
        for (std::size_t b = a + 1; b < agents.size(); ++b) out.insert({agents[a], agents[b], v});
  }
  return out;
}

inline std::int64_t final_arrival(const TimedPath& p) { return p.back().arrive.ticks(); }

// Every lattice schedule of one agent that ends with a move into its goal
// (or stays put when it starts there) and arrives no later than `horizon`.
inline std::vector<TimedPath> enumerate_paths(const Instance& in, AgentId agent, std::int64_t step,
                                              std::int64_t horizon) {
  std::vector<TimedPath> out;
  const Graph& g = in.g();
  const VertexId goal = in.goals[agent];
  TimedPath cur{{in.starts[agent], TimePoint::zero(), TimePoint::zero()}};
  if (in.starts[agent] == goal) out.push_back(cur);
  std::function<void(std::int64_t)> walk = [&](std::int64_t t) {
    const VertexId u = cur.back().vertex;
    const TimePoint saved_depart = cur.back().depart;
    for (VertexId w : g.neighbors(u)) {
      std::int64_t arrive = t + in.duration(agent, u, w).ticks();
      if (arrive > horizon) continue;
      cur.back().depart = TimePoint::from_ticks(t);
      cur.push_back({w, TimePoint::from_ticks(arrive), TimePoint::from_ticks(arrive)});
      if (w == goal) out.push_back(cur);
      walk(arrive);
      cur.pop_back();
      cur.back().depart = saved_depart;
    }
    if (t + step <= horizon) {
      cur.back().depart = TimePoint::from_ticks(t + step);
      walk(t + step);
      cur.back().depart = saved_depart;
    }
  };
  walk(0);
  return out;
}

// Minimum sum of final arrivals over every conflict-free pair of lattice
// schedules for a two-agent instance, each arriving by `horizon`. Occupancy is
// sampled at every half lattice step, which is exhaustive for lattice
// schedules. kInf when no pair fits.
inline std::int64_t brute_force_two_agent_soc(const Instance& in, std::int64_t step, std::int64_t horizon) {
  const std::int64_t until = 2 * horizon + 2 * step;
  struct Sampled {
    std::int64_t arrival;
    std::vector<std::uint64_t> masks;
  };
  auto sample = [&](AgentId i) {
    std::vector<Sampled> out;
    for (const auto& p : enumerate_paths(in, i, step, horizon)) {
      Sampled s{final_arrival(p), {}};
      for (std::int64_t x = 0; x <= until; x += step) {
        std::uint64_t m = 0;
        for (VertexId v : occupied_at(p, x)) m |= std::uint64_t{1} << v;
        s.masks.push_back(m);
      }
      out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const Sampled& x, const Sampled& y) { return x.arrival < y.arrival; });
    return out;
  };
  auto a = sample(0), b = sample(1);
  std::int64_t best = kInf;
  for (const auto& pa : a) {
    if (pa.arrival >= best) break;
    for (const auto& pb : b) {
      if (pa.arrival + pb.arrival >= best) break;
      bool free = true;
      for (std::size_t k = 0; free && k < pa.masks.size(); ++k) free = (pa.masks[k] & pb.masks[k]) == 0;
      if (free) best = pa.arrival + pb.arrival;
    }
  }
  return best;
}

// Small connected graph: a random spanning tree plus up to `extra` chords.
inline std::shared_ptr<Graph> random_small_graph(std::mt19937_64& rng, int n, int extra) {
  std::set<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 1; v < n; ++v) e.insert({static_cast<VertexId>(rng() % v), v});
  for (int k = 0; k < extra; ++k) {
    VertexId a = rng() % n, b = rng() % n;
    if (a != b) e.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<std::pair<VertexId, VertexId>> edges(e.begin(), e.end());
  return std::make_shared<Graph>(n, edges);
}

// Distinct random starts and goals, durations drawn from {1, 2}.
inline Instance random_small_instance(std::mt19937_64& rng, std::shared_ptr<const Graph> g, int agents) {
  std::vector<VertexId> perm(g->size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<VertexId> starts(perm.begin(), perm.begin() + agents);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<VertexId> goals(perm.begin(), perm.begin() + agents);
  std::vector<double> units;
  for (int i = 0; i < agents; ++i) units.push_back(1 + static_cast<double>(rng() % 2));
  return make_instance(g, starts, goals, units);
}

}  // namespace testing
