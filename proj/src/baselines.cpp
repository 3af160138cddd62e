#include "lsrp/baselines.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_set>

#include "lsrp/planner.hpp"
#include "lsrp/validator.hpp"

namespace lsrp {

namespace {
constexpr std::int64_t kForever = TimeInterval::kForever;
}

void SafeIntervalTable::block(VertexId v, TimeInterval iv) {
  if (iv.empty()) return;
  auto& list = blocked_[v];
  std::vector<TimeInterval> out;
  out.reserve(list.size() + 1);
  bool placed = false;
  for (const auto& b : list) {
    if (b.hi + 1 < iv.lo) {
      out.push_back(b);
    } else if (iv.hi + 1 < b.lo) {
      if (!placed) out.push_back(iv), placed = true;
      out.push_back(b);
    } else {
      iv.lo = std::min(iv.lo, b.lo);
      iv.hi = std::max(iv.hi, b.hi);
    }
  }
  if (!placed) out.push_back(iv);
  list = std::move(out);
}

void SafeIntervalTable::block_path(const TimedPath& path) {
  for (const auto& o : path_occupancy(path)) block(o.vertex, o.interval);
}

std::vector<TimeInterval> SafeIntervalTable::safe(VertexId v) const {
  std::vector<TimeInterval> out;
  std::int64_t cur = 0;
  for (const auto& b : blocked_[v]) {
    if (b.lo > cur) out.push_back({cur, b.lo - 1});
    cur = std::max(cur, b.hi + 1);
  }
  if (cur <= kForever) out.push_back({cur, kForever});
  return out;
}

bool SafeIntervalTable::is_free(VertexId v, TimeInterval iv) const {
  for (const auto& b : blocked_[v])
    if (b.intersects(iv)) return false;
  return true;
}

std::optional<TimedPath> sipp_plan(const Instance& inst, AgentId agent, const SafeIntervalTable& table,
                                   const DistTable& dist) {
  const Graph& g = inst.g();
  const VertexId start = inst.starts[agent], goal = inst.goals[agent];
  if (!dist.reachable(start)) return std::nullopt;

  std::vector<std::optional<std::vector<TimeInterval>>> safe(g.size());
  auto intervals = [&](VertexId v) -> const std::vector<TimeInterval>& {
    if (!safe[v]) safe[v] = table.safe(v);
    return *safe[v];
  };

  struct Node {
    VertexId v;
    int slot;
    std::int64_t arrive;
    int parent;
    std::int64_t depart_parent;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::int64_t>> best(g.size());
  using Entry = std::tuple<std::int64_t, std::int64_t, int>;  // f, arrive, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const auto& s0 = intervals(start);
  if (s0.empty() || s0.front().lo != 0) return std::nullopt;
  best[start].assign(s0.size(), kForever);
  best[start][0] = 0;
  nodes.push_back({start, 0, 0, -1, 0});
  open.emplace(dist.ticks(start), 0, 0);

  while (!open.empty()) {
    auto [f, arrive, idx] = open.top();
    open.pop();
    const Node cur = nodes[idx];
    if (best[cur.v][cur.slot] < arrive) continue;
    const TimeInterval su = intervals(cur.v)[cur.slot];
    if (cur.v == goal && su.hi == kForever) {
      std::vector<int> chain;
      for (int k = idx; k >= 0; k = nodes[k].parent) chain.push_back(k);
      std::reverse(chain.begin(), chain.end());
      TimedPath path;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        const Node& nd = nodes[chain[k]];
        std::int64_t depart = k + 1 < chain.size() ? nodes[chain[k + 1]].depart_parent : nd.arrive;
        path.push_back({nd.v, TimePoint::from_ticks(nd.arrive), TimePoint::from_ticks(depart)});
      }
      return path;
    }
    for (VertexId w : g.neighbors(cur.v)) {
      if (!dist.reachable(w)) continue;
      const std::int64_t d = inst.duration(agent, cur.v, w).ticks();
      const auto& sw = intervals(w);
      if (best[w].empty()) best[w].assign(sw.size(), kForever);
      for (int j = 0; j < static_cast<int>(sw.size()); ++j) {
        std::int64_t td = std::max(arrive, sw[j].lo / 2);
        // u is held on [arrive, td + d) and w on (td, td + d].
        if (su.hi != kForever && 2 * (td + d) - 1 > su.hi) break;
        if (sw[j].hi != kForever && 2 * (td + d) > sw[j].hi) continue;
        std::int64_t ta = td + d;
        if (ta >= best[w][j]) continue;
        best[w][j] = ta;
        nodes.push_back({w, j, ta, idx, td});
        open.emplace(ta + dist.ticks(w), ta, static_cast<int>(nodes.size()) - 1);
      }
    }
  }
  return std::nullopt;
}

std::vector<AgentId> priority_order(const Instance& inst, std::uint64_t seed, const std::vector<double>& explicit_values) {
  PlannerConfig pc;
  pc.priority_seed = seed;
  pc.priorities = explicit_values;
  PriorityState eps = initial_priorities(inst, pc);
  std::vector<AgentId> all(inst.agent_count());
  std::iota(all.begin(), all.end(), 0);
  return eps.descending(all);
}

Solution prioritized_solve(const Instance& inst, const PrioritizedConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  check_instance(inst);
  Solution sol;
  auto finish = [&](Status s) {
    sol.status = s;
    sol.metrics.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    if (s != Status::solved) sol.paths.clear();
    return sol;
  };
  if (!goals_reachable(inst)) return finish(Status::failure);

  std::vector<AgentId> order =
      config.order.empty() ? priority_order(inst, config.priority_seed, config.priorities) : config.order;
  if (static_cast<int>(order.size()) != inst.agent_count())
    throw std::invalid_argument("priority order must list every agent once");

  DistanceCache dist(inst);
  SafeIntervalTable table(inst.g().size());
  sol.paths.assign(inst.agent_count(), {});
  for (AgentId i : order) {
    if (Clock::now() - started > config.time_limit) return finish(Status::timeout);
    auto path = sipp_plan(inst, i, table, dist[i]);
    ++sol.metrics.iterations;
    if (!path) return finish(Status::failure);
    table.block_path(*path);
    sol.paths[i] = std::move(*path);
  }
  Costs c = metrics(sol.paths);
  sol.metrics.soc = c.soc;
  sol.metrics.makespan = c.makespan;
  return finish(Status::solved);
}

namespace {

struct AgentRec {
  IndividualState last;
  std::int64_t arrive = 0;  // ticks of the last move's arrival
  bool finished = false;
};

constexpr int kMaxOracleAgents = 3;

struct OracleNode {
  std::array<AgentRec, kMaxOracleAgents> agents;
  int parent = -1;
  AgentId actor = kNoAgent;
  bool finish_step = false;
};

std::string node_key(const OracleNode& n, int count) {
  std::string key;
  key.reserve(count * 41);
  for (int i = 0; i < count; ++i) {
    const AgentRec& r = n.agents[i];
    std::int64_t vals[5] = {r.last.p, r.last.v, r.last.t_p.ticks(), r.last.t_v.ticks(), r.arrive};
    key.append(reinterpret_cast<const char*>(vals), sizeof vals);
    key.push_back(r.finished ? 1 : 0);
  }
  return key;
}

std::int64_t lattice_step(const Instance& inst) {
  const DurationModel& dm = inst.durations;
  std::int64_t g = 0;
  for (AgentId i = 0; i < inst.agent_count(); ++i) g = std::gcd(g, dm.agent_default(i).ticks());
  for (const auto& [key, d] : dm.overrides()) g = std::gcd(g, d.ticks());
  return g;
}

bool collides(const std::vector<VertexOccupancy>& mine, const AgentRec& other) {
  auto theirs = occupancy_of(other.last);
  if (other.finished) theirs.push_back({other.last.v, TimeInterval::from(other.last.t_v)});
  for (const auto& a : mine)
    for (const auto& b : theirs)
      if (a.vertex == b.vertex && a.interval.intersects(b.interval)) return true;
  return false;
}

}  // namespace

std::optional<Solution> oracle_solve(const Instance& inst, const OracleLimits& limits) {
  const int n = inst.agent_count();
  if (n > std::min(limits.max_agents, kMaxOracleAgents))
    throw OracleCapExceeded("oracle handles at most " + std::to_string(std::min(limits.max_agents, kMaxOracleAgents)) +
                            " agents, instance has " + std::to_string(n));
  if (inst.g().size() > limits.max_vertices)
    throw OracleCapExceeded("oracle handles at most " + std::to_string(limits.max_vertices) +
                            " vertices, graph has " + std::to_string(inst.g().size()));
  check_instance(inst);
  const auto started = std::chrono::steady_clock::now();
  if (!goals_reachable(inst)) return std::nullopt;

  DistanceCache dist(inst);
  const Duration step = Duration::from_ticks(lattice_step(inst));
  const Graph& g = inst.g();

  auto bound = [&](const OracleNode& nd) {
    std::int64_t f = 0;
    for (AgentId i = 0; i < n; ++i) {
      const AgentRec& r = nd.agents[i];
      f += (r.finished || r.last.v == inst.goals[i]) ? r.arrive : r.last.t_v.ticks() + dist[i].ticks(r.last.v);
    }
    return f;
  };

  std::vector<OracleNode> nodes;
  std::unordered_set<std::string> seen;
  using Entry = std::tuple<std::int64_t, std::int64_t, int>;  // f, -progress, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  OracleNode root;
  for (AgentId i = 0; i < n; ++i) root.agents[i].last = {inst.starts[i], inst.starts[i], TimePoint::zero(), TimePoint::zero()};
  nodes.push_back(root);
  seen.insert(node_key(root, n));
  open.emplace(bound(root), 0, 0);

  std::uint64_t expansions = 0;
  while (!open.empty()) {
    auto [f, neg_progress, idx] = open.top();
    open.pop();
    if (++expansions > limits.max_expansions) return std::nullopt;

    AgentId a = kNoAgent;
    for (AgentId i = 0; i < n; ++i) {
      const AgentRec& r = nodes[idx].agents[i];
      if (r.finished) continue;
      if (a == kNoAgent || r.last.t_v < nodes[idx].agents[a].last.t_v) a = i;
    }
    if (a == kNoAgent) {
      std::vector<std::vector<IndividualState>> chains(n);
      for (int k = idx; nodes[k].parent >= 0; k = nodes[k].parent)
        if (!nodes[k].finish_step) chains[nodes[k].actor].push_back(nodes[k].agents[nodes[k].actor].last);
      for (auto& c : chains) std::reverse(c.begin(), c.end());
      Solution sol;
      sol.status = Status::solved;
      sol.paths = post_process(inst, chains);
      Costs c = metrics(sol.paths);
      sol.metrics.soc = c.soc;
      sol.metrics.makespan = c.makespan;
      sol.metrics.iterations = expansions;
      sol.metrics.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      return sol;
    }

    const AgentRec me = nodes[idx].agents[a];
    const VertexId u = me.last.v;
    const TimePoint t = me.last.t_v;
    auto try_push = [&](const AgentRec& next, bool finish_step) {
      std::vector<VertexOccupancy> mine = occupancy_of(next.last);
      if (finish_step) mine = {{u, TimeInterval::from(t)}};
      for (AgentId b = 0; b < n; ++b)
        if (b != a && collides(mine, nodes[idx].agents[b])) return;
      OracleNode child = nodes[idx];
      child.agents[a] = next;
      child.parent = idx;
      child.actor = a;
      child.finish_step = finish_step;
      if (!seen.insert(node_key(child, n)).second) return;
      std::int64_t progress = 0;
      for (AgentId i = 0; i < n; ++i) progress += child.agents[i].finished ? kForever / 8 : child.agents[i].last.t_v.ticks();
      nodes.push_back(child);
      open.emplace(bound(child), -progress, static_cast<int>(nodes.size()) - 1);
    };

    if (u == inst.goals[a]) {
      AgentRec done = me;
      done.finished = true;
      try_push(done, true);
    }
    AgentRec wait = me;
    wait.last = {u, u, t, t + step};
    try_push(wait, false);
    for (VertexId w : g.neighbors(u)) {
      if (!dist[a].reachable(w)) continue;
      AgentRec mv = me;
      mv.last = {u, w, t, t + inst.duration(a, u, w)};
      mv.arrive = mv.last.t_v.ticks();
      try_push(mv, false);
    }
  }
  return std::nullopt;
}

}  // namespace lsrp
