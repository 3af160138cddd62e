#include "lsrp/dist_table.hpp"

#include <deque>
#include <functional>
#include <queue>

namespace lsrp {

DistTable::DistTable(std::shared_ptr<const std::vector<std::int32_t>> hops, Duration scale)
    : hops_(std::move(hops)), scale_(scale.ticks()) {}

DistTable::DistTable(std::vector<std::int64_t> ticks) : ticks_(std::move(ticks)) {}

std::vector<std::int32_t> bfs_hops(const Graph& g, VertexId source) {
  std::vector<std::int32_t> hops(g.size(), -1);
  std::vector<VertexId> frontier{source};
  hops[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    VertexId u = frontier[head];
    for (VertexId w : g.neighbors(u))
      if (hops[w] < 0) {
        hops[w] = hops[u] + 1;
        frontier.push_back(w);
      }
  }
  return hops;
}

namespace {

DistTable dijkstra_to_goal(const Instance& inst, AgentId agent) {
  const Graph& g = inst.g();
  VertexId goal = inst.goals[agent];
  std::vector<std::int64_t> dist(g.size(), DistTable::kUnreachable);
  using Item = std::pair<std::int64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[goal] = 0;
  open.emplace(0, goal);
  while (!open.empty()) {
    auto [d, v] = open.top();
    open.pop();
    if (d != dist[v]) continue;
    // reversed edge: cost of u -> v for this agent
    for (VertexId u : g.neighbors(v)) {
      std::int64_t nd = d + inst.duration(agent, u, v).ticks();
      if (nd < dist[u]) {
        dist[u] = nd;
        open.emplace(nd, u);
      }
    }
  }
  return DistTable(std::move(dist));
}

}  // namespace

DistTable dist_table(const Instance& inst, AgentId agent) {
  if (inst.durations.is_uniform()) {
    auto hops = std::make_shared<const std::vector<std::int32_t>>(bfs_hops(inst.g(), inst.goals[agent]));
    return DistTable(std::move(hops), inst.durations.agent_default(agent));
  }
  return dijkstra_to_goal(inst, agent);
}

DistanceCache::DistanceCache(const Instance& inst) : inst_(&inst), tables_(inst.agent_count()) {}

const DistTable& DistanceCache::operator[](AgentId agent) const {
  std::lock_guard lock(mu_);
  auto& slot = tables_[agent];
  if (!slot) {
    if (inst_->durations.is_uniform()) {
      VertexId goal = inst_->goals[agent];
      auto& hops = hops_by_goal_[goal];
      if (!hops) hops = std::make_shared<const std::vector<std::int32_t>>(bfs_hops(inst_->g(), goal));
      slot = std::make_unique<DistTable>(hops, inst_->durations.agent_default(agent));
    } else {
      slot = std::make_unique<DistTable>(dist_table(*inst_, agent));
    }
  }
  return *slot;
}

}  // namespace lsrp
