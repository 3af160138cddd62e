#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "lsrp/instance.hpp"

namespace lsrp {

// Shortest arrival cost from every vertex to one agent's goal.
class DistTable {
public:
  static constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;

  DistTable() = default;
  // Uniform mode: shared hop-count table scaled by the agent's constant.
  DistTable(std::shared_ptr<const std::vector<std::int32_t>> hops, Duration scale);
  // Table mode: explicit per-vertex ticks.
  explicit DistTable(std::vector<std::int64_t> ticks);

  std::int64_t ticks(VertexId v) const {
    if (hops_) {
      auto h = (*hops_)[v];
      return h < 0 ? kUnreachable : h * scale_;
    }
    return ticks_[v];
  }
  Duration operator[](VertexId v) const { return Duration::from_ticks(ticks(v)); }
  bool reachable(VertexId v) const { return ticks(v) < kUnreachable; }
  int size() const { return hops_ ? static_cast<int>(hops_->size()) : static_cast<int>(ticks_.size()); }

private:
  std::shared_ptr<const std::vector<std::int32_t>> hops_;
  std::int64_t scale_ = 0;
  std::vector<std::int64_t> ticks_;
};

// BFS hop counts from a source; -1 for unreachable.
std::vector<std::int32_t> bfs_hops(const Graph& g, VertexId source);

// Single-source costs to the agent's goal, over reversed edges with that
// agent's durations.
DistTable dist_table(const Instance& inst, AgentId agent);

// Lazily computed, memoized tables. Uniform-duration instances share one
// hop-count BFS per goal. Thread-safe.
class DistanceCache {
public:
  explicit DistanceCache(const Instance& inst);
  const DistTable& operator[](AgentId agent) const;

private:
  const Instance* inst_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<DistTable>> tables_;
  mutable std::unordered_map<VertexId, std::shared_ptr<const std::vector<std::int32_t>>> hops_by_goal_;
};

}  // namespace lsrp
