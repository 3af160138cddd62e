#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lsrp/dist_table.hpp"
#include "lsrp/instance.hpp"
#include "lsrp/solution.hpp"
#include "lsrp/state.hpp"

namespace lsrp {

// How equally distant candidates are ordered.
enum class TieBreak {
  vertex_id,  // ascending VertexId
  seeded,     // per-call shuffle from a generator seeded with priority_seed
};

struct PlannerConfig {
  bool swap_enabled = false;
  TieBreak tie_break = TieBreak::vertex_id;
  std::chrono::milliseconds time_limit{30'000};
  // 0 selects the default of 10 * diam(G) * N^2 main-loop iterations.
  std::uint64_t iteration_cap = 0;
  std::uint64_t priority_seed = 0;
  // Explicit initial priorities in (0,1), pairwise distinct; overrides the seed.
  std::vector<double> priorities;
};

// One main-loop iteration, as observed after s_next is appended.
struct RoundRecord {
  TimePoint t_min;
  TimePoint t_next;
  std::vector<AgentId> current;  // I_curr in planning order
  JointState next;
};

std::uint64_t default_iteration_cap(const Instance& inst);
PriorityState initial_priorities(const Instance& inst, const PlannerConfig& config);

// Agents whose previous state arrives exactly at t_min.
std::vector<AgentId> extract_agents(std::span<const IndividualState> s_prev, TimePoint t_min);

// Next planning timestamp: the smallest queued one, or t_min plus the smallest
// edge duration of any agent when the queue is empty.
TimePoint compute_t_next(const TimestampQueue& queue, TimePoint t_min, Duration min_duration);

// Builds per-agent timed paths from the per-agent chains of individual states
// recorded while planning (the compressed form of the joint-state list).
std::vector<TimedPath> post_process(const Instance& inst, const std::vector<std::vector<IndividualState>>& chains);

// Event-driven rule-based planner for asynchronous actions, with the optional
// swap extension. Single-threaded; one object per run.
class LsrpPlanner {
public:
  LsrpPlanner(const Instance& inst, PlannerConfig config);

  Solution solve();

  // Records every main-loop iteration (tests, tracing).
  void set_round_observer(std::function<void(const RoundRecord&)> observer) { observer_ = std::move(observer); }

  // Pieces of one iteration, exposed so the recursion can be driven directly.
  WorkingSet& work() { return ws_; }
  ActionCache& cache() { return cache_; }
  PriorityState& priorities() { return eps_; }
  const DistanceCache& dist() const { return dist_; }

  // Plans agent i at time t. Returns the arrival time at the chosen vertex,
  // or nullopt when every candidate is blocked.
  std::optional<TimePoint> asy_push(AgentId i, std::vector<VertexId> ban, TimePoint t, TimePoint t_next, bool bp);
  // Waits in place until t_wait, then caches the move into v.
  void wait_and_move(AgentId i, VertexId v, TimePoint t_wait);
  // Candidate order for agent i: own vertex plus neighbors, nearest to goal first.
  std::vector<VertexId> candidates(AgentId i);

private:
  std::optional<TimePoint> push_impl(AgentId i, std::vector<VertexId> ban, TimePoint t, TimePoint t_next, bool bp,
                                     int depth);

  const Instance& inst_;
  PlannerConfig config_;
  DistanceCache dist_;
  WorkingSet ws_;
  ActionCache cache_;
  PriorityState eps_;
  TimestampQueue queue_;
  Duration min_duration_;
  std::function<void(const RoundRecord&)> observer_;
  int max_depth_ = 0;
  std::uint64_t fallback_waits_ = 0;
  std::mt19937_64 tie_rng_;
};

Solution lsrp_solve(const Instance& inst, const PlannerConfig& config);

}  // namespace lsrp
