#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lsrp/dist_table.hpp"
#include "lsrp/instance.hpp"
#include "lsrp/solution.hpp"
#include "lsrp/state.hpp"

namespace lsrp {

// Per-vertex blocked time, kept as sorted disjoint half-tick intervals.
// Free time is the complement on [0, forever].
class SafeIntervalTable {
public:
  explicit SafeIntervalTable(int vertices = 0) : blocked_(vertices) {}

  void block(VertexId v, TimeInterval iv);
  // Everything a planned agent occupies, including its goal from the final
  // arrival onward.
  void block_path(const TimedPath& path);

  const std::vector<TimeInterval>& blocked(VertexId v) const { return blocked_[v]; }
  std::vector<TimeInterval> safe(VertexId v) const;
  bool is_free(VertexId v, TimeInterval iv) const;

private:
  std::vector<std::vector<TimeInterval>> blocked_;
};

// Earliest-arrival path for one agent through the safe intervals, ending in
// the goal's unbounded interval. nullopt when no such path exists.
std::optional<TimedPath> sipp_plan(const Instance& inst, AgentId agent, const SafeIntervalTable& table,
                                   const DistTable& dist);

struct PrioritizedConfig {
  // Planning order, highest priority first. Empty: descending seeded
  // initial priorities, as the rule-based planner would use.
  std::vector<AgentId> order;
  std::uint64_t priority_seed = 0;
  std::vector<double> priorities;
  std::chrono::milliseconds time_limit{30'000};
};

std::vector<AgentId> priority_order(const Instance& inst, std::uint64_t seed, const std::vector<double>& explicit_values);
Solution prioritized_solve(const Instance& inst, const PrioritizedConfig& config);

// Joint-space best-first search for tiny instances. Only the agent with the
// earliest timestamp (lowest index on ties) is expanded; its successors are
// every move, a wait of one lattice step, and (at the goal) stopping for good.
// The lattice step is the gcd of all edge durations, so every event of any
// schedule built from these durations falls on the lattice. The result is
// optimal in sum of costs over all lattice-aligned schedules.
struct OracleLimits {
  int max_agents = 3;
  int max_vertices = 64;
  std::uint64_t max_expansions = 4'000'000;
};

class OracleCapExceeded : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Throws OracleCapExceeded when the instance is over the hard caps.
// nullopt when the expansion budget runs out or no solution exists.
std::optional<Solution> oracle_solve(const Instance& inst, const OracleLimits& limits = {});

}  // namespace lsrp
