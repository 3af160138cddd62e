#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lsrp/graph.hpp"
#include "lsrp/time.hpp"

namespace lsrp {

// Per-agent edge traversal durations. Uniform mode: one constant per agent.
// Table mode: per-agent default plus directed (agent, from, to) overrides.
class DurationModel {
public:
  DurationModel() = default;
  static DurationModel uniform(std::vector<Duration> per_agent);
  static DurationModel table(std::vector<Duration> defaults);

  void set(AgentId agent, VertexId from, VertexId to, Duration d);

  Duration operator()(AgentId agent, VertexId from, VertexId to) const;
  bool is_uniform() const { return overrides_.empty(); }
  Duration agent_default(AgentId agent) const { return defaults_[agent]; }
  std::size_t agent_count() const { return defaults_.size(); }

  // Smallest and largest duration over every agent and every directed edge of g.
  Duration min_over(const Graph& g) const;
  Duration max_over(const Graph& g) const;

  const std::unordered_map<std::uint64_t, Duration>& overrides() const { return overrides_; }
  static std::uint64_t key(AgentId agent, VertexId from, VertexId to);
  static void unpack(std::uint64_t key, AgentId& agent, VertexId& from, VertexId& to);

private:
  std::vector<Duration> defaults_;
  std::unordered_map<std::uint64_t, Duration> overrides_;
};

struct Instance {
  std::shared_ptr<const Graph> graph;
  std::vector<VertexId> starts;
  std::vector<VertexId> goals;
  DurationModel durations;

  int agent_count() const { return static_cast<int>(starts.size()); }
  const Graph& g() const { return *graph; }
  Duration duration(AgentId i, VertexId from, VertexId to) const { return durations(i, from, to); }
};

class InstanceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Structural checks: ids in range, starts and goals pairwise distinct, one
// duration per agent, positive durations. Throws InstanceError.
void check_instance(const Instance& inst);
// Every agent's goal lies in its start's connected component.
bool goals_reachable(const Instance& inst);
// Connected-component label per vertex.
std::vector<int> component_labels(const Graph& g);

// n agents with distinct starts and distinct goals drawn from the largest
// connected component, durations from sample_durations(n, seed).
Instance random_instance(std::shared_ptr<const Graph> graph, int n, std::uint64_t seed);

struct ScenRows {
  std::vector<VertexId> starts;
  std::vector<VertexId> goals;
};

// MovingAI .scen reader. Columns: bucket, map, width, height, start-x(col),
// start-y(row), goal-x(col), goal-y(row), optimal length. Takes the first n rows.
ScenRows parse_scen(std::string_view text, int n, const Graph& g);
int count_scen_rows(std::string_view text);

// Seeded sample from {1.0, 2.0, 3.0, 4.0, 5.0}; mt19937_64 with a plain modulus
// so the sequence is identical on every standard library.
std::vector<Duration> sample_durations(int n, std::uint64_t seed);

}  // namespace lsrp
