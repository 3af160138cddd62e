#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lsrp/graph.hpp"
#include "lsrp/state.hpp"
#include "lsrp/time.hpp"

namespace lsrp {

// Agent sits at `vertex` on [arrive, depart], then travels to the next entry.
struct PathEntry {
  VertexId vertex = kNoVertex;
  TimePoint arrive;
  TimePoint depart;
  bool operator==(const PathEntry&) const = default;
};

using TimedPath = std::vector<PathEntry>;

enum class Status { solved, timeout, iteration_cap, failure };

std::string_view to_string(Status s);
Status parse_status(std::string_view s);

struct Metrics {
  Duration soc;
  Duration makespan;
  double wall_ms = 0.0;
  std::uint64_t iterations = 0;
};

struct Solution {
  Status status = Status::failure;
  std::vector<TimedPath> paths;
  Metrics metrics;
  // Planner diagnostics (not serialized into the metrics block).
  TimePoint termination_time;
  std::uint64_t fallback_waits = 0;
  int max_push_depth = 0;

  bool solved() const { return status == Status::solved; }
};

// soc = sum of final arrival times, makespan = max of them.
struct Costs {
  Duration soc;
  Duration makespan;
  bool operator==(const Costs&) const = default;
};
Costs metrics(const std::vector<TimedPath>& paths);

// Compresses a chronological chain of individual states into a path:
// consecutive waits merge and trailing waits at the last vertex are trimmed.
// Throws std::logic_error on a discontinuous chain.
TimedPath compress_chain(VertexId start, const std::vector<IndividualState>& chain);

// The individual states a path stands for (one move per hop, one wait per
// non-empty dwell).
std::vector<IndividualState> expand_path(const TimedPath& path);

}  // namespace lsrp
