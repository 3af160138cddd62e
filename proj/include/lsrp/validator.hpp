#pragma once

#include <string>
#include <vector>

#include "lsrp/instance.hpp"
#include "lsrp/solution.hpp"
#include "lsrp/state.hpp"

namespace lsrp {

enum class ViolationKind { duration_conflict, discontinuity, wrong_duration, wrong_endpoint };
std::string_view to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<AgentId> agents;
  VertexId vertex = kNoVertex;
  TimeInterval when;  // overlap for conflicts, offending span otherwise
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  Costs metrics;
};

class MalformedSolution : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Full occupancy of one path: every move and dwell under the duration-conflict
// model, plus the final vertex held from the last arrival onward.
std::vector<VertexOccupancy> path_occupancy(const TimedPath& path);

// Checks continuity, endpoints, exact edge durations and pairwise duration
// conflicts. Reports every violation found.
ValidationReport validate(const std::vector<TimedPath>& paths, const Instance& inst);
ValidationReport validate(const Solution& sol, const Instance& inst);

}  // namespace lsrp
