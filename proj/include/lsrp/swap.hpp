#pragma once

#include "lsrp/dist_table.hpp"
#include "lsrp/state.hpp"

namespace lsrp {

// Agent in I_curr, not yet planned, whose current vertex is v; kNoAgent if none.
AgentId occupant(const WorkingSet& ws, VertexId v);

// Simulates a corridor of pull operations: the puller starts at `pull_from`
// and keeps stepping away, the pulled agent follows into the vertex just
// vacated (starting from `pulled_at`). Returns
//   false  as soon as the puller has >= 2 exits besides the pulled agent
//          (the pair can separate, so pulling suffices), or the pulled agent
//          stands on its goal and the puller would not turn back into it;
//   true   on a dead end, when the pulled agent stands on its goal and the
//          puller's best candidate is that very vertex, or when the walk
//          closes a cycle back onto `pulled_at`.
// Topology only; durations are not consulted.
bool swap_check(const Graph& g, VertexId pull_from, VertexId pulled_at, VertexId pulled_goal,
                const DistTable& puller_dist);

// Partner agent that i has to swap with to make progress toward `v`
// (the first candidate of i's sorted list), or kNoAgent.
AgentId swap_required_possible(const WorkingSet& ws, const DistanceCache& dist, AgentId i, VertexId v);

}  // namespace lsrp
