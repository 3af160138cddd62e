#include "lsrp/swap.hpp"

#include <cassert>
#include <stdexcept>

namespace lsrp {

AgentId occupant(const WorkingSet& ws, VertexId v) { return ws.occupant(v); }

bool swap_check(const Graph& g, VertexId pull_from, VertexId pulled_at, VertexId pulled_goal,
                const DistTable& puller_dist) {
  VertexId pl = pull_from;
  VertexId pd = pulled_at;
  // every step moves the puller to a fresh corridor vertex, so |V| steps suffice
  for (int step = 0; step <= g.size(); ++step) {
    int exits = 0;
    VertexId next = kNoVertex;
    for (VertexId u : g.neighbors(pl)) {
      if (u == pd) continue;
      ++exits;
      next = u;
    }
    if (exits >= 2) return false;
    if (exits <= 0) return true;
    if (pd == pulled_goal) {
      VertexId best = pl;
      for (VertexId u : g.neighbors(pl)) {
        auto du = puller_dist.ticks(u), db = puller_dist.ticks(best);
        if (du < db || (du == db && u < best)) best = u;
      }
      return best == pd;
    }
    pd = pl;
    pl = next;
    if (pl == pulled_at) return true;
  }
  throw std::logic_error("swap_check did not terminate");
}

AgentId swap_required_possible(const WorkingSet& ws, const DistanceCache& dist, AgentId i, VertexId v) {
  const Instance& inst = ws.instance();
  const Graph& g = inst.g();
  const VertexId vi = ws.prev(i).v;
  if (v == vi) return kNoAgent;

  if (AgentId j = ws.occupant(v); j != kNoAgent && j != i) {
    const VertexId vj = ws.prev(j).v;
    // j leading, i following: pulling alone cannot bring i past j
    if (swap_check(g, vj, vi, inst.goals[i], dist[j]) &&
        // i leading, j following: the pair can separate
        !swap_check(g, vi, vj, inst.goals[j], dist[i]))
      return j;
  }

  for (VertexId u : g.neighbors(vi)) {
    AgentId k = ws.occupant(u);
    if (k == kNoAgent || ws.prev(k).v == v) continue;
    // hypothetical placement after i steps to v and k follows into vi
    if (swap_check(g, v, vi, inst.goals[k], dist[i]) && !swap_check(g, vi, v, inst.goals[i], dist[k])) return k;
  }
  return kNoAgent;
}

}  // namespace lsrp
