#include "lsrp/validator.hpp"

#include <algorithm>

namespace lsrp {

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::duration_conflict: return "duration-conflict";
    case ViolationKind::discontinuity: return "discontinuity";
    case ViolationKind::wrong_duration: return "wrong-duration";
    case ViolationKind::wrong_endpoint: return "wrong-endpoint";
  }
  return "unknown";
}

std::vector<VertexOccupancy> path_occupancy(const TimedPath& path) {
  std::vector<VertexOccupancy> out;
  if (path.empty()) return out;
  for (const auto& s : expand_path(path))
    for (const auto& o : occupancy_of(s)) out.push_back(o);
  out.push_back({path.back().vertex, TimeInterval::from(path.back().arrive)});
  return out;
}

ValidationReport validate(const std::vector<TimedPath>& paths, const Instance& inst) {
  const Graph& g = inst.g();
  const int n = inst.agent_count();
  if (static_cast<int>(paths.size()) != n)
    throw MalformedSolution("solution has " + std::to_string(paths.size()) + " paths for " + std::to_string(n) +
                            " agents");
  ValidationReport report;
  auto add = [&](Violation v) { report.violations.push_back(std::move(v)); };

  struct Tagged {
    TimeInterval iv;
    AgentId agent;
  };
  std::vector<std::vector<Tagged>> by_vertex(g.size());

  for (AgentId i = 0; i < n; ++i) {
    const TimedPath& p = paths[i];
    if (p.empty()) throw MalformedSolution("agent " + std::to_string(i) + " has an empty path");
    for (const auto& e : p)
      if (!g.valid(e.vertex)) throw MalformedSolution("agent " + std::to_string(i) + " visits an unknown vertex");
    if (p.front().vertex != inst.starts[i] || p.front().arrive != TimePoint::zero())
      add({ViolationKind::wrong_endpoint, {i}, p.front().vertex, TimeInterval::closed(p.front().arrive, p.front().arrive),
           "path does not start at the start vertex at time 0"});
    if (p.back().vertex != inst.goals[i])
      add({ViolationKind::wrong_endpoint, {i}, p.back().vertex, TimeInterval::from(p.back().arrive),
           "path does not end at the goal vertex"});
    bool continuous = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k].depart < p[k].arrive) {
        add({ViolationKind::discontinuity, {i}, p[k].vertex, TimeInterval::closed(p[k].depart, p[k].arrive),
             "departure precedes arrival"});
        continuous = false;
      }
      if (k + 1 == p.size()) break;
      VertexId u = p[k].vertex, w = p[k + 1].vertex;
      if (u == w || !g.adjacent(u, w)) {
        add({ViolationKind::discontinuity, {i}, w, TimeInterval::closed(p[k].depart, p[k + 1].arrive),
             "consecutive vertices are not adjacent"});
        continuous = false;
        continue;
      }
      Duration expected = inst.duration(i, u, w);
      if (p[k + 1].arrive - p[k].depart != expected)
        add({ViolationKind::wrong_duration, {i}, w, TimeInterval::closed(p[k].depart, p[k + 1].arrive),
             "move takes " + to_string(p[k + 1].arrive - p[k].depart) + ", expected " + to_string(expected)});
    }
    if (!continuous) continue;
    for (const auto& o : path_occupancy(p))
      if (!o.interval.empty()) by_vertex[o.vertex].push_back({o.interval, i});
  }

  for (VertexId v = 0; v < g.size(); ++v) {
    auto& list = by_vertex[v];
    if (list.size() < 2) continue;
    std::sort(list.begin(), list.end(), [](const Tagged& a, const Tagged& b) {
      return a.iv.lo != b.iv.lo ? a.iv.lo < b.iv.lo : a.agent < b.agent;
    });
    std::vector<const Tagged*> active;
    for (const auto& cur : list) {
      std::erase_if(active, [&](const Tagged* a) { return a->iv.hi < cur.iv.lo; });
      for (const Tagged* a : active) {
        if (a->agent == cur.agent) continue;
        TimeInterval overlap{std::max(a->iv.lo, cur.iv.lo), std::min(a->iv.hi, cur.iv.hi)};
        add({ViolationKind::duration_conflict, {std::min(a->agent, cur.agent), std::max(a->agent, cur.agent)}, v,
             overlap, "agents occupy the vertex at the same time"});
      }
      active.push_back(&cur);
    }
  }

  report.ok = report.violations.empty();
  report.metrics = metrics(paths);
  return report;
}

ValidationReport validate(const Solution& sol, const Instance& inst) {
  if (sol.status != Status::solved) throw MalformedSolution("only solved solutions can be validated");
  return validate(sol.paths, inst);
}

}  // namespace lsrp
