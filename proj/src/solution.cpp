#include "lsrp/solution.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsrp {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::solved: return "solved";
    case Status::timeout: return "timeout";
    case Status::iteration_cap: return "iteration-cap";
    case Status::failure: return "failure";
  }
  return "failure";
}

Status parse_status(std::string_view s) {
  if (s == "solved") return Status::solved;
  if (s == "timeout") return Status::timeout;
  if (s == "iteration-cap") return Status::iteration_cap;
  if (s == "failure") return Status::failure;
  throw std::invalid_argument("unknown status: " + std::string(s));
}

Costs metrics(const std::vector<TimedPath>& paths) {
  Costs c;
  for (const auto& p : paths) {
    if (p.empty()) continue;
    Duration arrival = p.back().arrive - TimePoint::zero();
    c.soc += arrival;
    c.makespan = std::max(c.makespan, arrival);
  }
  return c;
}

TimedPath compress_chain(VertexId start, const std::vector<IndividualState>& chain) {
  TimedPath path{{start, TimePoint::zero(), TimePoint::zero()}};
  for (const auto& s : chain) {
    PathEntry& cur = path.back();
    if (s.p != cur.vertex || s.t_p != cur.depart)
      throw std::logic_error("discontinuous state chain at " + to_string(s));
    if (s.is_wait()) {
      cur.depart = s.t_v;
    } else {
      path.push_back({s.v, s.t_v, s.t_v});
    }
  }
  path.back().depart = path.back().arrive;
  return path;
}

std::vector<IndividualState> expand_path(const TimedPath& path) {
  std::vector<IndividualState> out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto& e = path[k];
    if (e.depart > e.arrive) out.push_back({e.vertex, e.vertex, e.arrive, e.depart});
    if (k + 1 < path.size()) out.push_back({e.vertex, path[k + 1].vertex, e.depart, path[k + 1].arrive});
  }
  return out;
}

}  // namespace lsrp
