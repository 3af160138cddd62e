#include "lsrp/planner.hpp"

#include <algorithm>
#include <stdexcept>

#include "lsrp/graph_props.hpp"
#include "lsrp/swap.hpp"

namespace lsrp {

std::uint64_t default_iteration_cap(const Instance& inst) {
  const Graph& g = inst.g();
  std::uint64_t diam = g.size() <= 4096 ? static_cast<std::uint64_t>(diameter(g).vertices)
                                        : static_cast<std::uint64_t>(diameter_upper_bound(g));
  std::uint64_t n = static_cast<std::uint64_t>(std::max(1, inst.agent_count()));
  return std::max<std::uint64_t>(10 * diam * n * n, 1000);
}

PriorityState initial_priorities(const Instance& inst, const PlannerConfig& config) {
  if (!config.priorities.empty()) {
    if (static_cast<int>(config.priorities.size()) != inst.agent_count())
      throw std::invalid_argument("explicit priorities must list one value per agent");
    return PriorityState(config.priorities);
  }
  return PriorityState::seeded(inst.agent_count(), config.priority_seed);
}

std::vector<AgentId> extract_agents(std::span<const IndividualState> s_prev, TimePoint t_min) {
  std::vector<AgentId> out;
  for (AgentId i = 0; i < static_cast<AgentId>(s_prev.size()); ++i)
    if (s_prev[i].t_v == t_min) out.push_back(i);
  return out;
}

TimePoint compute_t_next(const TimestampQueue& queue, TimePoint t_min, Duration min_duration) {
  return queue.empty() ? t_min + min_duration : queue.top();
}

std::vector<TimedPath> post_process(const Instance& inst, const std::vector<std::vector<IndividualState>>& chains) {
  std::vector<TimedPath> paths;
  paths.reserve(chains.size());
  for (AgentId i = 0; i < inst.agent_count(); ++i) paths.push_back(compress_chain(inst.starts[i], chains[i]));
  return paths;
}

LsrpPlanner::LsrpPlanner(const Instance& inst, PlannerConfig config)
    : inst_(inst),
      config_(std::move(config)),
      dist_(inst),
      ws_(inst),
      cache_(inst.agent_count()),
      eps_(initial_priorities(inst, config_)),
      min_duration_(inst.durations.min_over(inst.g())),
      tie_rng_(config_.priority_seed ^ 0x9e3779b97f4a7c15ULL) {
  if (config_.time_limit.count() <= 0) throw std::invalid_argument("time limit must be positive");
}

std::vector<VertexId> LsrpPlanner::candidates(AgentId i) {
  const VertexId vi = ws_.prev(i).v;
  const DistTable& d = dist_[i];
  auto nb = inst_.g().neighbors(vi);
  std::vector<VertexId> c(nb.begin(), nb.end());
  c.push_back(vi);
  std::sort(c.begin(), c.end());
  if (config_.tie_break == TieBreak::seeded)
    for (std::size_t k = c.size(); k > 1; --k) std::swap(c[k - 1], c[tie_rng_() % k]);
  std::stable_sort(c.begin(), c.end(), [&](VertexId a, VertexId b) { return d.ticks(a) < d.ticks(b); });
  return c;
}

void LsrpPlanner::wait_and_move(AgentId i, VertexId v, TimePoint t_wait) {
  const VertexId vi = ws_.prev(i).v;
  if (!inst_.g().adjacent(vi, v)) throw std::logic_error("wait_and_move target is not adjacent");
  if (t_wait < ws_.now()) throw std::logic_error("wait_and_move into the past");
  ws_.set_next(i, {vi, vi, ws_.now(), t_wait});
  cache_.insert(i, {vi, v, t_wait, t_wait + inst_.duration(i, vi, v)});
}

std::optional<TimePoint> LsrpPlanner::asy_push(AgentId i, std::vector<VertexId> ban, TimePoint t, TimePoint t_next,
                                               bool bp) {
  return push_impl(i, std::move(ban), t, t_next, bp, 1);
}

std::optional<TimePoint> LsrpPlanner::push_impl(AgentId i, std::vector<VertexId> ban, TimePoint t,
                                                TimePoint t_next, bool bp, int depth) {
  if (depth > inst_.agent_count()) throw std::logic_error("push recursion deeper than the agent count");
  max_depth_ = std::max(max_depth_, depth);

  const VertexId vi = ws_.prev(i).v;
  std::vector<VertexId> c = candidates(i);

  AgentId partner = kNoAgent;
  if (config_.swap_enabled) {
    partner = swap_required_possible(ws_, dist_, i, c.front());
    if (partner != kNoAgent) std::reverse(c.begin(), c.end());
  }
  if (eps_.top() == i && c.size() > 1) {
    c.erase(std::find(c.begin(), c.end(), vi));
    c.insert(c.begin() + 1, vi);
  }
  const VertexId first = c.front();
  auto pull_partner = [&](VertexId v, TimePoint t_move) {
    if (partner != kNoAgent && !bp && v == first && !ws_.planned(partner)) wait_and_move(partner, vi, t_move);
  };

  for (VertexId v : c) {
    if (ws_.occupied(v, i, ban, bp)) continue;
    if (AgentId k = ws_.push_required(v, i); k != kNoAgent) {
      ban.push_back(vi);
      auto t_wait = push_impl(k, ban, t, t_next, true, depth + 1);
      if (!t_wait) continue;
      wait_and_move(i, v, *t_wait);
      TimePoint t_move = *t_wait + inst_.duration(i, vi, v);
      pull_partner(v, t_move);
      return t_move;
    }
    if (v == vi) {
      ws_.set_next(i, {vi, vi, t, t_next});
      return t_next;
    }
    TimePoint t_move = t + inst_.duration(i, vi, v);
    ws_.set_next(i, {vi, v, t, t_move});
    pull_partner(v, t_move);
    return t_move;
  }
  return std::nullopt;
}

Solution LsrpPlanner::solve() {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const std::uint64_t cap = config_.iteration_cap ? config_.iteration_cap : default_iteration_cap(inst_);
  const int n = inst_.agent_count();

  Solution sol;
  auto finish = [&](Status status) {
    sol.status = status;
    sol.metrics.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    sol.fallback_waits = fallback_waits_;
    sol.max_push_depth = max_depth_;
    return sol;
  };

  check_instance(inst_);
  if (!goals_reachable(inst_)) return finish(Status::failure);

  std::vector<std::vector<IndividualState>> chains(n);
  queue_.push(TimePoint::zero());
  int at_goal = 0;
  for (AgentId i = 0; i < n; ++i) at_goal += ws_.prev(i).v == inst_.goals[i];

  std::uint64_t iterations = 0;
  while (!queue_.empty()) {
    if (at_goal == n) {
      sol.paths = post_process(inst_, chains);
      Costs c = metrics(sol.paths);
      sol.metrics.soc = c.soc;
      sol.metrics.makespan = c.makespan;
      sol.termination_time = queue_.top();
      return finish(Status::solved);
    }
    if (iterations >= cap) return finish(Status::iteration_cap);
    if ((iterations & 255) == 0 && Clock::now() - started > config_.time_limit) return finish(Status::timeout);
    sol.metrics.iterations = ++iterations;

    eps_.update(ws_.s_prev(), inst_.goals);
    const TimePoint t_min = queue_.pop();
    ws_.begin_round(t_min);
    const TimePoint t_next = compute_t_next(queue_, t_min, min_duration_);

    for (AgentId i : ws_.current())
      if (auto cached = cache_.take(i, t_min)) ws_.set_next(i, *cached);

    std::vector<AgentId> order = eps_.descending(ws_.current());
    for (AgentId i : order) {
      if (ws_.planned(i)) continue;
      if (!asy_push(i, {}, t_min, t_next, false)) {
        const VertexId vi = ws_.prev(i).v;
        ws_.set_next(i, {vi, vi, t_min, t_next});
        ++fallback_waits_;
      }
    }

    JointState next = ws_.finish_round();
    for (AgentId i : order) {
      chains[i].push_back(next[i]);
      at_goal += (next[i].v == inst_.goals[i]) - (ws_.prev(i).v == inst_.goals[i]);
    }
    for (const auto& s : next) queue_.push(s.t_v);
    if (observer_) observer_({t_min, t_next, order, next});
    ws_.set_previous(std::move(next));
  }
  return finish(Status::failure);
}

Solution lsrp_solve(const Instance& inst, const PlannerConfig& config) {
  LsrpPlanner planner(inst, config);
  return planner.solve();
}

}  // namespace lsrp
