#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lsrp/instance.hpp"
#include "lsrp/time.hpp"

namespace lsrp {

// A time interval on the real line with integer-tick endpoints, stored as a
// closed interval over half-ticks: t maps to 2t, an open endpoint shifts by
// one half-tick inward. Intersection of two such intervals is then exact
// integer interval intersection.
struct TimeInterval {
  static constexpr std::int64_t kForever = std::numeric_limits<std::int64_t>::max() / 4;

  std::int64_t lo = 0;  // half-ticks, inclusive
  std::int64_t hi = -1; // half-ticks, inclusive; kForever for unbounded

  static TimeInterval closed(TimePoint a, TimePoint b) { return {2 * a.ticks(), 2 * b.ticks()}; }
  static TimeInterval closed_open(TimePoint a, TimePoint b) { return {2 * a.ticks(), 2 * b.ticks() - 1}; }
  static TimeInterval open_closed(TimePoint a, TimePoint b) { return {2 * a.ticks() + 1, 2 * b.ticks()}; }
  static TimeInterval open(TimePoint a, TimePoint b) { return {2 * a.ticks() + 1, 2 * b.ticks() - 1}; }
  static TimeInterval from(TimePoint a) { return {2 * a.ticks(), kForever}; }

  bool empty() const { return lo > hi; }
  bool intersects(const TimeInterval& o) const {
    return !empty() && !o.empty() && lo <= o.hi && o.lo <= hi;
  }
  bool contains_half_tick(std::int64_t x) const { return lo <= x && x <= hi; }
  bool operator==(const TimeInterval&) const = default;

  // "[0.000,3.000)" style.
  std::string str() const;
};

struct VertexOccupancy {
  VertexId vertex = kNoVertex;
  TimeInterval interval;
  bool operator==(const VertexOccupancy&) const = default;
};

// One agent's action record: leave p at t_p, arrive at v at t_v.
// p == v is a wait.
struct IndividualState {
  VertexId p = kNoVertex;
  VertexId v = kNoVertex;
  TimePoint t_p;
  TimePoint t_v;

  bool is_wait() const { return p == v; }
  bool operator==(const IndividualState&) const = default;
};

std::string to_string(const IndividualState& s, const Graph* g = nullptr);

// Move p->v over (t_p, t_v): p on [t_p, t_v), v on (t_p, t_v].
// Wait at v: v on [t_p, t_v].
std::vector<VertexOccupancy> occupancy_of(const IndividualState& s);

using JointState = std::vector<IndividualState>;

JointState initial_joint_state(const Instance& inst);

// Priorities epsilon^i = epsilon0^i + k^i with integer k^i >= 0. Compared as
// (k, epsilon0) lexicographically, which is exact because epsilon0 lies in (0,1).
class PriorityState {
public:
  PriorityState() = default;
  explicit PriorityState(std::vector<double> initial);

  // epsilon0^i = (N - rank_i) / (N + 1) for a seeded random permutation.
  static PriorityState seeded(int n, std::uint64_t seed);

  int size() const { return static_cast<int>(initial_.size()); }
  double initial(AgentId i) const { return initial_[i]; }
  std::int64_t increments(AgentId i) const { return bumps_[i]; }
  double value(AgentId i) const { return initial_[i] + static_cast<double>(bumps_[i]); }
  bool higher(AgentId a, AgentId b) const {
    return bumps_[a] != bumps_[b] ? bumps_[a] > bumps_[b] : initial_[a] > initial_[b];
  }

  // Agents whose previous state arrives at their goal reset to epsilon0;
  // everyone else gains one.
  void update(std::span<const IndividualState> s_prev, std::span<const VertexId> goals);

  // The unique agent whose priority exceeds all others.
  AgentId top() const { return top_; }
  // Agents sorted by descending priority.
  std::vector<AgentId> descending(std::span<const AgentId> agents) const;

private:
  AgentId find_top() const;

  std::vector<double> initial_;
  std::vector<std::int64_t> bumps_;
  AgentId top_ = kNoAgent;
};

// Ordered set of distinct future planning timestamps.
class TimestampQueue {
public:
  void push(TimePoint t);
  TimePoint pop();
  bool empty() const { return set_.empty(); }
  std::size_t size() const { return set_.size(); }
  TimePoint top() const { return *set_.begin(); }
  std::optional<TimePoint> last_popped() const { return last_; }

private:
  std::set<TimePoint> set_;
  std::optional<TimePoint> last_;
};

// Pending future moves: at most one per agent, keyed by its start time.
class ActionCache {
public:
  explicit ActionCache(int agents = 0) : slots_(agents) {}

  void insert(AgentId agent, const IndividualState& s);
  // Removes and returns the pending action of `agent` that starts exactly at t.
  std::optional<IndividualState> take(AgentId agent, TimePoint t);
  const std::optional<IndividualState>& peek(AgentId agent) const { return slots_[agent]; }
  bool contains(AgentId agent) const { return slots_[agent].has_value(); }
  std::size_t size() const;

private:
  std::vector<std::optional<IndividualState>> slots_;
};

// Mutable context of one planning iteration: the previous joint state, the
// partially built next joint state, the agents being planned now, and
// per-vertex holder tables that make the occupancy predicates O(1).
class WorkingSet {
public:
  explicit WorkingSet(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  int agent_count() const { return static_cast<int>(s_prev_.size()); }

  const JointState& s_prev() const { return s_prev_; }
  const IndividualState& prev(AgentId i) const { return s_prev_[i]; }
  const std::optional<IndividualState>& next(AgentId i) const { return s_next_[i]; }
  bool planned(AgentId i) const { return s_next_[i].has_value(); }
  bool in_current(AgentId i) const { return in_curr_[i] != 0; }
  TimePoint now() const { return now_; }
  const std::vector<AgentId>& current() const { return current_; }

  // Replaces s_prev (used at iteration start and by tests).
  void set_previous(JointState s);
  // Starts a planning round at t: I_curr = agents whose s_prev arrives at t.
  void begin_round(TimePoint t);
  void set_next(AgentId i, const IndividualState& s);
  // s_next for the whole joint state; unplanned entries copy s_prev.
  JointState finish_round();

  // True iff agent i may not enter v now:
  //  (1) v is banned;
  //  (2) another agent's planned next state has v as an endpoint, or another
  //      agent outside I_curr is mid-action with v as an endpoint;
  //  (3) bp and v is i's own current vertex.
  bool occupied(VertexId v, AgentId i, std::span<const VertexId> ban, bool bp) const;

  // Agent in I_curr, not yet planned, whose current vertex is v (excluding i).
  AgentId push_required(VertexId v, AgentId i) const;
  // Agent in I_curr, not yet planned, whose current vertex is v.
  AgentId occupant(VertexId v) const;

private:
  void hold_prev(AgentId i, const IndividualState& s);
  void release_prev(AgentId i, const IndividualState& s);

  const Instance* inst_;
  JointState s_prev_;
  std::vector<std::optional<IndividualState>> s_next_;
  std::vector<char> in_curr_;
  std::vector<AgentId> current_;
  TimePoint now_;

  std::vector<AgentId> at_;         // agent whose s_prev.v is this vertex
  std::vector<AgentId> from_;       // agent whose s_prev.p (p != v) is this vertex
  std::vector<AgentId> next_hold_;  // agent whose planned s_next touches this vertex
  std::vector<VertexId> next_touched_;
};

}  // namespace lsrp
