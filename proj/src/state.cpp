#include "lsrp/state.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lsrp {

namespace {

std::string half_ticks(std::int64_t h, bool upper) {
  if (h >= TimeInterval::kForever) return "inf";
  // an odd value sits half a tick inside an open endpoint
  std::int64_t t = (h % 2 == 0) ? h / 2 : (upper ? (h + 1) / 2 : (h - 1) / 2);
  return format_ticks(t);
}

}  // namespace

std::string TimeInterval::str() const {
  if (empty()) return "{}";
  std::string out = (lo % 2 == 0) ? "[" : "(";
  out += half_ticks(lo, false) + "," + half_ticks(hi, true);
  out += (hi >= kForever) ? ")" : ((hi % 2 == 0) ? "]" : ")");
  return out;
}

std::string to_string(const IndividualState& s, const Graph* g) {
  auto name = [&](VertexId v) { return g ? g->name(v) : std::to_string(v); };
  return "(" + name(s.p) + "," + name(s.v) + "," + to_string(s.t_p) + "," + to_string(s.t_v) + ")";
}

std::vector<VertexOccupancy> occupancy_of(const IndividualState& s) {
  if (s.is_wait()) return {{s.v, TimeInterval::closed(s.t_p, s.t_v)}};
  return {{s.p, TimeInterval::closed_open(s.t_p, s.t_v)}, {s.v, TimeInterval::open_closed(s.t_p, s.t_v)}};
}

JointState initial_joint_state(const Instance& inst) {
  JointState s;
  s.reserve(inst.starts.size());
  for (VertexId v : inst.starts) s.push_back({v, v, TimePoint::zero(), TimePoint::zero()});
  return s;
}

PriorityState::PriorityState(std::vector<double> initial)
    : initial_(std::move(initial)), bumps_(initial_.size(), 0) {
  auto sorted = initial_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("initial priorities must be pairwise distinct");
  for (double e : initial_)
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("initial priorities must lie in (0,1)");
  top_ = find_top();
}

PriorityState PriorityState::seeded(int n, std::uint64_t seed) {
  std::vector<int> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::mt19937_64 rng(seed);
  for (int k = n - 1; k > 0; --k) std::swap(rank[k], rank[static_cast<int>(rng() % static_cast<std::uint64_t>(k + 1))]);
  std::vector<double> eps(n);
  for (int i = 0; i < n; ++i) eps[i] = static_cast<double>(n - rank[i]) / static_cast<double>(n + 1);
  return PriorityState(std::move(eps));
}

void PriorityState::update(std::span<const IndividualState> s_prev, std::span<const VertexId> goals) {
  for (std::size_t i = 0; i < initial_.size(); ++i) {
    if (s_prev[i].v == goals[i])
      bumps_[i] = 0;
    else
      ++bumps_[i];
  }
  top_ = find_top();
}

AgentId PriorityState::find_top() const {
  if (initial_.empty()) return kNoAgent;
  AgentId best = 0;
  for (AgentId i = 1; i < size(); ++i)
    if (higher(i, best)) best = i;
  return best;
}

std::vector<AgentId> PriorityState::descending(std::span<const AgentId> agents) const {
  std::vector<AgentId> out(agents.begin(), agents.end());
  std::sort(out.begin(), out.end(), [&](AgentId a, AgentId b) { return higher(a, b); });
  return out;
}

void TimestampQueue::push(TimePoint t) {
  if (last_ && t < *last_) throw std::logic_error("timestamp " + to_string(t) + " precedes the last popped one");
  set_.insert(t);
}

TimePoint TimestampQueue::pop() {
  if (set_.empty()) throw std::logic_error("pop from empty timestamp queue");
  TimePoint t = *set_.begin();
  set_.erase(set_.begin());
  last_ = t;
  return t;
}

void ActionCache::insert(AgentId agent, const IndividualState& s) {
  if (slots_[agent]) throw std::logic_error("agent " + std::to_string(agent) + " already has a pending action");
  slots_[agent] = s;
}

std::optional<IndividualState> ActionCache::take(AgentId agent, TimePoint t) {
  auto& slot = slots_[agent];
  if (!slot || slot->t_p != t) return std::nullopt;
  auto out = slot;
  slot.reset();
  return out;
}

std::size_t ActionCache::size() const {
  return static_cast<std::size_t>(std::count_if(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); }));
}

WorkingSet::WorkingSet(const Instance& inst)
    : inst_(&inst),
      s_next_(inst.agent_count()),
      in_curr_(inst.agent_count(), 0),
      at_(inst.g().size(), kNoAgent),
      from_(inst.g().size(), kNoAgent),
      next_hold_(inst.g().size(), kNoAgent) {
  set_previous(initial_joint_state(inst));
}

void WorkingSet::release_prev(AgentId i, const IndividualState& s) {
  if (at_[s.v] == i) at_[s.v] = kNoAgent;
  if (s.p != s.v && from_[s.p] == i) from_[s.p] = kNoAgent;
}

void WorkingSet::hold_prev(AgentId i, const IndividualState& s) {
  at_[s.v] = i;
  if (s.p != s.v) from_[s.p] = i;
}

void WorkingSet::set_previous(JointState s) {
  if (static_cast<int>(s.size()) != agent_count() && !s_prev_.empty())
    throw std::invalid_argument("joint state size mismatch");
  for (AgentId i = 0; i < static_cast<AgentId>(s_prev_.size()); ++i) release_prev(i, s_prev_[i]);
  s_prev_ = std::move(s);
  for (AgentId i = 0; i < static_cast<AgentId>(s_prev_.size()); ++i) hold_prev(i, s_prev_[i]);
}

void WorkingSet::begin_round(TimePoint t) {
  now_ = t;
  for (VertexId v : next_touched_) next_hold_[v] = kNoAgent;
  next_touched_.clear();
  current_.clear();
  for (AgentId i = 0; i < agent_count(); ++i) {
    s_next_[i].reset();
    in_curr_[i] = s_prev_[i].t_v == t;
    if (in_curr_[i]) current_.push_back(i);
  }
}

void WorkingSet::set_next(AgentId i, const IndividualState& s) {
  if (s_next_[i]) throw std::logic_error("agent " + std::to_string(i) + " planned twice in one round");
  s_next_[i] = s;
  next_hold_[s.p] = i;
  next_hold_[s.v] = i;
  next_touched_.push_back(s.p);
  if (s.v != s.p) next_touched_.push_back(s.v);
}

JointState WorkingSet::finish_round() {
  JointState out(s_prev_.size());
  for (AgentId i = 0; i < agent_count(); ++i) {
    if (in_curr_[i] && !s_next_[i]) throw std::logic_error("agent " + std::to_string(i) + " left unplanned");
    out[i] = s_next_[i] ? *s_next_[i] : s_prev_[i];
  }
  return out;
}

bool WorkingSet::occupied(VertexId v, AgentId i, std::span<const VertexId> ban, bool bp) const {
  if (std::find(ban.begin(), ban.end(), v) != ban.end()) return true;
  if (AgentId j = next_hold_[v]; j != kNoAgent && j != i) return true;
  if (AgentId j = at_[v]; j != kNoAgent && j != i && !in_curr_[j]) return true;
  if (AgentId j = from_[v]; j != kNoAgent && j != i && !in_curr_[j] && s_prev_[j].p == v) return true;
  if (bp && v == s_prev_[i].v) return true;
  return false;
}

AgentId WorkingSet::occupant(VertexId v) const {
  AgentId j = at_[v];
  if (j == kNoAgent || !in_curr_[j] || s_next_[j]) return kNoAgent;
  return j;
}

AgentId WorkingSet::push_required(VertexId v, AgentId i) const {
  AgentId j = occupant(v);
  return j == i ? kNoAgent : j;
}

}  // namespace lsrp
