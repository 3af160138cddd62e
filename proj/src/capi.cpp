#include "lsrp/lsrp.h"

#include <cstring>
#include <sstream>
#include <string>

#include "lsrp/baselines.hpp"
#include "lsrp/io.hpp"
#include "lsrp/planner.hpp"
#include "lsrp/validator.hpp"

struct lsrp_instance {
  lsrp::InstanceFile file;
};

struct lsrp_solution {
  lsrp::Solution solution;
  std::string planner;
};

namespace {

thread_local std::string g_last_error;

lsrp_error fail(lsrp_error code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
lsrp_error guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return LSRP_OK;
  } catch (const lsrp::OracleCapExceeded& e) {
    return fail(LSRP_E_CAP, e.what());
  } catch (const lsrp::InstanceError& e) {
    return fail(LSRP_E_INSTANCE, e.what());
  } catch (const lsrp::MalformedSolution& e) {
    return fail(LSRP_E_FORMAT, e.what());
  } catch (const lsrp::FormatError& e) {
    std::string msg = e.what();
    return fail(msg.rfind("cannot ", 0) == 0 || msg.rfind("write failed", 0) == 0 ? LSRP_E_IO : LSRP_E_FORMAT, msg);
  } catch (const std::invalid_argument& e) {
    return fail(LSRP_E_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(LSRP_E_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

constexpr const char* kPlannerNames[] = {"lsrp", "lsrp-swap", "sipp-prio", "oracle"};

}  // namespace

extern "C" {

const char* lsrp_last_error(void) { return g_last_error.c_str(); }
const char* lsrp_version(void) { return "1.0.0"; }
void lsrp_string_free(char* s) { std::free(s); }

lsrp_error lsrp_planner_from_name(const char* name, lsrp_planner* out) {
  if (!name || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  for (int i = 0; i < 4; ++i)
    if (std::strcmp(name, kPlannerNames[i]) == 0) {
      *out = static_cast<lsrp_planner>(i);
      return LSRP_OK;
    }
  return fail(LSRP_E_ARGUMENT, std::string("unknown planner \"") + name + "\"");
}

const char* lsrp_planner_name(lsrp_planner p) {
  return p >= 0 && p < 4 ? kPlannerNames[p] : "unknown";
}

const char* lsrp_status_name(lsrp_status s) {
  switch (s) {
    case LSRP_SOLVED: return "solved";
    case LSRP_TIMEOUT: return "timeout";
    case LSRP_ITERATION_CAP: return "iteration-cap";
    case LSRP_FAILURE: return "failure";
  }
  return "unknown";
}

lsrp_error lsrp_instance_load(const char* path, lsrp_instance** out) {
  if (!path || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new lsrp_instance{lsrp::load_instance_file(path)}; });
}

lsrp_error lsrp_instance_parse(const char* json_text, const char* base_dir, lsrp_instance** out) {
  if (!json_text || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lsrp_instance{lsrp::parse_instance_json(json_text, base_dir ? base_dir : "")};
  });
}

lsrp_error lsrp_instance_from_benchmark(const char* map_path, const char* scen_path, int n, uint64_t duration_seed,
                                        lsrp_instance** out) {
  if (!map_path || !scen_path || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  if (n <= 0) return fail(LSRP_E_ARGUMENT, "agent count must be positive");
  *out = nullptr;
  return guarded([&] {
    lsrp::InstanceFile f;
    f.instance = lsrp::instance_from_benchmark(lsrp::read_text_file(map_path), lsrp::read_text_file(scen_path), n,
                                               lsrp::sample_durations(n, duration_seed));
    f.duration_seed = duration_seed;
    *out = new lsrp_instance{std::move(f)};
  });
}

lsrp_error lsrp_instance_random(const char* map_path, int width, int height, int n, uint64_t seed,
                                lsrp_instance** out) {
  if (!out) return fail(LSRP_E_ARGUMENT, "null argument");
  if (n <= 0) return fail(LSRP_E_ARGUMENT, "agent count must be positive");
  if (!map_path && (width <= 0 || height <= 0)) return fail(LSRP_E_ARGUMENT, "grid size must be positive");
  *out = nullptr;
  return guarded([&] {
    std::shared_ptr<const lsrp::Graph> g;
    if (map_path) {
      g = std::make_shared<lsrp::Graph>(lsrp::parse_map(lsrp::read_text_file(map_path)));
    } else {
      g = std::make_shared<lsrp::Graph>(
          lsrp::Graph::grid(width, height, std::vector<bool>(static_cast<std::size_t>(width) * height, true)));
    }
    lsrp::InstanceFile f;
    f.instance = lsrp::random_instance(g, n, seed);
    f.duration_seed = seed;
    *out = new lsrp_instance{std::move(f)};
  });
}

lsrp_error lsrp_instance_with_uniform_duration(const lsrp_instance* inst, double units, lsrp_instance** out) {
  if (!inst || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  if (!(units > 0)) return fail(LSRP_E_ARGUMENT, "duration must be positive");
  *out = nullptr;
  return guarded([&] {
    lsrp::InstanceFile f = inst->file;
    auto d = lsrp::Duration::from_ticks(lsrp::ticks_from_double(units));
    f.instance.durations =
        lsrp::DurationModel::uniform(std::vector<lsrp::Duration>(f.instance.agent_count(), d));
    f.duration_seed.reset();
    *out = new lsrp_instance{std::move(f)};
  });
}

lsrp_error lsrp_instance_set_durations(lsrp_instance* inst, const double* units, int count) {
  if (!inst || !units) return fail(LSRP_E_ARGUMENT, "null argument");
  if (count != inst->file.instance.agent_count())
    return fail(LSRP_E_ARGUMENT, "duration count must equal the agent count");
  return guarded([&] {
    std::vector<lsrp::Duration> ds;
    for (int i = 0; i < count; ++i) {
      if (!(units[i] > 0)) throw std::invalid_argument("durations must be positive");
      ds.push_back(lsrp::Duration::from_ticks(lsrp::ticks_from_double(units[i])));
    }
    inst->file.instance.durations = lsrp::DurationModel::uniform(std::move(ds));
    inst->file.duration_seed.reset();
  });
}

lsrp_error lsrp_instance_to_json(const lsrp_instance* inst, char** out) {
  if (!inst || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = dup_string(lsrp::write_instance_json(inst->file)); });
}

int lsrp_instance_agent_count(const lsrp_instance* inst) { return inst ? inst->file.instance.agent_count() : 0; }
int lsrp_instance_vertex_count(const lsrp_instance* inst) { return inst ? inst->file.instance.g().size() : 0; }
void lsrp_instance_free(lsrp_instance* inst) { delete inst; }

void lsrp_solve_options_init(lsrp_solve_options* opts) {
  if (!opts) return;
  opts->planner = LSRP_PLANNER_LSRP;
  opts->time_limit_s = 30.0;
  opts->iteration_cap = 0;
  opts->seed = 0;
  opts->priorities = nullptr;
  opts->priority_count = 0;
  opts->tie_break = LSRP_TIE_VERTEX_ID;
}

lsrp_error lsrp_solve(const lsrp_instance* inst, const lsrp_solve_options* opts, lsrp_solution** out) {
  if (!inst || !opts || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  if (!(opts->time_limit_s > 0)) return fail(LSRP_E_ARGUMENT, "time limit must be positive");
  if (opts->tie_break != LSRP_TIE_VERTEX_ID && opts->tie_break != LSRP_TIE_SEEDED)
    return fail(LSRP_E_ARGUMENT, "unknown tie-break rule");
  if (opts->priority_count < 0 || (opts->priority_count > 0 && !opts->priorities))
    return fail(LSRP_E_ARGUMENT, "bad priority list");
  *out = nullptr;
  return guarded([&] {
    const lsrp::Instance& in = inst->file.instance;
    std::vector<double> pr = opts->priority_count > 0
                                 ? std::vector<double>(opts->priorities, opts->priorities + opts->priority_count)
                                 : inst->file.priorities;
    auto limit = std::chrono::milliseconds(static_cast<std::int64_t>(opts->time_limit_s * 1000.0));
    if (limit.count() <= 0) limit = std::chrono::milliseconds(1);
    auto sol = std::make_unique<lsrp_solution>();
    sol->planner = lsrp_planner_name(opts->planner);
    switch (opts->planner) {
      case LSRP_PLANNER_LSRP:
      case LSRP_PLANNER_LSRP_SWAP: {
        lsrp::PlannerConfig c;
        c.swap_enabled = opts->planner == LSRP_PLANNER_LSRP_SWAP;
        c.time_limit = limit;
        c.iteration_cap = opts->iteration_cap;
        c.priority_seed = opts->seed;
        c.priorities = pr;
        c.tie_break = opts->tie_break == LSRP_TIE_SEEDED ? lsrp::TieBreak::seeded : lsrp::TieBreak::vertex_id;
        sol->solution = lsrp::lsrp_solve(in, c);
        break;
      }
      case LSRP_PLANNER_SIPP_PRIO: {
        lsrp::PrioritizedConfig c;
        c.priority_seed = opts->seed;
        c.priorities = pr;
        c.time_limit = limit;
        sol->solution = lsrp::prioritized_solve(in, c);
        break;
      }
      case LSRP_PLANNER_ORACLE: {
        auto r = lsrp::oracle_solve(in);
        if (r) sol->solution = std::move(*r);
        else sol->solution.status = lsrp::Status::failure;
        break;
      }
      default:
        throw std::invalid_argument("unknown planner");
    }
    *out = sol.release();
  });
}

lsrp_status lsrp_solution_status(const lsrp_solution* sol) {
  if (!sol) return LSRP_FAILURE;
  switch (sol->solution.status) {
    case lsrp::Status::solved: return LSRP_SOLVED;
    case lsrp::Status::timeout: return LSRP_TIMEOUT;
    case lsrp::Status::iteration_cap: return LSRP_ITERATION_CAP;
    case lsrp::Status::failure: return LSRP_FAILURE;
  }
  return LSRP_FAILURE;
}

double lsrp_solution_soc(const lsrp_solution* sol) { return sol ? sol->solution.metrics.soc.units() : 0.0; }
double lsrp_solution_makespan(const lsrp_solution* sol) { return sol ? sol->solution.metrics.makespan.units() : 0.0; }
double lsrp_solution_wall_ms(const lsrp_solution* sol) { return sol ? sol->solution.metrics.wall_ms : 0.0; }
uint64_t lsrp_solution_iterations(const lsrp_solution* sol) { return sol ? sol->solution.metrics.iterations : 0; }

lsrp_error lsrp_solution_to_json(const lsrp_solution* sol, int include_timing, char** out) {
  if (!sol || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = dup_string(lsrp::write_solution_json(sol->solution, sol->planner, include_timing != 0)); });
}

lsrp_error lsrp_solution_parse(const char* json_text, const lsrp_instance* inst, lsrp_solution** out) {
  if (!json_text || !inst || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    lsrp::SolutionFile f = lsrp::parse_solution_json(json_text, inst->file.instance.g());
    *out = new lsrp_solution{std::move(f.solution), std::move(f.planner)};
  });
}

void lsrp_solution_free(lsrp_solution* sol) { delete sol; }

lsrp_error lsrp_validate(const lsrp_solution* sol, const lsrp_instance* inst, lsrp_validation* out, char** report) {
  if (!sol || !inst || !out) return fail(LSRP_E_ARGUMENT, "null argument");
  if (report) *report = nullptr;
  return guarded([&] {
    const lsrp::Instance& in = inst->file.instance;
    lsrp::ValidationReport r = lsrp::validate(sol->solution, in);
    out->ok = r.ok ? 1 : 0;
    out->violation_count = static_cast<int>(r.violations.size());
    out->soc = r.metrics.soc.units();
    out->makespan = r.metrics.makespan.units();
    if (report) {
      std::ostringstream ss;
      for (const auto& v : r.violations) {
        ss << lsrp::to_string(v.kind) << " agents";
        for (auto a : v.agents) ss << ' ' << a;
        if (v.vertex != lsrp::kNoVertex) ss << " vertex " << in.g().name(v.vertex);
        ss << ' ' << v.when.str() << ": " << v.detail << '\n';
      }
      *report = dup_string(ss.str());
    }
  });
}

}  // extern "C"
