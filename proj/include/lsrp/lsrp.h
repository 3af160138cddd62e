#pragma once

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LSRP_API __declspec(dllexport)
#else
#define LSRP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lsrp_instance lsrp_instance;
typedef struct lsrp_solution lsrp_solution;

typedef enum lsrp_error {
  LSRP_OK = 0,
  LSRP_E_ARGUMENT = 1,  /* null pointer, bad option value */
  LSRP_E_IO = 2,        /* file could not be read or written */
  LSRP_E_FORMAT = 3,    /* malformed map, scen or JSON */
  LSRP_E_INSTANCE = 4,  /* structurally invalid instance */
  LSRP_E_CAP = 5,       /* instance beyond the oracle's hard caps */
  LSRP_E_INTERNAL = 6
} lsrp_error;

typedef enum lsrp_planner {
  LSRP_PLANNER_LSRP = 0,
  LSRP_PLANNER_LSRP_SWAP = 1,
  LSRP_PLANNER_SIPP_PRIO = 2,
  LSRP_PLANNER_ORACLE = 3
} lsrp_planner;

typedef enum lsrp_status {
  LSRP_SOLVED = 0,
  LSRP_TIMEOUT = 1,
  LSRP_ITERATION_CAP = 2,
  LSRP_FAILURE = 3
} lsrp_status;

/* Message for the last failed call on this thread. Never NULL. */
LSRP_API const char* lsrp_last_error(void);
LSRP_API const char* lsrp_version(void);
LSRP_API void lsrp_string_free(char* s);

/* "lsrp", "lsrp-swap", "sipp-prio", "oracle". */
LSRP_API lsrp_error lsrp_planner_from_name(const char* name, lsrp_planner* out);
LSRP_API const char* lsrp_planner_name(lsrp_planner p);
LSRP_API const char* lsrp_status_name(lsrp_status s);

/* ---- instances ---- */

LSRP_API lsrp_error lsrp_instance_load(const char* path, lsrp_instance** out);
LSRP_API lsrp_error lsrp_instance_parse(const char* json_text, const char* base_dir, lsrp_instance** out);
/* First n scen rows on the map; durations sampled with duration_seed. */
LSRP_API lsrp_error lsrp_instance_from_benchmark(const char* map_path, const char* scen_path, int n,
                                                 uint64_t duration_seed, lsrp_instance** out);
/* Random distinct starts and goals on a map file (NULL map_path: open
   width x height grid). */
LSRP_API lsrp_error lsrp_instance_random(const char* map_path, int width, int height, int n, uint64_t seed,
                                         lsrp_instance** out);
/* Copy with one duration for every agent and edge. */
LSRP_API lsrp_error lsrp_instance_with_uniform_duration(const lsrp_instance* inst, double units,
                                                        lsrp_instance** out);
/* Replaces the per-agent durations (count must equal the agent count). */
LSRP_API lsrp_error lsrp_instance_set_durations(lsrp_instance* inst, const double* units, int count);
LSRP_API lsrp_error lsrp_instance_to_json(const lsrp_instance* inst, char** out);
LSRP_API int lsrp_instance_agent_count(const lsrp_instance* inst);
LSRP_API int lsrp_instance_vertex_count(const lsrp_instance* inst);
LSRP_API void lsrp_instance_free(lsrp_instance* inst);

/* ---- solving ---- */

typedef enum lsrp_tie_break {
  LSRP_TIE_VERTEX_ID = 0, /* equally distant candidates in ascending vertex id */
  LSRP_TIE_SEEDED = 1     /* shuffled by a generator seeded with `seed` */
} lsrp_tie_break;

typedef struct lsrp_solve_options {
  lsrp_planner planner;
  double time_limit_s;       /* > 0 */
  uint64_t iteration_cap;    /* 0: default */
  uint64_t seed;             /* initial priority permutation */
  const double* priorities;  /* optional explicit values in (0,1) */
  int priority_count;
  lsrp_tie_break tie_break;  /* rule-based planners only */
} lsrp_solve_options;

LSRP_API void lsrp_solve_options_init(lsrp_solve_options* opts);

/* A solution handle is produced for every planner outcome; LSRP_E_CAP is
   returned when the oracle refuses the instance. */
LSRP_API lsrp_error lsrp_solve(const lsrp_instance* inst, const lsrp_solve_options* opts, lsrp_solution** out);

LSRP_API lsrp_status lsrp_solution_status(const lsrp_solution* sol);
LSRP_API double lsrp_solution_soc(const lsrp_solution* sol);
LSRP_API double lsrp_solution_makespan(const lsrp_solution* sol);
LSRP_API double lsrp_solution_wall_ms(const lsrp_solution* sol);
LSRP_API uint64_t lsrp_solution_iterations(const lsrp_solution* sol);
LSRP_API lsrp_error lsrp_solution_to_json(const lsrp_solution* sol, int include_timing, char** out);
LSRP_API lsrp_error lsrp_solution_parse(const char* json_text, const lsrp_instance* inst, lsrp_solution** out);
LSRP_API void lsrp_solution_free(lsrp_solution* sol);

/* ---- validation ---- */

typedef struct lsrp_validation {
  int ok;
  int violation_count;
  double soc;
  double makespan;
} lsrp_validation;

/* report (optional) receives one line per violation. */
LSRP_API lsrp_error lsrp_validate(const lsrp_solution* sol, const lsrp_instance* inst, lsrp_validation* out,
                                  char** report);

#ifdef __cplusplus
}
#endif
