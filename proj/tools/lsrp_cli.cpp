#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lsrp/lsrp.h"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitUnsolved = 2;
constexpr int kExitFailure = 3;

struct InstanceDeleter {
  void operator()(lsrp_instance* p) const { lsrp_instance_free(p); }
};
struct SolutionDeleter {
  void operator()(lsrp_solution* p) const { lsrp_solution_free(p); }
};
using InstancePtr = std::unique_ptr<lsrp_instance, InstanceDeleter>;
using SolutionPtr = std::unique_ptr<lsrp_solution, SolutionDeleter>;

struct CliError {
  std::string message;
};

void check(lsrp_error e, const std::string& what) {
  if (e != LSRP_OK) throw CliError{what + ": " + lsrp_last_error()};
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  lsrp_string_free(s);
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LSRP_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw CliError{std::string("LSRP_SEED is not an unsigned integer: ") + env};
    }
  }
  return 0;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (...) {
      throw CliError{"bad " + what + " value \"" + item + "\""};
    }
  }
  return out;
}

std::pair<int, int> parse_grid(const std::string& text) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream ss(text);
  if (!(ss >> w >> x >> h) || (x != 'x' && x != 'X') || w <= 0 || h <= 0)
    throw CliError{"grid size must look like 16x16, got \"" + text + "\""};
  return {w, h};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliError{"cannot write " + path};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// Where an instance comes from; shared by solve, validate and gen.
struct InstanceSource {
  std::string instance;
  std::string map;
  std::string scen;
  std::string grid;
  int agents = 0;
  std::optional<std::uint64_t> duration_seed;
  std::string durations;
  double sync_duration = 0.0;

  void add_to(CLI::App* app) {
    app->add_option("--instance", instance, "native instance JSON");
    app->add_option("--map", map, "MovingAI .map file");
    app->add_option("--scen", scen, "MovingAI .scen file (first n rows)");
    app->add_option("--grid", grid, "open grid WxH with random starts and goals");
    app->add_option("-n,--agents", agents, "number of agents");
    app->add_option("--duration-seed", duration_seed, "seed for per-agent durations (default: --seed)");
    app->add_option("--durations", durations, "explicit per-agent durations, comma separated");
    app->add_option("--sync-duration", sync_duration, "force one duration for every agent");
  }

  InstancePtr load(std::uint64_t seed) const {
    lsrp_instance* raw = nullptr;
    const std::uint64_t dseed = duration_seed.value_or(seed);
    if (!instance.empty()) {
      check(lsrp_instance_load(instance.c_str(), &raw), "loading " + instance);
    } else if (!map.empty() && !scen.empty()) {
      if (agents <= 0) throw CliError{"-n is required with --map/--scen"};
      check(lsrp_instance_from_benchmark(map.c_str(), scen.c_str(), agents, dseed, &raw), "loading benchmark");
    } else if (!map.empty() || !grid.empty()) {
      if (agents <= 0) throw CliError{"-n is required with --map or --grid"};
      int w = 0, h = 0;
      if (map.empty()) std::tie(w, h) = parse_grid(grid);
      check(lsrp_instance_random(map.empty() ? nullptr : map.c_str(), w, h, agents, dseed, &raw),
            "generating instance");
    } else {
      throw CliError{"give --instance, --map with --scen, --map, or --grid"};
    }
    InstancePtr inst(raw);
    if (!durations.empty()) {
      auto ds = parse_list(durations, "duration");
      check(lsrp_instance_set_durations(inst.get(), ds.data(), static_cast<int>(ds.size())), "durations");
    }
    if (sync_duration > 0) {
      lsrp_instance* synced = nullptr;
      check(lsrp_instance_with_uniform_duration(inst.get(), sync_duration, &synced), "sync duration");
      inst.reset(synced);
    } else if (sync_duration < 0) {
      throw CliError{"--sync-duration must be positive"};
    }
    return inst;
  }
};

struct SolveArgs {
  InstanceSource source;
  std::string planner = "lsrp";
  std::optional<std::uint64_t> seed;
  double timeout = 30.0;
  std::uint64_t iteration_cap = 0;
  std::string priorities;
  std::string out;
  bool with_timing = false;
  std::string tie_break = "vertex-id";
};

int exit_code(lsrp_status s) {
  switch (s) {
    case LSRP_SOLVED: return kExitSolved;
    case LSRP_TIMEOUT:
    case LSRP_ITERATION_CAP: return kExitUnsolved;
    case LSRP_FAILURE: return kExitFailure;
  }
  return kExitFailure;
}

int cmd_solve(const SolveArgs& a) {
  const std::uint64_t seed = a.seed.value_or(default_seed());
  InstancePtr inst = a.source.load(seed);
  lsrp_solve_options opts;
  lsrp_solve_options_init(&opts);
  check(lsrp_planner_from_name(a.planner.c_str(), &opts.planner), "planner");
  opts.time_limit_s = a.timeout;
  opts.iteration_cap = a.iteration_cap;
  opts.seed = seed;
  opts.tie_break = a.tie_break == "seeded" ? LSRP_TIE_SEEDED : LSRP_TIE_VERTEX_ID;
  std::vector<double> pr;
  if (!a.priorities.empty()) {
    pr = parse_list(a.priorities, "priority");
    opts.priorities = pr.data();
    opts.priority_count = static_cast<int>(pr.size());
  }
  lsrp_solution* raw = nullptr;
  check(lsrp_solve(inst.get(), &opts, &raw), "solve");
  SolutionPtr sol(raw);
  char* json = nullptr;
  check(lsrp_solution_to_json(sol.get(), a.with_timing ? 1 : 0, &json), "serialize");
  std::string text = take_string(json);
  const lsrp_status st = lsrp_solution_status(sol.get());
  std::ostringstream line;
  line << "status=" << lsrp_status_name(st) << " soc=" << fmt3(lsrp_solution_soc(sol.get()))
       << " makespan=" << fmt3(lsrp_solution_makespan(sol.get())) << " iterations=" << lsrp_solution_iterations(sol.get())
       << " wall_ms=" << fmt3(lsrp_solution_wall_ms(sol.get()));
  if (a.out.empty()) {
    std::cout << text;
    std::cerr << line.str() << "\n";
  } else {
    write_file(a.out, text);
    std::cout << line.str() << "\n";
  }
  return exit_code(st);
}

struct ValidateArgs {
  InstanceSource source;
  std::optional<std::uint64_t> seed;
  std::string solution;
};

int cmd_validate(const ValidateArgs& a) {
  InstancePtr inst = a.source.load(a.seed.value_or(default_seed()));
  std::string text = read_file(a.solution);
  lsrp_solution* raw = nullptr;
  check(lsrp_solution_parse(text.c_str(), inst.get(), &raw), "reading " + a.solution);
  SolutionPtr sol(raw);
  if (lsrp_solution_status(sol.get()) != LSRP_SOLVED)
    throw CliError{std::string("solution status is ") + lsrp_status_name(lsrp_solution_status(sol.get())) +
                   "; only solved solutions can be validated"};
  lsrp_validation v{};
  char* report = nullptr;
  check(lsrp_validate(sol.get(), inst.get(), &v, &report), "validate");
  std::string lines = take_string(report);
  if (v.ok) {
    std::cout << "ok soc=" << fmt3(v.soc) << " makespan=" << fmt3(v.makespan) << "\n";
    return 0;
  }
  std::cout << lines << v.violation_count << " violation(s)\n";
  return 1;
}

struct GenArgs {
  InstanceSource source;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  if (!a.source.instance.empty()) throw CliError{"gen builds instances; --instance is not accepted"};
  InstancePtr inst = a.source.load(a.seed.value_or(default_seed()));
  char* json = nullptr;
  check(lsrp_instance_to_json(inst.get(), &json), "serialize");
  std::string text = take_string(json);
  if (a.out.empty()) std::cout << text;
  else write_file(a.out, text);
  return 0;
}

// ---- bench ----

struct BenchArgs {
  std::vector<std::string> maps;
  std::vector<std::string> grids;
  std::string scen;
  std::string agents = "10,25,50";
  int seeds = 25;
  std::optional<std::uint64_t> seed_base;
  std::string planners = "lsrp,lsrp-swap,sipp-prio";
  std::string baseline = "sipp-prio";
  double timeout = 30.0;
  int jobs = 0;
  std::string csv;
  double sync_duration = 0.0;
  std::string tie_break = "vertex-id";
};

struct BenchRecord {
  std::string instance;
  std::string map;
  int n = 0;
  std::string planner;
  std::uint64_t seed = 0;
  std::string durations;
  std::string status;
  double soc = 0, makespan = 0, wall_ms = 0;
  std::uint64_t iterations = 0;
  bool valid = true;
  bool solved() const { return status == "solved"; }
};

struct BenchJob {
  std::shared_ptr<lsrp_instance> inst;
  BenchRecord rec;
  lsrp_planner planner;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string base_name(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string b = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = b.rfind('.');
  return dot == std::string::npos ? b : b.substr(0, dot);
}

int cmd_bench(const BenchArgs& a) {
  const std::uint64_t base = a.seed_base.value_or(default_seed());
  std::vector<int> ns;
  for (double x : parse_list(a.agents, "agent count")) ns.push_back(static_cast<int>(x));
  std::vector<std::string> planner_names;
  {
    std::stringstream ss(a.planners);
    std::string p;
    while (std::getline(ss, p, ',')) {
      lsrp_planner tmp;
      check(lsrp_planner_from_name(p.c_str(), &tmp), "planner");
      planner_names.push_back(p);
    }
  }
  if (a.maps.empty() && a.grids.empty()) throw CliError{"bench needs at least one --map or --grid"};
  if (!a.scen.empty() && a.maps.size() != 1) throw CliError{"--scen pairs with exactly one --map"};
  if (a.seeds <= 0) throw CliError{"--seeds must be positive"};

  std::vector<BenchJob> jobs;
  auto add_instances = [&](const std::string& label, const std::string& map_path, int w, int h) {
    for (int n : ns)
      for (int s = 0; s < a.seeds; ++s) {
        const std::uint64_t seed = base + static_cast<std::uint64_t>(s);
        lsrp_instance* raw = nullptr;
        lsrp_error e = !a.scen.empty()
                           ? lsrp_instance_from_benchmark(map_path.c_str(), a.scen.c_str(), n, seed, &raw)
                           : lsrp_instance_random(map_path.empty() ? nullptr : map_path.c_str(), w, h, n, seed, &raw);
        check(e, "instance " + label + " n=" + std::to_string(n));
        std::shared_ptr<lsrp_instance> hetero(raw, lsrp_instance_free);
        std::vector<std::pair<std::string, std::shared_ptr<lsrp_instance>>> variants{{"hetero", hetero}};
        if (a.sync_duration > 0) {
          lsrp_instance* synced = nullptr;
          check(lsrp_instance_with_uniform_duration(hetero.get(), a.sync_duration, &synced), "sync duration");
          variants.emplace_back("sync", std::shared_ptr<lsrp_instance>(synced, lsrp_instance_free));
        }
        const std::string id = label + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
        for (const auto& [mode, inst] : variants)
          for (const auto& p : planner_names) {
            BenchJob job;
            job.inst = inst;
            lsrp_planner_from_name(p.c_str(), &job.planner);
            job.rec.instance = id;
            job.rec.map = label;
            job.rec.n = n;
            job.rec.planner = p;
            job.rec.seed = seed;
            job.rec.durations = mode;
            jobs.push_back(std::move(job));
          }
      }
  };
  for (const auto& m : a.maps) add_instances(base_name(m), m, 0, 0);
  for (const auto& g : a.grids) {
    auto [w, h] = parse_grid(g);
    add_instances("grid" + g, "", w, h);
  }

  std::ofstream csv_file;
  std::ostream* csv = nullptr;
  if (!a.csv.empty()) {
    csv_file.open(a.csv, std::ios::binary);
    if (!csv_file) throw CliError{"cannot write " + a.csv};
    csv = &csv_file;
    *csv << "instance,map,n,planner,seed,durations,status,soc,makespan,wall_ms,iterations,valid\n";
  }

  std::vector<std::optional<BenchRecord>> done(jobs.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      BenchJob& job = jobs[k];
      BenchRecord rec = job.rec;
      lsrp_solve_options opts;
      lsrp_solve_options_init(&opts);
      opts.planner = job.planner;
      opts.time_limit_s = a.timeout;
      opts.seed = rec.seed;
      opts.tie_break = a.tie_break == "seeded" ? LSRP_TIE_SEEDED : LSRP_TIE_VERTEX_ID;
      lsrp_solution* raw = nullptr;
      if (lsrp_solve(job.inst.get(), &opts, &raw) != LSRP_OK) {
        rec.status = "failure";
      } else {
        SolutionPtr sol(raw);
        lsrp_status st = lsrp_solution_status(sol.get());
        rec.status = lsrp_status_name(st);
        rec.wall_ms = lsrp_solution_wall_ms(sol.get());
        rec.iterations = lsrp_solution_iterations(sol.get());
        if (st == LSRP_SOLVED) {
          rec.soc = lsrp_solution_soc(sol.get());
          rec.makespan = lsrp_solution_makespan(sol.get());
          lsrp_validation v{};
          rec.valid = lsrp_validate(sol.get(), job.inst.get(), &v, nullptr) == LSRP_OK && v.ok;
        }
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        done[k] = std::move(rec);
      }
      cv.notify_one();
    }
  };
  int threads = a.jobs > 0 ? a.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);

  std::vector<BenchRecord> records;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return done[k].has_value(); });
    BenchRecord r = std::move(*done[k]);
    lock.unlock();
    if (csv)
      *csv << r.instance << ',' << r.map << ',' << r.n << ',' << r.planner << ',' << r.seed << ',' << r.durations << ','
           << r.status << ',' << (r.solved() ? fmt3(r.soc) : "") << ',' << (r.solved() ? fmt3(r.makespan) : "")
           << ',' << fmt3(r.wall_ms) << ',' << r.iterations << ',' << (r.solved() ? (r.valid ? "1" : "0") : "")
           << '\n';
    records.push_back(std::move(r));
  }
  for (auto& t : pool) t.join();

  // success rates
  std::cout << "# success rate\nmap,n,planner,durations,solved,total,rate,median_wall_ms\n";
  std::map<std::tuple<std::string, int, std::string, std::string>, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) groups[{r.map, r.n, r.planner, r.durations}].push_back(&r);
  for (const auto& [key, rs] : groups) {
    int solved = 0;
    std::vector<double> wall;
    for (const auto* r : rs) {
      solved += r->status == "solved";
      wall.push_back(r->wall_ms);
    }
    std::cout << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << std::get<3>(key)
              << ',' << solved << ',' << rs.size() << ',' << fmt3(static_cast<double>(solved) / rs.size()) << ','
              << fmt3(median(wall)) << '\n';
  }

  // ratios over instances solved by both planners
  std::map<std::tuple<std::string, std::string, std::string>, const BenchRecord*> by_run;
  for (const auto& r : records) by_run[{r.instance, r.planner, r.durations}] = &r;
  auto solved_run = [&](const std::string& inst, const std::string& p, const std::string& mode) -> const BenchRecord* {
    auto it = by_run.find({inst, p, mode});
    return it != by_run.end() && it->second->status == "solved" ? it->second : nullptr;
  };
  if (std::find(planner_names.begin(), planner_names.end(), a.baseline) != planner_names.end()) {
    std::cout << "# ratio vs " << a.baseline << " over co-solved instances\nmap,n,planner,durations,co_solved,median_soc_ratio,median_makespan_ratio\n";
    std::map<std::tuple<std::string, int, std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> ratios;
    for (const auto& r : records) {
      if (r.planner == a.baseline || r.status != "solved") continue;
      const BenchRecord* b = solved_run(r.instance, a.baseline, r.durations);
      if (!b || b->soc <= 0 || b->makespan <= 0) continue;
      auto& slot = ratios[{r.map, r.n, r.planner, r.durations}];
      slot.first.push_back(r.soc / b->soc);
      slot.second.push_back(r.makespan / b->makespan);
    }
    for (const auto& [key, v] : ratios)
      std::cout << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << std::get<3>(key)
                << ',' << v.first.size() << ',' << fmt3(median(v.first)) << ',' << fmt3(median(v.second)) << '\n';
  }
  if (a.sync_duration > 0) {
    std::cout << "# makespan ratio hetero / sync over co-solved instances\nmap,n,planner,co_solved,median_makespan_ratio\n";
    std::map<std::tuple<std::string, int, std::string>, std::vector<double>> ratios;
    for (const auto& r : records) {
      if (r.durations != "hetero" || r.status != "solved") continue;
      const BenchRecord* s = solved_run(r.instance, r.planner, "sync");
      if (!s || s->makespan <= 0) continue;
      ratios[{r.map, r.n, r.planner}].push_back(r.makespan / s->makespan);
    }
    for (const auto& [key, v] : ratios)
      std::cout << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ',' << v.size() << ','
                << fmt3(median(v)) << '\n';
  }
  bool all_valid = std::all_of(records.begin(), records.end(), [](const BenchRecord& r) { return r.valid; });
  if (!all_valid) std::cerr << "warning: some solved runs failed validation\n";
  return all_valid ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent path finding with asynchronous actions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lsrp_version());

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "solve one instance and write the solution JSON");
  solve.source.add_to(s);
  s->add_option("--planner", solve.planner, "lsrp, lsrp-swap, sipp-prio or oracle")
      ->check(CLI::IsMember({"lsrp", "lsrp-swap", "sipp-prio", "oracle"}));
  s->add_option("--seed", solve.seed, "priority seed (default: $LSRP_SEED or 0)");
  s->add_option("--timeout", solve.timeout, "time limit in seconds")->check(CLI::PositiveNumber);
  s->add_option("--iteration-cap", solve.iteration_cap, "main-loop iteration cap (0: default)");
  s->add_option("--priorities", solve.priorities, "initial priorities, comma separated");
  s->add_option("-o,--out", solve.out, "solution file (default: stdout)");
  s->add_option("--tie-break", solve.tie_break, "order of equally distant candidates: vertex-id or seeded")
      ->check(CLI::IsMember({"vertex-id", "seeded"}));
  s->add_flag("--with-timing", solve.with_timing, "include wall_ms in the solution file");

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "check a solution against its instance");
  validate.source.add_to(v);
  v->add_option("--seed", validate.seed, "seed used when the instance was generated");
  v->add_option("--solution", validate.solution, "solution JSON")->required();

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a native instance file");
  gen.source.add_to(g);
  g->add_option("--seed", gen.seed, "seed for starts, goals and durations (default: $LSRP_SEED or 0)");
  g->add_option("-o,--out", gen.out, "instance file (default: stdout)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "run planners over a sweep of instances");
  b->add_option("--map", bench.maps, "MovingAI .map file (repeatable)");
  b->add_option("--grid", bench.grids, "open grid WxH (repeatable)");
  b->add_option("--scen", bench.scen, "take starts and goals from this .scen instead of sampling");
  b->add_option("--agents", bench.agents, "agent counts, comma separated");
  b->add_option("--seeds", bench.seeds, "instances per (map, n)");
  b->add_option("--seed-base", bench.seed_base, "first seed (default: $LSRP_SEED or 0)");
  b->add_option("--planners", bench.planners, "planners, comma separated");
  b->add_option("--baseline", bench.baseline, "reference planner for ratio tables");
  b->add_option("--timeout", bench.timeout, "time limit per run in seconds")->check(CLI::PositiveNumber);
  b->add_option("-j,--jobs", bench.jobs, "worker threads (default: hardware concurrency)");
  b->add_option("--csv", bench.csv, "per-run records");
  b->add_option("--tie-break", bench.tie_break, "order of equally distant candidates: vertex-id or seeded")
      ->check(CLI::IsMember({"vertex-id", "seeded"}));
  b->add_option("--sync-duration", bench.sync_duration, "also run every instance with this uniform duration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*v) return cmd_validate(validate);
    if (*g) return cmd_gen(gen);
    if (*b) return cmd_bench(bench);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
