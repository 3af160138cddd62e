#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsrp/instance.hpp"
#include "lsrp/solution.hpp"

namespace lsrp {

inline constexpr std::string_view kInstanceSchema = "lsrp-instance/1";
inline constexpr std::string_view kSolutionSchema = "lsrp-solution/1";

// Instance plus the optional planner hints a native file may carry.
struct InstanceFile {
  Instance instance;
  std::string name;
  std::vector<double> priorities;
  std::optional<std::uint64_t> duration_seed;
};

// Native instance JSON. Relative map_file paths resolve against base_dir.
// Throws FormatError / InstanceError.
InstanceFile parse_instance_json(std::string_view text, const std::filesystem::path& base_dir = {});
InstanceFile load_instance_file(const std::filesystem::path& path);
std::string write_instance_json(const InstanceFile& file);

// Instance from a MovingAI map and the first n scen rows.
Instance instance_from_benchmark(std::string_view map_text, std::string_view scen_text, int n,
                                 std::vector<Duration> durations);

struct SolutionFile {
  Solution solution;
  std::string planner;
};

// Times always carry three decimals. wall_ms is emitted only on request so
// the file itself stays reproducible.
std::string write_solution_json(const Solution& sol, std::string_view planner, bool include_timing = false);
SolutionFile parse_solution_json(std::string_view text, const Graph& g);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lsrp
