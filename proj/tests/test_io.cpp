#include <doctest.h>

#include <filesystem>
#include <json.hpp>

#include "lsrp/io.hpp"
#include "lsrp/planner.hpp"
#include "lsrp/validator.hpp"
#include "support.hpp"

using namespace lsrp;

namespace {
const std::filesystem::path kData = LSRP_DATA_DIR;

std::string with(std::string base, const std::string& from, const std::string& to) {
  auto at = base.find(from);
  REQUIRE(at != std::string::npos);
  return base.replace(at, from.size(), to);
}

const char* kEdges = R"({
  "schema": "lsrp-instance/1",
  "graph": {"type": "edges", "vertices": ["A", "B", "C"], "edges": [["A", "B"], ["B", "C"]]},
  "starts": ["A"],
  "goals": ["C"],
  "durations": [2]
})";
}  // namespace

TEST_CASE("bundled toy instances load") {
  auto f = load_instance_file(kData / "toy.json");
  CHECK(f.name == "toy");
  CHECK(f.instance.agent_count() == 3);
  CHECK(f.instance.g().size() == 5);
  CHECK(f.priorities == std::vector<double>{0.99, 0.66, 0.33});
  CHECK(f.instance.duration(2, 1, 2) == Duration::from_units(3));
  auto t = load_instance_file(kData / "swap_tree.json");
  CHECK(t.instance.agent_count() == 2);
  CHECK(t.instance.g().edge_count() == 5);
}

TEST_CASE("instance round trip through JSON") {
  auto f = load_instance_file(kData / "toy.json");
  std::string text = write_instance_json(f);
  auto back = parse_instance_json(text);
  CHECK(back.instance.starts == f.instance.starts);
  CHECK(back.instance.goals == f.instance.goals);
  CHECK(back.instance.g().edges() == f.instance.g().edges());
  CHECK(back.instance.g().names() == f.instance.g().names());
  CHECK(back.priorities == f.priorities);
  CHECK(write_instance_json(back) == text);

  InstanceFile grid{random_instance(testing::open_grid(6, 5), 7, 3), "g", {}, 3};
  text = write_instance_json(grid);
  back = parse_instance_json(text);
  CHECK(back.instance.starts == grid.instance.starts);
  CHECK(back.duration_seed == std::optional<std::uint64_t>{3});
  for (AgentId i = 0; i < 7; ++i)
    CHECK(back.instance.durations.agent_default(i) == grid.instance.durations.agent_default(i));
  CHECK(write_instance_json(back) == text);
}

TEST_CASE("duration formats") {
  auto f = parse_instance_json(with(kEdges, "[2]", "[1.25]"));
  CHECK(f.instance.durations.agent_default(0).ticks() == 1250);
  f = parse_instance_json(with(kEdges, "[2]", "[\"0.001\"]"));
  CHECK(f.instance.durations.agent_default(0).ticks() == 1);
  f = parse_instance_json(with(kEdges, "[2]", "{\"seed\": 9}"));
  CHECK(f.instance.durations.agent_default(0) == sample_durations(1, 9)[0]);
  f = parse_instance_json(with(kEdges, "\"durations\": [2]",
                               "\"durations\": [2], \"duration_table\": [{\"agent\": 0, \"from\": \"B\", "
                               "\"to\": \"C\", \"duration\": 5}]"));
  CHECK(f.instance.duration(0, 1, 2) == Duration::from_units(5));
  CHECK(f.instance.duration(0, 2, 1) == Duration::from_units(2));
  auto again = parse_instance_json(write_instance_json(f));
  CHECK(again.instance.duration(0, 1, 2) == Duration::from_units(5));
}

TEST_CASE("grid instances with map text and map files") {
  const std::string map = "type octile\nheight 2\nwidth 3\nmap\n...\n.@.\n";
  auto dir = std::filesystem::temp_directory_path() / "lsrp_io_test";
  std::filesystem::create_directories(dir);
  write_text_file(dir / "m.map", map);
  const std::string body = R"("starts": [[0, 0]], "goals": [[1, 2]], "durations": [1]})";
  auto a = parse_instance_json(R"({"graph": {"type": "grid", "map_file": "m.map"}, )" + body, dir);
  CHECK(a.instance.g().size() == 5);
  CHECK(a.instance.goals[0] == a.instance.g().grid_info()->id(1, 2));
  nlohmann::json inline_map = {{"type", "grid"}, {"map", map}};
  auto b = parse_instance_json("{\"graph\": " + inline_map.dump() + ", " + body);
  CHECK(b.instance.g().edges() == a.instance.g().edges());
  CHECK_THROWS_AS(parse_instance_json(R"({"graph": {"type": "grid", "map_file": "missing.map"}, )" + body, dir),
                  FormatError);
  CHECK_THROWS_AS(parse_instance_json(R"({"graph": {"type": "grid", "map_file": "m.map"}, "starts": [[1, 1]], )"
                                      R"("goals": [[1, 2]], "durations": [1]})",
                                      dir),
                  FormatError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed instances are rejected") {
  CHECK_THROWS_AS(parse_instance_json("{"), FormatError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "lsrp-instance/1", "lsrp-instance/9")), FormatError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "\"edges\", ", "\"hyper\", ")), FormatError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "[\"C\"]", "[\"Z\"]")), FormatError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "[2]", "[0]")), FormatError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "[2]", "[-1.5]")), FormatError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "[2]", "[2, 3]")), InstanceError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "[2]", "{}")), FormatError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "[\"C\"]", "[\"C\", \"B\"]")), InstanceError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "[\"B\", \"C\"]]", "[\"B\", \"B\"]]")), FormatError);
  CHECK_THROWS_AS(parse_instance_json(with(kEdges, "\"starts\"", "\"origins\"")), FormatError);
}

TEST_CASE("solution round trip and reproducible bytes") {
  Instance in = testing::toy_instance();
  PlannerConfig c;
  c.priorities = {0.99, 0.66, 0.33};
  Solution s = lsrp_solve(in, c);
  std::string text = write_solution_json(s, "lsrp");
  CHECK(text.find("wall_ms") == std::string::npos);
  CHECK(text.find("\"arrive\": 6.000") != std::string::npos);
  CHECK(write_solution_json(lsrp_solve(in, c), "lsrp") == text);
  auto back = parse_solution_json(text, in.g());
  CHECK(back.planner == "lsrp");
  CHECK(back.solution.status == Status::solved);
  CHECK(back.solution.paths == s.paths);
  CHECK(back.solution.metrics.soc == Duration::from_units(14));
  CHECK(validate(back.solution, in).ok);
  CHECK(write_solution_json(s, "lsrp", true).find("\"wall_ms\": ") != std::string::npos);

  Solution failed;
  failed.status = Status::iteration_cap;
  auto f = parse_solution_json(write_solution_json(failed, "lsrp-swap"), in.g());
  CHECK(f.solution.status == Status::iteration_cap);
  CHECK(f.solution.paths.empty());
}

TEST_CASE("malformed solutions are rejected") {
  Instance in = testing::toy_instance();
  CHECK_THROWS_AS(parse_solution_json("[", in.g()), FormatError);
  CHECK_THROWS_AS(parse_solution_json(R"({"status": "great", "paths": []})", in.g()), FormatError);
  CHECK_THROWS_AS(parse_solution_json(R"({"status": "solved"})", in.g()), FormatError);
  CHECK_THROWS_AS(parse_solution_json(R"({"status": "solved", "paths": [[{"v": 9, "arrive": 0, "depart": 0}]]})",
                                      in.g()),
                  FormatError);
  CHECK_THROWS_AS(parse_solution_json(R"({"schema": "other/1", "status": "solved", "paths": []})", in.g()),
                  FormatError);
}

TEST_CASE("benchmark instances from map and scen text") {
  const std::string map = "type octile\nheight 3\nwidth 3\nmap\n...\n.@.\n...\n";
  const std::string scen = "version 1\n0\tm.map\t3\t3\t0\t0\t2\t2\t2.8\n0\tm.map\t3\t3\t2\t0\t0\t2\t2.8\n";
  Instance in = instance_from_benchmark(map, scen, 2, {Duration::from_units(1), Duration::from_units(2)});
  const auto& grid = *in.g().grid_info();
  CHECK(in.starts == std::vector<VertexId>{grid.id(0, 0), grid.id(0, 2)});
  CHECK(in.goals == std::vector<VertexId>{grid.id(2, 2), grid.id(2, 0)});
  CHECK_THROWS(instance_from_benchmark(map, scen, 3, {}));
}
