#include <doctest.h>

#include <random>

#include "lsrp/dist_table.hpp"
#include "lsrp/graph.hpp"
#include "lsrp/graph_props.hpp"
#include "lsrp/instance.hpp"
#include "support.hpp"

using namespace lsrp;

namespace {

std::string map_text(int w, int h, const std::vector<std::string>& rows) {
  std::string s = "type octile\nheight " + std::to_string(h) + "\nwidth " + std::to_string(w) + "\nmap\n";
  for (const auto& r : rows) s += r + "\n";
  return s;
}

std::vector<std::string> random_rows(int w, int h, double density, std::mt19937_64& rng) {
  std::vector<std::string> rows(h, std::string(w, '.'));
  for (auto& r : rows)
    for (auto& c : r)
      if (static_cast<double>(rng() % 1000) / 1000.0 < density) c = "@TO"[rng() % 3];
  rows[0][0] = '.';
  return rows;
}

}  // namespace

TEST_CASE("map parsing") {
  Graph g = parse_map(map_text(4, 3, {"..@.", ".T..", "G..O"}));
  CHECK(g.size() == 9);
  REQUIRE(g.grid_info());
  const auto& info = *g.grid_info();
  CHECK(info.id(0, 2) == kNoVertex);
  CHECK(info.id(2, 0) != kNoVertex);  // 'G' is passable
  CHECK(g.adjacent(info.id(0, 0), info.id(0, 1)));
  CHECK(g.adjacent(info.id(0, 0), info.id(1, 0)));
  CHECK_FALSE(g.adjacent(info.id(0, 0), info.id(1, 1)));  // no diagonals

  CHECK_THROWS_AS(parse_map("type octile\nheight 2\nwidth 2\nmap\n..\n"), FormatError);
  CHECK_THROWS_AS(parse_map("type octile\nheight 1\nwidth 2\nmap\n...\n"), FormatError);
  CHECK_THROWS_AS(parse_map("type octile\nheight 1\nwidth 2\nmap\n@@\n"), FormatError);
  CHECK_THROWS_AS(parse_map("height 1\nwidth 2\n..\n"), FormatError);
}

TEST_CASE("grid edge count matches a brute-force neighbor count") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int w = 1 + static_cast<int>(rng() % 12), h = 1 + static_cast<int>(rng() % 12);
    auto rows = random_rows(w, h, 0.3, rng);
    Graph g = parse_map(map_text(w, h, rows));
    std::size_t expected = 0;
    auto free = [&](int r, int c) { return r >= 0 && c >= 0 && r < h && c < w && rows[r][c] == '.'; };
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        if (free(r, c)) expected += free(r, c + 1) + free(r + 1, c);
    CHECK(g.edge_count() == expected);
    CHECK(parse_map(render_map(g)).edge_count() == expected);
    CHECK(render_map(parse_map(render_map(g))) == render_map(g));
  }
}

TEST_CASE("edge-list graphs drop duplicates and self loops") {
  std::vector<std::pair<VertexId, VertexId>> e{{0, 1}, {1, 0}, {1, 2}, {2, 2}};
  Graph g(3, e);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK_FALSE(g.adjacent(2, 2));
}

TEST_CASE("scen parsing") {
  Graph g = parse_map(map_text(4, 2, {"....", ".@.."}));
  std::string scen =
      "version 1\n"
      "0\tm.map\t4\t2\t0\t0\t3\t1\t4.0\n"
      "0\tm.map\t4\t2\t3\t0\t0\t1\t4.0\n";
  ScenRows r = parse_scen(scen, 2, g);
  const auto& info = *g.grid_info();
  CHECK(r.starts[0] == info.id(0, 0));
  CHECK(r.goals[0] == info.id(1, 3));  // x is the column, y the row
  CHECK(r.starts[1] == info.id(0, 3));
  CHECK(count_scen_rows(scen) == 2);
  CHECK_THROWS_AS(parse_scen(scen, 3, g), FormatError);
  CHECK_THROWS_AS(parse_scen("version 1\n0\tm.map\t4\t2\t1\t1\t0\t0\t1\n", 1, g), FormatError);  // blocked
  CHECK_THROWS_AS(parse_scen("version 1\n0\tm.map\t5\t2\t0\t0\t0\t0\t1\n", 1, g), FormatError);  // size
}

TEST_CASE("duration sampling is seeded and within 1..5") {
  auto a = sample_durations(50, 3), b = sample_durations(50, 3), c = sample_durations(50, 4);
  CHECK(a == b);
  CHECK(a != c);
  for (auto d : a) CHECK((d >= Duration::from_units(1) && d <= Duration::from_units(5)));
  for (auto d : a) CHECK(d.ticks() % 1000 == 0);
}

TEST_CASE("instance checks") {
  auto g = testing::open_grid(3, 3);
  CHECK_NOTHROW(check_instance(testing::make_instance(g, {0, 1}, {2, 3}, {1, 2})));
  CHECK_THROWS_AS(check_instance(testing::make_instance(g, {0, 0}, {2, 3}, {1, 2})), InstanceError);
  CHECK_THROWS_AS(check_instance(testing::make_instance(g, {0, 1}, {2, 2}, {1, 2})), InstanceError);
  CHECK_THROWS_AS(check_instance(testing::make_instance(g, {0, 1}, {2, 9}, {1, 2})), InstanceError);
  CHECK_THROWS_AS(check_instance(testing::make_instance(g, {0, 1}, {2, 3}, {1})), InstanceError);
  CHECK_THROWS_AS(check_instance(testing::make_instance(g, {0, 1}, {2, 3}, {1, 0})), InstanceError);

  std::vector<std::pair<VertexId, VertexId>> e{{0, 1}, {2, 3}};
  auto split = std::make_shared<Graph>(4, e);
  CHECK(goals_reachable(testing::make_instance(split, {0}, {1}, {1})));
  CHECK_FALSE(goals_reachable(testing::make_instance(split, {0}, {3}, {1})));
}

TEST_CASE("random instances are seeded, distinct and connected") {
  auto g = testing::open_grid(8, 8);
  Instance a = random_instance(g, 20, 5), b = random_instance(g, 20, 5);
  CHECK(a.starts == b.starts);
  CHECK(a.goals == b.goals);
  CHECK_NOTHROW(check_instance(a));
  CHECK(goals_reachable(a));
  CHECK_THROWS_AS(random_instance(g, 65, 1), InstanceError);
}

TEST_CASE("distance tables agree with Floyd-Warshall and Dijkstra") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    int w = 3 + static_cast<int>(rng() % 6), h = 3 + static_cast<int>(rng() % 6);
    auto rows = random_rows(w, h, 0.25, rng);
    auto g = std::make_shared<Graph>(parse_map(map_text(w, h, rows)));
    auto fw = testing::floyd_warshall(*g);
    VertexId goal = static_cast<VertexId>(rng() % g->size());
    double unit = 1 + static_cast<double>(rng() % 5);
    Instance in = testing::make_instance(g, {goal}, {goal}, {unit});
    DistTable d = dist_table(in, 0);
    for (VertexId v = 0; v < g->size(); ++v) {
      if (fw[v][goal] >= testing::kInf) {
        CHECK_FALSE(d.reachable(v));
      } else {
        CHECK(d.ticks(v) == fw[v][goal] * static_cast<std::int64_t>(unit * 1000));
      }
    }

    // Directed per-edge durations: reverse Dijkstra against the dense oracle.
    Instance t = in;
    t.durations = DurationModel::table({Duration::from_units(2)});
    for (auto [a, b] : g->edges()) {
      t.durations.set(0, a, b, Duration::from_ticks(500 + static_cast<std::int64_t>(rng() % 4000)));
      if (rng() % 2) t.durations.set(0, b, a, Duration::from_ticks(500 + static_cast<std::int64_t>(rng() % 4000)));
    }
    DistTable dt = dist_table(t, 0);
    auto oracle = testing::dijkstra_to_goal(t, 0, goal);
    for (VertexId v = 0; v < g->size(); ++v) {
      if (oracle[v] >= testing::kInf) CHECK_FALSE(dt.reachable(v));
      else CHECK(dt.ticks(v) == oracle[v]);
    }
  }
}

TEST_CASE("distance cache shares per-goal tables") {
  auto g = testing::open_grid(5, 5);
  Instance in = testing::make_instance(g, {0, 1, 2}, {24, 24 - 1, 12}, {1, 3, 2});
  in.goals = {24, 23, 12};
  DistanceCache cache(in);
  CHECK(cache[0].ticks(0) == 8000);
  CHECK(cache[1].ticks(1) == 3 * 6000);
  CHECK(cache[2].ticks(12) == 0);
  CHECK(&cache[0] == &cache[0]);
}

TEST_CASE("diameter matches Floyd-Warshall") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + static_cast<int>(rng() % 12);
    std::vector<std::pair<VertexId, VertexId>> e;
    for (int k = 0; k < n + static_cast<int>(rng() % n); ++k)
      e.emplace_back(static_cast<VertexId>(rng() % n), static_cast<VertexId>(rng() % n));
    for (int k = 1; k < n; ++k)
      if (rng() % 3) e.emplace_back(k - 1, k);
    Graph g(n, e);
    auto fw = testing::floyd_warshall(g);
    auto comp = component_labels(g);
    std::vector<int> size(n, 0);
    for (int c : comp) ++size[c];
    int largest = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
    std::int64_t longest = 0;
    bool connected = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (fw[a][b] >= testing::kInf) connected = false;
        else if (comp[a] == largest) longest = std::max(longest, fw[a][b]);
      }
    DiameterResult r = diameter(g);
    CHECK(r.connected == connected);
    CHECK(r.vertices == longest + 1);
    if (connected) CHECK(diameter_upper_bound(g) >= r.vertices);
  }
}

TEST_CASE("c-graph test agrees with cycle enumeration") {
  std::mt19937_64 rng(9);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + static_cast<int>(rng() % 7);
    std::vector<std::pair<VertexId, VertexId>> e;
    for (int k = 0; k < n; ++k)
      if (rng() % 5) e.emplace_back(k, (k + 1) % n);
    for (int k = 0; k < static_cast<int>(rng() % 4); ++k)
      e.emplace_back(static_cast<VertexId>(rng() % n), static_cast<VertexId>(rng() % n));
    Graph g(n, e);
    int agents = 1 + static_cast<int>(rng() % 5);
    bool expected = true;
    for (auto [a, b] : g.edges())
      if (testing::longest_cycle_through(g, a, b) < agents + 1) expected = false;
    Tri got = is_c_graph(g, agents);
    REQUIRE(got != Tri::unknown);
    CHECK((got == Tri::yes) == expected);
    (expected ? yes : no)++;
  }
  CHECK(yes > 0);
  CHECK(no > 0);
  CHECK(is_c_graph(*testing::open_grid(4, 4), 10) == Tri::yes);
  CHECK(is_c_graph(*testing::swap_tree_instance().graph, 2) == Tri::no);
  CHECK(is_c_graph(*testing::open_grid(4, 4), 20) == Tri::no);  // only 16 vertices
}
