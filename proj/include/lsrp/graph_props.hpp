#pragma once

#include <cstdint>

#include "lsrp/graph.hpp"

namespace lsrp {

struct DiameterResult {
  int vertices = 0;        // longest shortest path, counted in vertices
  bool connected = true;   // false: value is for the largest component
};

// All-pairs BFS; meant for test-scale graphs (O(|V| * |E|)).
DiameterResult diameter(const Graph& g);

// Cheap upper bound on the diameter (in vertices) for large graphs:
// 2 * eccentricity(v) + 1 from one BFS.
int diameter_upper_bound(const Graph& g);

enum class Tri { no, yes, unknown };

// True iff every edge lies on a simple cycle of at least n + 1 vertices.
// The search is an exhaustive DFS per edge restricted to the edge's
// biconnected block; it gives up with Tri::unknown once more than
// `expansion_budget` DFS steps have been spent overall.
Tri is_c_graph(const Graph& g, int n, std::uint64_t expansion_budget = 20'000'000);

}  // namespace lsrp
