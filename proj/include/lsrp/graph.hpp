#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lsrp {

using VertexId = std::int32_t;
using AgentId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;
inline constexpr AgentId kNoAgent = -1;

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GridInfo {
  int width = 0;
  int height = 0;
  std::vector<VertexId> cell_to_id;  // row-major, kNoVertex for blocked cells
  std::vector<std::pair<int, int>> id_to_cell;  // (row, col)

  bool passable(int row, int col) const {
    return row >= 0 && col >= 0 && row < height && col < width &&
           cell_to_id[static_cast<std::size_t>(row) * width + col] != kNoVertex;
  }
  VertexId id(int row, int col) const {
    return passable(row, col) ? cell_to_id[static_cast<std::size_t>(row) * width + col] : kNoVertex;
  }
};

// Undirected graph with dense vertex ids. Neighbor lists are sorted ascending,
// carry no duplicates and no self-loops (waiting is implicit).
class Graph {
public:
  Graph() = default;
  Graph(int vertex_count, std::span<const std::pair<VertexId, VertexId>> edges);

  static Graph grid(int width, int height, const std::vector<bool>& passable);

  int size() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }
  int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(VertexId u, VertexId v) const;
  bool valid(VertexId v) const { return v >= 0 && v < size(); }

  const std::optional<GridInfo>& grid_info() const { return grid_; }

  // Optional human-readable labels (edge-list graphs such as the toy examples).
  void set_names(std::vector<std::string> names);
  const std::vector<std::string>& names() const { return names_; }
  std::string name(VertexId v) const;
  VertexId find(std::string_view name) const;

  std::vector<std::pair<VertexId, VertexId>> edges() const;

private:
  std::vector<std::vector<VertexId>> adj_;
  std::size_t edge_count_ = 0;
  std::optional<GridInfo> grid_;
  std::vector<std::string> names_;
};

// MovingAI .map reader: '.' and 'G' passable; '@', 'T', 'O' blocked (also
// 'S' and 'W' per the benchmark's published legend). 4-connected.
Graph parse_map(std::string_view text);
// Inverse of parse_map on the passable mask ('.' / '@').
std::string render_map(const Graph& g);

}  // namespace lsrp
