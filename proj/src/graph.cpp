#include "lsrp/graph.hpp"

#include <algorithm>
#include <sstream>

namespace lsrp {

Graph::Graph(int vertex_count, std::span<const std::pair<VertexId, VertexId>> edges)
    : adj_(static_cast<std::size_t>(vertex_count)) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw FormatError("edge endpoint out of range");
    if (u == v) continue;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    edge_count_ += nb.size();
  }
  edge_count_ /= 2;
}

Graph Graph::grid(int width, int height, const std::vector<bool>& passable) {
  GridInfo info;
  info.width = width;
  info.height = height;
  info.cell_to_id.assign(static_cast<std::size_t>(width) * height, kNoVertex);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      if (passable[static_cast<std::size_t>(r) * width + c]) {
        info.cell_to_id[static_cast<std::size_t>(r) * width + c] = static_cast<VertexId>(info.id_to_cell.size());
        info.id_to_cell.emplace_back(r, c);
      }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) {
      VertexId u = info.id(r, c);
      if (u == kNoVertex) continue;
      if (VertexId v = info.id(r, c + 1); v != kNoVertex) edges.emplace_back(u, v);
      if (VertexId v = info.id(r + 1, c); v != kNoVertex) edges.emplace_back(u, v);
    }
  Graph g(static_cast<int>(info.id_to_cell.size()), edges);
  g.grid_ = std::move(info);
  return g;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

void Graph::set_names(std::vector<std::string> names) {
  if (!names.empty() && static_cast<int>(names.size()) != size())
    throw FormatError("vertex name count does not match vertex count");
  names_ = std::move(names);
}

std::string Graph::name(VertexId v) const {
  if (!names_.empty()) return names_[v];
  if (grid_) {
    auto [r, c] = grid_->id_to_cell[v];
    return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
  }
  return std::to_string(v);
}

VertexId Graph::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? kNoVertex : static_cast<VertexId>(it - names_.begin());
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId u = 0; u < size(); ++u)
    for (VertexId v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

bool passable_char(char c) {
  switch (c) {
    case '.': case 'G': return true;
    case '@': case 'T': case 'O': case 'S': case 'W': return false;
    default: throw FormatError(std::string("unknown map character '") + c + "'");
  }
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

Graph parse_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int width = -1, height = -1;
  bool saw_type = false;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "type") {
      saw_type = true;
    } else if (key == "height") {
      if (!(ls >> height) || height <= 0) throw FormatError("bad map height");
    } else if (key == "width") {
      if (!(ls >> width) || width <= 0) throw FormatError("bad map width");
    } else if (key == "map") {
      break;
    } else {
      throw FormatError("unexpected map header line: " + line);
    }
  }
  if (!saw_type || width < 0 || height < 0) throw FormatError("malformed map header");

  std::vector<bool> mask;
  mask.reserve(static_cast<std::size_t>(width) * height);
  int rows = 0;
  while (rows < height && std::getline(in, line)) {
    line = strip_cr(line);
    if (static_cast<int>(line.size()) != width)
      throw FormatError("map row " + std::to_string(rows) + " has length " + std::to_string(line.size()) +
                        ", expected " + std::to_string(width));
    for (char c : line) mask.push_back(passable_char(c));
    ++rows;
  }
  if (rows != height) throw FormatError("map has fewer rows than its height");
  while (std::getline(in, line))
    if (!strip_cr(line).empty()) throw FormatError("map has more rows than its height");

  Graph g = Graph::grid(width, height, mask);
  if (g.size() == 0) throw FormatError("map has no passable cells");
  return g;
}

std::string render_map(const Graph& g) {
  if (!g.grid_info()) throw FormatError("render_map requires a grid graph");
  const auto& info = *g.grid_info();
  std::string out = "type octile\nheight " + std::to_string(info.height) + "\nwidth " +
                    std::to_string(info.width) + "\nmap\n";
  for (int r = 0; r < info.height; ++r) {
    for (int c = 0; c < info.width; ++c) out += info.passable(r, c) ? '.' : '@';
    out += '\n';
  }
  return out;
}

}  // namespace lsrp
