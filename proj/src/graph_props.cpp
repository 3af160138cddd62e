#include "lsrp/graph_props.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "lsrp/dist_table.hpp"

namespace lsrp {

DiameterResult diameter(const Graph& g) {
  DiameterResult out;
  if (g.size() == 0) return out;
  // component sizes, to pick the largest when disconnected
  std::vector<int> comp(g.size(), -1);
  std::vector<int> comp_size;
  for (VertexId s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    auto hops = bfs_hops(g, s);
    int c = static_cast<int>(comp_size.size());
    int count = 0;
    for (VertexId v = 0; v < g.size(); ++v)
      if (hops[v] >= 0) {
        comp[v] = c;
        ++count;
      }
    comp_size.push_back(count);
  }
  out.connected = comp_size.size() == 1;
  int largest = static_cast<int>(std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());
  int best = 0;
  for (VertexId s = 0; s < g.size(); ++s) {
    if (comp[s] != largest) continue;
    auto hops = bfs_hops(g, s);
    for (auto h : hops) best = std::max(best, h);
  }
  out.vertices = best + 1;
  return out;
}

int diameter_upper_bound(const Graph& g) {
  if (g.size() == 0) return 0;
  auto hops = bfs_hops(g, 0);
  int ecc = *std::max_element(hops.begin(), hops.end());
  return 2 * ecc + 1;
}

namespace {

// Biconnected blocks via Tarjan; returns block id per undirected edge.
struct Blocks {
  std::vector<std::vector<int>> edge_block;  // parallel to adjacency lists
  std::vector<int> block_vertices;           // vertex count per block
};

Blocks biconnected_blocks(const Graph& g) {
  const int n = g.size();
  Blocks b;
  b.edge_block.resize(n);
  for (VertexId v = 0; v < n; ++v) b.edge_block[v].assign(g.degree(v), -1);
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<VertexId, int>> edge_stack;  // (u, index in adj[u])
  int timer = 0;

  auto assign_block = [&](VertexId u, int idx) {
    int id = static_cast<int>(b.block_vertices.size());
    std::vector<VertexId> verts;
    while (true) {
      auto [x, k] = edge_stack.back();
      edge_stack.pop_back();
      VertexId y = g.neighbors(x)[k];
      b.edge_block[x][k] = id;
      auto nb = g.neighbors(y);
      int back = static_cast<int>(std::lower_bound(nb.begin(), nb.end(), x) - nb.begin());
      b.edge_block[y][back] = id;
      verts.push_back(x);
      verts.push_back(y);
      if (x == u && k == idx) break;
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    b.block_vertices.push_back(static_cast<int>(verts.size()));
  };

  struct Frame {
    VertexId v;
    VertexId parent;
    int next;
  };
  for (VertexId root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, kNoVertex, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nb = g.neighbors(f.v);
      if (f.next < static_cast<int>(nb.size())) {
        int k = f.next++;
        VertexId w = nb[k];
        if (disc[w] < 0) {
          edge_stack.emplace_back(f.v, k);
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0});
        } else if (w != f.parent && disc[w] < disc[f.v]) {
          edge_stack.emplace_back(f.v, k);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        VertexId v = f.v, p = f.parent;
        stack.pop_back();
        if (p != kNoVertex) {
          low[p] = std::min(low[p], low[v]);
          if (low[v] >= disc[p]) {
            auto pnb = g.neighbors(p);
            int idx = static_cast<int>(std::lower_bound(pnb.begin(), pnb.end(), v) - pnb.begin());
            assign_block(p, idx);
          }
        }
      }
    }
  }
  return b;
}

}  // namespace

Tri is_c_graph(const Graph& g, int n, std::uint64_t expansion_budget) {
  const int need = std::max(n, 2) + 1;  // cycle vertex count
  Blocks blocks = biconnected_blocks(g);
  std::uint64_t spent = 0;
  std::vector<char> on_path(g.size(), 0);

  for (VertexId u = 0; u < g.size(); ++u) {
    auto nb = g.neighbors(u);
    for (int k = 0; k < static_cast<int>(nb.size()); ++k) {
      VertexId v = nb[k];
      if (v < u) continue;
      int block = blocks.edge_block[u][k];
      // a bridge forms its own two-vertex block and lies on no cycle
      if (blocks.block_vertices[block] < need) return Tri::no;

      // DFS for a simple u -> v path, inside the block, avoiding edge (u,v),
      // with at least `need` vertices.
      bool found = false;
      std::function<void(VertexId, int)> dfs = [&](VertexId x, int depth) {
        if (found) return;
        if (++spent > expansion_budget) return;
        auto xs = g.neighbors(x);
        for (int j = 0; j < static_cast<int>(xs.size()) && !found; ++j) {
          VertexId y = xs[j];
          if (blocks.edge_block[x][j] != block) continue;
          if (y == v) {
            if (x != u && depth + 1 >= need) found = true;
            continue;
          }
          if (on_path[y]) continue;
          on_path[y] = 1;
          dfs(y, depth + 1);
          on_path[y] = 0;
        }
      };
      on_path[u] = 1;
      dfs(u, 1);
      on_path[u] = 0;
      if (spent > expansion_budget) return Tri::unknown;
      if (!found) return Tri::no;
    }
  }
  return Tri::yes;
}

}  // namespace lsrp
