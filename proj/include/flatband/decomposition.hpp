#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "flatband/multigraph.hpp"

namespace flatband {

// Bridges of a multigraph by DFS lowlink over edge ids: only the tree edge
// itself is skipped when revisiting the parent, so a parallel copy acts as a
// back edge and prevents bridge-ness. Self-loops are never bridges.
inline std::set<int> find_bridges(const Multigraph& g) {
  const int n = g.vertex_count();
  std::set<int> bridges;
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;

  auto dfs = [&](auto&& self, int v, int parent_edge) -> void {
    disc[v] = low[v] = timer++;
    for (const auto& [id, other] : g.adjacency(v)) {
      if (id == parent_edge) continue;
      if (other == v) continue;  // self-loop
      if (disc[other] != -1) {
        low[v] = std::min(low[v], disc[other]);
      } else {
        self(self, other, id);
        low[v] = std::min(low[v], low[other]);
        if (low[other] > disc[v]) bridges.insert(id);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] == -1) dfs(dfs, v, -1);
  return bridges;
}

// Blocks of the graph after deleting all bridges (vertices kept), the forest
// they span, and the leaf data used by the regular-cover analysis.
struct BridgeBlockDecomposition {
  std::set<int> bridges;
  std::vector<VertexSet> blocks;                      // partition of V, ordered by lowest vertex
  std::vector<int> block_of;                          // vertex -> block index
  std::vector<std::array<int, 3>> tree_edges;         // (block_i, block_j, bridge_id)
  std::vector<int> leaf_blocks;                       // blocks of tree degree exactly 1
  VertexSet leaf_set;                                 // vertices of degree 1 in g

  int tree_degree(int block) const {
    int d = 0;
    for (const auto& te : tree_edges) d += (te[0] == block) + (te[1] == block);
    return d;
  }
};

inline BridgeBlockDecomposition bridge_block_decomposition(const Multigraph& g) {
  BridgeBlockDecomposition out;
  out.bridges = find_bridges(g);
  const int n = g.vertex_count();
  out.block_of.assign(n, -1);

  for (int s = 0; s < n; ++s) {
    if (out.block_of[s] != -1) continue;
    const int b = static_cast<int>(out.blocks.size());
    VertexSet block = VertexSet::single(s);
    out.block_of[s] = b;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [id, other] : g.adjacency(v)) {
        if (out.bridges.count(id)) continue;
        if (out.block_of[other] == -1) {
          out.block_of[other] = b;
          block.add(other);
          stack.push_back(other);
        }
      }
    }
    out.blocks.push_back(block);
  }

  for (int id : out.bridges) {
    const EdgeRecord& e = g.edge(id);
    out.tree_edges.push_back({out.block_of[e.u], out.block_of[e.v], id});
  }
  for (int b = 0; b < static_cast<int>(out.blocks.size()); ++b)
    if (out.tree_degree(b) == 1) out.leaf_blocks.push_back(b);
  for (int v = 0; v < n; ++v)
    if (g.degree(v) == 1) out.leaf_set.add(v);
  return out;
}

enum class BlockType { TypeI, TypeII, Neither };

// Type I: max induced degree < d. Type II: max induced degree equals d (a
// block's induced subgraph is automatically bridge-less). Degrees are
// measured in g[block].
inline BlockType classify_block(const Multigraph& g, const VertexSet& block, int d) {
  int max_deg = 0;
  block.for_each([&](int v) {
    int deg = 0;
    for (const auto& [id, other] : g.adjacency(v)) {
      (void)id;
      if (block.contains(other)) ++deg;
    }
    max_deg = std::max(max_deg, deg);
  });
  if (max_deg < d) return BlockType::TypeI;
  if (max_deg == d) return BlockType::TypeII;
  return BlockType::Neither;
}

}  // namespace flatband
