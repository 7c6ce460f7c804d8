#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatband/decomposition.hpp"
#include "flatband/degree2.hpp"
#include "flatband/multigraph.hpp"

namespace flatband {

namespace detail {

inline void require(bool cond, const std::string& hypothesis) {
  if (!cond) throw std::invalid_argument("precondition failed: " + hypothesis);
}

}  // namespace detail

// Spanning 2-factor of a connected bridge-less multigraph with total degree
// deficit sum(d - deg(v)) <= d-1, d odd >= 3. Each deficient vertex gets
// (d - deg) bouquet gadgets ((d-1)/2 self-loops behind a bridge edge); the
// augmented graph is d-regular with at most d-1 bridges, so it has a
// 2-factor, and since cycles cannot cross bridges it restricts to one of g.
inline Degree2Subgraph two_factor_with_deficit(const Multigraph& g, int d) {
  detail::require(d >= 3 && d % 2 == 1, "d must be an odd integer >= 3");
  detail::require(g.vertex_count() >= 1, "graph must be nonempty");
  detail::require(g.is_connected(), "graph must be connected");
  detail::require(find_bridges(g).empty(), "graph must be bridge-less");
  detail::require(g.max_degree() <= d, "maximum degree must be at most d");
  long deficit = 0;
  for (int v = 0; v < g.vertex_count(); ++v) deficit += d - g.degree(v);
  detail::require(deficit <= d - 1, "total degree deficit must be at most d-1");

  std::vector<std::pair<int, int>> endpoints;
  endpoints.reserve(g.edge_count());
  for (const auto& e : g.edges()) endpoints.emplace_back(e.u, e.v);
  int next_vertex = g.vertex_count();
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int k = g.degree(v); k < d; ++k) {
      const int b = next_vertex++;
      endpoints.emplace_back(v, b);  // bridge to the bouquet
      for (int l = 0; l < (d - 1) / 2; ++l) endpoints.emplace_back(b, b);
    }
  }
  const Multigraph augmented(next_vertex, std::move(endpoints));

  std::optional<Degree2Subgraph> tf = find_2factor(augmented);
  if (!tf) throw std::logic_error("two_factor_with_deficit: augmented graph has no 2-factor");

  std::vector<int> original_edges;
  for (int id : tf->sorted_edge_ids())
    if (id < g.edge_count()) original_edges.push_back(id);
  std::optional<Degree2Subgraph> restricted = degree2_from_edges(g, std::move(original_edges));
  if (!restricted || !restricted->spans(g))
    throw std::logic_error("two_factor_with_deficit: restriction is not a spanning 2-factor");
  return *restricted;
}

namespace detail {

// The graph G' of the degree-correction step, with enough bookkeeping to map
// degree-2 subgraphs of G' back to G.
struct CorrectedGraph {
  Multigraph graph;
  std::vector<int> orig_edge;  // G' edge id -> original edge id, or -1 for new edges
  bool split_case = false;     // even-degree correction introduced v1'
  int v1 = -1;
  int v1_prime = -1;           // only in the split case
  int u = -1;                  // neighbor used in the split case
  int removed_edge = -1;       // original edge id removed in the split case
  std::set<int> new_loops;     // G' ids of loops added at v1 (odd) or v1' (even)
  std::set<int> parallel_ids;  // G' ids of the v1 - v1' edges
  int prime_u_edge = -1;       // G' id of the v1' - u edge
};

inline CorrectedGraph correct_vertex_degree(const Multigraph& g, int v1, int d) {
  CorrectedGraph out;
  out.v1 = v1;
  const int deg = g.degree(v1);
  std::vector<std::pair<int, int>> endpoints;

  if (deg % 2 == 1) {
    for (const auto& e : g.edges()) {
      endpoints.emplace_back(e.u, e.v);
      out.orig_edge.push_back(e.id);
    }
    for (int k = 0; k < (d - deg) / 2; ++k) {
      out.new_loops.insert(static_cast<int>(endpoints.size()));
      endpoints.emplace_back(v1, v1);
      out.orig_edge.push_back(-1);
    }
    out.graph = Multigraph(g.vertex_count(), std::move(endpoints));
    return out;
  }

  // Even degree: remove one edge v1-u (lowest id, u != v1), split in a new
  // vertex v1' with d+1-deg parallel edges to v1, one edge to u, and
  // (deg-2)/2 self-loops.
  out.split_case = true;
  int removed = -1;
  for (const auto& e : g.edges()) {
    if ((e.u == v1 && e.v != v1) || (e.v == v1 && e.u != v1)) {
      removed = e.id;
      out.u = e.u == v1 ? e.v : e.u;
      break;
    }
  }
  if (removed == -1) throw std::logic_error("degree correction: no non-loop neighbor found");
  out.removed_edge = removed;
  out.v1_prime = g.vertex_count();

  for (const auto& e : g.edges()) {
    if (e.id == removed) continue;
    out.orig_edge.push_back(e.id);
    endpoints.emplace_back(e.u, e.v);
  }
  for (int k = 0; k < d + 1 - deg; ++k) {
    out.parallel_ids.insert(static_cast<int>(endpoints.size()));
    endpoints.emplace_back(v1, out.v1_prime);
    out.orig_edge.push_back(-1);
  }
  out.prime_u_edge = static_cast<int>(endpoints.size());
  endpoints.emplace_back(out.v1_prime, out.u);
  out.orig_edge.push_back(-1);
  for (int k = 0; k < (deg - 2) / 2; ++k) {
    out.new_loops.insert(static_cast<int>(endpoints.size()));
    endpoints.emplace_back(out.v1_prime, out.v1_prime);
    out.orig_edge.push_back(-1);
  }
  out.graph = Multigraph(g.vertex_count() + 1, std::move(endpoints));
  return out;
}

// Maps a degree-2 subgraph of the corrected graph back to one of g: new loop
// components are dropped, a 2-cycle on two parallel v1-v1' edges is dropped,
// and a cycle crossing v1 - v1' - u is contracted through the removed edge.
inline Degree2Subgraph project_back(const Multigraph& g, const CorrectedGraph& cg,
                                    const Degree2Subgraph& sub) {
  std::vector<int> mapped;
  for (const auto& comp : sub.components) {
    std::vector<int> ids;
    int parallel_count = 0;
    bool has_new_loop = false;
    bool has_prime_u = false;
    for (const auto& e : comp.edges) {
      if (cg.new_loops.count(e.edge_id)) has_new_loop = true;
      if (cg.parallel_ids.count(e.edge_id)) ++parallel_count;
      if (e.edge_id == cg.prime_u_edge && cg.split_case) has_prime_u = true;
      ids.push_back(e.edge_id);
    }
    if (has_new_loop) {
      if (comp.edges.size() != 1)
        throw std::logic_error("project_back: new loop inside a longer component");
      continue;  // the loop met the corrected vertex's degree; drop it
    }
    if (parallel_count >= 2) {
      if (comp.edges.size() != 2)
        throw std::logic_error("project_back: two parallel correction edges outside a 2-cycle");
      continue;  // the 2-cycle v1 = v1'; v1 leaves the subgraph
    }
    if (parallel_count == 1) {
      if (!has_prime_u)
        throw std::logic_error("project_back: correction edge without the companion edge");
      // Contract v1 -> v1' -> u into the removed original edge v1-u.
      for (int id : ids) {
        if (cg.parallel_ids.count(id) || id == cg.prime_u_edge) continue;
        mapped.push_back(cg.orig_edge.at(id));
      }
      mapped.push_back(cg.removed_edge);
      continue;
    }
    for (int id : ids) {
      const int orig = cg.orig_edge.at(id);
      if (orig < 0) throw std::logic_error("project_back: unexpected new edge");
      mapped.push_back(orig);
    }
  }
  std::optional<Degree2Subgraph> result = degree2_from_edges(g, std::move(mapped));
  if (!result) throw std::logic_error("project_back: mapped edges are not a degree-2 subgraph");
  return *result;
}

}  // namespace detail

// The two degree-2 subgraphs of a Type II graph promised by the induction on
// the deficient set I = {v : deg(v) < d}: both cover every vertex of degree
// d; with_v covers the distinguished vertex v, without_v does not.
struct Degree2Pair {
  Degree2Subgraph with_v;
  Degree2Subgraph without_v;
};

inline Degree2Pair typeII_degree2_pair(const Multigraph& g, int v, int d) {
  detail::require(d >= 3 && d % 2 == 1, "d must be an odd integer >= 3");
  detail::require(v >= 0 && v < g.vertex_count(), "v must be a vertex of g");
  detail::require(g.is_connected(), "graph must be connected");
  detail::require(find_bridges(g).empty(), "graph must be bridge-less");
  detail::require(g.max_degree() == d, "maximum degree must equal d");
  detail::require(g.degree(v) < d, "v must have degree smaller than d");

  std::vector<int> deficient;
  for (int x = 0; x < g.vertex_count(); ++x)
    if (g.degree(x) < d) deficient.push_back(x);

  if (deficient.size() == 1) {
    Degree2Pair out;
    out.with_v = two_factor_with_deficit(g, d);

    // Without v: delete it, then assemble per-block 2-factors of what
    // remains. Each block is bridge-less with total deficit at most d-1.
    const InducedSubgraph rest = delete_vertices(g, VertexSet::single(v));
    std::vector<int> chosen;
    if (rest.graph.vertex_count() > 0) {
      const BridgeBlockDecomposition dec = bridge_block_decomposition(rest.graph);
      for (const VertexSet& block : dec.blocks) {
        const InducedSubgraph bg = induced_subgraph(rest.graph, block);
        const Degree2Subgraph tf = two_factor_with_deficit(bg.graph, d);
        for (int id : tf.sorted_edge_ids()) chosen.push_back(rest.edge_map.at(bg.edge_map.at(id)));
      }
    }
    std::optional<Degree2Subgraph> without = degree2_from_edges(g, std::move(chosen));
    if (!without) throw std::logic_error("typeII_degree2_pair: block assembly failed");
    out.without_v = *without;
    return out;
  }

  // Induction: correct the degree of the lowest-index deficient vertex other
  // than v, recurse on the corrected graph, and project both answers back.
  int v1 = -1;
  for (int x : deficient)
    if (x != v) {
      v1 = x;
      break;
    }
  const detail::CorrectedGraph cg = detail::correct_vertex_degree(g, v1, d);
  const Degree2Pair inner = typeII_degree2_pair(cg.graph, v, d);
  Degree2Pair out;
  out.with_v = detail::project_back(g, cg, inner.with_v);
  out.without_v = detail::project_back(g, cg, inner.without_v);
  if (!out.with_v.covered.contains(v) || out.without_v.covered.contains(v))
    throw std::logic_error("typeII_degree2_pair: projection broke the v-membership contract");
  return out;
}

}  // namespace flatband
