#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "flatband/multigraph.hpp"

namespace flatband {

// One cycle in a fixed canonical orientation: a self-loop (1 edge), a pair of
// distinct parallel edges (2-cycle) or a k-cycle on distinct vertices. The
// directed edges are listed in traversal order.
struct CycleComponent {
  std::vector<DirectedEdge> edges;
  VertexSet vertices;

  std::vector<int> sorted_edge_ids() const {
    std::vector<int> ids;
    ids.reserve(edges.size());
    for (const auto& e : edges) ids.push_back(e.edge_id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }
};

// gamma: a vertex-disjoint union of cycles, possibly empty ("the empty
// subgraph is 2-regular"). Components are held in canonical order.
struct Degree2Subgraph {
  std::vector<CycleComponent> components;
  VertexSet covered;

  int cc() const { return static_cast<int>(components.size()); }
  bool is_empty() const { return components.empty(); }

  std::vector<int> sorted_edge_ids() const {
    std::vector<int> ids;
    for (const auto& c : components)
      for (const auto& e : c.edges) ids.push_back(e.edge_id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  bool spans(const Multigraph& g) const { return covered == g.vertex_set(); }
};

// A choice of one of the 2^cc orientations of a base subgraph: bit i of
// flips reverses component i.
struct OrientedDegree2Subgraph {
  Degree2Subgraph base;
  std::uint64_t flips = 0;

  // Product of the directed edge weights; reversing every component
  // conjugates the product.
  GaussianRational weight(const SchrodingerWeights& w) const {
    GaussianRational total(1);
    for (std::size_t i = 0; i < base.components.size(); ++i) {
      GaussianRational part(1);
      for (const auto& e : base.components[i].edges) part *= w.weight(e);
      total *= (flips >> i) & 1 ? part.conj() : part;
    }
    return total;
  }

  // Signed exponent of each undirected edge in the monomial z_gamma:
  // +1 for a traversal along the stored orientation, -1 against it.
  std::vector<int> exponent_vector(const Multigraph& g) const {
    std::vector<int> exp(g.edge_count(), 0);
    for (std::size_t i = 0; i < base.components.size(); ++i) {
      const bool rev = (flips >> i) & 1;
      for (const auto& e : base.components[i].edges)
        exp[e.edge_id] += (e.forward != rev) ? 1 : -1;
    }
    return exp;
  }
};

namespace detail {

// All simple cycles of g, each exactly once, sorted by their sorted edge-id
// lists. Self-loops and parallel-edge 2-cycles included.
inline std::vector<CycleComponent> enumerate_cycles(const Multigraph& g) {
  std::vector<CycleComponent> cycles;

  for (const auto& e : g.edges()) {
    if (e.is_loop()) {
      CycleComponent c;
      c.edges = {DirectedEdge{e.id, true}};
      c.vertices.add(e.u);
      cycles.push_back(std::move(c));
    }
  }

  // 2-cycles: unordered pairs of distinct parallel non-loop edges.
  for (int i = 0; i < g.edge_count(); ++i) {
    const EdgeRecord& a = g.edge(i);
    if (a.is_loop()) continue;
    for (int j = i + 1; j < g.edge_count(); ++j) {
      const EdgeRecord& b = g.edge(j);
      if (b.is_loop()) continue;
      const bool same = (a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u);
      if (!same) continue;
      const int lo = std::min(a.u, a.v);
      CycleComponent c;
      c.edges = {DirectedEdge{i, a.u == lo}, DirectedEdge{j, b.u != lo}};
      c.vertices.add(a.u);
      c.vertices.add(a.v);
      cycles.push_back(std::move(c));
    }
  }

  // k-cycles, k >= 3: DFS from each root r over vertices > r; the two
  // traversal directions are deduplicated by requiring the first edge id to
  // be smaller than the last.
  std::vector<DirectedEdge> path;
  std::vector<int> path_vertices;
  VertexSet on_path;
  auto dfs = [&](auto&& self, int root, int current) -> void {
    for (const auto& [id, other] : g.adjacency(current)) {
      if (other == current) continue;  // loops handled above
      if (other == root) {
        if (path.size() >= 2 && path.front().edge_id < id) {
          CycleComponent c;
          c.edges = path;
          c.edges.push_back(DirectedEdge{id, g.edge(id).u == current});
          for (int v : path_vertices) c.vertices.add(v);
          cycles.push_back(std::move(c));
        }
        continue;
      }
      if (other < root || on_path.contains(other)) continue;
      path.push_back(DirectedEdge{id, g.edge(id).u == current});
      path_vertices.push_back(other);
      on_path.add(other);
      self(self, root, other);
      on_path.remove(other);
      path_vertices.pop_back();
      path.pop_back();
    }
  };
  for (int r = 0; r < g.vertex_count(); ++r) {
    path.clear();
    path_vertices.assign(1, r);
    on_path = VertexSet::single(r);
    dfs(dfs, r, r);
  }

  std::sort(cycles.begin(), cycles.end(), [](const CycleComponent& a, const CycleComponent& b) {
    return a.sorted_edge_ids() < b.sorted_edge_ids();
  });
  return cycles;
}

}  // namespace detail

inline std::vector<CycleComponent> enumerate_cycles(const Multigraph& g) {
  return detail::enumerate_cycles(g);
}

// Visits every degree-2 subgraph exactly once in canonical order: the empty
// subgraph first, then unions of vertex-disjoint cycles in lexicographic
// order of their cycle indices. The visitor may return false to stop early.
template <typename Fn>
void for_each_degree2_subgraph(const Multigraph& g, Fn&& fn) {
  const std::vector<CycleComponent> cycles = detail::enumerate_cycles(g);
  Degree2Subgraph current;
  bool stop = false;
  auto recurse = [&](auto&& self, std::size_t first) -> void {
    if (stop) return;
    if (!fn(const_cast<const Degree2Subgraph&>(current))) {
      stop = true;
      return;
    }
    for (std::size_t i = first; i < cycles.size() && !stop; ++i) {
      if (cycles[i].vertices.intersects(current.covered)) continue;
      current.components.push_back(cycles[i]);
      current.covered = current.covered.unite(cycles[i].vertices);
      self(self, i + 1);
      current.covered = current.covered.difference(cycles[i].vertices);
      current.components.pop_back();
    }
  };
  recurse(recurse, 0);
}

inline std::vector<Degree2Subgraph> enumerate_degree2_subgraphs(const Multigraph& g) {
  std::vector<Degree2Subgraph> out;
  for_each_degree2_subgraph(g, [&](const Degree2Subgraph& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

// The 2^cc oriented variants of gamma with their exact weights w_gamma. The
// empty subgraph has the single variant with weight 1.
inline std::vector<std::pair<OrientedDegree2Subgraph, GaussianRational>> orientations(
    const Degree2Subgraph& gamma, const SchrodingerWeights& w) {
  if (gamma.cc() > 62) throw std::invalid_argument("orientation flips exceed 62 components");
  std::vector<std::pair<OrientedDegree2Subgraph, GaussianRational>> out;
  const std::uint64_t variants = std::uint64_t{1} << gamma.cc();
  out.reserve(variants);
  for (std::uint64_t flips = 0; flips < variants; ++flips) {
    OrientedDegree2Subgraph o{gamma, flips};
    GaussianRational weight = o.weight(w);
    out.emplace_back(std::move(o), std::move(weight));
  }
  return out;
}

// Builds the canonical Degree2Subgraph with the given edge set, or nullopt if
// those edges do not form a subgraph with every covered vertex of degree 2.
inline std::optional<Degree2Subgraph> degree2_from_edges(const Multigraph& g,
                                                         std::vector<int> edge_ids) {
  std::sort(edge_ids.begin(), edge_ids.end());
  if (std::adjacent_find(edge_ids.begin(), edge_ids.end()) != edge_ids.end()) return std::nullopt;
  std::vector<int> deg(g.vertex_count(), 0);
  for (int id : edge_ids) {
    const EdgeRecord& e = g.edge(id);
    deg[e.u] += e.is_loop() ? 2 : 1;
    if (!e.is_loop()) deg[e.v] += 1;
  }
  for (int d : deg)
    if (d != 0 && d != 2) return std::nullopt;

  // Walk the cycles off canonically: smallest remaining edge id seeds each
  // component, traversal starts at that component's smallest vertex.
  std::vector<bool> used(g.edge_count(), false);
  std::vector<std::vector<std::pair<int, int>>> incident(g.vertex_count());
  for (int id : edge_ids) {
    const EdgeRecord& e = g.edge(id);
    incident[e.u].emplace_back(id, e.v);
    if (!e.is_loop()) incident[e.v].emplace_back(id, e.u);
  }
  for (auto& lst : incident) std::sort(lst.begin(), lst.end());

  Degree2Subgraph result;
  for (int seed : edge_ids) {
    if (used[seed]) continue;
    // Find the smallest vertex on this component.
    VertexSet comp_vertices;
    {
      std::vector<int> stack{g.edge(seed).u};
      comp_vertices.add(g.edge(seed).u);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [id, other] : incident[v]) {
          (void)id;
          if (!comp_vertices.contains(other)) {
            comp_vertices.add(other);
            stack.push_back(other);
          }
        }
      }
    }
    const int start = comp_vertices.first();
    CycleComponent comp;
    comp.vertices = comp_vertices;
    if (g.edge(seed).is_loop()) {
      comp.edges.push_back(DirectedEdge{seed, true});
      used[seed] = true;
    } else {
      int at = start;
      int first_edge = -1;
      do {
        int chosen = -1, next = -1;
        for (const auto& [id, other] : incident[at]) {
          if (used[id]) continue;
          if (chosen == -1) {
            chosen = id;
            next = other;
          }
        }
        if (chosen == -1) throw std::logic_error("degree2_from_edges: traversal failed");
        if (first_edge == -1) first_edge = chosen;
        used[chosen] = true;
        comp.edges.push_back(DirectedEdge{chosen, g.edge(chosen).u == at});
        at = next;
      } while (at != start);
      (void)first_edge;
    }
    result.components.push_back(std::move(comp));
  }
  std::sort(result.components.begin(), result.components.end(),
            [](const CycleComponent& a, const CycleComponent& b) {
              return a.sorted_edge_ids() < b.sorted_edge_ids();
            });
  result.covered = VertexSet{};
  for (const auto& c : result.components) result.covered = result.covered.unite(c.vertices);
  return result;
}

// Spanning degree-2 subgraph by backtracking over edge inclusion, lowest edge
// id first (include before exclude), or nullopt when none exists.
inline std::optional<Degree2Subgraph> find_2factor(const Multigraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  if (n == 0) return Degree2Subgraph{};

  std::vector<int> chosen_deg(n, 0);
  std::vector<int> pending(n, 0);  // degree still available from undecided edges
  for (const auto& e : g.edges()) {
    pending[e.u] += e.is_loop() ? 2 : 1;
    if (!e.is_loop()) pending[e.v] += 1;
  }
  std::vector<int> chosen;
  std::optional<Degree2Subgraph> found;

  auto feasible = [&](int v) { return chosen_deg[v] <= 2 && chosen_deg[v] + pending[v] >= 2; };

  auto recurse = [&](auto&& self, int id) -> bool {
    if (id == m) {
      for (int v = 0; v < n; ++v)
        if (chosen_deg[v] != 2) return false;
      found = degree2_from_edges(g, chosen);
      return found.has_value();
    }
    const EdgeRecord& e = g.edge(id);
    const int du = e.is_loop() ? 2 : 1;
    const int dv = e.is_loop() ? 0 : 1;
    // include
    chosen_deg[e.u] += du;
    chosen_deg[e.v] += dv;
    pending[e.u] -= du;
    pending[e.v] -= dv;
    chosen.push_back(id);
    if (feasible(e.u) && feasible(e.v) && self(self, id + 1)) return true;
    chosen.pop_back();
    chosen_deg[e.u] -= du;
    chosen_deg[e.v] -= dv;
    // exclude
    if (feasible(e.u) && feasible(e.v) && self(self, id + 1)) return true;
    pending[e.u] += du;
    pending[e.v] += dv;
    return false;
  };
  if (recurse(recurse, 0)) return found;
  return std::nullopt;
}

}  // namespace flatband
