#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flatband/rational.hpp"
#include "flatband/vertex_set.hpp"

namespace flatband {

// One undirected edge; u == v encodes a self-loop. The stored (u,v) order is
// the reference orientation that edge weights refer to.
struct EdgeRecord {
  int id;
  int u;
  int v;
  bool is_loop() const { return u == v; }
};

// An edge id together with a traversal direction. forward means the stored
// u -> v orientation; e and reverse(e) are the same combinatorial edge.
struct DirectedEdge {
  int edge_id;
  bool forward;

  DirectedEdge reverse() const { return {edge_id, !forward}; }

  friend bool operator==(const DirectedEdge& a, const DirectedEdge& b) {
    return a.edge_id == b.edge_id && a.forward == b.forward;
  }
};

// Finite multigraph with self-loops and multi-edges. Edge identity (dense ids
// in [0,|E|)) is primary; endpoints alone cannot distinguish parallel edges.
// Immutable after construction.
class Multigraph {
 public:
  Multigraph() : vertex_count_(0) {}

  Multigraph(int vertex_count, std::vector<std::pair<int, int>> endpoints)
      : vertex_count_(vertex_count) {
    if (vertex_count < 0 || vertex_count > VertexSet::max_vertices)
      throw std::invalid_argument("vertex count out of range (cap " +
                                  std::to_string(VertexSet::max_vertices) + ")");
    edges_.reserve(endpoints.size());
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
      const auto [u, v] = endpoints[i];
      if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
        throw std::invalid_argument("edge endpoint out of range");
      edges_.push_back({static_cast<int>(i), u, v});
    }
    adjacency_ = build_adjacency(vertex_count_, edges_);
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<EdgeRecord>& edges() const { return edges_; }
  const EdgeRecord& edge(int id) const { return edges_.at(id); }

  // Per-vertex incidence list of (edge_id, other endpoint); a self-loop at v
  // appears twice, so degree(v) == adjacency(v).size().
  const std::vector<std::pair<int, int>>& adjacency(int v) const { return adjacency_.at(v); }

  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }

  int max_degree() const {
    int m = 0;
    for (int v = 0; v < vertex_count_; ++v) m = std::max(m, degree(v));
    return m;
  }

  std::optional<int> is_regular() const {
    if (vertex_count_ == 0) return std::nullopt;
    const int d = degree(0);
    for (int v = 1; v < vertex_count_; ++v)
      if (degree(v) != d) return std::nullopt;
    return d;
  }

  int origin(const DirectedEdge& e) const {
    const auto& r = edge(e.edge_id);
    return e.forward ? r.u : r.v;
  }
  int terminus(const DirectedEdge& e) const {
    const auto& r = edge(e.edge_id);
    return e.forward ? r.v : r.u;
  }

  VertexSet vertex_set() const { return VertexSet::all(vertex_count_); }

  bool is_connected() const {
    if (vertex_count_ == 0) return true;
    VertexSet seen = VertexSet::single(0);
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [eid, other] : adjacency_[v]) {
        (void)eid;
        if (!seen.contains(other)) {
          seen.add(other);
          stack.push_back(other);
        }
      }
    }
    return seen.count() == vertex_count_;
  }

  // Connected components as vertex sets, ordered by lowest member.
  std::vector<VertexSet> components() const {
    std::vector<VertexSet> out;
    VertexSet seen;
    for (int s = 0; s < vertex_count_; ++s) {
      if (seen.contains(s)) continue;
      VertexSet comp = VertexSet::single(s);
      std::vector<int> stack{s};
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [eid, other] : adjacency_[v]) {
          (void)eid;
          if (!comp.contains(other)) {
            comp.add(other);
            stack.push_back(other);
          }
        }
      }
      seen = seen.unite(comp);
      out.push_back(comp);
    }
    return out;
  }

  static std::vector<std::vector<std::pair<int, int>>> build_adjacency(
      int vertex_count, const std::vector<EdgeRecord>& edges) {
    std::vector<std::vector<std::pair<int, int>>> adj(vertex_count);
    for (const auto& e : edges) {
      adj[e.u].emplace_back(e.id, e.v);
      if (e.is_loop())
        adj[e.v].emplace_back(e.id, e.u);  // second incidence of the loop
      else
        adj[e.v].emplace_back(e.id, e.u);
    }
    return adj;
  }

 private:
  int vertex_count_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

// Result of restricting a graph to a vertex subset: the subgraph with dense
// ids plus maps back to the original vertex/edge ids (new index -> old id).
struct InducedSubgraph {
  Multigraph graph;
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

// G[S]: keeps exactly the edges with both endpoints in s.
inline InducedSubgraph induced_subgraph(const Multigraph& g, const VertexSet& s) {
  if (!s.subset_of(g.vertex_set()))
    throw std::invalid_argument("induced_subgraph: set is not a subset of the vertices");
  InducedSubgraph out;
  std::vector<int> new_index(g.vertex_count(), -1);
  s.for_each([&](int v) {
    new_index[v] = static_cast<int>(out.vertex_map.size());
    out.vertex_map.push_back(v);
  });
  std::vector<std::pair<int, int>> endpoints;
  for (const auto& e : g.edges()) {
    if (s.contains(e.u) && s.contains(e.v)) {
      out.edge_map.push_back(e.id);
      endpoints.emplace_back(new_index[e.u], new_index[e.v]);
    }
  }
  out.graph = Multigraph(static_cast<int>(out.vertex_map.size()), std::move(endpoints));
  return out;
}

// G \ S: the induced subgraph on the complement of s.
inline InducedSubgraph delete_vertices(const Multigraph& g, const VertexSet& s) {
  if (!s.subset_of(g.vertex_set()))
    throw std::invalid_argument("delete_vertices: set is not a subset of the vertices");
  return induced_subgraph(g, s.complement_in(g.vertex_count()));
}

// Hermitian edge weights (one Gaussian rational per edge id, referring to the
// stored orientation; the reverse orientation carries the conjugate) plus real
// vertex potentials.
class SchrodingerWeights {
 public:
  SchrodingerWeights() = default;

  SchrodingerWeights(std::vector<GaussianRational> edge_weights, std::vector<Rational> potentials)
      : edge_weights_(std::move(edge_weights)), potentials_(std::move(potentials)) {
    for (const auto& w : edge_weights_)
      if (w.is_zero()) throw std::invalid_argument("edge weights must be nonzero");
  }

  static SchrodingerWeights adjacency(const Multigraph& g) {
    return SchrodingerWeights(
        std::vector<GaussianRational>(g.edge_count(), GaussianRational(1)),
        std::vector<Rational>(g.vertex_count(), Rational(0)));
  }

  bool covers(const Multigraph& g) const {
    return static_cast<int>(edge_weights_.size()) == g.edge_count() &&
           static_cast<int>(potentials_.size()) == g.vertex_count();
  }

  void require_cover(const Multigraph& g) const {
    if (!covers(g))
      throw std::invalid_argument("weight configuration error: weights do not cover the graph");
  }

  const GaussianRational& stored_weight(int edge_id) const { return edge_weights_.at(edge_id); }

  GaussianRational weight(const DirectedEdge& e) const {
    const auto& w = edge_weights_.at(e.edge_id);
    return e.forward ? w : w.conj();
  }

  // |w_e|^2; orientation-independent.
  Rational weight_abs2(int edge_id) const { return edge_weights_.at(edge_id).norm2(); }

  const Rational& potential(int v) const { return potentials_.at(v); }

  bool is_adjacency() const {
    for (const auto& w : edge_weights_)
      if (!(w.re == 1 && w.im == 0)) return false;
    for (const auto& p : potentials_)
      if (p != 0) return false;
    return true;
  }

  // Weights for an induced subgraph, following its id remaps.
  SchrodingerWeights restrict_to(const InducedSubgraph& sub) const {
    std::vector<GaussianRational> ew;
    ew.reserve(sub.edge_map.size());
    for (int old_id : sub.edge_map) ew.push_back(edge_weights_.at(old_id));
    std::vector<Rational> pot;
    pot.reserve(sub.vertex_map.size());
    for (int old_v : sub.vertex_map) pot.push_back(potentials_.at(old_v));
    return SchrodingerWeights(std::move(ew), std::move(pot));
  }

 private:
  std::vector<GaussianRational> edge_weights_;
  std::vector<Rational> potentials_;
};

}  // namespace flatband
