#pragma once

#include <unordered_map>
#include <vector>

#include "flatband/multigraph.hpp"
#include "flatband/polynomial.hpp"

namespace flatband {

// A degree-1 subgraph: no two edges share a vertex, and self-loops are
// excluded (a loop would force degree 2 at its vertex).
struct Matching {
  std::vector<int> edge_ids;  // ascending
  VertexSet covered;
};

// Visits every matching exactly once, the empty one first, in lexicographic
// order of the sorted edge-id lists.
template <typename Fn>
void for_each_matching(const Multigraph& g, Fn&& fn) {
  Matching current;
  auto recurse = [&](auto&& self, int first_edge) -> void {
    fn(const_cast<const Matching&>(current));
    for (int id = first_edge; id < g.edge_count(); ++id) {
      const EdgeRecord& e = g.edge(id);
      if (e.is_loop()) continue;
      if (current.covered.contains(e.u) || current.covered.contains(e.v)) continue;
      current.edge_ids.push_back(id);
      current.covered.add(e.u);
      current.covered.add(e.v);
      self(self, id + 1);
      current.covered.remove(e.u);
      current.covered.remove(e.v);
      current.edge_ids.pop_back();
    }
  };
  recurse(recurse, 0);
}

inline std::vector<Matching> enumerate_matchings(const Multigraph& g) {
  std::vector<Matching> out;
  for_each_matching(g, [&](const Matching& m) { out.push_back(m); });
  return out;
}

// Visits the matchings whose vertex set is all of V. The empty graph has the
// empty perfect matching.
template <typename Fn>
void for_each_perfect_matching(const Multigraph& g, Fn&& fn) {
  if (g.vertex_count() % 2 != 0) return;
  Matching current;
  const VertexSet all = g.vertex_set();
  auto recurse = [&](auto&& self) -> void {
    if (current.covered == all) {
      fn(const_cast<const Matching&>(current));
      return;
    }
    // The lowest uncovered vertex must be matched now; edges tried in id order.
    const int v = all.difference(current.covered).first();
    for (const auto& [id, other] : g.adjacency(v)) {
      if (other == v) continue;  // loop
      if (current.covered.contains(other)) continue;
      current.edge_ids.push_back(id);
      current.covered.add(v);
      current.covered.add(other);
      self(self);
      current.covered.remove(other);
      current.covered.remove(v);
      current.edge_ids.pop_back();
    }
  };
  recurse(recurse);
}

inline std::vector<Matching> enumerate_perfect_matchings(const Multigraph& g) {
  std::vector<Matching> out;
  for_each_perfect_matching(g, [&](const Matching& m) {
    Matching copy = m;
    std::sort(copy.edge_ids.begin(), copy.edge_ids.end());
    out.push_back(std::move(copy));
  });
  return out;
}

// Generalized matching polynomial by direct summation over all matchings:
//   sum over M of (-1)^{|M|} * prod |w_e|^2 * prod_{u uncovered} (x - V_u).
// The brute-force oracle for the recursion below.
inline RationalPolynomial matching_poly_enum(const Multigraph& g, const SchrodingerWeights& w) {
  w.require_cover(g);
  RationalPolynomial total = RationalPolynomial::zero();
  for_each_matching(g, [&](const Matching& m) {
    Rational coeff = (m.edge_ids.size() % 2 == 0) ? Rational(1) : Rational(-1);
    for (int id : m.edge_ids) coeff *= w.weight_abs2(id);
    RationalPolynomial term = RationalPolynomial::constant(coeff);
    for (int u = 0; u < g.vertex_count(); ++u)
      if (!m.covered.contains(u)) term *= RationalPolynomial::linear_root(w.potential(u));
    total += term;
  });
  if (g.vertex_count() == 0) total = RationalPolynomial::one();
  return total;
}

// Computes generalized matching polynomials of induced subgraphs of one fixed
// weighted graph via the deletion recursion
//   m_G = (x - V_v) m_{G-v} - sum_{u ~ v, u != v} (sum_e |w_e|^2) m_{G-v-u},
// memoized on the surviving-vertex bitmask. Subproblems are shared across
// every caller that works on the same graph (all gamma-deletions, all
// component restrictions), which is what makes the gcd sweeps cheap.
class MatchingPolyEngine {
 public:
  MatchingPolyEngine(const Multigraph& g, const SchrodingerWeights& w) : g_(&g), w_(&w) {
    w.require_cover(g);
  }

  const RationalPolynomial& of(const VertexSet& surviving) {
    auto it = memo_.find(surviving);
    if (it != memo_.end()) return it->second;

    RationalPolynomial value;
    if (surviving.empty()) {
      value = RationalPolynomial::one();
    } else {
      const int v = pick_pivot(surviving);
      VertexSet without_v = surviving;
      without_v.remove(v);
      value = RationalPolynomial::linear_root(w_->potential(v)) * of(without_v);
      // Group parallel edges by neighbor; loops drop out (u != v).
      std::unordered_map<int, Rational> neighbor_weight;
      for (const auto& [id, other] : g_->adjacency(v)) {
        if (other == v || !surviving.contains(other)) continue;
        neighbor_weight[other] += w_->weight_abs2(id);
      }
      // adjacency() lists a non-loop edge once per endpoint, so each edge at v
      // appears exactly once in the loop above.
      for (const auto& [u, weight2] : neighbor_weight) {
        VertexSet rest = without_v;
        rest.remove(u);
        value -= of(rest) * weight2;
      }
    }
    return memo_.emplace(surviving, std::move(value)).first->second;
  }

  const Multigraph& graph() const { return *g_; }
  const SchrodingerWeights& weights() const { return *w_; }

 private:
  // Lowest-index vertex of minimum induced degree.
  int pick_pivot(const VertexSet& surviving) const {
    int best = -1;
    int best_deg = -1;
    surviving.for_each([&](int v) {
      int deg = 0;
      for (const auto& [id, other] : g_->adjacency(v)) {
        (void)id;
        if (surviving.contains(other)) ++deg;
      }
      if (best == -1 || deg < best_deg) {
        best = v;
        best_deg = deg;
      }
    });
    return best;
  }

  const Multigraph* g_;
  const SchrodingerWeights* w_;
  std::unordered_map<VertexSet, RationalPolynomial, VertexSetHash> memo_;
};

// m_G by the memoized recursion; identical output to matching_poly_enum.
inline RationalPolynomial matching_poly(const Multigraph& g, const SchrodingerWeights& w) {
  MatchingPolyEngine engine(g, w);
  return engine.of(g.vertex_set());
}

}  // namespace flatband
