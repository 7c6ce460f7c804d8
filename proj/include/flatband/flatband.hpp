#pragma once

#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "flatband/charpoly.hpp"
#include "flatband/degree2.hpp"
#include "flatband/matching.hpp"
#include "flatband/matrix.hpp"
#include "flatband/roots.hpp"

namespace flatband {

// Outcome of the flat-band decision for a connected weighted multigraph.
// lambda is an l^2 eigenvalue of the maximal abelian cover exactly when
// gcd_poly(lambda) = 0, where gcd_poly is the monic gcd of the generalized
// matching polynomials m_{G \ gamma} over all degree-2 subgraphs gamma.
struct FlatBandReport {
  RationalPolynomial gcd_poly;  // monic, or the constant 1
  RootIsolation roots;
  // The (gamma, m_{G \ gamma}) pairs actually visited; the enumeration stops
  // early once the gcd collapses to 1.
  std::vector<std::pair<Degree2Subgraph, RationalPolynomial>> per_gamma;
  // Nonempty exactly when gcd_poly is constant: a small set of gammas whose
  // matching polynomials are already coprime (greedy, not globally minimal).
  std::vector<Degree2Subgraph> witness_coprime_set;

  bool has_flat_bands() const { return gcd_poly.degree() >= 1; }
};

namespace detail {

inline void require_flatband_input(const Multigraph& g, const SchrodingerWeights& w) {
  if (g.vertex_count() == 0) throw std::invalid_argument("flat-band analysis: graph is empty");
  w.require_cover(g);
  if (!g.is_connected())
    throw std::invalid_argument("flat-band analysis requires a connected graph");
}

inline std::vector<Degree2Subgraph> greedy_coprime_witness(
    const std::vector<std::pair<Degree2Subgraph, RationalPolynomial>>& per_gamma) {
  // Pass 1: keep the gammas that strictly shrank the running gcd.
  std::vector<std::size_t> kept;
  RationalPolynomial acc = RationalPolynomial::zero();
  for (std::size_t i = 0; i < per_gamma.size(); ++i) {
    RationalPolynomial next = poly_gcd(acc, per_gamma[i].second);
    if (next != acc) kept.push_back(i);
    acc = std::move(next);
    if (acc.is_one()) break;
  }
  // Pass 2: drop members that are not needed for coprimality.
  for (std::size_t i = 0; i < kept.size();) {
    RationalPolynomial without = RationalPolynomial::zero();
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) without = poly_gcd(without, per_gamma[kept[j]].second);
    if (without.is_one())
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  std::vector<Degree2Subgraph> out;
  out.reserve(kept.size());
  for (std::size_t i : kept) out.push_back(per_gamma[i].first);
  return out;
}

}  // namespace detail

// Computes the flat-band polynomial. The empty gamma is visited first (m_G
// itself, the largest-degree polynomial), then unions of disjoint cycles in
// canonical order; the sweep stops as soon as the gcd reaches 1. If G has a
// 2-factor some m_{G \ gamma} is the constant 1 and the gcd collapses there.
// With threads > 1 the per-gamma polynomials are computed in parallel batches
// (each worker owns a private memo table) and reduced in canonical order.
inline FlatBandReport flatband_polynomial(const Multigraph& g, const SchrodingerWeights& w,
                                          int threads = 1) {
  detail::require_flatband_input(g, w);
  FlatBandReport report;
  report.gcd_poly = RationalPolynomial::zero();
  const VertexSet all = g.vertex_set();

  if (threads <= 1) {
    MatchingPolyEngine engine(g, w);
    for_each_degree2_subgraph(g, [&](const Degree2Subgraph& gamma) {
      const RationalPolynomial& m = engine.of(all.difference(gamma.covered));
      report.gcd_poly = poly_gcd(report.gcd_poly, m);
      report.per_gamma.emplace_back(gamma, m);
      return !report.gcd_poly.is_one();
    });
  } else {
    std::vector<Degree2Subgraph> gammas = enumerate_degree2_subgraphs(g);
    const std::size_t batch = static_cast<std::size_t>(threads) * 8;
    for (std::size_t start = 0; start < gammas.size() && !report.gcd_poly.is_one();
         start += batch) {
      const std::size_t stop = std::min(gammas.size(), start + batch);
      std::vector<RationalPolynomial> polys(stop - start);
      std::vector<std::thread> workers;
      for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&, t]() {
          MatchingPolyEngine engine(g, w);
          for (std::size_t i = start + static_cast<std::size_t>(t); i < stop;
               i += static_cast<std::size_t>(threads))
            polys[i - start] = engine.of(all.difference(gammas[i].covered));
        });
      }
      for (auto& th : workers) th.join();
      for (std::size_t i = start; i < stop; ++i) {
        report.gcd_poly = poly_gcd(report.gcd_poly, polys[i - start]);
        report.per_gamma.emplace_back(std::move(gammas[i]), std::move(polys[i - start]));
        if (report.gcd_poly.is_one()) break;
      }
    }
  }

  if (report.gcd_poly.is_one())
    report.witness_coprime_set = detail::greedy_coprime_witness(report.per_gamma);
  else
    report.roots = sturm_isolate(report.gcd_poly);
  return report;
}

// Pointwise form of the criterion at a rational lambda, with a verifiable
// witness either way.
struct FlatBandEvaluation {
  bool flat = false;
  // Set when flat is false: the first gamma in canonical order whose matching
  // polynomial does not vanish at lambda, with the nonzero value.
  std::optional<Degree2Subgraph> failing_gamma;
  Rational failing_value;
  // When flat is true: every (gamma, evaluation) pair, all zero.
  std::vector<std::pair<Degree2Subgraph, Rational>> evaluations;
};

inline FlatBandEvaluation is_flatband(const Multigraph& g, const SchrodingerWeights& w,
                                      const Rational& lambda) {
  detail::require_flatband_input(g, w);
  MatchingPolyEngine engine(g, w);
  const VertexSet all = g.vertex_set();
  FlatBandEvaluation out;
  out.flat = true;
  for_each_degree2_subgraph(g, [&](const Degree2Subgraph& gamma) {
    const Rational value = engine.of(all.difference(gamma.covered)).evaluate(lambda);
    if (value != 0) {
      out.flat = false;
      out.failing_gamma = gamma;
      out.failing_value = value;
      out.evaluations.clear();
      return false;
    }
    out.evaluations.emplace_back(gamma, value);
    return true;
  });
  return out;
}

// Connected inputs are required above; disconnected graphs are analyzed one
// component at a time with this helper.
inline std::vector<std::pair<VertexSet, FlatBandReport>> flatband_components(
    const Multigraph& g, const SchrodingerWeights& w) {
  std::vector<std::pair<VertexSet, FlatBandReport>> out;
  for (const VertexSet& comp : g.components()) {
    const InducedSubgraph sub = induced_subgraph(g, comp);
    out.emplace_back(comp, flatband_polynomial(sub.graph, w.restrict_to(sub)));
  }
  return out;
}

// det(lambda I - H) = sum over oriented gamma of (-1)^cc m_{G\gamma} w_gamma,
// checked as an exact polynomial identity.
inline bool verify_charpoly_expansion(const Multigraph& g, const SchrodingerWeights& w) {
  w.require_cover(g);
  const RationalPolynomial lhs = char_poly(hamiltonian_matrix(g, w));
  MatchingPolyEngine engine(g, w);
  const VertexSet all = g.vertex_set();
  GaussianPolynomial rhs;
  for_each_degree2_subgraph(g, [&](const Degree2Subgraph& gamma) {
    const RationalPolynomial& m = engine.of(all.difference(gamma.covered));
    const int sign = gamma.cc() % 2 == 0 ? 1 : -1;
    for (const auto& [oriented, weight] : orientations(gamma, w)) {
      (void)oriented;
      rhs += GaussianPolynomial(m) * (sign > 0 ? weight : -weight);
    }
    return true;
  });
  return rhs.real_polynomial() == lhs;
}

// m_G(lambda) = sum over oriented gamma of det(lambda I - H|_{G\gamma}) w_gamma,
// the Moebius-inverted companion identity, checked exactly.
inline bool verify_moebius_identity(const Multigraph& g, const SchrodingerWeights& w) {
  w.require_cover(g);
  const RationalPolynomial lhs = matching_poly(g, w);
  const VertexSet all = g.vertex_set();
  GaussianPolynomial rhs;
  for_each_degree2_subgraph(g, [&](const Degree2Subgraph& gamma) {
    const InducedSubgraph rest = induced_subgraph(g, all.difference(gamma.covered));
    const RationalPolynomial det = char_poly(hamiltonian_matrix(rest.graph, w.restrict_to(rest)));
    for (const auto& [oriented, weight] : orientations(gamma, w)) {
      (void)oriented;
      rhs += GaussianPolynomial(det) * weight;
    }
    return true;
  });
  return rhs.real_polynomial() == lhs;
}

// The deletion recursion behind the matching-polynomial engine, checked
// exactly at every pivot vertex (not just the engine's heuristic choice).
inline bool verify_recursion_identity(const Multigraph& g, const SchrodingerWeights& w) {
  w.require_cover(g);
  const RationalPolynomial m = matching_poly(g, w);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const InducedSubgraph without_v = delete_vertices(g, VertexSet::single(v));
    RationalPolynomial rhs = RationalPolynomial::linear_root(w.potential(v)) *
                             matching_poly(without_v.graph, w.restrict_to(without_v));
    std::unordered_map<int, Rational> neighbor_weight;
    for (const auto& [id, other] : g.adjacency(v))
      if (other != v) neighbor_weight[other] += w.weight_abs2(id);
    for (const auto& [u, weight2] : neighbor_weight) {
      VertexSet pair;
      pair.add(v);
      pair.add(u);
      const InducedSubgraph rest = delete_vertices(g, pair);
      rhs -= matching_poly(rest.graph, w.restrict_to(rest)) * weight2;
    }
    if (rhs != m) return false;
  }
  return true;
}

// For d-regular adjacency graphs, certifies by Sturm counting that every real
// root of m_G lies in [-b, b], b the smallest rational >= 2*sqrt(d-1) with
// denominator 10^6.
inline bool heilmann_lieb_check(const Multigraph& g) {
  const std::optional<int> d = g.is_regular();
  if (!d || *d < 2)
    throw std::invalid_argument("heilmann_lieb_check requires a d-regular graph with d >= 2");
  const Integer scale = 1000000;
  Integer t = Integer(4) * (*d - 1) * scale * scale;
  Integer s = boost::multiprecision::sqrt(t);
  if (s * s < t) s += 1;
  const Rational b(s, scale);

  const RationalPolynomial m = matching_poly(g, SchrodingerWeights::adjacency(g));
  if (m.degree() < 1) return true;
  const Rational big = cauchy_root_bound(m);
  const int total = count_roots_in_interval(m, -big, big);
  int inside = count_roots_in_interval(m, -b, b);
  if (m.evaluate(-b) == 0) ++inside;
  return inside == total;
}

// The regular case has no flat bands; this exposes the statement as a
// sweepable property over corpora.
inline bool theorem2_check(const Multigraph& g, const SchrodingerWeights& w, int threads = 1) {
  if (!g.is_regular()) throw std::invalid_argument("theorem2_check requires a regular graph");
  if (!g.is_connected()) throw std::invalid_argument("theorem2_check requires a connected graph");
  return !flatband_polynomial(g, w, threads).has_flat_bands();
}

}  // namespace flatband
