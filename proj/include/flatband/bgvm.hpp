#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flatband/charpoly.hpp"
#include "flatband/flatband.hpp"
#include "flatband/matrix.hpp"
#include "flatband/multigraph.hpp"
#include "flatband/roots.hpp"

namespace flatband {

// Witness that lambda is an eigenvalue of the universal-cover operator: a
// vertex subset S with G[S] a forest (a self-loop or multi-edge inside S is a
// cycle, so S avoids them), lambda an eigenvalue of H restricted to every
// component, and strictly fewer boundary vertices than components.
struct AomotoCertificate {
  VertexSet s;
  std::vector<VertexSet> components;  // connected components of G[S]
  VertexSet boundary;                 // vertices outside S adjacent to S
  RationalPolynomial lambda_poly;     // gcd of the component characteristic polynomials
};

namespace detail {

inline VertexSet boundary_of(const Multigraph& g, const VertexSet& s) {
  VertexSet out;
  s.for_each([&](int v) {
    for (const auto& [id, other] : g.adjacency(v)) {
      (void)id;
      if (!s.contains(other)) out.add(other);
    }
  });
  return out;
}

inline std::vector<VertexSet> components_within(const Multigraph& g, const VertexSet& s) {
  std::vector<VertexSet> comps;
  VertexSet seen;
  s.for_each([&](int start) {
    if (seen.contains(start)) return;
    VertexSet comp = VertexSet::single(start);
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [id, other] : g.adjacency(v)) {
        (void)id;
        if (s.contains(other) && !comp.contains(other)) {
          comp.add(other);
          stack.push_back(other);
        }
      }
    }
    seen = seen.unite(comp);
    comps.push_back(comp);
  });
  return comps;
}

// Enumerates subsets S with G[S] a forest, size ascending and lexicographic
// within a size class, pruning any prefix that already contains a cycle.
// The visitor receives (S, components); returning false stops the search.
template <typename Fn>
void for_each_forest_subset(const Multigraph& g, int max_size, Fn&& fn) {
  const int n = g.vertex_count();
  std::vector<int> uf(n);

  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };

  bool stop = false;
  VertexSet current;
  for (int k = 1; k <= max_size && !stop; ++k) {
    std::vector<int> chosen;
    auto recurse = [&](auto&& self, int first) -> void {
      if (stop) return;
      if (static_cast<int>(chosen.size()) == k) {
        if (!fn(const_cast<const VertexSet&>(current), components_within(g, current)))
          stop = true;
        return;
      }
      const int need = k - static_cast<int>(chosen.size());
      for (int v = first; v <= n - need && !stop; ++v) {
        // Adding v keeps G[S] acyclic iff v has no loops, at most one edge to
        // each current tree, and no two edges into the same component.
        bool acyclic = true;
        for (const auto& [id, other] : g.adjacency(v)) {
          (void)id;
          if (other == v) {
            acyclic = false;  // self-loop
            break;
          }
        }
        std::vector<std::pair<int, int>> unions;  // rollback log (root, old parent)
        if (acyclic) {
          for (const auto& [id, other] : g.adjacency(v)) {
            (void)id;
            if (other == v || !current.contains(other)) continue;
            const int ra = find(v);
            const int rb = find(other);
            if (ra == rb) {
              acyclic = false;
              break;
            }
            unions.emplace_back(ra, uf[ra]);
            uf[ra] = rb;
          }
        }
        if (acyclic) {
          chosen.push_back(v);
          current.add(v);
          self(self, v + 1);
          current.remove(v);
          chosen.pop_back();
        }
        for (auto it = unions.rbegin(); it != unions.rend(); ++it) uf[it->first] = it->second;
      }
    };
    for (int v = 0; v < n; ++v) uf[v] = v;
    recurse(recurse, 0);
  }
}

// Characteristic polynomials of induced restrictions, cached per vertex set.
class RestrictionCharPolyCache {
 public:
  RestrictionCharPolyCache(const Multigraph& g, const SchrodingerWeights& w) : g_(&g), w_(&w) {}

  const RationalPolynomial& of(const VertexSet& s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    const InducedSubgraph sub = induced_subgraph(*g_, s);
    RationalPolynomial p = char_poly(hamiltonian_matrix(sub.graph, w_->restrict_to(sub)));
    return cache_.emplace(s, std::move(p)).first->second;
  }

 private:
  const Multigraph* g_;
  const SchrodingerWeights* w_;
  std::unordered_map<VertexSet, RationalPolynomial, VertexSetHash> cache_;
};

}  // namespace detail

struct BgvmResult {
  std::optional<AomotoCertificate> certificate;
  bool exhaustive = true;  // search covered every subset size up to |V|
  int size_cap = 0;
};

// Default exhaustive range for the subset search; larger graphs need an
// explicit cap and then "none found within cap" is not "none exists".
inline constexpr int kBgvmExhaustiveLimit = 20;

// Searches for an Aomoto certificate at the given rational lambda, subsets in
// increasing size then lexicographic order; first hit wins.
inline BgvmResult bgvm_holds(const Multigraph& g, const SchrodingerWeights& w,
                             const Rational& lambda, int max_size = -1) {
  w.require_cover(g);
  const int n = g.vertex_count();
  BgvmResult result;
  if (max_size < 0) max_size = n <= kBgvmExhaustiveLimit ? n : kBgvmExhaustiveLimit;
  max_size = std::min(max_size, n);
  result.size_cap = max_size;
  result.exhaustive = max_size >= n;

  detail::RestrictionCharPolyCache chars(g, w);
  detail::for_each_forest_subset(g, max_size, [&](const VertexSet& s,
                                                  const std::vector<VertexSet>& comps) {
    const VertexSet boundary = detail::boundary_of(g, s);
    if (boundary.count() >= static_cast<int>(comps.size())) return true;
    RationalPolynomial common = RationalPolynomial::zero();
    for (const VertexSet& comp : comps) {
      const RationalPolynomial& cp = chars.of(comp);
      if (cp.evaluate(lambda) != 0) return true;  // lambda must hit every component
      common = poly_gcd(common, cp);
    }
    result.certificate = AomotoCertificate{s, comps, boundary, std::move(common)};
    return false;
  });
  return result;
}

// Inverts the quantifier: for every forest subset satisfying the boundary
// inequality, emits the gcd of its component characteristic polynomials when
// nonconstant. Every real root of an emitted gcd satisfies the criterion
// with that subset as witness.
struct BgvmCandidates {
  std::vector<std::pair<RationalPolynomial, AomotoCertificate>> candidates;
  bool exhaustive = true;
  int size_cap = 0;
};

inline BgvmCandidates bgvm_candidate_lambdas(const Multigraph& g, const SchrodingerWeights& w,
                                             int max_size = -1) {
  w.require_cover(g);
  const int n = g.vertex_count();
  BgvmCandidates out;
  if (max_size < 0) max_size = n <= kBgvmExhaustiveLimit ? n : kBgvmExhaustiveLimit;
  max_size = std::min(max_size, n);
  out.size_cap = max_size;
  out.exhaustive = max_size >= n;

  detail::RestrictionCharPolyCache chars(g, w);
  detail::for_each_forest_subset(g, max_size, [&](const VertexSet& s,
                                                  const std::vector<VertexSet>& comps) {
    const VertexSet boundary = detail::boundary_of(g, s);
    if (boundary.count() >= static_cast<int>(comps.size())) return true;
    RationalPolynomial common = RationalPolynomial::zero();
    for (const VertexSet& comp : comps) {
      common = poly_gcd(common, chars.of(comp));
      if (common.is_constant()) break;
    }
    if (!common.is_constant())
      out.candidates.emplace_back(common, AomotoCertificate{s, comps, boundary, common});
    return true;
  });
  return out;
}

// Universal-cover eigenvalues descend to the maximal abelian cover: every
// B-GV-M candidate polynomial must divide the flat-band gcd, and each of its
// rational roots must pass the pointwise flat-band check.
inline bool check_prop_A2(const Multigraph& g, const SchrodingerWeights& w) {
  const BgvmCandidates cands = bgvm_candidate_lambdas(g, w);
  if (cands.candidates.empty()) return true;
  const FlatBandReport report = flatband_polynomial(g, w);
  for (const auto& [poly, cert] : cands.candidates) {
    (void)cert;
    if (!report.gcd_poly.divisible_by(poly)) return false;
    for (const auto& [root, mult] : extract_rational_roots(poly).roots) {
      (void)mult;
      if (!is_flatband(g, w, root).flat) return false;
    }
  }
  return true;
}

enum class AbUniVerdict { Agree, AbStrictlyLarger, Inconclusive };

struct AbUniComparison {
  AbUniVerdict verdict = AbUniVerdict::Agree;
  // Nonconstant when verdict is AbStrictlyLarger: the square-free part of the
  // flat-band gcd whose roots satisfy no B-GV-M certificate.
  RationalPolynomial uncovered;
  RationalPolynomial flatband_gcd;
  int certificate_count = 0;
};

// Probes the open containment question: is every flat band of the maximal
// abelian cover also an eigenvalue of the universal cover? Exact search up to
// the subset cap; never asserted, only reported.
inline AbUniComparison compare_ab_vs_uni(const Multigraph& g, const SchrodingerWeights& w,
                                         int max_size = -1) {
  AbUniComparison out;
  const FlatBandReport report = flatband_polynomial(g, w);
  out.flatband_gcd = report.gcd_poly;
  if (!report.has_flat_bands()) {
    out.verdict = AbUniVerdict::Agree;
    return out;
  }
  const BgvmCandidates cands = bgvm_candidate_lambdas(g, w, max_size);
  out.certificate_count = static_cast<int>(cands.candidates.size());
  RationalPolynomial rest = squarefree_part(report.gcd_poly);
  for (const auto& [poly, cert] : cands.candidates) {
    (void)cert;
    rest = rest.divide_exact(poly_gcd(rest, poly));
    if (rest.is_constant()) break;
  }
  if (rest.is_constant())
    out.verdict = AbUniVerdict::Agree;
  else if (cands.exhaustive) {
    out.verdict = AbUniVerdict::AbStrictlyLarger;
    out.uncovered = rest;
  } else {
    out.verdict = AbUniVerdict::Inconclusive;
    out.uncovered = rest;
  }
  return out;
}

}  // namespace flatband
