#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flatband/bgvm.hpp"
#include "flatband/decomposition.hpp"
#include "flatband/degree2.hpp"
#include "flatband/flatband.hpp"
#include "flatband/matching.hpp"
#include "flatband/multigraph.hpp"
#include "flatband/polynomial.hpp"
#include "flatband/roots.hpp"

namespace flatband {

using Json = nlohmann::json;

// Canonical graph JSON:
//   { "vertices": [ { "id": 0, "potential": "0" }, ... ],
//     "edges":    [ { "id": 0, "u": 0, "v": 1, "w_re": "1", "w_im": "0" }, ... ] }
// Rationals are strings "p/q" or integer strings. A missing potential is 0,
// a missing weight is 1+0i. Vertices and edges are sorted by id on output,
// rationals in lowest terms with positive denominator.
inline std::pair<Multigraph, SchrodingerWeights> graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph JSON must have \"vertices\" and \"edges\" arrays");

  const Json& jv = j.at("vertices");
  const Json& je = j.at("edges");
  if (!jv.is_array() || !je.is_array())
    throw std::invalid_argument("graph JSON must have \"vertices\" and \"edges\" arrays");

  const int n = static_cast<int>(jv.size());
  std::vector<Rational> potentials(n, Rational(0));
  std::vector<bool> seen_vertex(n, false);
  for (const Json& v : jv) {
    if (!v.contains("id") || !v.at("id").is_number_integer())
      throw std::invalid_argument("vertex entry missing integer \"id\"");
    const int id = v.at("id").get<int>();
    if (id < 0 || id >= n || seen_vertex[id])
      throw std::invalid_argument("vertex ids must be distinct and dense in [0, n)");
    seen_vertex[id] = true;
    if (v.contains("potential")) potentials[id] = parse_rational(v.at("potential").get<std::string>());
  }

  const int m = static_cast<int>(je.size());
  std::vector<std::pair<int, int>> endpoints(m, {-1, -1});
  std::vector<GaussianRational> weights(m, GaussianRational(1));
  std::vector<bool> seen_edge(m, false);
  for (const Json& e : je) {
    if (!e.contains("id") || !e.at("id").is_number_integer())
      throw std::invalid_argument("edge entry missing integer \"id\"");
    const int id = e.at("id").get<int>();
    if (id < 0 || id >= m || seen_edge[id])
      throw std::invalid_argument("edge ids must be distinct and dense in [0, m)");
    seen_edge[id] = true;
    if (!e.contains("u") || !e.contains("v"))
      throw std::invalid_argument("edge entry missing endpoints \"u\"/\"v\"");
    endpoints[id] = {e.at("u").get<int>(), e.at("v").get<int>()};
    Rational re(1), im(0);
    if (e.contains("w_re")) re = parse_rational(e.at("w_re").get<std::string>());
    if (e.contains("w_im")) im = parse_rational(e.at("w_im").get<std::string>());
    weights[id] = GaussianRational(std::move(re), std::move(im));
    if (weights[id].is_zero())
      throw std::invalid_argument("edge weights must be nonzero (edge " + std::to_string(id) + ")");
  }

  Multigraph g(n, std::move(endpoints));
  SchrodingerWeights w(std::move(weights), std::move(potentials));
  return {std::move(g), std::move(w)};
}

inline Json graph_to_json(const Multigraph& g, const SchrodingerWeights& w) {
  w.require_cover(g);
  Json jv = Json::array();
  for (int v = 0; v < g.vertex_count(); ++v)
    jv.push_back({{"id", v}, {"potential", rational_to_string(w.potential(v))}});
  Json je = Json::array();
  for (const auto& e : g.edges()) {
    const GaussianRational& wt = w.stored_weight(e.id);
    je.push_back({{"id", e.id},
                  {"u", e.u},
                  {"v", e.v},
                  {"w_re", rational_to_string(wt.re)},
                  {"w_im", rational_to_string(wt.im)}});
  }
  return Json{{"vertices", std::move(jv)}, {"edges", std::move(je)}};
}

// Polynomials: {"coeffs": ["p/q", ...]}, constant term first, lowest terms.
inline Json polynomial_to_json(const RationalPolynomial& p) {
  Json coeffs = Json::array();
  for (const Rational& c : p.coeffs()) coeffs.push_back(rational_to_string(c));
  return Json{{"coeffs", std::move(coeffs)}};
}

inline RationalPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
    throw std::invalid_argument("polynomial JSON must have a \"coeffs\" array");
  std::vector<Rational> coeffs;
  for (const Json& c : j.at("coeffs")) coeffs.push_back(parse_rational(c.get<std::string>()));
  return RationalPolynomial(std::move(coeffs));
}

inline Json degree2_to_json(const Degree2Subgraph& s) {
  Json comps = Json::array();
  for (const auto& c : s.components) {
    Json ids = Json::array();
    for (const auto& e : c.edges) ids.push_back(e.edge_id);
    comps.push_back(std::move(ids));
  }
  return Json{{"components", std::move(comps)}};
}

inline Json matching_to_json(const Matching& m) {
  Json ids = Json::array();
  for (int id : m.edge_ids) ids.push_back(id);
  return Json{{"edges", std::move(ids)}};
}

inline Json vertex_set_to_json(const VertexSet& s) {
  Json out = Json::array();
  s.for_each([&](int v) { out.push_back(v); });
  return out;
}

inline Json decomposition_to_json(const BridgeBlockDecomposition& d) {
  Json bridges = Json::array();
  for (int id : d.bridges) bridges.push_back(id);
  Json blocks = Json::array();
  for (const VertexSet& b : d.blocks) blocks.push_back(vertex_set_to_json(b));
  Json tree = Json::array();
  for (const auto& te : d.tree_edges) tree.push_back({te[0], te[1], te[2]});
  return Json{{"bridges", std::move(bridges)},
              {"blocks", std::move(blocks)},
              {"tree_edges", std::move(tree)}};
}

inline Json root_isolation_to_json(const RootIsolation& iso) {
  Json rational = Json::array();
  for (const auto& [root, mult] : iso.rational_roots)
    rational.push_back({{"root", rational_to_string(root)}, {"multiplicity", mult}});
  Json intervals = Json::array();
  for (const auto& iv : iso.irrational_intervals)
    intervals.push_back({{"lo", rational_to_string(iv.lo)}, {"hi", rational_to_string(iv.hi)}});
  return Json{{"rational_roots", std::move(rational)},
              {"intervals", std::move(intervals)},
              {"residual_nonreal_degree", iso.residual_nonreal_degree}};
}

inline Json flatband_report_to_json(const FlatBandReport& r) {
  Json witness = Json::array();
  for (const auto& gamma : r.witness_coprime_set) witness.push_back(degree2_to_json(gamma));
  const Json roots = root_isolation_to_json(r.roots);
  return Json{{"gcd", r.gcd_poly.to_string()},
              {"gcd_coeffs", polynomial_to_json(r.gcd_poly).at("coeffs")},
              {"rational_roots", roots.at("rational_roots")},
              {"intervals", roots.at("intervals")},
              {"witness", std::move(witness)}};
}

inline Json certificate_to_json(const AomotoCertificate& c) {
  Json comps = Json::array();
  for (const VertexSet& comp : c.components) comps.push_back(vertex_set_to_json(comp));
  return Json{{"s", vertex_set_to_json(c.s)},
              {"components", std::move(comps)},
              {"boundary", vertex_set_to_json(c.boundary)},
              {"lambda_poly", polynomial_to_json(c.lambda_poly)}};
}

// Canonical rendering: nlohmann objects iterate in sorted key order, so a
// fixed indentation yields byte-stable reports.
inline std::string to_canonical_string(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace flatband
